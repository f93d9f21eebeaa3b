#pragma once

#include <optional>
#include <vector>

#include "arithdyn/rational.hpp"

namespace arithdyn {

class Mat {
  public:
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rat(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    static Mat identity(int n);

  private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

// Exact rank via fraction-free (Bareiss) elimination on the
// denominator-cleared integer matrix.
int mat_rank(const Mat& m);

// One exact solution of M x = b, or nullopt when the system is inconsistent.
// Free variables are set to zero.
std::optional<std::vector<Rat>> mat_solve(const Mat& m, const std::vector<Rat>& b);

}  // namespace arithdyn
