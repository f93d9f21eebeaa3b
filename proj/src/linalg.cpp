#include "arithdyn/linalg.hpp"

namespace arithdyn {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

int mat_rank(const Mat& m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i) {
        Int den(1);
        for (int j = 0; j < cols; ++j) den = lcm_int(den, m.at(i, j).get_den());
        for (int j = 0; j < cols; ++j) {
            const Rat& q = m.at(i, j);
            a[i][j] = q.get_num() * (den / q.get_den());
        }
    }
    Int prev(1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i) {
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                Int t = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

std::optional<std::vector<Rat>> mat_solve(const Mat& m, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw Error("mat_solve: dimension mismatch");
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
        a[i][cols] = b[i];
    }
    std::vector<int> pivot_col(rows, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i) {
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        Rat inv = a[rank][col];
        for (int j = col; j <= cols; ++j) a[rank][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (int j = col; j <= cols; ++j) a[i][j] -= f * a[rank][j];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (int i = rank; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (int i = 0; i < rank; ++i) x[pivot_col[i]] = a[i][cols];
    return x;
}

}  // namespace arithdyn
