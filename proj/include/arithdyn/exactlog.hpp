#pragma once

#include <string>

#include "arithdyn/rational.hpp"

namespace arithdyn {

// Exact representation of rational combinations of logarithms of positive
// integers: value = (log num - log den) / scale. Signs and comparisons are
// decided by integer-power comparison, never by floating point.
class ExactLog {
  public:
    ExactLog() = default;  // value 0

    static ExactLog log_of(const Int& magnitude);  // log M, M >= 1

    ExactLog operator+(const ExactLog& o) const;
    ExactLog operator-(const ExactLog& o) const;
    ExactLog operator-() const;

    // q * value for rational q.
    ExactLog scaled(const Rat& q) const;

    int sign() const;
    bool is_zero() const { return sign() == 0; }
    int compare(const ExactLog& o) const { return (*this - o).sign(); }
    bool operator<(const ExactLog& o) const { return compare(o) < 0; }
    bool operator==(const ExactLog& o) const { return compare(o) == 0; }

    // Exact test of  value == q * other  for rational q.
    bool equals_multiple_of(const ExactLog& other, const Rat& q) const;

    double to_double() const;
    std::string str() const;  // "(log(num) - log(den)) / scale" style

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    unsigned long scale() const { return scale_; }

  private:
    void reduce();

    Int num_{1};
    Int den_{1};
    unsigned long scale_{1};
};

}  // namespace arithdyn
