#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace arithdyn {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "a" or "a/b" with optional sign; denominator must be nonzero.
Rat parse_rat(const std::string& text);

std::string rat_str(const Rat& q);
std::string int_str(const Int& z);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, long e);
Int lcm_int(const Int& a, const Int& b);

}  // namespace arithdyn
