#pragma once

#include <string>
#include <vector>

#include "arithdyn/polynomial.hpp"

namespace arithdyn {

struct ParseError : Error {
    ParseError(size_t position, const std::string& message)
        : Error("parse error at position " + std::to_string(position) + ": " + message),
          pos(position) {}
    size_t pos;
};

// Expression grammar: integers, rationals as a/b, declared variable names,
// + - * ^ with unary minus and parentheses. '^' takes a nonnegative integer
// literal. Juxtaposition is not multiplication.
Poly parse_poly(const std::string& text, const std::vector<std::string>& variables);

// "[x^2, y*z, z^2]" or "x^2, y*z, z^2" -> component list.
std::vector<Poly> parse_poly_list(const std::string& text,
                                  const std::vector<std::string>& variables);

}  // namespace arithdyn
