#pragma once

#include <string>
#include <vector>

#include "arithdyn/rational.hpp"

namespace arithdyn {

// Projective point with coprime integer coordinates; the first nonzero
// coordinate is positive (canonical representative).
struct ProjPoint {
    std::vector<Int> c;

    ProjPoint() = default;
    explicit ProjPoint(std::vector<Int> coords);  // canonicalizes
    static ProjPoint from_rationals(const std::vector<Rat>& coords);

    int dim() const { return static_cast<int>(c.size()) - 1; }
    bool operator==(const ProjPoint& o) const { return c == o.c; }
    bool operator<(const ProjPoint& o) const { return c < o.c; }
    std::string str() const;  // "[a:b:c]"
};

struct AffPoint {
    std::vector<Rat> x;

    AffPoint() = default;
    explicit AffPoint(std::vector<Rat> coords) : x(std::move(coords)) {}

    int dim() const { return static_cast<int>(x.size()); }
    bool operator==(const AffPoint& o) const { return x == o.x; }
    bool operator<(const AffPoint& o) const { return x < o.x; }
    std::string str() const;  // "(a, b, c)"
};

// [x_1 : ... : x_n : 1] cleared to coprime integers.
ProjPoint embed_affine(const AffPoint& p);

AffPoint parse_aff_point(const std::string& text);    // "1/2, -3"
ProjPoint parse_proj_point(const std::string& text);  // "2:4:6" or "[2:4:6]"

}  // namespace arithdyn
