#include "arithdyn/points.hpp"

#include <sstream>

namespace arithdyn {

ProjPoint::ProjPoint(std::vector<Int> coords) : c(std::move(coords)) {
    bool all_zero = true;
    for (const auto& z : c)
        if (z != 0) all_zero = false;
    if (c.empty() || all_zero) throw Error("projective point needs a nonzero coordinate");
    Int g(0);
    for (const auto& z : c) {
        Int t;
        mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        g = t;
    }
    for (auto& z : c) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    for (const auto& z : c) {
        if (z == 0) continue;
        if (z < 0)
            for (auto& w : c) w = -w;
        break;
    }
}

ProjPoint ProjPoint::from_rationals(const std::vector<Rat>& coords) {
    Int den(1);
    for (const auto& q : coords) den = lcm_int(den, q.get_den());
    std::vector<Int> ints;
    ints.reserve(coords.size());
    for (const auto& q : coords) ints.push_back(q.get_num() * (den / q.get_den()));
    return ProjPoint(std::move(ints));
}

std::string ProjPoint::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ":";
        os << c[i].get_str();
    }
    os << "]";
    return os.str();
}

std::string AffPoint::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) os << ", ";
        os << x[i].get_str();
    }
    os << ")";
    return os.str();
}

ProjPoint embed_affine(const AffPoint& p) {
    std::vector<Rat> coords = p.x;
    coords.push_back(Rat(1));
    return ProjPoint::from_rationals(coords);
}

AffPoint parse_aff_point(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw Error("unbalanced parentheses in point");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<Rat> coords;
    size_t start = 0;
    for (size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || body[i] == ',') {
            coords.push_back(parse_rat(body.substr(start, i - start)));
            start = i + 1;
        }
    }
    return AffPoint(std::move(coords));
}

ProjPoint parse_proj_point(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw Error("unbalanced brackets in point");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<Rat> coords;
    size_t start = 0;
    for (size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || body[i] == ':') {
            coords.push_back(parse_rat(body.substr(start, i - start)));
            start = i + 1;
        }
    }
    return ProjPoint::from_rationals(coords);
}

}  // namespace arithdyn
