#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "arithdyn/heights.hpp"

using namespace arithdyn;

namespace {

AffPoint A1(const std::string& s) { return parse_aff_point(s); }

}  // namespace

TEST_CASE("projective heights") {
    CHECK(magnitude_proj(parse_proj_point("1:1:1")) == 1);
    CHECK(magnitude_proj(parse_proj_point("2:4:6")) == 3);  // normalizes to [1:2:3]
    CHECK(magnitude_proj(parse_proj_point("3:-5")) == 5);
    CHECK(height_proj(parse_proj_point("1:1:1")).is_zero());
}

TEST_CASE("affine heights") {
    CHECK(magnitude_aff(A1("0, 0, 0")) == 1);
    CHECK(magnitude_aff(A1("3/2")) == 3);
    CHECK(magnitude_aff(A1("1, 1, 1")) == 1);
}

TEST_CASE("canonical representative") {
    ProjPoint p = parse_proj_point("-2:4:-6");
    CHECK(p.str() == "[1:-2:3]");
    CHECK_THROWS_AS(ProjPoint(std::vector<Int>{Int(0), Int(0)}), Error);
}

TEST_CASE("scaling and permutation invariance") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int it = 0; it < 100; ++it) {
        std::vector<Int> c{entry(rng), entry(rng), entry(rng)};
        bool nonzero = false;
        for (auto& z : c)
            if (z != 0) nonzero = true;
        if (!nonzero) continue;
        Int m = magnitude_proj(ProjPoint(std::vector<Int>(c)));
        std::vector<Int> scaled;
        for (const auto& z : c) scaled.push_back(z * -7);
        CHECK(magnitude_proj(ProjPoint(std::move(scaled))) == m);
        std::vector<Int> perm{c[2], c[0], c[1]};
        CHECK(magnitude_proj(ProjPoint(std::move(perm))) == m);
    }
}

TEST_CASE("power map exactness") {
    // gcd of d-th powers is the d-th power of the gcd, so M(f(P)) = M(P)^d
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> entry(-20, 20);
    for (int it = 0; it < 100; ++it) {
        std::vector<Int> c{entry(rng), entry(rng), entry(rng)};
        bool nonzero = false;
        for (auto& z : c)
            if (z != 0) nonzero = true;
        if (!nonzero) continue;
        ProjPoint p{std::vector<Int>(c)};
        Int m = magnitude_proj(p);
        std::vector<Int> squares;
        for (const auto& z : p.c) squares.push_back(z * z);
        CHECK(magnitude_proj(ProjPoint(std::move(squares))) == m * m);
    }
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_points_list(1, Int(2)).size() == 7);  // {0, +-1, +-2, +-1/2}
    CHECK(enumerate_points_list(1, Int(1)).size() == 3);
    CHECK(enumerate_points_list(2, Int(1)).size() == 9);
}

TEST_CASE("enumeration is exact and duplicate-free") {
    for (int mmax : {5, 12}) {
        auto pts = enumerate_points_list(1, Int(mmax));
        std::set<AffPoint> seen(pts.begin(), pts.end());
        CHECK(seen.size() == pts.size());
        for (const auto& p : pts) CHECK(magnitude_aff(p) <= mmax);
        // brute-force Farey-style count
        long count = 0;
        for (long q = 1; q <= mmax; ++q)
            for (long a = -mmax; a <= mmax; ++a)
                if (std::__gcd(std::abs(a), q) == 1) ++count;
        CHECK(static_cast<long>(pts.size()) == count);
    }
}

TEST_CASE("enumeration oracle up to 50") {
    auto pts = enumerate_points_list(1, Int(50));
    long count = 0;
    for (long q = 1; q <= 50; ++q)
        for (long a = -50; a <= 50; ++a)
            if (std::__gcd(std::abs(a), q) == 1) ++count;
    CHECK(static_cast<long>(pts.size()) == count);
}

TEST_CASE("sampling determinism and range") {
    auto a = sample_points(2, Int(10), Int(1000), 50, 99);
    auto b = sample_points(2, Int(10), Int(1000), 50, 99);
    CHECK(a == b);
    auto c = sample_points(2, Int(10), Int(1000), 50, 100);
    CHECK(a != c);
    for (const auto& p : a) {
        Int m = magnitude_aff(p);
        CHECK(m >= 10);
        CHECK(m <= 1000);
    }
    CHECK(sample_points(2, Int(1), Int(10), 0, 1).empty());
    CHECK_THROWS_AS(sample_points(1, Int(10), Int(2), 5, 1), Error);
}
