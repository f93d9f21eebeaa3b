#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arithdyn/family.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/parser.hpp"

using namespace arithdyn;

namespace {

const std::vector<std::string> XYZ{"x", "y", "z"};
const std::vector<std::string> XYZW{"x", "y", "z", "w"};

ProjectiveMap PM(const std::string& comps, int n, const std::vector<std::string>& vars) {
    return ProjectiveMap(n, parse_poly_list(comps, vars));
}

ProjectiveMap P2(const std::string& comps) { return PM(comps, 2, XYZ); }

AffineMap henon() {
    return AffineMap(3, parse_poly_list("z, x + z^2, y + x^2", XYZ));
}

AffineMap henon_inverse() {
    return AffineMap(3, parse_poly_list("y - x^2, z - (y - x^2)^2, x", XYZ));
}

}  // namespace

TEST_CASE("homogenize_affine") {
    ProjectiveMap h = homogenize_affine(henon());
    CHECK(h.degree() == 2);
    CHECK(h.components()[0] == parse_poly("z*w", XYZW));
    CHECK(h.components()[1] == parse_poly("x*w + z^2", XYZW));
    CHECK(h.components()[2] == parse_poly("y*w + x^2", XYZW));
    CHECK(h.components()[3] == parse_poly("w^2", XYZW));

    ProjectiveMap id1 = homogenize_affine(AffineMap(1, {parse_poly("x", {"x"})}));
    CHECK(id1.degree() == 1);
    CHECK(id1.components()[0] == parse_poly("x", {"x", "w"}));
    CHECK(id1.components()[1] == parse_poly("w", {"x", "w"}));

    ProjectiveMap sq = homogenize_affine(AffineMap(1, {parse_poly("x^2", {"x"})}));
    CHECK(sq.degree() == 2);
    CHECK(sq.components()[1] == parse_poly("w^2", {"x", "w"}));
}

TEST_CASE("projective evaluation") {
    ProjectiveMap f = P2("x^2, y*z, z^2");
    CHECK(!f.evaluate(parse_proj_point("0:1:0")).has_value());
    auto a = f.evaluate(parse_proj_point("1:1:1"));
    REQUIRE(a.has_value());
    CHECK(a->str() == "[1:1:1]");
    auto b = f.evaluate(parse_proj_point("2:1:1"));
    REQUIRE(b.has_value());
    CHECK(b->str() == "[4:1:1]");
}

TEST_CASE("affine evaluation") {
    AffineMap g = henon();
    CHECK(g.evaluate(parse_aff_point("0,0,0")).str() == "(0, 0, 0)");
    CHECK(g.evaluate(parse_aff_point("1,1,1")).str() == "(1, 2, 2)");
    AffineMap id(2, parse_poly_list("x, y", {"x", "y"}));
    CHECK(id.evaluate(parse_aff_point("3/7,-2")).str() == "(3/7, -2)");
}

TEST_CASE("composition reduces by the gcd") {
    ProjectiveMap cremona = P2("y*z, x*z, x*y");
    ProjectiveMap twice = compose(cremona, cremona);
    CHECK(twice.degree() == 1);
    CHECK(twice.str(XYZ) == "[x : y : z]");

    ProjectiveMap sq = PM("x^2, w^2", 1, {"x", "w"});
    ProjectiveMap fourth = compose(sq, sq);
    CHECK(fourth.degree() == 4);
    CHECK(fourth.components()[0] == parse_poly("x^4", {"x", "w"}));

    ProjectiveMap h = homogenize_affine(henon());
    ProjectiveMap hinv = homogenize_affine(henon_inverse());
    CHECK(h.degree() == 2);
    CHECK(hinv.degree() == 4);
    ProjectiveMap ident = compose(h, hinv);
    CHECK(ident.degree() == 1);
    CHECK(ident.str(XYZW) == "[x : y : z : w]");
}

TEST_CASE("construction is idempotent and validates") {
    std::vector<Poly> comps = parse_poly_list("x^2, y*z, z^2", XYZ);
    ProjectiveMap f(2, comps);
    ProjectiveMap again(2, f.components());
    CHECK(again.components() == f.components());
    CHECK(again.degree() == f.degree());
    CHECK_THROWS_AS(ProjectiveMap(2, parse_poly_list("x^2, y, z", XYZ)), Error);
    CHECK_THROWS_AS(ProjectiveMap(2, std::vector<Poly>(3, Poly(3))), Error);
}

TEST_CASE("indeterminacy of monomial maps") {
    SubspaceUnion z1 = indeterminacy_monomial(P2("x^2, y*z, z^2"));
    REQUIRE(z1.masks.size() == 1);
    CHECK(z1.witness_point().str() == "[0:1:0]");

    SubspaceUnion z2 = indeterminacy_monomial(P2("y*z, x*z, x*y"));
    CHECK(z2.masks.size() == 3);  // three coordinate points

    CHECK(indeterminacy_monomial(P2("x^2, y^2, z^2")).empty());
    CHECK_THROWS_AS(indeterminacy_monomial(P2("x^2 + y^2, y^2, z^2")), Error);
}

TEST_CASE("joint regularity tiers") {
    std::vector<ProjectiveMap> with_morphism{P2("x^2, y^2, z^2"), P2("x^2, y*z, z^2")};
    CHECK(joint_regularity(with_morphism).is_empty());

    std::vector<ProjectiveMap> overlapping{P2("x^2, y*z, z^2"), P2("y*z, x*z, x*y")};
    RegularityVerdict v = joint_regularity(overlapping);
    CHECK(v.status == RegularityVerdict::Status::NonEmpty);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->str() == "[0:1:0]");

    std::vector<ProjectiveMap> disjoint{P2("x^2, y*z, z^2"), P2("x*y, y^2, x*z")};
    CHECK(joint_regularity(disjoint).is_empty());
}

TEST_CASE("saturation agrees with combinatorics on sampled monomial families") {
    std::mt19937 rng(2024);
    auto random_monomial_map = [&](int degree) {
        auto monos = [&] {
            std::vector<Poly> out;
            std::vector<std::string> v = XYZ;
            // all monomials of the given degree
            for (int a = 0; a <= degree; ++a)
                for (int b = 0; a + b <= degree; ++b)
                    out.push_back(Poly::monomial(3, {a, b, degree - a - b}, Rat(1)));
            return out;
        }();
        while (true) {
            std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
            std::vector<Poly> comps{monos[pick(rng)], monos[pick(rng)], monos[pick(rng)]};
            try {
                ProjectiveMap f(2, comps);
                if (f.degree() == degree) return f;  // gcd-free draw
            } catch (const Error&) {
            }
        }
    };
    std::uniform_int_distribution<int> deg(1, 3);
    for (int it = 0; it < 25; ++it) {
        std::vector<ProjectiveMap> fam{random_monomial_map(deg(rng)),
                                       random_monomial_map(deg(rng))};
        RegularityVerdict comb = regularity_combinatorial(fam);
        RegularityVerdict sat = regularity_saturation(fam);
        CHECK(comb.status == sat.status);
        if (sat.witness) {
            ProjPoint w = *sat.witness;
            for (const auto& f : fam) CHECK(!f.evaluate(w).has_value());
        }
    }
}

TEST_CASE("henon pair indeterminacy loci intersect") {
    ProjectiveMap h = homogenize_affine(henon());
    ProjectiveMap hinv = homogenize_affine(henon_inverse());
    RegularityVerdict v = joint_regularity(std::vector<ProjectiveMap>{h, hinv});
    CHECK(v.status == RegularityVerdict::Status::NonEmpty);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->str() == "[0:1:0:0]");
}

TEST_CASE("evaluate commutes with composition") {
    std::mt19937 rng(555);
    ProjectiveMap f = P2("x^2, y*z, z^2");
    ProjectiveMap g = P2("y*z, x*z, x*y");
    ProjectiveMap fg = compose(f, g);
    std::uniform_int_distribution<int> entry(-5, 5);
    int checked = 0;
    while (checked < 30) {
        std::vector<Int> c{entry(rng), entry(rng), entry(rng)};
        bool nz = false;
        for (auto& z : c)
            if (z != 0) nz = true;
        if (!nz) continue;
        ProjPoint p{std::move(c)};
        auto gp = g.evaluate(p);
        if (!gp) continue;
        auto fgp = f.evaluate(*gp);
        auto direct = fg.evaluate(p);
        if (!fgp || !direct) continue;
        CHECK(*direct == *fgp);
        ++checked;
    }
}

TEST_CASE("composition degree bound") {
    ProjectiveMap f = P2("x^2, y*z, z^2");
    ProjectiveMap g = P2("x^3, y^3, z^3");
    CHECK(compose(f, g).degree() <= f.degree() * g.degree());
    CHECK(compose(g, g).degree() == 9);  // monomial morphism pair: equality
}

TEST_CASE("family construction checks inverses") {
    std::vector<Generator> gens;
    gens.push_back(Generator{"h", henon(), henon_inverse(), homogenize_affine(henon()),
                             std::nullopt});
    MapFamily fam(3, std::move(gens));
    CHECK(fam.all_affine());

    std::vector<Generator> bad;
    bad.push_back(Generator{"b", henon(), henon(), homogenize_affine(henon()), std::nullopt});
    CHECK_THROWS_AS(MapFamily(3, std::move(bad)), Error);
}

TEST_CASE("family json loading") {
    MapFamily fam = family_from_file(std::string(ARITHDYN_DATA_DIR) + "/families/henon.json");
    CHECK(fam.size() == 2);
    CHECK(fam.generators()[0].proj.degree() == 2);
    CHECK(fam.generators()[1].proj.degree() == 4);
    CHECK(fam.claimed_regular.value_or(false));
    REQUIRE(fam.generators()[0].declared_dratio.has_value());
    CHECK(fam.generators()[0].declared_dratio->value == 8);

    MapFamily proj = family_from_file(std::string(ARITHDYN_DATA_DIR) + "/families/g1g3.json");
    CHECK(proj.size() == 2);
    CHECK(!proj.all_affine());
    CHECK(proj.all_monomial());
}
