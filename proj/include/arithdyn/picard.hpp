#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/linalg.hpp"
#include "arithdyn/maps.hpp"

namespace arithdyn {

struct DRatioValue {
    bool finite = true;
    Rat value;  // when finite
    std::string provenance;

    static DRatioValue of(const Rat& v, std::string prov) { return {true, v, std::move(prov)}; }
    static DRatioValue infinity(std::string prov) { return {false, Rat(0), std::move(prov)}; }

    bool operator<(const DRatioValue& o) const {
        if (finite != o.finite) return finite;  // infinity dominates
        return finite && value < o.value;
    }
    std::string str() const { return finite ? value.get_str() : "infinity"; }
};

struct DivisorClass {
    enum class Basis { Total, Proper };
    Basis basis = Basis::Proper;
    std::vector<Rat> coeffs;  // H-coefficient first, then E_1..E_r

    std::string str() const;
};

// Picard lattice of an iterated point blowup of P^2 in the proper basis
// {H^#, E_1, ..., E_r}. The basis change to the diagonal total basis is
// derived from proximity and the multiplicities of the strict H.
class PicLattice {
  public:
    PicLattice(std::vector<std::vector<int>> proximity, std::vector<int> h_mult);

    int r() const { return r_; }
    const Mat& intersection_proper() const { return g_proper_; }
    const std::vector<std::vector<int>>& proximity() const { return prox_; }
    const std::vector<int>& h_mult() const { return hmult_; }

    DivisorClass to_total(const DivisorClass& c) const;
    DivisorClass to_proper(const DivisorClass& c) const;

  private:
    int r_;
    std::vector<std::vector<int>> prox_;
    std::vector<int> hmult_;
    Mat t_;  // proper -> total, unit lower triangular
    Mat g_proper_;
};

struct ScriptStep {
    std::string chart;
    std::array<Rat, 2> point;
};

struct BlowupScript {
    std::vector<ScriptStep> steps;
};

std::string script_to_json(const BlowupScript& s);
BlowupScript script_from_json(const std::string& text);

// One executed blowup: the scripted data plus everything the resolution
// derived at that center.
struct BlowupStep {
    std::string chart;
    std::array<Rat, 2> point;
    std::vector<int> proximity;
    bool on_strict_h = false;
    int h_mult = 0;
    std::vector<int> multiplicities;  // per tracked map system
    ProjPoint image_p2;
};

struct ResolvedSystem {
    ProjectiveMap map;
    std::vector<BlowupStep> steps;
    PicLattice lattice;
    DivisorClass pi_star;   // proper basis, H-coefficient 1
    DivisorClass phi_star;  // proper basis, H-coefficient deg(map)
    DRatioValue dratio;

    BlowupScript script() const;
    std::string report(const std::vector<std::string>& names) const;
};

// Automatic resolution for monomial maps on P^2 with the fixed hyperplane
// H = {last coordinate = 0} and Z(f) inside H. Base points of monomial
// systems only occur at chart origins, so the torus-fixed scan is complete.
ResolvedSystem resolve_toric(const ProjectiveMap& f, int max_steps = 64);

// Resolution along user-supplied centers; multiplicities are the minimal
// total degree of the translated strict system. Rejects scripts that leave
// a base point at a tracked candidate.
ResolvedSystem resolve_scripted(const ProjectiveMap& f, const BlowupScript& script,
                                int max_steps = 64);

bool afe_member(const DivisorClass& c);
bool afe_dominates(const DivisorClass& a, const DivisorClass& b);

// r = d * max over indices with a_i != 0 of a_i / b_i, index 0 included as
// (1, d); infinity when some a_i != 0 meets b_i = 0.
DRatioValue dratio_from_classes(const DivisorClass& pi_star, const DivisorClass& phi_star,
                                int degree);

// Route dispatch: morphism -> 1; verified regular affine automorphism ->
// deg f * deg f^-1; monomial on P^2 -> blowup (coordinates permuted when a
// different coordinate hyperplane contains Z); declared registry value.
DRatioValue dratio_of(const Generator& g);
DRatioValue dratio_of_map(const ProjectiveMap& f);
DRatioValue family_max_dratio(const MapFamily& family);

// delta_S = (1/(1+1/r)) * sum 1/deg f_l; coefficient 1 when r is infinite.
Rat delta_family(const MapFamily& family, const DRatioValue& r);

struct FamilyDivisorReport {
    bool holds = false;
    DivisorClass divisor;  // proper basis on the common resolution
    DivisorClass pi_star;
    std::vector<DivisorClass> phi_stars;
    std::vector<BlowupStep> steps;
    bool lemma_indices_ok = false;
    bool lemma_coefficients_ok = false;
    std::string notes;
};

// Builds the merged toric resolution of a jointly regular monomial family on
// P^2, forms D = sum (1/d_l) phi_l*H - (1 + 1/r) pi*H, and reports AFE
// membership together with the index and coefficient lemma checks.
FamilyDivisorReport family_divisor_check(const std::vector<ProjectiveMap>& maps,
                                         const DRatioValue& r, int max_steps = 96);

}  // namespace arithdyn
