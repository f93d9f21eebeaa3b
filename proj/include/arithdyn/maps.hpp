#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/points.hpp"
#include "arithdyn/polynomial.hpp"

namespace arithdyn {

// Rational self-map of P^n in reduced homogeneous representation: n+1
// components, homogeneous of one common degree (or zero), polynomial gcd 1.
class ProjectiveMap {
  public:
    ProjectiveMap(int n, std::vector<Poly> components);  // reduces and validates

    int n() const { return n_; }
    int degree() const { return degree_; }
    const std::vector<Poly>& components() const { return comps_; }

    bool is_monomial() const;  // every nonzero component a single term

    // Component values at P, renormalized; nullopt when all vanish.
    std::optional<ProjPoint> evaluate(const ProjPoint& p) const;

    std::string str(const std::vector<std::string>& names) const;

  private:
    int n_;
    int degree_;
    std::vector<Poly> comps_;
};

// Total polynomial map of A^n.
class AffineMap {
  public:
    AffineMap(int n, std::vector<Poly> components);

    int n() const { return n_; }
    int degree() const { return degree_; }
    const std::vector<Poly>& components() const { return comps_; }

    AffPoint evaluate(const AffPoint& p) const;
    AffineMap compose(const AffineMap& inner) const;  // this after inner
    bool is_identity() const;

  private:
    int n_;
    int degree_;
    std::vector<Poly> comps_;
};

// Meromorphic extension: components (g_1^, ..., g_n^, w^d) divided by their
// polynomial gcd, where g_i^ = w^d g_i(x/w).
ProjectiveMap homogenize_affine(const AffineMap& g);

// this-after-inner composition of projective maps, reduced; throws when the
// composed tuple is identically zero.
ProjectiveMap compose(const ProjectiveMap& outer, const ProjectiveMap& inner);

// Union of coordinate subspaces of P^n, each given by the set of vanishing
// variables as a bitmask. Stored irredundantly (minimal masks only).
struct SubspaceUnion {
    int nvars = 0;
    std::vector<uint32_t> masks;

    bool empty() const { return masks.empty(); }
    static SubspaceUnion intersect(const SubspaceUnion& a, const SubspaceUnion& b);
    ProjPoint witness_point(size_t index = 0) const;  // 0 on the mask, 1 elsewhere
    std::string str(const std::vector<std::string>& names) const;
};

// Exact indeterminacy locus of a monomial map, computed combinatorially from
// the exponent vectors.
SubspaceUnion indeterminacy_monomial(const ProjectiveMap& f);

struct DRatioDecl {
    bool finite = true;
    Rat value;  // meaningful when finite
    std::string provenance;
};

struct Generator {
    std::string name;
    std::optional<AffineMap> affine;   // absent for projective-native entries
    std::optional<AffineMap> inverse;  // verified against affine on construction
    ProjectiveMap proj;
    std::optional<DRatioDecl> declared_dratio;
};

class MapFamily {
  public:
    MapFamily(int n, std::vector<Generator> generators,
              std::vector<std::string> variables = {});

    int n() const { return n_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<std::string>& variables() const { return vars_; }
    size_t size() const { return gens_.size(); }
    bool all_affine() const;
    bool all_monomial() const;

    std::optional<bool> claimed_regular;  // family file annotation, if any

  private:
    int n_;
    std::vector<Generator> gens_;
    std::vector<std::string> vars_;
};

struct RegularityVerdict {
    enum class Status { Empty, NonEmpty, Unknown } status;
    int degree = 0;  // Empty: certified saturation degree (0 for combinatorial
                     // certificates); Unknown: the bound used
    std::optional<ProjPoint> witness;
    std::string reason;

    bool is_empty() const { return status == Status::Empty; }
    std::string str() const;
};

// Tiered decision of whether the homogenized indeterminacy loci have empty
// common intersection. Empty and NonEmpty are exact; Unknown is inconclusive.
RegularityVerdict joint_regularity(const MapFamily& family,
                                   std::optional<int> degree_cap = std::nullopt);
RegularityVerdict joint_regularity(const std::vector<ProjectiveMap>& maps,
                                   std::optional<int> degree_cap = std::nullopt);

// The two independent procedures, exposed for cross-validation.
RegularityVerdict regularity_combinatorial(const std::vector<ProjectiveMap>& maps);
RegularityVerdict regularity_saturation(const std::vector<ProjectiveMap>& maps,
                                        std::optional<int> degree_cap = std::nullopt);

bool is_morphism(const ProjectiveMap& f);

int default_saturation_cap(const std::vector<ProjectiveMap>& maps);

}  // namespace arithdyn
