#include "arithdyn/maps.hpp"

#include <algorithm>
#include <sstream>

namespace arithdyn {

namespace {

std::vector<Poly> reduce_tuple(std::vector<Poly> comps) {
    Poly g(comps.empty() ? 0 : comps[0].nvars());
    for (const auto& c : comps) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) throw Error("map has no nonzero component");
    if (!g.is_constant()) {
        for (auto& c : comps) {
            if (c.is_zero()) continue;
            auto q = try_divide(c, g);
            if (!q) throw Error("internal: gcd does not divide component");
            c = *q;
        }
    }
    return comps;
}

}  // namespace

ProjectiveMap::ProjectiveMap(int n, std::vector<Poly> components) : n_(n) {
    if (static_cast<int>(components.size()) != n + 1)
        throw Error("projective map on P^n needs n+1 components");
    for (const auto& c : components)
        if (c.nvars() != n + 1) throw Error("component variable count must be n+1");
    comps_ = reduce_tuple(std::move(components));
    degree_ = -1;
    for (const auto& c : comps_) {
        int d;
        if (!c.is_homogeneous(&d)) throw Error("components must be homogeneous");
        if (c.is_zero()) continue;
        if (degree_ < 0)
            degree_ = d;
        else if (d != degree_)
            throw Error("components must share one degree");
    }
    if (degree_ < 0) throw Error("map has no nonzero component");
}

bool ProjectiveMap::is_monomial() const {
    for (const auto& c : comps_)
        if (!c.is_zero() && !c.is_monomial_term()) return false;
    return true;
}

std::optional<ProjPoint> ProjectiveMap::evaluate(const ProjPoint& p) const {
    if (p.dim() != n_) throw Error("evaluate: dimension mismatch");
    std::vector<Rat> coords(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) coords[i] = Rat(p.c[i]);
    std::vector<Rat> vals;
    vals.reserve(comps_.size());
    bool all_zero = true;
    for (const auto& c : comps_) {
        Rat v = c.eval(coords);
        if (v != 0) all_zero = false;
        vals.push_back(v);
    }
    if (all_zero) return std::nullopt;
    return ProjPoint::from_rationals(vals);
}

std::string ProjectiveMap::str(const std::vector<std::string>& names) const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < comps_.size(); ++i) {
        if (i) os << " : ";
        os << comps_[i].str(names);
    }
    os << "]";
    return os.str();
}

AffineMap::AffineMap(int n, std::vector<Poly> components)
    : n_(n), comps_(std::move(components)) {
    if (static_cast<int>(comps_.size()) != n) throw Error("affine map on A^n needs n components");
    degree_ = 0;
    for (const auto& c : comps_) {
        if (c.nvars() != n) throw Error("affine component variable count must be n");
        degree_ = std::max(degree_, c.total_degree());
    }
    if (degree_ < 1) degree_ = std::max(degree_, 0);
}

AffPoint AffineMap::evaluate(const AffPoint& p) const {
    if (p.dim() != n_) throw Error("evaluate: dimension mismatch");
    std::vector<Rat> out;
    out.reserve(n_);
    for (const auto& c : comps_) out.push_back(c.eval(p.x));
    return AffPoint(std::move(out));
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
    if (inner.n_ != n_) throw Error("compose: dimension mismatch");
    std::vector<Poly> out;
    out.reserve(n_);
    for (const auto& c : comps_) out.push_back(c.substitute(inner.comps_));
    return AffineMap(n_, std::move(out));
}

bool AffineMap::is_identity() const {
    for (int i = 0; i < n_; ++i)
        if (!(comps_[i] == Poly::variable(n_, i))) return false;
    return true;
}

ProjectiveMap homogenize_affine(const AffineMap& g) {
    int n = g.n();
    int d = 0;
    for (const auto& c : g.components()) d = std::max(d, c.total_degree());
    if (d < 0) throw Error("homogenize_affine: zero map");
    if (d == 0) d = 1;  // constant maps still extend with w^1 ... w-degree matching below
    std::vector<Poly> comps;
    comps.reserve(n + 1);
    for (const auto& c : g.components()) {
        Poly h(n + 1);
        for (const auto& [m, coef] : c.terms()) {
            std::vector<int> e = m.e;
            e.push_back(d - m.degree());
            h.add_term(Monomial{std::move(e)}, coef);
        }
        comps.push_back(h);
    }
    std::vector<int> wexp(n + 1, 0);
    wexp[n] = d;
    comps.push_back(Poly::monomial(n + 1, std::move(wexp), Rat(1)));
    return ProjectiveMap(n, std::move(comps));
}

ProjectiveMap compose(const ProjectiveMap& outer, const ProjectiveMap& inner) {
    if (outer.n() != inner.n()) throw Error("compose: dimension mismatch");
    std::vector<Poly> out;
    out.reserve(outer.components().size());
    bool all_zero = true;
    for (const auto& c : outer.components()) {
        Poly s = c.substitute(inner.components());
        if (!s.is_zero()) all_zero = false;
        out.push_back(std::move(s));
    }
    if (all_zero) throw Error("compose: composed tuple is identically zero");
    return ProjectiveMap(outer.n(), std::move(out));
}

SubspaceUnion SubspaceUnion::intersect(const SubspaceUnion& a, const SubspaceUnion& b) {
    if (a.nvars != b.nvars) throw Error("subspace intersect: dimension mismatch");
    uint32_t full = (1u << a.nvars) - 1;
    SubspaceUnion out;
    out.nvars = a.nvars;
    for (uint32_t ma : a.masks) {
        for (uint32_t mb : b.masks) {
            uint32_t m = ma | mb;
            if (m == full) continue;  // empty in projective space
            out.masks.push_back(m);
        }
    }
    // keep minimal masks only
    std::sort(out.masks.begin(), out.masks.end());
    out.masks.erase(std::unique(out.masks.begin(), out.masks.end()), out.masks.end());
    std::vector<uint32_t> minimal;
    for (uint32_t m : out.masks) {
        bool dominated = false;
        for (uint32_t k : minimal) {
            if ((k & m) == k) {
                dominated = true;
                break;
            }
        }
        if (!dominated) minimal.push_back(m);
    }
    out.masks = std::move(minimal);
    return out;
}

ProjPoint SubspaceUnion::witness_point(size_t index) const {
    if (index >= masks.size()) throw Error("witness_point: no such component");
    std::vector<Int> c(nvars, Int(1));
    for (int i = 0; i < nvars; ++i)
        if (masks[index] & (1u << i)) c[i] = 0;
    return ProjPoint(std::move(c));
}

std::string SubspaceUnion::str(const std::vector<std::string>& names) const {
    if (masks.empty()) return "{}";
    std::ostringstream os;
    for (size_t k = 0; k < masks.size(); ++k) {
        if (k) os << " u ";
        os << "{";
        bool first = true;
        for (int i = 0; i < nvars; ++i) {
            if (masks[k] & (1u << i)) {
                if (!first) os << ", ";
                os << names[i] << "=0";
                first = false;
            }
        }
        os << "}";
    }
    return os.str();
}

SubspaceUnion indeterminacy_monomial(const ProjectiveMap& f) {
    if (!f.is_monomial()) throw Error("indeterminacy_monomial: map is not monomial");
    int nv = f.n() + 1;
    uint32_t full = (1u << nv) - 1;
    // one support mask per nonzero component
    std::vector<uint32_t> supports;
    for (const auto& c : f.components()) {
        if (c.is_zero()) continue;
        const auto& [m, coef] = *c.terms().begin();
        uint32_t s = 0;
        for (int i = 0; i < nv; ++i)
            if (m.e[i] > 0) s |= (1u << i);
        supports.push_back(s);
    }
    // a point lies in Z iff for every component some variable of its support
    // vanishes: union over choice functions of one variable per component
    std::vector<uint32_t> sets{0u};
    for (uint32_t s : supports) {
        std::vector<uint32_t> next;
        for (uint32_t acc : sets) {
            if (acc & s) {
                next.push_back(acc);  // already covered
                continue;
            }
            for (int i = 0; i < nv; ++i)
                if (s & (1u << i)) next.push_back(acc | (1u << i));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sets = std::move(next);
    }
    SubspaceUnion out;
    out.nvars = nv;
    for (uint32_t m : sets)
        if (m != full) out.masks.push_back(m);
    SubspaceUnion trivial;
    trivial.nvars = nv;
    trivial.masks = {0u};
    return SubspaceUnion::intersect(out, trivial);  // reuses the minimal-mask reduction
}

MapFamily::MapFamily(int n, std::vector<Generator> generators, std::vector<std::string> variables)
    : n_(n), gens_(std::move(generators)), vars_(std::move(variables)) {
    if (gens_.empty()) throw Error("family needs at least one generator");
    for (const auto& g : gens_) {
        if (g.proj.n() != n_) throw Error("family generators disagree on dimension");
        if (g.affine && g.affine->n() != n_) throw Error("affine generator dimension mismatch");
        if (g.inverse) {
            if (!g.affine) throw Error("inverse declared without an affine map");
            if (!g.affine->compose(*g.inverse).is_identity() ||
                !g.inverse->compose(*g.affine).is_identity())
                throw Error("declared inverse fails compose-to-identity for '" + g.name + "'");
        }
        if (g.declared_dratio && g.declared_dratio->finite && g.declared_dratio->value < 1)
            throw Error("declared D-ratio below 1 for '" + g.name + "'");
    }
    if (vars_.empty()) vars_ = default_var_names(n_ + 1);
}

bool MapFamily::all_affine() const {
    for (const auto& g : gens_)
        if (!g.affine) return false;
    return true;
}

bool MapFamily::all_monomial() const {
    for (const auto& g : gens_)
        if (!g.proj.is_monomial()) return false;
    return true;
}

std::string RegularityVerdict::str() const {
    std::ostringstream os;
    switch (status) {
        case Status::Empty:
            os << "Empty (certified at saturation degree " << degree << ")";
            break;
        case Status::NonEmpty:
            os << "NonEmpty";
            if (witness) os << " (witness " << witness->str() << ")";
            if (!reason.empty()) os << " [" << reason << "]";
            break;
        case Status::Unknown:
            os << "Unknown (saturation bound " << degree << " reached)";
            break;
    }
    return os.str();
}

bool is_morphism(const ProjectiveMap& f) {
    if (f.is_monomial()) return indeterminacy_monomial(f).empty();
    return regularity_saturation({f}).is_empty();
}

RegularityVerdict regularity_combinatorial(const std::vector<ProjectiveMap>& maps) {
    if (maps.empty()) throw Error("regularity: empty family");
    SubspaceUnion acc = indeterminacy_monomial(maps[0]);
    for (size_t i = 1; i < maps.size() && !acc.empty(); ++i)
        acc = SubspaceUnion::intersect(acc, indeterminacy_monomial(maps[i]));
    RegularityVerdict v;
    if (acc.empty()) {
        v.status = RegularityVerdict::Status::Empty;
        v.degree = 0;
        v.reason = "combinatorial: monomial loci are disjoint";
    } else {
        v.status = RegularityVerdict::Status::NonEmpty;
        v.witness = acc.witness_point();
        v.reason = "combinatorial: common coordinate subspace";
    }
    return v;
}

RegularityVerdict joint_regularity(const std::vector<ProjectiveMap>& maps,
                                   std::optional<int> degree_cap) {
    if (maps.empty()) throw Error("joint_regularity: empty family");
    // tier i: a morphism in the family forces an empty intersection
    for (const auto& f : maps) {
        if (is_morphism(f)) {
            RegularityVerdict v;
            v.status = RegularityVerdict::Status::Empty;
            v.degree = 0;
            v.reason = "family contains a morphism";
            return v;
        }
    }
    // tier ii: exact combinatorics for monomial families
    bool monomial = true;
    for (const auto& f : maps)
        if (!f.is_monomial()) monomial = false;
    if (monomial) return regularity_combinatorial(maps);
    // tier iii: graded saturation plus witness search
    return regularity_saturation(maps, degree_cap);
}

RegularityVerdict joint_regularity(const MapFamily& family, std::optional<int> degree_cap) {
    std::vector<ProjectiveMap> maps;
    maps.reserve(family.size());
    for (const auto& g : family.generators()) maps.push_back(g.proj);
    return joint_regularity(maps, degree_cap);
}

}  // namespace arithdyn
