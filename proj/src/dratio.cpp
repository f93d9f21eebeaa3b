#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "arithdyn/picard.hpp"

namespace arithdyn {

std::string DivisorClass::str() const {
    std::ostringstream os;
    os << "(" << coeffs[0].get_str() << ";";
    for (size_t i = 1; i < coeffs.size(); ++i) os << " " << coeffs[i].get_str();
    os << ")";
    return os.str();
}

PicLattice::PicLattice(std::vector<std::vector<int>> proximity, std::vector<int> h_mult)
    : r_(static_cast<int>(h_mult.size())),
      prox_(std::move(proximity)),
      hmult_(std::move(h_mult)),
      t_(r_ + 1, r_ + 1),
      g_proper_(r_ + 1, r_ + 1) {
    if (static_cast<int>(prox_.size()) != r_) throw Error("PicLattice: proximity size mismatch");
    for (int i = 0; i < r_; ++i)
        for (int j : prox_[i])
            if (j < 0 || j >= i) throw Error("PicLattice: proximity must reference earlier steps");
    // proper -> total: H^# = H - sum hm_i E_i^t, E_j^# = E_j^t - sum_{j in prox(k)} E_k^t
    t_.at(0, 0) = 1;
    for (int i = 1; i <= r_; ++i) {
        t_.at(i, 0) = -hmult_[i - 1];
        t_.at(i, i) = 1;
    }
    for (int k = 1; k <= r_; ++k)
        for (int j : prox_[k - 1]) t_.at(k, j + 1) = -1;
    // G_proper = T^t diag(1,-1,...,-1) T
    for (int i = 0; i <= r_; ++i) {
        for (int j = 0; j <= r_; ++j) {
            Rat sum(0);
            for (int k = 0; k <= r_; ++k) {
                Rat term = t_.at(k, i) * t_.at(k, j);
                sum += (k == 0) ? term : -term;
            }
            g_proper_.at(i, j) = sum;
        }
    }
    for (int i = 0; i <= r_; ++i)
        for (int j = 0; j < i; ++j)
            if (g_proper_.at(i, j) != g_proper_.at(j, i))
                throw Error("internal: intersection matrix must be symmetric");
}

DivisorClass PicLattice::to_total(const DivisorClass& c) const {
    if (c.basis != DivisorClass::Basis::Proper) throw Error("to_total: class already total");
    if (static_cast<int>(c.coeffs.size()) != r_ + 1) throw Error("to_total: dimension mismatch");
    DivisorClass out;
    out.basis = DivisorClass::Basis::Total;
    out.coeffs.assign(r_ + 1, Rat(0));
    for (int i = 0; i <= r_; ++i)
        for (int j = 0; j <= r_; ++j) out.coeffs[i] += t_.at(i, j) * c.coeffs[j];
    return out;
}

DivisorClass PicLattice::to_proper(const DivisorClass& c) const {
    if (c.basis != DivisorClass::Basis::Total) throw Error("to_proper: class already proper");
    if (static_cast<int>(c.coeffs.size()) != r_ + 1) throw Error("to_proper: dimension mismatch");
    // forward substitution against the unit lower-triangular T
    DivisorClass out;
    out.basis = DivisorClass::Basis::Proper;
    out.coeffs.assign(r_ + 1, Rat(0));
    for (int i = 0; i <= r_; ++i) {
        Rat v = c.coeffs[i];
        for (int j = 0; j < i; ++j) v -= t_.at(i, j) * out.coeffs[j];
        out.coeffs[i] = v;
    }
    return out;
}

bool afe_member(const DivisorClass& c) {
    if (c.basis != DivisorClass::Basis::Proper) throw Error("afe_member needs the proper basis");
    for (const auto& a : c.coeffs)
        if (a < 0) return false;
    return true;
}

bool afe_dominates(const DivisorClass& a, const DivisorClass& b) {
    if (a.basis != DivisorClass::Basis::Proper || b.basis != DivisorClass::Basis::Proper)
        throw Error("afe_dominates needs the proper basis");
    if (a.coeffs.size() != b.coeffs.size()) throw Error("afe_dominates: dimension mismatch");
    DivisorClass diff;
    diff.basis = DivisorClass::Basis::Proper;
    for (size_t i = 0; i < a.coeffs.size(); ++i) diff.coeffs.push_back(a.coeffs[i] - b.coeffs[i]);
    return afe_member(diff);
}

DRatioValue dratio_from_classes(const DivisorClass& pi_star, const DivisorClass& phi_star,
                                int degree) {
    if (pi_star.basis != DivisorClass::Basis::Proper ||
        phi_star.basis != DivisorClass::Basis::Proper)
        throw Error("dratio_from_classes needs proper-basis classes");
    if (pi_star.coeffs.size() != phi_star.coeffs.size())
        throw Error("dratio_from_classes: dimension mismatch");
    if (pi_star.coeffs[0] != 1 || phi_star.coeffs[0] != degree)
        throw Error("dratio_from_classes: malformed classes");
    Rat best(0);
    for (size_t i = 0; i < pi_star.coeffs.size(); ++i) {
        const Rat& a = pi_star.coeffs[i];
        const Rat& b = phi_star.coeffs[i];
        if (a == 0) continue;
        if (b == 0) return DRatioValue::infinity("blowup");
        Rat ratio = a / b;
        if (ratio > best) best = ratio;
    }
    return DRatioValue::of(Rat(degree) * best, "blowup");
}

BlowupScript ResolvedSystem::script() const {
    BlowupScript s;
    for (const auto& st : steps) s.steps.push_back({st.chart, st.point});
    return s;
}

std::string ResolvedSystem::report(const std::vector<std::string>& names) const {
    std::ostringstream os;
    os << "map: " << map.str(names) << "\n";
    os << "degree: " << map.degree() << "\n";
    os << "blowups: " << steps.size() << "\n";
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        os << "  E" << (i + 1) << ": chart " << s.chart << " at (" << s.point[0].get_str() << ", "
           << s.point[1].get_str() << "), image " << s.image_p2.str() << ", multiplicity "
           << s.multiplicities[0] << ", proximity {";
        for (size_t k = 0; k < s.proximity.size(); ++k)
            os << (k ? ", " : "") << "E" << (s.proximity[k] + 1);
        os << "}" << (s.on_strict_h ? ", on strict H" : "") << "\n";
    }
    DivisorClass pi_total = lattice.to_total(pi_star);
    DivisorClass phi_total = lattice.to_total(phi_star);
    os << "pi*H  (proper) = " << pi_star.str() << "   (total) = " << pi_total.str() << "\n";
    os << "phi*H (proper) = " << phi_star.str() << "   (total) = " << phi_total.str() << "\n";
    os << "intersection matrix (proper basis H#, E1..E" << lattice.r() << "):\n";
    for (int i = 0; i <= lattice.r(); ++i) {
        os << "  ";
        for (int j = 0; j <= lattice.r(); ++j)
            os << lattice.intersection_proper().at(i, j).get_str() << (j < lattice.r() ? " " : "");
        os << "\n";
    }
    os << "r = " << dratio.str() << "\n";
    return os.str();
}

std::string script_to_json(const BlowupScript& s) {
    nlohmann::json j;
    j["steps"] = nlohmann::json::array();
    for (const auto& st : s.steps) {
        nlohmann::json step;
        step["chart"] = st.chart;
        step["point"] = {st.point[0].get_str(), st.point[1].get_str()};
        j["steps"].push_back(step);
    }
    return j.dump(2);
}

BlowupScript script_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BlowupScript s;
    for (const auto& step : j.at("steps")) {
        ScriptStep st;
        st.chart = step.at("chart").get<std::string>();
        auto pt = step.at("point");
        if (pt.size() != 2) throw Error("script step point needs two coordinates");
        st.point = {parse_rat(pt[0].get<std::string>()), parse_rat(pt[1].get<std::string>())};
        s.steps.push_back(std::move(st));
    }
    return s;
}

namespace {

ProjectiveMap permute_coordinates(const ProjectiveMap& f, const std::array<int, 3>& perm) {
    // conjugation sigma^-1 . f . sigma for sigma(x)_i = x_{perm[i]}
    std::vector<Poly> sigma_images(3, Poly(3));
    for (int i = 0; i < 3; ++i) sigma_images[i] = Poly::variable(3, perm[i]);
    std::vector<Poly> comps(3, Poly(3));
    for (int i = 0; i < 3; ++i) comps[i] = f.components()[perm[i]].substitute(sigma_images);
    return ProjectiveMap(2, std::move(comps));
}

bool z_inside_last_hyperplane(const ProjectiveMap& f) {
    for (uint32_t m : indeterminacy_monomial(f).masks)
        if (!(m & (1u << 2))) return false;
    return true;
}

std::string perm_str(const std::array<int, 3>& perm) {
    std::ostringstream os;
    os << "(" << perm[0] << " " << perm[1] << " " << perm[2] << ")";
    return os.str();
}

}  // namespace

DRatioValue dratio_of_map(const ProjectiveMap& f) {
    if (is_morphism(f)) return DRatioValue::of(Rat(1), "morphism");
    if (f.n() == 2 && f.is_monomial()) {
        if (z_inside_last_hyperplane(f)) {
            DRatioValue r = resolve_toric(f).dratio;
            return r;
        }
        // try coordinate permutations moving a containing hyperplane to {z=0}
        static const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2},
                                                              {0, 2, 1},
                                                              {1, 0, 2},
                                                              {1, 2, 0},
                                                              {2, 0, 1},
                                                              {2, 1, 0}}};
        for (const auto& p : perms) {
            ProjectiveMap g = permute_coordinates(f, p);
            if (!g.is_monomial()) continue;
            if (z_inside_last_hyperplane(g)) {
                DRatioValue r = resolve_toric(g).dratio;
                r.provenance = "blowup after coordinate permutation " + perm_str(p);
                return r;
            }
        }
        throw Error("dratio: Z(f) is not contained in any coordinate hyperplane");
    }
    throw Error("dratio: no computation route applies to this map");
}

DRatioValue dratio_of(const Generator& g) {
    // morphism route
    if (is_morphism(g.proj)) return DRatioValue::of(Rat(1), "morphism");
    // regular-automorphism route: verified inverse and disjoint loci
    if (g.affine && g.inverse) {
        ProjectiveMap finv = homogenize_affine(*g.inverse);
        RegularityVerdict v = joint_regularity(std::vector<ProjectiveMap>{g.proj, finv});
        if (v.is_empty()) {
            Rat r = Rat(g.affine->degree()) * Rat(g.inverse->degree());
            return DRatioValue::of(r, "regular-automorphism");
        }
    }
    // blowup route for monomial maps on P^2
    if (g.proj.n() == 2 && g.proj.is_monomial()) {
        try {
            return dratio_of_map(g.proj);
        } catch (const Error&) {
            // fall through to the declared registry value
        }
    }
    if (g.declared_dratio) {
        DRatioValue out;
        out.finite = g.declared_dratio->finite;
        out.value = g.declared_dratio->value;
        out.provenance = g.declared_dratio->provenance;
        return out;
    }
    throw Error("dratio: no route applicable and no declared value for '" + g.name + "'");
}

DRatioValue family_max_dratio(const MapFamily& family) {
    DRatioValue best = DRatioValue::of(Rat(0), "none");
    bool first = true;
    for (const auto& g : family.generators()) {
        DRatioValue r = dratio_of(g);
        if (first || best < r) {
            std::string prov = g.name + ": " + r.provenance;
            best = r;
            best.provenance = prov;
        }
        first = false;
    }
    return best;
}

Rat delta_family(const MapFamily& family, const DRatioValue& r) {
    if (family.size() == 0) throw Error("delta: empty family");
    Rat coeff(1);
    if (r.finite) {
        if (r.value < 1) throw Error("delta: r must be >= 1");
        coeff = r.value / (r.value + 1);
    }
    Rat sum(0);
    for (const auto& g : family.generators()) {
        int d = g.proj.degree();
        if (d < 1) throw Error("delta: generator degree must be >= 1");
        Rat t(1, d);
        t.canonicalize();
        sum += t;
    }
    return coeff * sum;
}

}  // namespace arithdyn
