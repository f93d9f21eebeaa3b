#include "arithdyn/dynamics.hpp"

#include <cmath>
#include <deque>

namespace arithdyn {

AffPoint apply_word(const MapFamily& family, const Word& w, const AffPoint& p) {
    if (!family.all_affine()) throw Error("apply_word needs an all-affine family");
    AffPoint cur = p;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        int i = *it;
        if (i < 0 || i >= static_cast<int>(family.size())) throw Error("word index out of range");
        cur = family.generators()[i].affine->evaluate(cur);
    }
    return cur;
}

Rat word_mu(const MapFamily& family, const Word& w) {
    Rat mu(1);
    for (int i : w) {
        if (i < 0 || i >= static_cast<int>(family.size())) throw Error("word index out of range");
        Rat t(1, family.generators()[i].proj.degree());
        t.canonicalize();
        mu *= t;
    }
    return mu;
}

std::vector<Word> all_words(int k, int length) {
    std::vector<Word> out{Word{}};
    for (int step = 0; step < length; ++step) {
        std::vector<Word> next;
        next.reserve(out.size() * k);
        for (const auto& w : out) {
            for (int i = 0; i < k; ++i) {
                Word e = w;
                e.push_back(i);
                next.push_back(std::move(e));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::string OrbitRecord::status_str() const {
    switch (status) {
        case Status::Finite: return "Finite";
        case Status::SizeCapped: return "SizeCapped";
        case Status::HeightCapped: return "HeightCapped";
    }
    return "?";
}

OrbitRecord orbit_explore(const MapFamily& family, const AffPoint& start, size_t size_cap,
                          const Int& magnitude_cap) {
    if (!family.all_affine()) throw Error("orbit_explore needs an all-affine family");
    if (size_cap < 1 || magnitude_cap < 1) throw Error("orbit_explore: caps must be >= 1");
    OrbitRecord rec;
    rec.start = start;
    rec.max_magnitude = 0;
    std::deque<AffPoint> queue;
    auto push = [&](const AffPoint& p) -> bool {
        Int m = magnitude_aff(p);
        if (m > magnitude_cap) {
            rec.status = OrbitRecord::Status::HeightCapped;
            return false;
        }
        if (rec.visited.insert(p).second) {
            if (rec.visited.size() > size_cap) {
                rec.status = OrbitRecord::Status::SizeCapped;
                return false;
            }
            if (m > rec.max_magnitude) rec.max_magnitude = m;
            queue.push_back(p);
        }
        return true;
    };
    rec.status = OrbitRecord::Status::Finite;
    if (!push(start)) return rec;
    while (!queue.empty()) {
        AffPoint p = queue.front();
        queue.pop_front();
        for (const auto& g : family.generators()) {
            if (!push(g.affine->evaluate(p))) return rec;
        }
    }
    // closure re-verification: every generator maps visited into visited
    for (const auto& p : rec.visited) {
        for (const auto& g : family.generators()) {
            if (!rec.visited.count(g.affine->evaluate(p)))
                throw Error("internal: finite orbit fails closure re-verification");
        }
    }
    return rec;
}

Rat telescoping_bound(const Rat& delta, const Rat& c) {
    if (delta < 0 || delta >= 1) throw Error("telescoping_bound needs 0 <= delta < 1");
    return c / (Rat(1) - delta);
}

TelescopeResult telescoping_verify(const MapFamily& family, const DRatioValue& r,
                                   const AffPoint& p, int depth, const ExactLog& c,
                                   long max_words) {
    if (!family.all_affine()) throw Error("telescoping_verify needs an all-affine family");
    int k = static_cast<int>(family.size());
    bool main_form = k >= 2 && r.finite;
    Rat coeff = main_form ? Rat(1) + Rat(1) / r.value : Rat(1);   // (1 + 1/r)
    Rat factor = main_form ? r.value / (r.value + 1) : Rat(1);    // r/(r+1)
    long total_words = 0;
    for (int m = 0; m <= depth; ++m) {
        double count = std::pow(double(k), m);
        total_words += static_cast<long>(count);
        if (total_words > max_words) throw Error("telescoping_verify: word-count overflow");
    }
    TelescopeResult out;
    out.terms = 0;
    ExactLog margin;
    Rat const_weight(0);
    for (int m = 0; m <= depth; ++m) {
        Rat fm = pow_rat(factor, m);
        for (const auto& w : all_words(k, m)) {
            Rat mu = word_mu(family, w);
            AffPoint q = apply_word(family, w, p);
            ExactLog hq = height_aff(q);
            ExactLog inner;  // sum 1/d_l h(f_l(q)) - (1+1/r) h(q)
            for (const auto& g : family.generators()) {
                ExactLog h = height_aff(g.affine->evaluate(q));
                Rat t(1, g.proj.degree());
                t.canonicalize();
                inner = inner + h.scaled(t);
                ++out.terms;
            }
            inner = inner - hq.scaled(coeff);
            margin = margin + inner.scaled(mu * fm);
            const_weight += mu * fm;
        }
    }
    margin = margin + c.scaled(const_weight);
    out.margin = margin;
    out.sign = margin.sign();
    return out;
}

PreperiodicSearchResult preperiodic_search(const MapFamily& family, const DRatioValue& r,
                                           const Rat& c_est, double margin, size_t size_cap,
                                           const Int& magnitude_cap) {
    if (c_est < 0) throw Error("preperiodic_search: C_est must be >= 0");
    Rat delta = delta_family(family, r);
    if (delta >= 1) throw Error("preperiodic_search: delta_S >= 1, theorem hypothesis violated");
    Rat bound_log = telescoping_bound(delta, c_est);
    // the bound is a search-domain parameter, not a verdict; doubles suffice
    double exponent = bound_log.get_d() + margin;
    double raw = std::exp(exponent);
    if (raw > 1e12) throw Error("preperiodic_search: bound too large to enumerate");
    Int bound = Int(static_cast<long>(std::ceil(raw)));
    if (bound < 1) bound = 1;
    PreperiodicSearchResult out;
    out.bound = bound;
    enumerate_points(family.n(), bound, [&](const AffPoint& p) {
        ++out.scanned;
        OrbitRecord rec = orbit_explore(family, p, size_cap, magnitude_cap);
        if (rec.finite())
            out.preperiodic.emplace_back(p, std::move(rec));
        else
            ++out.inconclusive;
        return true;
    });
    return out;
}

}  // namespace arithdyn
