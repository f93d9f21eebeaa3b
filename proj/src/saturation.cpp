#include <algorithm>
#include <cstdint>
#include <map>

#include "arithdyn/maps.hpp"

namespace arithdyn {

namespace {

// ---------------------------------------------------------------- mod-p rank

// Sparse Gaussian elimination over F_p with a dense accumulator per row.
class ModpEliminator {
  public:
    ModpEliminator(uint64_t p, int cols) : p_(p), cols_(cols), pivot_of_col_(cols, -1) {}

    // row: (col, value) pairs; returns true if the row added a pivot.
    bool add_row(const std::vector<std::pair<int, uint64_t>>& row) {
        std::vector<uint64_t> dense(cols_, 0);
        for (auto [c, v] : row) dense[c] = (dense[c] + v) % p_;
        for (int c = 0; c < cols_; ++c) {
            if (dense[c] == 0) continue;
            int pr = pivot_of_col_[c];
            if (pr < 0) {
                uint64_t inv = inverse(dense[c]);
                std::vector<std::pair<int, uint64_t>> stored;
                for (int j = c; j < cols_; ++j)
                    if (dense[j]) stored.emplace_back(j, mulmod(dense[j], inv));
                pivot_of_col_[c] = static_cast<int>(rows_.size());
                rows_.push_back(std::move(stored));
                ++rank_;
                return true;
            }
            uint64_t f = dense[c];
            for (auto [j, v] : rows_[pr]) {
                uint64_t sub = mulmod(f, v);
                dense[j] = (dense[j] + p_ - sub) % p_;
            }
        }
        return false;
    }

    int rank() const { return rank_; }

  private:
    uint64_t mulmod(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>((__uint128_t)a * b % p_);
    }
    uint64_t powmod(uint64_t b, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    }
    uint64_t inverse(uint64_t a) const { return powmod(a, p_ - 2); }

    uint64_t p_;
    int cols_;
    std::vector<int> pivot_of_col_;
    std::vector<std::vector<std::pair<int, uint64_t>>> rows_;
    int rank_ = 0;
};

void gen_monomials(int nvars, int degree, std::vector<int>& cur, std::vector<Monomial>& out) {
    if (static_cast<int>(cur.size()) == nvars - 1) {
        int used = 0;
        for (int e : cur) used += e;
        cur.push_back(degree - used);
        out.push_back(Monomial{cur});
        cur.pop_back();
        return;
    }
    int used = 0;
    for (int e : cur) used += e;
    for (int e = 0; e <= degree - used; ++e) {
        cur.push_back(e);
        gen_monomials(nvars, degree, cur, out);
        cur.pop_back();
    }
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
    std::vector<Monomial> out;
    std::vector<int> cur;
    gen_monomials(nvars, degree, cur, out);
    return out;
}

struct GradedPiece {
    std::vector<Monomial> basis;
    std::map<Monomial, int, GrlexLess> index;
};

GradedPiece graded_piece(int nvars, int degree) {
    GradedPiece g;
    g.basis = monomials_of_degree(nvars, degree);
    for (size_t i = 0; i < g.basis.size(); ++i) g.index[g.basis[i]] = static_cast<int>(i);
    return g;
}

struct IntPoly {
    std::vector<std::pair<Monomial, Int>> terms;
    int degree = 0;
};

std::vector<IntPoly> integer_components(const std::vector<ProjectiveMap>& maps) {
    std::vector<IntPoly> out;
    for (const auto& f : maps) {
        for (const auto& c : f.components()) {
            if (c.is_zero()) continue;
            Poly norm = c.primitive_normalized();
            IntPoly ip;
            ip.degree = norm.total_degree();
            for (const auto& [m, q] : norm.terms()) ip.terms.emplace_back(m, q.get_num());
            out.push_back(std::move(ip));
        }
    }
    return out;
}

// Does the degree-N graded piece of the ideal generated by the components
// span all degree-N forms? Full rank mod a prime certifies spanning over Q
// (specialization can only lower rank), so an Empty verdict built on it is
// exact. A false negative across all three primes only postpones the
// certificate to a later degree.
bool spans_at_degree(const std::vector<IntPoly>& gens, int nvars, int N) {
    GradedPiece piece = graded_piece(nvars, N);
    int cols = static_cast<int>(piece.basis.size());
    std::vector<std::vector<std::pair<int, Int>>> rows;
    for (const auto& g : gens) {
        if (g.degree > N) continue;
        for (const auto& shift : monomials_of_degree(nvars, N - g.degree)) {
            std::vector<std::pair<int, Int>> row;
            row.reserve(g.terms.size());
            for (const auto& [m, c] : g.terms) row.emplace_back(piece.index.at(m * shift), c);
            rows.push_back(std::move(row));
        }
    }
    if (static_cast<int>(rows.size()) < cols) return false;
    static const uint64_t primes[] = {1000003ULL, 1000033ULL, 1000037ULL};
    for (uint64_t p : primes) {
        ModpEliminator elim(p, cols);
        for (const auto& r : rows) {
            std::vector<std::pair<int, uint64_t>> row;
            row.reserve(r.size());
            for (const auto& [col, c] : r) {
                Int rem = c % Int(static_cast<unsigned long>(p));
                if (rem < 0) rem += Int(static_cast<unsigned long>(p));
                uint64_t v = rem.get_ui();
                if (v) row.emplace_back(col, v);
            }
            elim.add_row(row);
            if (elim.rank() == cols) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------- witnesses

bool vanishes_everywhere(const std::vector<ProjectiveMap>& maps, const ProjPoint& p) {
    for (const auto& f : maps)
        if (f.evaluate(p)) return false;
    return true;
}

std::optional<ProjPoint> exhaustive_witness(const std::vector<ProjectiveMap>& maps, int bound) {
    int nv = maps[0].n() + 1;
    std::vector<Int> coords(nv, Int(-bound));
    while (true) {
        bool nonzero = false;
        for (const auto& c : coords)
            if (c != 0) nonzero = true;
        if (nonzero) {
            ProjPoint p{std::vector<Int>(coords)};
            if (vanishes_everywhere(maps, p)) return p;
        }
        int i = nv - 1;
        while (i >= 0) {
            ++coords[i];
            if (coords[i] <= bound) break;
            coords[i] = -bound;
            --i;
        }
        if (i < 0) break;
    }
    return std::nullopt;
}

uint64_t eval_mod_p(const IntPoly& g, const std::vector<uint64_t>& pt, uint64_t p) {
    uint64_t total = 0;
    for (const auto& [m, c] : g.terms) {
        Int r = c % Int(static_cast<unsigned long>(p));
        if (r < 0) r += Int(static_cast<unsigned long>(p));
        uint64_t v = r.get_ui();
        for (size_t i = 0; i < m.e.size(); ++i) {
            for (int k = 0; k < m.e[i]; ++k) v = (__uint128_t)v * pt[i] % p;
        }
        total = (total + v) % p;
    }
    return total;
}

// Common zeros of all components over P^n(F_p), lifted through small
// symmetric representatives and re-verified exactly.
std::optional<ProjPoint> modp_lifted_witness(const std::vector<ProjectiveMap>& maps) {
    int nv = maps[0].n() + 1;
    if (nv > 4) return std::nullopt;  // P^3 at most for the brute-force scan
    auto gens = integer_components(maps);
    static const uint64_t primes[] = {101, 103, 107};
    const long lift_bound = 30;
    for (uint64_t p : primes) {
        // projective representatives: first nonzero coordinate = 1
        std::vector<uint64_t> pt(nv, 0);
        for (int lead = 0; lead < nv; ++lead) {
            std::fill(pt.begin(), pt.end(), 0);
            pt[lead] = 1;
            int free_vars = nv - lead - 1;
            uint64_t count = 1;
            for (int i = 0; i < free_vars; ++i) count *= p;
            for (uint64_t code = 0; code < count; ++code) {
                uint64_t c = code;
                for (int i = lead + 1; i < nv; ++i) {
                    pt[i] = c % p;
                    c /= p;
                }
                bool zero = true;
                for (const auto& g : gens) {
                    if (eval_mod_p(g, pt, p) != 0) {
                        zero = false;
                        break;
                    }
                }
                if (!zero) continue;
                // lift coordinatewise via symmetric representatives
                std::vector<Int> lifted(nv);
                bool small = true;
                for (int i = 0; i < nv; ++i) {
                    long s = static_cast<long>(pt[i]);
                    if (s > static_cast<long>(p / 2)) s -= static_cast<long>(p);
                    if (s > lift_bound || s < -lift_bound) {
                        small = false;
                        break;
                    }
                    lifted[i] = s;
                }
                if (!small) continue;
                bool any = false;
                for (const auto& z : lifted)
                    if (z != 0) any = true;
                if (!any) continue;
                ProjPoint candidate{std::move(lifted)};
                if (vanishes_everywhere(maps, candidate)) return candidate;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

int default_saturation_cap(const std::vector<ProjectiveMap>& maps) {
    // product of max(d_i, 3) over the min(k, n+1) largest-degree generators
    std::vector<int> degs;
    for (const auto& f : maps) degs.push_back(f.degree());
    std::sort(degs.rbegin(), degs.rend());
    size_t take = std::min(degs.size(), static_cast<size_t>(maps[0].n() + 1));
    long cap = 1;
    for (size_t i = 0; i < take; ++i) cap *= std::max(degs[i], 3);
    return static_cast<int>(std::min(cap, 64L));
}

RegularityVerdict regularity_saturation(const std::vector<ProjectiveMap>& maps,
                                        std::optional<int> degree_cap) {
    if (maps.empty()) throw Error("regularity_saturation: empty family");
    int nvars = maps[0].n() + 1;
    for (const auto& f : maps)
        if (f.n() + 1 != nvars) throw Error("regularity_saturation: dimension mismatch");
    int cap = degree_cap.value_or(default_saturation_cap(maps));
    auto gens = integer_components(maps);
    for (int N = 1; N <= cap; ++N) {
        if (spans_at_degree(gens, nvars, N)) {
            RegularityVerdict v;
            v.status = RegularityVerdict::Status::Empty;
            v.degree = N;
            v.reason = "graded piece spans all degree-" + std::to_string(N) + " forms";
            return v;
        }
    }
    // not certified; look for an exact witness
    for (int bound = 1; bound <= 2; ++bound) {
        if (auto w = exhaustive_witness(maps, bound)) {
            RegularityVerdict v;
            v.status = RegularityVerdict::Status::NonEmpty;
            v.witness = *w;
            v.reason = "exact witness by low-height search";
            return v;
        }
    }
    if (auto w = modp_lifted_witness(maps)) {
        RegularityVerdict v;
        v.status = RegularityVerdict::Status::NonEmpty;
        v.witness = *w;
        v.reason = "exact witness lifted from a finite-field zero";
        return v;
    }
    RegularityVerdict v;
    v.status = RegularityVerdict::Status::Unknown;
    v.degree = cap;
    v.reason = "saturation bound reached without certificate or witness";
    return v;
}

}  // namespace arithdyn
