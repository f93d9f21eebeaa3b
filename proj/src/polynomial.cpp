#include "arithdyn/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace arithdyn {

Rat parse_rat(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw Error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rat q(s);
            q.canonicalize();
            return q;
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in rational literal: " + text);
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational literal: " + text);
    }
}

std::string rat_str(const Rat& q) { return q.get_str(); }
std::string int_str(const Int& z) { return z.get_str(); }

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Int num = pow_int(base.get_num(), a);
    Int den = pow_int(base.get_den(), a);
    Rat r = e < 0 ? Rat(den, num) : Rat(num, den);
    r.canonicalize();
    return r;
}

Int lcm_int(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

int Monomial::degree() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

bool Monomial::divides(const Monomial& other) const {
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > other.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += other.e[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] -= other.e[i];
    return r;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
}

Poly Poly::constant(int nvars, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[Monomial{std::vector<int>(nvars, 0)}] = c;
    return p;
}

Poly Poly::variable(int nvars, int index) {
    std::vector<int> e(nvars, 0);
    e[index] = 1;
    return monomial(nvars, std::move(e), Rat(1));
}

Poly Poly::monomial(int nvars, std::vector<int> exps, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[Monomial{std::move(exps)}] = c;
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.degree() == 0;
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    Monomial unit{std::vector<int>(nvars_, 0)};
    auto it = terms_.find(unit);
    return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
}

int Poly::degree_in(int var) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.e[var]);
    return d;
}

int Poly::order_at_origin() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.degree();
}

bool Poly::is_homogeneous(int* degree_out) const {
    if (terms_.empty()) {
        if (degree_out) *degree_out = -1;
        return true;
    }
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

Rat Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    if (nvars_ != o.nvars_) throw Error("variable-count mismatch in +");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    if (nvars_ != o.nvars_) throw Error("variable-count mismatch in -");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw Error("variable-count mismatch in *");
    Poly r(nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Poly Poly::pow(unsigned int k) const {
    Poly r = Poly::constant(nvars_, Rat(1));
    Poly base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    if (static_cast<int>(images.size()) != nvars_)
        throw Error("substitute: image count does not match variable count");
    int m = images.empty() ? 0 : images[0].nvars();
    for (const auto& g : images)
        if (g.nvars() != m) throw Error("substitute: images disagree on variable count");
    // cache powers of each image
    std::vector<std::vector<Poly>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(Poly::constant(m, Rat(1)));
    Poly result(m);
    for (const auto& [mono, c] : terms_) {
        Poly term = Poly::constant(m, c);
        for (int i = 0; i < nvars_; ++i) {
            int e = mono.e[i];
            if (e == 0) continue;
            auto& cache = powers[i];
            while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
            term = term * cache[e];
        }
        result = result + term;
    }
    return result;
}

Poly Poly::translate(const std::vector<Rat>& shift) const {
    if (static_cast<int>(shift.size()) != nvars_) throw Error("translate: dimension mismatch");
    bool all_zero = true;
    for (const auto& s : shift)
        if (s != 0) all_zero = false;
    if (all_zero) return *this;
    std::vector<Poly> images;
    images.reserve(nvars_);
    for (int i = 0; i < nvars_; ++i)
        images.push_back(Poly::variable(nvars_, i) + Poly::constant(nvars_, shift[i]));
    return substitute(images);
}

Rat Poly::eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw Error("eval: dimension mismatch");
    Rat total(0);
    for (const auto& [m, c] : terms_) {
        Rat v = c;
        for (int i = 0; i < nvars_; ++i)
            if (m.e[i]) v *= pow_rat(point[i], m.e[i]);
        total += v;
    }
    return total;
}

std::pair<Monomial, Rat> Poly::leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

Monomial Poly::monomial_content() const {
    Monomial m{std::vector<int>(nvars_, 0)};
    if (terms_.empty()) return m;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        if (first) {
            m = mono;
            first = false;
        } else {
            for (int i = 0; i < nvars_; ++i) m.e[i] = std::min(m.e[i], mono.e[i]);
        }
    }
    return m;
}

Poly Poly::divide_by_monomial(const Monomial& m) const {
    Poly r(nvars_);
    for (const auto& [mono, c] : terms_) {
        if (!m.divides(mono)) throw Error("divide_by_monomial: not divisible");
        r.terms_[mono / m] = c;
    }
    return r;
}

Poly Poly::primitive_normalized() const {
    if (terms_.empty()) return *this;
    Int den_lcm(1);
    for (const auto& [m, c] : terms_) den_lcm = lcm_int(den_lcm, c.get_den());
    Int num_gcd(0);
    for (const auto& [m, c] : terms_) {
        Int scaled = c.get_num() * (den_lcm / c.get_den());
        Int g;
        mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
        num_gcd = g;
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    Poly r = (*this) * scale;
    if (r.leading_term().second < 0) r = -r;
    return r;
}

std::optional<Poly> try_divide(const Poly& p, const Poly& d) {
    if (p.nvars() != d.nvars()) throw Error("try_divide: variable-count mismatch");
    if (d.is_zero()) throw Error("try_divide: division by zero polynomial");
    Poly q(p.nvars());
    Poly r = p;
    auto [dm, dc] = d.leading_term();
    while (!r.is_zero()) {
        auto [rm, rc] = r.leading_term();
        if (!dm.divides(rm)) return std::nullopt;
        Monomial qm = rm / dm;
        Rat qc = rc / dc;
        Poly t = Poly::monomial(p.nvars(), qm.e, qc);
        q = q + t;
        r = r - t * d;
    }
    return q;
}

namespace {

// View of p as a dense univariate polynomial in variable v with Poly
// coefficients (the coefficients do not involve v).
std::vector<Poly> coeffs_in_var(const Poly& p, int v) {
    int d = std::max(p.degree_in(v), 0);
    std::vector<Poly> out(static_cast<size_t>(d) + 1, Poly(p.nvars()));
    for (const auto& [m, c] : p.terms()) {
        Monomial stripped = m;
        int e = stripped.e[v];
        stripped.e[v] = 0;
        out[e].add_term(stripped, c);
    }
    return out;
}

Poly divide_exact(const Poly& p, const Poly& d) {
    auto q = try_divide(p, d);
    if (!q) throw Error("internal: expected exact polynomial division");
    return *q;
}

Poly gcd_core(Poly p, Poly q);

// gcd of the coefficients of p viewed in variable v.
Poly content_in_var(const Poly& p, int v) {
    auto coeffs = coeffs_in_var(p, v);
    Poly g(p.nvars());
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.primitive_normalized() : gcd_core(g, c);
        if (g.is_constant()) return Poly::constant(p.nvars(), Rat(1));
    }
    return g;
}

// Pseudo-remainder of a by b in variable v (lc(b)^(da-db+1) * a mod b).
Poly pseudo_rem(const Poly& a, const Poly& b, int v) {
    int db = b.degree_in(v);
    auto bc = coeffs_in_var(b, v);
    Poly lc_b = bc[db];
    Poly r = a;
    int dr = r.degree_in(v);
    int steps = dr - db + 1;
    int n = a.nvars();
    while (!r.is_zero() && (dr = r.degree_in(v)) >= db) {
        auto rc = coeffs_in_var(r, v);
        Poly lead = rc[dr];
        std::vector<int> shift(n, 0);
        shift[v] = dr - db;
        Poly t = lead * Poly::monomial(n, shift, Rat(1));
        r = r * lc_b - t * b;
        --steps;
    }
    // normalize to the standard pseudo-remainder power
    for (; steps > 0; --steps) r = r * lc_b;
    return r;
}

// Subresultant PRS gcd of two polynomials primitive in v with deg_v >= 1.
Poly prs_gcd(Poly a, Poly b, int v) {
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
    int n = a.nvars();
    Poly g = Poly::constant(n, Rat(1));
    Poly h = Poly::constant(n, Rat(1));
    while (true) {
        int da = a.degree_in(v), db = b.degree_in(v);
        int delta = da - db;
        Poly r = pseudo_rem(a, b, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) {
            b = Poly::constant(n, Rat(1));
            break;
        }
        a = b;
        Poly divisor = g * h.pow(static_cast<unsigned>(delta));
        b = divide_exact(r, divisor);
        g = coeffs_in_var(a, v)[a.degree_in(v)];
        if (delta >= 1) {
            Poly gd = g.pow(static_cast<unsigned>(delta));
            h = delta == 1 ? gd : divide_exact(gd, h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
    // strip content in v to get the primitive gcd part
    Poly cont = content_in_var(b, v);
    Poly pp = cont.is_constant() ? b : divide_exact(b, cont);
    return pp.primitive_normalized();
}

Poly gcd_core(Poly p, Poly q) {
    p = p.primitive_normalized();
    q = q.primitive_normalized();
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    if (p.is_constant() || q.is_constant()) return Poly::constant(p.nvars(), Rat(1));
    int v = -1;
    for (int i = p.nvars() - 1; i >= 0; --i) {
        if (p.degree_in(i) > 0 || q.degree_in(i) > 0) {
            v = i;
            break;
        }
    }
    if (v < 0) return Poly::constant(p.nvars(), Rat(1));
    Poly cp = content_in_var(p, v);
    Poly cq = content_in_var(q, v);
    Poly c = gcd_core(cp, cq);
    Poly pp = cp.is_constant() ? p : divide_exact(p, cp);
    Poly qq = cq.is_constant() ? q : divide_exact(q, cq);
    if (pp.degree_in(v) == 0 || qq.degree_in(v) == 0) return c.primitive_normalized();
    Poly g = prs_gcd(pp, qq, v);
    return (c * g).primitive_normalized();
}

}  // namespace

Poly poly_gcd(const Poly& p, const Poly& q) {
    if (p.nvars() != q.nvars()) throw Error("poly_gcd: variable-count mismatch");
    if (p.is_zero() && q.is_zero()) throw Error("poly_gcd: both inputs zero");
    if (p.is_zero()) return q.primitive_normalized();
    if (q.is_zero()) return p.primitive_normalized();
    // factor out the monomial content first; the residual gcd is usually 1
    Monomial mp = p.monomial_content();
    Monomial mq = q.monomial_content();
    Monomial mg{std::vector<int>(p.nvars(), 0)};
    for (int i = 0; i < p.nvars(); ++i) mg.e[i] = std::min(mp.e[i], mq.e[i]);
    Poly pr = p.divide_by_monomial(mp);
    Poly qr = q.divide_by_monomial(mq);
    Poly core = gcd_core(pr, qr);
    Poly r = core * Poly::monomial(p.nvars(), mg.e, Rat(1));
    return r.primitive_normalized();
}

std::string default_var_name(int i) {
    static const char* names[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
    if (i < 8) return names[i];
    return "x" + std::to_string(i);
}

std::vector<std::string> default_var_names(int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(default_var_name(i));
    return out;
}

namespace {

std::string term_str(const Monomial& m, const Rat& c, const std::vector<std::string>& names,
                     bool leading) {
    std::ostringstream os;
    Rat a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (leading) {
        if (neg) os << "-";
    } else {
        os << (neg ? " - " : " + ");
    }
    bool unit = (a == 1);
    bool any_var = m.degree() > 0;
    if (!unit || !any_var) {
        os << a.get_str();
        if (any_var) os << "*";
    }
    bool first = true;
    for (size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << names[i];
        if (m.e[i] > 1) os << "^" << m.e[i];
    }
    return os.str();
}

}  // namespace

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    if (static_cast<int>(names.size()) != nvars_) throw Error("str: name count mismatch");
    std::ostringstream os;
    bool leading = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        os << term_str(it->first, it->second, names, leading);
        leading = false;
    }
    return os.str();
}

}  // namespace arithdyn
