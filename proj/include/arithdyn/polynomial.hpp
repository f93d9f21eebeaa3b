#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/rational.hpp"

namespace arithdyn {

// Exponent vector; length equals the ambient variable count.
struct Monomial {
    std::vector<int> e;

    int degree() const;
    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    Monomial operator/(const Monomial& other) const;  // requires divisibility
    bool operator==(const Monomial& other) const { return e == other.e; }
};

// Graded-lexicographic order: total degree first, then lex with earlier
// variables stronger. The map below iterates ascending, so the leading
// term is the last one.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
  public:
    using TermMap = std::map<Monomial, Rat, GrlexLess>;

    explicit Poly(int nvars = 0) : nvars_(nvars) {}

    static Poly zero(int nvars) { return Poly(nvars); }
    static Poly constant(int nvars, const Rat& c);
    static Poly variable(int nvars, int index);
    static Poly monomial(int nvars, std::vector<int> exps, const Rat& c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // 0 for the zero polynomial
    bool is_monomial_term() const { return terms_.size() == 1; }

    int total_degree() const;      // -1 for zero
    int degree_in(int var) const;  // -1 for zero
    int order_at_origin() const;   // min total degree of a term; -1 for zero
    bool is_homogeneous(int* degree_out = nullptr) const;

    Rat coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Rat& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    Poly pow(unsigned int k) const;

    // Replaces variable i by images[i]; all images share one variable count.
    Poly substitute(const std::vector<Poly>& images) const;
    // Translates variable i by shift[i] (var -> var + shift).
    Poly translate(const std::vector<Rat>& shift) const;

    Rat eval(const std::vector<Rat>& point) const;

    std::pair<Monomial, Rat> leading_term() const;  // grlex-largest; poly must be nonzero

    // Per-variable minimum exponent over all terms (the monomial content).
    Monomial monomial_content() const;
    Poly divide_by_monomial(const Monomial& m) const;

    // Scales to integer coefficients with content 1 and positive leading
    // coefficient. Zero stays zero.
    Poly primitive_normalized() const;

    std::string str(const std::vector<std::string>& names) const;

  private:
    int nvars_;
    TermMap terms_;
};

// Exact division; nullopt when d does not divide p.
std::optional<Poly> try_divide(const Poly& p, const Poly& d);

// Primitive gcd with positive leading coefficient under grlex.
// Content/primitive-part recursion over the variables with a subresultant
// pseudo-remainder sequence in the active variable.
Poly poly_gcd(const Poly& p, const Poly& q);

std::string default_var_name(int i);
std::vector<std::string> default_var_names(int n);

}  // namespace arithdyn
