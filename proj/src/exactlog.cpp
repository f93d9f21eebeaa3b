#include "arithdyn/exactlog.hpp"

#include <cmath>
#include <sstream>

namespace arithdyn {

namespace {

unsigned long ulong_gcd(unsigned long a, unsigned long b) {
    while (b) {
        unsigned long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

void ExactLog::reduce() {
    Int g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g > 1) {
        mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
    if (num_ == 1 && den_ == 1) scale_ = 1;
}

ExactLog ExactLog::log_of(const Int& magnitude) {
    if (magnitude < 1) throw Error("ExactLog::log_of needs magnitude >= 1");
    ExactLog v;
    v.num_ = magnitude;
    return v;
}

ExactLog ExactLog::operator+(const ExactLog& o) const {
    unsigned long g = ulong_gcd(scale_, o.scale_);
    unsigned long l = scale_ / g * o.scale_;
    unsigned long ea = l / scale_, eb = l / o.scale_;
    ExactLog r;
    r.num_ = pow_int(num_, ea) * pow_int(o.num_, eb);
    r.den_ = pow_int(den_, ea) * pow_int(o.den_, eb);
    r.scale_ = l;
    r.reduce();
    return r;
}

ExactLog ExactLog::operator-() const {
    ExactLog r = *this;
    std::swap(r.num_, r.den_);
    return r;
}

ExactLog ExactLog::operator-(const ExactLog& o) const { return *this + (-o); }

ExactLog ExactLog::scaled(const Rat& q) const {
    if (q == 0) return ExactLog();
    Int a = q.get_num();
    Int b = q.get_den();
    bool neg = a < 0;
    if (neg) a = -a;
    if (!a.fits_ulong_p() || !b.fits_ulong_p()) throw Error("ExactLog::scaled: coefficient too large");
    unsigned long ua = a.get_ui(), ub = b.get_ui();
    ExactLog r;
    r.num_ = pow_int(num_, ua);
    r.den_ = pow_int(den_, ua);
    if (neg) std::swap(r.num_, r.den_);
    unsigned long s = scale_ * ub;
    if (ub != 0 && s / ub != scale_) throw Error("ExactLog::scaled: scale overflow");
    r.scale_ = s;
    r.reduce();
    return r;
}

int ExactLog::sign() const { return mpz_cmp(num_.get_mpz_t(), den_.get_mpz_t()); }

bool ExactLog::equals_multiple_of(const ExactLog& other, const Rat& q) const {
    return (*this - other.scaled(q)).is_zero();
}

double ExactLog::to_double() const {
    signed long ea, eb;
    double da = mpz_get_d_2exp(&ea, num_.get_mpz_t());
    double db = mpz_get_d_2exp(&eb, den_.get_mpz_t());
    static const double ln2 = std::log(2.0);
    double v = (std::log(da) + double(ea) * ln2) - (std::log(db) + double(eb) * ln2);
    return v / double(scale_);
}

std::string ExactLog::str() const {
    std::ostringstream os;
    os << "log(" << num_.get_str();
    if (den_ != 1) os << "/" << den_.get_str();
    os << ")";
    if (scale_ != 1) os << "/" << scale_;
    return os.str();
}

}  // namespace arithdyn
