#include "arithdyn/heights.hpp"

#include <random>

namespace arithdyn {

Int magnitude_proj(const ProjPoint& p) {
    Int m(0);
    for (const auto& z : p.c) {
        Int a = abs(z);
        if (a > m) m = a;
    }
    return m;
}

Int magnitude_aff(const AffPoint& p) { return magnitude_proj(embed_affine(p)); }

void enumerate_points(int n, const Int& m_max,
                      const std::function<bool(const AffPoint&)>& visit) {
    if (m_max < 1) throw Error("enumerate_points: m_max must be >= 1");
    std::vector<Int> nums(n);
    for (Int q(1); q <= m_max; ++q) {
        // iterate numerators lexicographically in [-m_max, m_max]^n
        for (auto& v : nums) v = -m_max;
        while (true) {
            Int g = q;
            for (const auto& v : nums) {
                Int t;
                mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
                g = t;
            }
            if (g == 1) {
                std::vector<Rat> coords;
                coords.reserve(n);
                for (const auto& v : nums) {
                    Rat r(v, q);
                    r.canonicalize();
                    coords.push_back(r);
                }
                if (!visit(AffPoint(std::move(coords)))) return;
            }
            int i = n - 1;
            while (i >= 0) {
                ++nums[i];
                if (nums[i] <= m_max) break;
                nums[i] = -m_max;
                --i;
            }
            if (i < 0) break;
        }
    }
}

std::vector<AffPoint> enumerate_points_list(int n, const Int& m_max, size_t limit) {
    std::vector<AffPoint> out;
    enumerate_points(n, m_max, [&](const AffPoint& p) {
        out.push_back(p);
        return out.size() < limit;
    });
    return out;
}

namespace {

// mt19937_64 with modulo reduction: slightly biased but platform-independent;
// reports must reproduce byte-identically across machines.
Int bounded_rand(std::mt19937_64& rng, const Int& lo, const Int& hi) {
    Int span = hi - lo + 1;
    if (span <= 0) throw Error("bounded_rand: empty range");
    if (span.fits_ulong_p()) {
        unsigned long s = span.get_ui();
        return lo + Int(static_cast<unsigned long>(rng() % s));
    }
    // wide ranges: build a random integer from 64-bit limbs
    size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
    Int r(0);
    for (size_t produced = 0; produced < bits + 64; produced += 64) {
        r <<= 64;
        r += Int(static_cast<unsigned long>(rng()));
    }
    return lo + r % span;
}

}  // namespace

std::vector<AffPoint> sample_points(int n, const Int& m_min, const Int& m_max, int count,
                                    std::uint64_t seed) {
    if (m_min > m_max) throw Error("sample_points: empty magnitude range");
    if (m_min < 1) throw Error("sample_points: magnitudes start at 1");
    std::mt19937_64 rng(seed);
    std::vector<AffPoint> out;
    out.reserve(count);
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        Int q = bounded_rand(rng, Int(1), m_max);
        std::vector<Rat> coords;
        coords.reserve(n);
        for (int i = 0; i < n; ++i) {
            Int p = bounded_rand(rng, -m_max, m_max);
            Rat r(p, q);
            r.canonicalize();
            coords.push_back(r);
        }
        AffPoint pt(std::move(coords));
        Int m = magnitude_aff(pt);
        if (m >= m_min && m <= m_max) {
            out.push_back(std::move(pt));
            guard = 0;
        } else if (++guard > 100000) {
            throw Error("sample_points: rejection sampling stalled");
        }
    }
    return out;
}

}  // namespace arithdyn
