#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "arithdyn/exactlog.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/maps.hpp"
#include "arithdyn/picard.hpp"

namespace arithdyn {

// Word over generator indices 0..k-1; length m means membership in W_m.
using Word = std::vector<int>;

// f_{i_1}(f_{i_2}(...(P))) by pointwise evaluation; composition is never
// formed symbolically.
AffPoint apply_word(const MapFamily& family, const Word& w, const AffPoint& p);

// mu_I = product over entries of 1/deg f_{i_t}.
Rat word_mu(const MapFamily& family, const Word& w);

std::vector<Word> all_words(int k, int length);

struct OrbitRecord {
    enum class Status { Finite, SizeCapped, HeightCapped } status;
    AffPoint start;
    std::set<AffPoint> visited;
    Int max_magnitude;  // sup of magnitudes over visited

    bool finite() const { return status == Status::Finite; }
    std::string status_str() const;
};

// BFS over generator applications with canonical deduplication. Finite
// verdicts are closed orbits and re-verified; capped verdicts are
// inconclusive by construction.
OrbitRecord orbit_explore(const MapFamily& family, const AffPoint& start, size_t size_cap,
                          const Int& magnitude_cap);

// C / (1 - delta); requires 0 <= delta < 1.
Rat telescoping_bound(const Rat& delta, const Rat& c);

struct TelescopeResult {
    ExactLog margin;  // value of the telescoped right-hand side at P
    int sign;         // exact sign
    long terms;       // number of word evaluations
};

// Explicitly evaluates the depth-M telescoped inequality at P with the
// constant C given as an exact log magnitude; test oracle for delta, mu and
// orbit heights. Families with fewer than two generators or infinite r fall
// back to the coefficient-1 form.
TelescopeResult telescoping_verify(const MapFamily& family, const DRatioValue& r,
                                   const AffPoint& p, int depth, const ExactLog& c,
                                   long max_words = 100000);

struct PreperiodicSearchResult {
    Int bound;  // search domain: points with magnitude <= bound
    std::vector<std::pair<AffPoint, OrbitRecord>> preperiodic;
    long inconclusive = 0;  // capped orbits
    long scanned = 0;
};

// Enumerates all P with M(P) <= ceil(exp(C_est/(1-delta) + margin)), explores
// each orbit, and returns the rigorously finite ones.
PreperiodicSearchResult preperiodic_search(const MapFamily& family, const DRatioValue& r,
                                           const Rat& c_est, double margin, size_t size_cap,
                                           const Int& magnitude_cap);

}  // namespace arithdyn
