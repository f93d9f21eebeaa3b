#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "arithdyn/exactlog.hpp"
#include "arithdyn/points.hpp"

namespace arithdyn {

// Heights are stored as exact integer magnitudes M with h = log M.
// Logarithms appear only in reports.

Int magnitude_proj(const ProjPoint& p);  // max |coordinate|
Int magnitude_aff(const AffPoint& p);    // magnitude of [1 : x_1 : ... : x_n]

inline ExactLog height_proj(const ProjPoint& p) { return ExactLog::log_of(magnitude_proj(p)); }
inline ExactLog height_aff(const AffPoint& p) { return ExactLog::log_of(magnitude_aff(p)); }

// Streams exactly the affine points with magnitude <= m_max, each once, in
// the documented order: common denominator q = 1..m_max ascending, then
// numerators lexicographically in [-m_max, m_max]^n with
// gcd(q, p_1, ..., p_n) = 1. Stops early when the visitor returns false.
void enumerate_points(int n, const Int& m_max, const std::function<bool(const AffPoint&)>& visit);

std::vector<AffPoint> enumerate_points_list(int n, const Int& m_max, size_t limit = SIZE_MAX);

// Deterministic seeded points with magnitude in [m_min, m_max]; identical
// output for identical arguments on any platform.
std::vector<AffPoint> sample_points(int n, const Int& m_min, const Int& m_max, int count,
                                    std::uint64_t seed);

}  // namespace arithdyn
