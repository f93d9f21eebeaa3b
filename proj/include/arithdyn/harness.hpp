#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/dynamics.hpp"
#include "arithdyn/exactlog.hpp"
#include "arithdyn/family.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/picard.hpp"

namespace arithdyn {

struct SampleSpec {
    std::uint64_t seed = 1;
    int count = 1000;
    Int m_min = 2;
    Int m_max = 10000;
    std::string str() const;
};

struct BandMin {
    Int lo, hi;
    bool any = false;
    ExactLog min_margin;
};

// Margins are exact: sign and extremum come from integer-power comparison;
// the decimal rendering is presentation only. "Fitting C" means reporting the
// exact extremal margin over the sample, no regression.
struct InequalityReport {
    std::string family_id;
    DRatioValue r;
    SampleSpec spec;
    std::string form;  // "main" (coefficient 1 + 1/r) or "jointly" (coefficient 1)
    Rat coefficient;
    bool has_min = false;
    ExactLog min_margin;
    ExactLog fitted_c;  // = -min_margin
    long violations_strict = 0;
    long skipped_indeterminate = 0;
    long evaluated = 0;
    std::vector<BandMin> bands;
    std::vector<std::string> discrepancies;

    std::string text() const;
};

InequalityReport verify_inequality(const MapFamily& family, const DRatioValue& r,
                                   const SampleSpec& spec, int workers = 1,
                                   const std::string& csv_path = "");

// Same margins over caller-supplied points (used by enumeration-based runs).
InequalityReport verify_inequality_points(const MapFamily& family, const DRatioValue& r,
                                          const std::vector<AffPoint>& points, int workers = 1,
                                          const std::string& csv_path = "");

struct NorthcottReport {
    int degree = 1;
    long evaluated = 0;
    bool has_fit = false;
    ExactLog c1;  // extremal excess of h(P) over (1/d) h(f(P))
    ExactLog c2;  // extremal excess of (1/d) h(f(P)) over h(P)
    std::string text() const;
};

NorthcottReport northcott_check(const ProjectiveMap& f, const std::vector<AffPoint>& points);

struct KappaBand {
    Int lo, hi;
    int count = 0;
    bool any = false;
    ExactLog min_num;  // numerator of the minimal ratio
    ExactLog min_den;  // denominator (the height of the sample point)
    std::optional<Rat> exact_ratio;  // set when the minimal ratio is exactly rational
    double ratio() const;
};

struct KappaReport {
    std::string family_id;
    std::vector<KappaBand> bands;
    std::string text() const;
};

// Per band, the minimum over samples of sum_l (1/d_l) h(f_l(P)) / h(P).
KappaReport kappa_estimate(const MapFamily& family, const std::vector<Int>& ladder,
                           int per_band, std::uint64_t seed);

// Exact test of min_num/min_den >= q for rational q; used by the acceptance
// thresholds so the comparison never touches floating point.
bool ratio_at_least(const ExactLog& num, const ExactLog& den, const Rat& q);

// |a - b| <= tol * max(|a|, |b|), decided exactly.
bool within_relative(const ExactLog& a, const ExactLog& b, const Rat& tol);

std::string discrepancy_block(const std::string& claim, const std::string& computed);

}  // namespace arithdyn
