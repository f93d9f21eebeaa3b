#include "arithdyn/harness.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace arithdyn {

namespace {

std::string decimal(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

struct MarginRow {
    bool valid = false;
    ExactLog margin;
    Int m_point;
    std::vector<Int> m_images;
};

MarginRow margin_at(const MapFamily& family, const Rat& coefficient, const AffPoint& p) {
    MarginRow row;
    ProjPoint e = embed_affine(p);
    row.m_point = magnitude_proj(e);
    ExactLog h0 = ExactLog::log_of(row.m_point);
    ExactLog total;
    for (const auto& g : family.generators()) {
        auto img = g.proj.evaluate(e);
        if (!img) return row;  // indeterminate: skipped
        Int m = magnitude_proj(*img);
        row.m_images.push_back(m);
        Rat t(1, g.proj.degree());
        t.canonicalize();
        total = total + ExactLog::log_of(m).scaled(t);
    }
    row.margin = total - h0.scaled(coefficient);
    row.valid = true;
    return row;
}

struct ChunkResult {
    bool has_min = false;
    ExactLog min_margin;
    long violations = 0;
    long skipped = 0;
    long evaluated = 0;
    std::vector<BandMin> bands;
    std::vector<std::string> csv_rows;
};

std::vector<BandMin> make_bands(const Int& lo, const Int& hi) {
    std::vector<BandMin> bands;
    Int cur = lo;
    while (cur <= hi) {
        Int next = cur * 10;
        BandMin b;
        b.lo = cur;
        b.hi = next - 1 < hi ? Int(next - 1) : hi;
        bands.push_back(b);
        cur = next;
    }
    return bands;
}

void fold_band(std::vector<BandMin>& bands, const Int& m, const ExactLog& margin) {
    for (auto& b : bands) {
        if (m >= b.lo && m <= b.hi) {
            if (!b.any || margin < b.min_margin) {
                b.min_margin = margin;
                b.any = true;
            }
            return;
        }
    }
}

ChunkResult run_chunk(const MapFamily& family, const Rat& coefficient,
                      const std::vector<AffPoint>& points, size_t begin, size_t end,
                      const std::vector<BandMin>& band_template, bool want_csv) {
    ChunkResult out;
    out.bands = band_template;
    for (size_t i = begin; i < end; ++i) {
        MarginRow row = margin_at(family, coefficient, points[i]);
        if (!row.valid) {
            ++out.skipped;
            continue;
        }
        ++out.evaluated;
        if (row.margin.sign() < 0) ++out.violations;
        if (!out.has_min || row.margin < out.min_margin) {
            out.min_margin = row.margin;
            out.has_min = true;
        }
        fold_band(out.bands, row.m_point, row.margin);
        if (want_csv) {
            std::ostringstream os;
            os << '"' << points[i].str() << '"' << "," << row.m_point.get_str();
            for (const auto& m : row.m_images) os << "," << m.get_str();
            os << "," << row.margin.sign() << "," << decimal(row.margin.to_double());
            out.csv_rows.push_back(os.str());
        }
    }
    return out;
}

InequalityReport run_points(const MapFamily& family, const DRatioValue& r,
                            const std::vector<AffPoint>& points, int workers,
                            const std::string& csv_path, const SampleSpec& spec) {
    InequalityReport rep;
    rep.r = r;
    rep.spec = spec;
    bool main_form = family.size() >= 2 && r.finite;
    rep.form = main_form ? "main" : "jointly";
    rep.coefficient = main_form ? Rat(1) + Rat(1) / r.value : Rat(1);
    if (family.size() < 2)
        rep.discrepancies.push_back(
            "notice: single-generator family, falling back to the h(P) - C form");

    std::vector<BandMin> band_template = make_bands(spec.m_min < 2 ? Int(2) : spec.m_min,
                                                    spec.m_max);
    bool want_csv = !csv_path.empty();
    size_t n = points.size();
    int w = std::max(1, workers);
    std::vector<ChunkResult> chunks(w);
    if (w == 1) {
        chunks[0] = run_chunk(family, rep.coefficient, points, 0, n, band_template, want_csv);
    } else {
        std::vector<std::thread> threads;
        size_t per = (n + w - 1) / w;
        for (int t = 0; t < w; ++t) {
            size_t b = std::min(n, t * per), e = std::min(n, (t + 1) * per);
            threads.emplace_back([&, t, b, e] {
                chunks[t] = run_chunk(family, rep.coefficient, points, b, e, band_template,
                                      want_csv);
            });
        }
        for (auto& th : threads) th.join();
    }
    rep.bands = band_template;
    for (const auto& c : chunks) {
        rep.violations_strict += c.violations;
        rep.skipped_indeterminate += c.skipped;
        rep.evaluated += c.evaluated;
        if (c.has_min && (!rep.has_min || c.min_margin < rep.min_margin)) {
            rep.min_margin = c.min_margin;
            rep.has_min = true;
        }
        for (size_t i = 0; i < rep.bands.size(); ++i) {
            if (c.bands[i].any &&
                (!rep.bands[i].any || c.bands[i].min_margin < rep.bands[i].min_margin)) {
                rep.bands[i].min_margin = c.bands[i].min_margin;
                rep.bands[i].any = true;
            }
        }
    }
    if (rep.has_min) rep.fitted_c = -rep.min_margin;
    if (want_csv) {
        std::ofstream out(csv_path);
        if (!out) throw Error("cannot write CSV: " + csv_path);
        out << "point,M(P)";
        for (const auto& g : family.generators()) out << ",M(" << g.name << "(P))";
        out << ",margin_sign,margin\n";
        for (const auto& c : chunks)
            for (const auto& row : c.csv_rows) out << row << "\n";
    }
    return rep;
}

}  // namespace

std::string SampleSpec::str() const {
    std::ostringstream os;
    os << "seed=" << seed << " count=" << count << " M=[" << m_min.get_str() << ", "
       << m_max.get_str() << "]";
    return os.str();
}

InequalityReport verify_inequality(const MapFamily& family, const DRatioValue& r,
                                   const SampleSpec& spec, int workers,
                                   const std::string& csv_path) {
    RegularityVerdict verdict = joint_regularity(family);
    std::vector<std::string> discrepancies;
    if (!verdict.is_empty()) {
        std::string claim = family.claimed_regular.value_or(false)
                                ? "family is declared jointly regular"
                                : "height inequality assumes joint regularity";
        discrepancies.push_back(discrepancy_block(claim, "checker verdict: " + verdict.str()));
    }
    auto points = sample_points(family.n(), spec.m_min, spec.m_max, spec.count, spec.seed);
    InequalityReport rep = run_points(family, r, points, workers, csv_path, spec);
    rep.discrepancies.insert(rep.discrepancies.begin(), discrepancies.begin(),
                             discrepancies.end());
    return rep;
}

InequalityReport verify_inequality_points(const MapFamily& family, const DRatioValue& r,
                                          const std::vector<AffPoint>& points, int workers,
                                          const std::string& csv_path) {
    SampleSpec spec;
    spec.count = static_cast<int>(points.size());
    spec.m_min = 1;
    spec.m_max = 1;
    for (const auto& p : points) {
        Int m = magnitude_aff(p);
        if (m > spec.m_max) spec.m_max = m;
    }
    return run_points(family, r, points, workers, csv_path, spec);
}

std::string InequalityReport::text() const {
    std::ostringstream os;
    for (const auto& d : discrepancies) os << d << "\n";
    os << "form: " << (form == "main" ? "sum (1/d_l) h(f_l P) > (1 + 1/r) h(P) - C"
                                      : "sum (1/d_l) h(f_l P) > h(P) - C")
       << "\n";
    os << "r = " << r.str() << " (" << r.provenance << ")\n";
    os << "coefficient = " << coefficient.get_str() << "\n";
    os << "samples: " << spec.str() << ", evaluated " << evaluated << ", skipped "
       << skipped_indeterminate << " (indeterminate)\n";
    if (has_min) {
        os << "minimal margin = " << decimal(min_margin.to_double()) << "   exact "
           << min_margin.str() << "\n";
        os << "fitted C = " << decimal(fitted_c.to_double()) << "   exact " << fitted_c.str()
           << "\n";
    }
    os << "strict-form violations (C = 0): " << violations_strict
       << "; fitted-form violations: 0 by construction\n";
    os << "band minima:\n";
    for (const auto& b : bands) {
        os << "  M in [" << b.lo.get_str() << ", " << b.hi.get_str() << "]: ";
        if (b.any)
            os << decimal(b.min_margin.to_double());
        else
            os << "(no samples)";
        os << "\n";
    }
    return os.str();
}

NorthcottReport northcott_check(const ProjectiveMap& f, const std::vector<AffPoint>& points) {
    if (!is_morphism(f)) throw Error("northcott_check: map has a nonempty indeterminacy locus");
    NorthcottReport rep;
    rep.degree = f.degree();
    Rat inv_d(1, f.degree());
    inv_d.canonicalize();
    for (const auto& p : points) {
        ProjPoint e = embed_affine(p);
        auto img = f.evaluate(e);
        if (!img) throw Error("internal: morphism evaluation failed");
        ExactLog u = ExactLog::log_of(magnitude_proj(e)) -
                     ExactLog::log_of(magnitude_proj(*img)).scaled(inv_d);
        ExactLog nu = -u;
        if (!rep.has_fit) {
            rep.c1 = u;
            rep.c2 = nu;
            rep.has_fit = true;
        } else {
            if (rep.c1 < u) rep.c1 = u;
            if (rep.c2 < nu) rep.c2 = nu;
        }
        ++rep.evaluated;
    }
    return rep;
}

std::string NorthcottReport::text() const {
    std::ostringstream os;
    os << "degree " << degree << ", " << evaluated << " points\n";
    if (has_fit) {
        os << "fitted C1 = " << decimal(c1.to_double()) << "   exact " << c1.str() << "\n";
        os << "fitted C2 = " << decimal(c2.to_double()) << "   exact " << c2.str() << "\n";
    }
    return os.str();
}

double KappaBand::ratio() const {
    if (exact_ratio) return exact_ratio->get_d();
    return min_num.to_double() / min_den.to_double();
}

namespace {

// Attempts to certify that num/den is exactly the rational q suggested by
// the decimal value; exact check via num - q*den == 0.
std::optional<Rat> exact_ratio_of(const ExactLog& num, const ExactLog& den) {
    double x = num.to_double() / den.to_double();
    // continued-fraction approximation with small denominator
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 24; ++it) {
        double fl = std::floor(v);
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > 64 || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = v - fl;
        if (std::abs(frac) < 1e-12) break;
        v = 1.0 / frac;
    }
    if (q1 <= 0) return std::nullopt;
    Rat q(p1, q1);
    q.canonicalize();
    if (std::abs(q.get_d() - x) > 1e-9) return std::nullopt;
    if (num.equals_multiple_of(den, q)) return q;
    return std::nullopt;
}

// -1 / 0 / +1 comparison of two log ratios; exact when both are certified
// rational, double-based otherwise (selection only; reported thresholds are
// still checked exactly via ratio_at_least).
int ratio_compare(const ExactLog& n1, const ExactLog& d1, const ExactLog& n2,
                  const ExactLog& d2) {
    double a = n1.to_double() / d1.to_double();
    double b = n2.to_double() / d2.to_double();
    if (a < b - 1e-9) return -1;
    if (a > b + 1e-9) return 1;
    auto q1 = exact_ratio_of(n1, d1);
    auto q2 = exact_ratio_of(n2, d2);
    if (q1 && q2) return *q1 < *q2 ? -1 : (*q1 == *q2 ? 0 : 1);
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

}  // namespace

bool ratio_at_least(const ExactLog& num, const ExactLog& den, const Rat& q) {
    if (den.sign() <= 0) throw Error("ratio_at_least: denominator must be positive");
    return (num - den.scaled(q)).sign() >= 0;
}

bool within_relative(const ExactLog& a, const ExactLog& b, const Rat& tol) {
    ExactLog diff = a - b;
    if (diff.sign() < 0) diff = -diff;
    ExactLog abs_a = a.sign() < 0 ? -a : a;
    ExactLog abs_b = b.sign() < 0 ? -b : b;
    const ExactLog& mx = abs_a < abs_b ? abs_b : abs_a;
    return !(mx.scaled(tol) < diff);
}

KappaReport kappa_estimate(const MapFamily& family, const std::vector<Int>& ladder, int per_band,
                           std::uint64_t seed) {
    if (ladder.empty()) throw Error("kappa_estimate: empty ladder");
    for (size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1]) throw Error("kappa_estimate: ladder must increase");
    if (ladder[0] <= 1) throw Error("kappa_estimate: bands need M > 1 (h = 0 excluded)");
    KappaReport rep;
    Int lo(2);
    for (size_t bi = 0; bi < ladder.size(); ++bi) {
        KappaBand band;
        band.lo = lo;
        band.hi = ladder[bi];
        auto points = sample_points(family.n(), band.lo, band.hi, per_band, seed + bi);
        for (const auto& p : points) {
            ProjPoint e = embed_affine(p);
            Int m0 = magnitude_proj(e);
            if (m0 <= 1) continue;
            ExactLog den = ExactLog::log_of(m0);
            ExactLog num;
            bool ok = true;
            for (const auto& g : family.generators()) {
                auto img = g.proj.evaluate(e);
                if (!img) {
                    ok = false;
                    break;
                }
                Rat t(1, g.proj.degree());
                t.canonicalize();
                num = num + ExactLog::log_of(magnitude_proj(*img)).scaled(t);
            }
            if (!ok) continue;
            ++band.count;
            if (!band.any || ratio_compare(num, den, band.min_num, band.min_den) < 0) {
                band.min_num = num;
                band.min_den = den;
                band.any = true;
            }
        }
        if (band.any) band.exact_ratio = exact_ratio_of(band.min_num, band.min_den);
        rep.bands.push_back(std::move(band));
        lo = ladder[bi] + 1;
    }
    return rep;
}

std::string KappaReport::text() const {
    std::ostringstream os;
    os << "band (magnitudes), samples, min ratio\n";
    for (const auto& b : bands) {
        os << "  [" << b.lo.get_str() << ", " << b.hi.get_str() << "]  " << b.count << "  ";
        if (b.any) {
            os << decimal(b.ratio());
            if (b.exact_ratio) os << " (exact " << b.exact_ratio->get_str() << ")";
        } else {
            os << "(no samples)";
        }
        os << "\n";
    }
    return os.str();
}

std::string discrepancy_block(const std::string& claim, const std::string& computed) {
    std::ostringstream os;
    os << "==================== DISCREPANCY ====================\n";
    os << "claimed : " << claim << "\n";
    os << "computed: " << computed << "\n";
    os << "the computed verdict stands; continuing with the weaker applicable form\n";
    os << "=====================================================";
    return os.str();
}

}  // namespace arithdyn
