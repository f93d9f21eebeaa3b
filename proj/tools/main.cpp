#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arithdyn/family.hpp"
#include "arithdyn/harness.hpp"
#include "arithdyn/parser.hpp"

using namespace arithdyn;

namespace {

int count_components(const std::string& text) {
    int depth = 0, count = 1;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) ++count;
    }
    return count;
}

ProjectiveMap parse_map(const std::string& text) {
    std::string body = text;
    size_t first = body.find_first_not_of(" \t");
    if (first != std::string::npos && body[first] == '[') {
        size_t close = body.find_last_of(']');
        body = body.substr(first + 1, close - first - 1);
    }
    int comps = count_components(body);
    auto vars = default_var_names(comps);
    return ProjectiveMap(comps - 1, parse_poly_list(body, vars));
}

DRatioValue parse_r(const std::string& text) {
    if (text == "inf" || text == "infinity") return DRatioValue::infinity("command line");
    return DRatioValue::of(parse_rat(text), "command line");
}

DRatioValue family_r(const MapFamily& fam, const std::string& r_flag) {
    if (!r_flag.empty()) return parse_r(r_flag);
    return family_max_dratio(fam);
}

std::string dec(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

void print_regularity(const MapFamily& fam, const RegularityVerdict& v) {
    std::cout << "joint regularity: " << v.str() << "\n";
    if (fam.claimed_regular && *fam.claimed_regular && !v.is_empty())
        std::cout << discrepancy_block("family file declares the family jointly regular",
                                       "checker verdict: " + v.str())
                  << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational toolkit for heights, D-ratios and preperiodic points"};
    app.require_subcommand(1);

    // ------------------------------------------------------------ height
    auto* c_height = app.add_subcommand("height", "exact height of a point");
    std::string h_point, h_proj;
    c_height->add_option("--point", h_point, "affine point, e.g. \"1/2, 3\"");
    c_height->add_option("--proj", h_proj, "projective point, e.g. \"2:4:6\"");

    // ------------------------------------------------------------ eval
    auto* c_eval = app.add_subcommand("eval", "evaluate a map at a point");
    std::string e_map, e_proj, e_family, e_gen, e_point;
    c_eval->add_option("--map", e_map, "projective map, e.g. \"[x^2, y*z, z^2]\"");
    c_eval->add_option("--proj", e_proj, "projective point");
    c_eval->add_option("--family", e_family, "family JSON path");
    c_eval->add_option("--gen", e_gen, "generator name");
    c_eval->add_option("--point", e_point, "affine point");

    // ------------------------------------------------------------ compose
    auto* c_compose = app.add_subcommand("compose", "compose two projective maps (first after second)");
    std::string comp_a, comp_b;
    c_compose->add_option("--map", comp_a, "outer map")->required();
    c_compose->add_option("--with", comp_b, "inner map")->required();

    // ------------------------------------------------------------ check-regular
    auto* c_reg = app.add_subcommand("check-regular", "joint-regularity verdict for a family");
    std::string r_family;
    int r_cap = 0;
    c_reg->add_option("--family", r_family)->required();
    c_reg->add_option("--degree-cap", r_cap, "saturation degree cap override");

    // ------------------------------------------------------------ resolve
    auto* c_resolve = app.add_subcommand("resolve", "resolution of indeterminacy on P^2");
    std::string res_map, res_script;
    bool res_emit = false;
    c_resolve->add_option("--map", res_map)->required();
    c_resolve->add_option("--script", res_script, "blowup script JSON path");
    c_resolve->add_flag("--emit-script", res_emit, "print the executed script as JSON");

    // ------------------------------------------------------------ dratio
    auto* c_dratio = app.add_subcommand("dratio", "D-ratio of a map or family generators");
    std::string d_map, d_family, d_gen;
    c_dratio->add_option("--map", d_map);
    c_dratio->add_option("--family", d_family);
    c_dratio->add_option("--gen", d_gen);

    // ------------------------------------------------------------ delta
    auto* c_delta = app.add_subcommand("delta", "delta_S of a family");
    std::string del_family, del_r;
    c_delta->add_option("--family", del_family)->required();
    c_delta->add_option("--r", del_r, "override r (rational or 'inf')");

    // ------------------------------------------------------------ verify
    auto* c_verify = app.add_subcommand("verify", "empirical height-inequality report");
    std::string v_family, v_r, v_out;
    std::uint64_t v_seed = 1;
    int v_samples = 1000, v_workers = 1;
    long v_mmin = 2, v_mmax = 10000;
    c_verify->add_option("--family", v_family)->required();
    c_verify->add_option("--r", v_r);
    c_verify->add_option("--seed", v_seed);
    c_verify->add_option("--samples", v_samples);
    c_verify->add_option("--m-min", v_mmin);
    c_verify->add_option("--m-max", v_mmax);
    c_verify->add_option("--out", v_out, "CSV output path");
    c_verify->add_option("--workers", v_workers);

    // ------------------------------------------------------------ kappa
    auto* c_kappa = app.add_subcommand("kappa", "per-band minimal height ratios");
    std::string k_family, k_bands, k_out;
    int k_per = 2000;
    std::uint64_t k_seed = 1;
    c_kappa->add_option("--family", k_family)->required();
    c_kappa->add_option("--bands", k_bands, "comma list of band tops (default 10..10^6)");
    c_kappa->add_option("--per-band", k_per);
    c_kappa->add_option("--seed", k_seed);
    c_kappa->add_option("--out", k_out, "CSV output path");

    // ------------------------------------------------------------ northcott
    auto* c_north = app.add_subcommand("northcott", "Northcott constants for a morphism");
    std::string n_map;
    long n_mmax = 50;
    long n_limit = 10000;
    c_north->add_option("--map", n_map)->required();
    c_north->add_option("--m-max", n_mmax, "enumeration magnitude bound");
    c_north->add_option("--limit", n_limit, "max enumerated points");

    // ------------------------------------------------------------ orbit
    auto* c_orbit = app.add_subcommand("orbit", "explore the monoid orbit of a point");
    std::string o_family, o_point;
    long o_size_cap = 4096;
    std::string o_mag_cap = "1000000000000";
    c_orbit->add_option("--family", o_family)->required();
    c_orbit->add_option("--point", o_point)->required();
    c_orbit->add_option("--size-cap", o_size_cap);
    c_orbit->add_option("--mag-cap", o_mag_cap);

    // ------------------------------------------------------------ find-preperiodic
    auto* c_find = app.add_subcommand("find-preperiodic", "bounded-height preperiodic search");
    std::string f_family, f_r, f_out, f_c_est = "0", f_mag_cap = "1000000000000";
    double f_margin = 0.0;
    long f_size_cap = 4096;
    c_find->add_option("--family", f_family)->required();
    c_find->add_option("--r", f_r);
    c_find->add_option("--c-est", f_c_est, "rational estimate of the constant C");
    c_find->add_option("--margin", f_margin, "additive safety margin on the log bound");
    c_find->add_option("--size-cap", f_size_cap);
    c_find->add_option("--mag-cap", f_mag_cap);
    c_find->add_option("--out", f_out, "CSV output path");

    // ------------------------------------------------------------ telescope
    auto* c_tel = app.add_subcommand("telescope", "exact telescoped-inequality margin");
    std::string t_family, t_point, t_r;
    int t_depth = 1;
    long t_cmag = 1;
    c_tel->add_option("--family", t_family)->required();
    c_tel->add_option("--point", t_point)->required();
    c_tel->add_option("--depth", t_depth);
    c_tel->add_option("--c-mag", t_cmag, "constant C as log of this magnitude");
    c_tel->add_option("--r", t_r);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (c_height->parsed()) {
            if (!h_proj.empty()) {
                ProjPoint p = parse_proj_point(h_proj);
                Int m = magnitude_proj(p);
                std::cout << "point " << p.str() << "\nM = " << m.get_str()
                          << "\nh = " << dec(ExactLog::log_of(m).to_double()) << "\n";
            } else if (!h_point.empty()) {
                AffPoint p = parse_aff_point(h_point);
                Int m = magnitude_aff(p);
                std::cout << "point " << p.str() << "\nM = " << m.get_str()
                          << "\nh = " << dec(ExactLog::log_of(m).to_double()) << "\n";
            } else {
                throw Error("height: give --point or --proj");
            }
        } else if (c_eval->parsed()) {
            if (!e_map.empty()) {
                ProjectiveMap f = parse_map(e_map);
                ProjPoint p = parse_proj_point(e_proj);
                auto img = f.evaluate(p);
                std::cout << (img ? img->str() : std::string("Indeterminate")) << "\n";
            } else {
                MapFamily fam = family_from_file(e_family);
                const Generator* gen = nullptr;
                for (const auto& g : fam.generators())
                    if (g.name == e_gen) gen = &g;
                if (!gen) throw Error("no generator named '" + e_gen + "'");
                if (!gen->affine) throw Error("generator is projective-native; use --map");
                AffPoint p = parse_aff_point(e_point);
                std::cout << gen->affine->evaluate(p).str() << "\n";
            }
        } else if (c_compose->parsed()) {
            ProjectiveMap a = parse_map(comp_a);
            ProjectiveMap b = parse_map(comp_b);
            ProjectiveMap c = compose(a, b);
            std::cout << c.str(default_var_names(c.n() + 1)) << "\ndegree " << c.degree() << "\n";
        } else if (c_reg->parsed()) {
            MapFamily fam = family_from_file(r_family);
            auto cap = r_cap > 0 ? std::optional<int>(r_cap) : std::nullopt;
            RegularityVerdict v = joint_regularity(fam, cap);
            print_regularity(fam, v);
        } else if (c_resolve->parsed()) {
            ProjectiveMap f = parse_map(res_map);
            ResolvedSystem sys = res_script.empty()
                                     ? resolve_toric(f)
                                     : resolve_scripted(f, [&] {
                                           std::ifstream in(res_script);
                                           if (!in) throw Error("cannot open " + res_script);
                                           std::ostringstream buf;
                                           buf << in.rdbuf();
                                           return script_from_json(buf.str());
                                       }());
            std::cout << sys.report(default_var_names(f.n() + 1));
            if (res_emit) std::cout << script_to_json(sys.script()) << "\n";
        } else if (c_dratio->parsed()) {
            if (!d_map.empty()) {
                ProjectiveMap f = parse_map(d_map);
                DRatioValue r = dratio_of_map(f);
                std::cout << "r = " << r.str() << " (" << r.provenance << ")\n";
                if (f.n() == 2 && f.is_monomial() && !is_morphism(f)) {
                    try {
                        ResolvedSystem sys = resolve_toric(f);
                        std::cout << "pi*H  (proper) = " << sys.pi_star.str() << "\n"
                                  << "phi*H (proper) = " << sys.phi_star.str() << "\n";
                    } catch (const Error&) {
                        // permuted route already reported r; classes live on the permuted model
                    }
                }
            } else if (!d_family.empty()) {
                MapFamily fam = family_from_file(d_family);
                for (const auto& g : fam.generators()) {
                    if (!d_gen.empty() && g.name != d_gen) continue;
                    DRatioValue r = dratio_of(g);
                    std::cout << g.name << ": r = " << r.str() << " (" << r.provenance << ")\n";
                }
            } else {
                throw Error("dratio: give --map or --family");
            }
        } else if (c_delta->parsed()) {
            MapFamily fam = family_from_file(del_family);
            DRatioValue r = family_r(fam, del_r);
            Rat d = delta_family(fam, r);
            std::cout << "r = " << r.str() << " (" << r.provenance << ")\n";
            for (const auto& g : fam.generators())
                std::cout << "  " << g.name << ": degree " << g.proj.degree() << "\n";
            std::cout << "delta = " << d.get_str() << " = " << dec(d.get_d())
                      << (d < 1 ? "  (< 1: bounded-height hypothesis holds)" : "  (>= 1)")
                      << "\n";
        } else if (c_verify->parsed()) {
            MapFamily fam = family_from_file(v_family);
            DRatioValue r = family_r(fam, v_r);
            SampleSpec spec;
            spec.seed = v_seed;
            spec.count = v_samples;
            spec.m_min = Int(v_mmin);
            spec.m_max = Int(v_mmax);
            InequalityReport rep = verify_inequality(fam, r, spec, v_workers, v_out);
            std::cout << rep.text();
        } else if (c_kappa->parsed()) {
            MapFamily fam = family_from_file(k_family);
            std::vector<Int> ladder;
            if (k_bands.empty()) {
                for (Int m(10); m <= Int(1000000); m *= 10) ladder.push_back(m);
            } else {
                std::stringstream ss(k_bands);
                std::string item;
                while (std::getline(ss, item, ',')) ladder.push_back(Int(item));
            }
            KappaReport rep = kappa_estimate(fam, ladder, k_per, k_seed);
            std::cout << rep.text();
            if (!k_out.empty()) {
                std::ofstream out(k_out);
                if (!out) throw Error("cannot write CSV: " + k_out);
                out << "band_lo,band_hi,count,min_ratio\n";
                for (const auto& b : rep.bands)
                    out << b.lo.get_str() << "," << b.hi.get_str() << "," << b.count << ","
                        << (b.any ? dec(b.ratio()) : "") << "\n";
            }
        } else if (c_north->parsed()) {
            ProjectiveMap f = parse_map(n_map);
            auto points = enumerate_points_list(f.n(), Int(n_mmax),
                                                static_cast<size_t>(n_limit));
            NorthcottReport rep = northcott_check(f, points);
            std::cout << rep.text();
        } else if (c_orbit->parsed()) {
            MapFamily fam = family_from_file(o_family);
            AffPoint p = parse_aff_point(o_point);
            OrbitRecord rec = orbit_explore(fam, p, static_cast<size_t>(o_size_cap),
                                            Int(o_mag_cap));
            std::cout << "start " << p.str() << ": " << rec.status_str() << ", orbit size "
                      << rec.visited.size() << ", max magnitude "
                      << rec.max_magnitude.get_str() << "\n";
        } else if (c_find->parsed()) {
            MapFamily fam = family_from_file(f_family);
            DRatioValue r = family_r(fam, f_r);
            auto res = preperiodic_search(fam, r, parse_rat(f_c_est), f_margin,
                                          static_cast<size_t>(f_size_cap), Int(f_mag_cap));
            std::cout << "search bound M <= " << res.bound.get_str() << ", scanned "
                      << res.scanned << ", inconclusive " << res.inconclusive << "\n";
            for (const auto& [p, rec] : res.preperiodic)
                std::cout << "  " << p.str() << "  orbit size " << rec.visited.size()
                          << "  max magnitude " << rec.max_magnitude.get_str() << "\n";
            if (!f_out.empty()) {
                std::ofstream out(f_out);
                if (!out) throw Error("cannot write CSV: " + f_out);
                out << "point,verdict,orbit_size,max_magnitude,bound\n";
                for (const auto& [p, rec] : res.preperiodic)
                    out << '"' << p.str() << '"' << ",Finite," << rec.visited.size() << ","
                        << rec.max_magnitude.get_str() << "," << res.bound.get_str() << "\n";
            }
        } else if (c_tel->parsed()) {
            MapFamily fam = family_from_file(t_family);
            DRatioValue r = family_r(fam, t_r);
            AffPoint p = parse_aff_point(t_point);
            TelescopeResult res = telescoping_verify(fam, r, p, t_depth,
                                                     ExactLog::log_of(Int(t_cmag)));
            std::cout << "margin sign " << res.sign << ", decimal "
                      << dec(res.margin.to_double()) << ", terms " << res.terms << "\n";
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
