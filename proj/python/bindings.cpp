#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arithdyn/harness.hpp"
#include "arithdyn/parser.hpp"

namespace py = pybind11;
using namespace arithdyn;

namespace {

ProjectiveMap map_from_string(const std::string& text) {
    std::string body = text;
    size_t first = body.find_first_not_of(" \t");
    if (first != std::string::npos && body[first] == '[') {
        size_t close = body.find_last_of(']');
        body = body.substr(first + 1, close - first - 1);
    }
    int depth = 0, comps = 1;
    for (char ch : body) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) ++comps;
    }
    return ProjectiveMap(comps - 1, parse_poly_list(body, default_var_names(comps)));
}

MapFamily family_from_any(const std::string& text) {
    if (!text.empty() && text.find('{') != std::string::npos) return family_from_json(text);
    return family_from_file(text);
}

DRatioValue r_from_string(const MapFamily& fam, const std::string& r) {
    if (r.empty() || r == "auto") return family_max_dratio(fam);
    if (r == "inf" || r == "infinity") return DRatioValue::infinity("caller");
    return DRatioValue::of(parse_rat(r), "caller");
}

py::dict dratio_dict(const DRatioValue& r) {
    py::dict d;
    d["finite"] = r.finite;
    d["value"] = r.finite ? r.value.get_str() : std::string("infinity");
    d["provenance"] = r.provenance;
    return d;
}

}  // namespace

PYBIND11_MODULE(_arithdyn, m) {
    m.doc() = "exact heights, D-ratios, joint regularity and preperiodic search";

    m.def("parse_poly",
          [](const std::string& text, const std::vector<std::string>& vars) {
              return parse_poly(text, vars).str(vars);
          },
          py::arg("text"), py::arg("variables"),
          "parse a polynomial expression and return its canonical form");

    m.def("height_aff",
          [](const std::string& point) {
              AffPoint p = parse_aff_point(point);
              Int mag = magnitude_aff(p);
              py::dict d;
              d["M"] = mag.get_str();
              d["h"] = ExactLog::log_of(mag).to_double();
              return d;
          },
          py::arg("point"), "exact height of an affine point given as 'a/b, c, ...'");

    m.def("height_proj",
          [](const std::string& point) {
              ProjPoint p = parse_proj_point(point);
              Int mag = magnitude_proj(p);
              py::dict d;
              d["point"] = p.str();
              d["M"] = mag.get_str();
              d["h"] = ExactLog::log_of(mag).to_double();
              return d;
          },
          py::arg("point"), "exact height of a projective point given as 'a:b:c'");

    m.def("evaluate",
          [](const std::string& map_text, const std::string& point) -> py::object {
              ProjectiveMap f = map_from_string(map_text);
              auto img = f.evaluate(parse_proj_point(point));
              if (!img) return py::none();
              return py::str(img->str());
          },
          py::arg("map"), py::arg("point"),
          "projective evaluation; None on the indeterminacy locus");

    m.def("dratio",
          [](const std::string& map_text) { return dratio_dict(dratio_of_map(map_from_string(map_text))); },
          py::arg("map"), "D-ratio of a projective map (blowup route on P^2)");

    m.def("resolve",
          [](const std::string& map_text) {
              ResolvedSystem sys = resolve_toric(map_from_string(map_text));
              py::dict d;
              d["steps"] = sys.steps.size();
              std::vector<std::string> pi, phi;
              for (const auto& q : sys.pi_star.coeffs) pi.push_back(q.get_str());
              for (const auto& q : sys.phi_star.coeffs) phi.push_back(q.get_str());
              d["pi_star"] = pi;
              d["phi_star"] = phi;
              d["r"] = sys.dratio.finite ? sys.dratio.value.get_str() : std::string("infinity");
              d["report"] = sys.report(default_var_names(3));
              return d;
          },
          py::arg("map"), "toric resolution of a monomial map on P^2");

    m.def("check_regular",
          [](const std::string& family, std::optional<int> cap) {
              MapFamily fam = family_from_any(family);
              RegularityVerdict v = joint_regularity(fam, cap);
              py::dict d;
              d["empty"] = v.is_empty();
              d["verdict"] = v.str();
              if (v.witness) d["witness"] = v.witness->str();
              return d;
          },
          py::arg("family"), py::arg("degree_cap") = std::nullopt,
          "joint-regularity verdict for a family (path or JSON text)");

    m.def("delta",
          [](const std::string& family, const std::string& r) {
              MapFamily fam = family_from_any(family);
              DRatioValue rv = r_from_string(fam, r);
              py::dict d;
              d["r"] = dratio_dict(rv);
              d["delta"] = delta_family(fam, rv).get_str();
              return d;
          },
          py::arg("family"), py::arg("r") = std::string("auto"));

    m.def("orbit",
          [](const std::string& family, const std::string& point, size_t size_cap,
             const std::string& magnitude_cap) {
              MapFamily fam = family_from_any(family);
              OrbitRecord rec =
                  orbit_explore(fam, parse_aff_point(point), size_cap, Int(magnitude_cap));
              py::dict d;
              d["status"] = rec.status_str();
              d["size"] = rec.visited.size();
              d["max_magnitude"] = rec.max_magnitude.get_str();
              return d;
          },
          py::arg("family"), py::arg("point"), py::arg("size_cap") = 4096,
          py::arg("magnitude_cap") = std::string("1000000000000"));

    m.def("find_preperiodic",
          [](const std::string& family, const std::string& c_est, double margin,
             const std::string& r) {
              MapFamily fam = family_from_any(family);
              DRatioValue rv = r_from_string(fam, r);
              auto res = preperiodic_search(fam, rv, parse_rat(c_est), margin, 4096,
                                            Int("1000000000000"));
              py::list points;
              for (const auto& [p, rec] : res.preperiodic) points.append(p.str());
              py::dict d;
              d["bound"] = res.bound.get_str();
              d["points"] = points;
              d["inconclusive"] = res.inconclusive;
              return d;
          },
          py::arg("family"), py::arg("c_est") = std::string("0"), py::arg("margin") = 0.0,
          py::arg("r") = std::string("auto"));

    m.def("verify",
          [](const std::string& family, const std::string& r, std::uint64_t seed, int count,
             long m_min, long m_max, int workers) {
              MapFamily fam = family_from_any(family);
              DRatioValue rv = r_from_string(fam, r);
              SampleSpec spec;
              spec.seed = seed;
              spec.count = count;
              spec.m_min = Int(m_min);
              spec.m_max = Int(m_max);
              InequalityReport rep = verify_inequality(fam, rv, spec, workers);
              py::dict d;
              d["form"] = rep.form;
              d["fitted_c"] = rep.has_min ? rep.fitted_c.to_double() : 0.0;
              d["violations_strict"] = rep.violations_strict;
              d["evaluated"] = rep.evaluated;
              d["text"] = rep.text();
              return d;
          },
          py::arg("family"), py::arg("r") = std::string("auto"), py::arg("seed") = 1,
          py::arg("count") = 1000, py::arg("m_min") = 2, py::arg("m_max") = 10000,
          py::arg("workers") = 1);
}
