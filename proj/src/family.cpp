#include "arithdyn/family.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arithdyn/parser.hpp"

namespace arithdyn {

namespace {

std::vector<Poly> parse_components(const nlohmann::json& arr,
                                   const std::vector<std::string>& vars) {
    std::vector<Poly> out;
    for (const auto& item : arr) out.push_back(parse_poly(item.get<std::string>(), vars));
    return out;
}

}  // namespace

MapFamily family_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    int n = j.at("n").get<int>();
    if (n < 1) throw Error("family: n must be >= 1");
    std::vector<std::string> affine_vars;
    if (j.contains("variables"))
        for (const auto& v : j.at("variables")) affine_vars.push_back(v.get<std::string>());
    else
        affine_vars = default_var_names(n);

    std::vector<std::string> proj_vars;
    if (static_cast<int>(affine_vars.size()) == n + 1) {
        proj_vars = affine_vars;
        affine_vars.pop_back();
    } else if (static_cast<int>(affine_vars.size()) == n) {
        proj_vars = affine_vars;
        std::string homog = "w";
        for (const auto& v : proj_vars)
            if (v == homog) homog = "t";
        proj_vars.push_back(homog);
    } else {
        throw Error("family: variables list must have n or n+1 names");
    }

    std::vector<Generator> gens;
    for (const auto& m : j.at("maps")) {
        std::string name = m.value("name", "f" + std::to_string(gens.size() + 1));
        std::optional<AffineMap> aff;
        std::optional<AffineMap> inv;
        std::optional<ProjectiveMap> proj;
        if (m.contains("affine")) {
            aff = AffineMap(n, parse_components(m.at("affine"), affine_vars));
            proj = homogenize_affine(*aff);
            if (m.contains("inverse"))
                inv = AffineMap(n, parse_components(m.at("inverse"), affine_vars));
        } else if (m.contains("projective")) {
            proj = ProjectiveMap(n, parse_components(m.at("projective"), proj_vars));
        } else {
            throw Error("family map '" + name + "' needs 'affine' or 'projective' components");
        }
        std::optional<DRatioDecl> declared;
        if (m.contains("dratio")) {
            DRatioDecl decl;
            std::string value = m.at("dratio").at("value").get<std::string>();
            if (value == "inf" || value == "infinity") {
                decl.finite = false;
            } else {
                decl.finite = true;
                decl.value = parse_rat(value);
            }
            decl.provenance = m.at("dratio").value("provenance", "declared");
            declared = std::move(decl);
        }
        gens.push_back(Generator{std::move(name), std::move(aff), std::move(inv),
                                 std::move(*proj), std::move(declared)});
    }
    MapFamily fam(n, std::move(gens), proj_vars);
    if (j.contains("claimed_regular")) fam.claimed_regular = j.at("claimed_regular").get<bool>();
    return fam;
}

MapFamily family_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open family file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return family_from_json(buf.str());
}

}  // namespace arithdyn
