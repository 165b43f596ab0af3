#include "nanoplate/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nanoplate {

namespace {

using nlohmann::json;

void require_object(const json& node, const std::string& path) {
    if (!node.is_object()) throw ConfigError(path, "expected an object");
}

/// Reject any key not in the allowed list (fail fast against typos).
void check_keys(const json& node, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : node.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(path + "." + item.key(), "unknown key");
    }
}

double get_number(const json& node, const std::string& path, const char* key) {
    if (!node.contains(key)) throw ConfigError(path + "." + key, "missing required value");
    const json& v = node.at(key);
    if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
    return v.get<double>();
}

double get_number_or(const json& node, const std::string& path, const char* key,
                     double fallback) {
    if (!node.contains(key)) return fallback;
    const json& v = node.at(key);
    if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
    return v.get<double>();
}

int get_int(const json& node, const std::string& path, const char* key) {
    if (!node.contains(key)) throw ConfigError(path + "." + key, "missing required value");
    const json& v = node.at(key);
    if (!v.is_number_integer()) throw ConfigError(path + "." + key, "expected an integer");
    return v.get<int>();
}

Phase parse_phase(const json& node, const std::string& path) {
    require_object(node, path);
    check_keys(node, path, {"youngs", "poisson", "density"});
    return {get_number(node, path, "youngs"), get_number(node, path, "poisson"),
            get_number(node, path, "density")};
}

}  // namespace

std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::SSSS ? "SSSS" : "CCCC";
}

BoundaryCondition bc_from_string(const std::string& text) {
    if (text == "SSSS") return BoundaryCondition::SSSS;
    if (text == "CCCC") return BoundaryCondition::CCCC;
    throw ConfigError("bc", "unsupported boundary condition '" + text + "' (SSSS or CCCC)");
}

FgmProfile AnalysisConfig::profile() const {
    FgmProfile profile;
    profile.constituents = {material.ceramic, material.metal};
    profile.gradient_index = material.gradient_index;
    profile.thickness = geometry.h;
    profile.poisson_override = material.poisson_override;
    return profile;
}

void AnalysisConfig::validate() const {
    if (geometry.a <= 0.0) throw ConfigError("geometry.a", "must be positive");
    if (geometry.b <= 0.0) throw ConfigError("geometry.b", "must be positive");
    if (geometry.h <= 0.0) throw ConfigError("geometry.h", "must be positive");
    auto check_phase = [](const Phase& phase, const std::string& path) {
        if (phase.youngs <= 0.0) throw ConfigError(path + ".youngs", "must be positive");
        if (phase.poisson <= 0.0 || phase.poisson >= 0.5)
            throw ConfigError(path + ".poisson", "must lie in (0, 0.5)");
        if (phase.density <= 0.0) throw ConfigError(path + ".density", "must be positive");
    };
    check_phase(material.ceramic, "material.ceramic");
    check_phase(material.metal, "material.metal");
    if (material.gradient_index < 0.0)
        throw ConfigError("material.gradient_index", "must be non-negative");
    if (material.poisson_override &&
        (*material.poisson_override <= 0.0 || *material.poisson_override >= 0.5))
        throw ConfigError("material.poisson_override", "must lie in (0, 0.5)");
    if (mu < 0.0) throw ConfigError("nonlocal.mu", "must be non-negative");
    if (discretization.degree < 1) throw ConfigError("discretization.degree", "must be >= 1");
    if (discretization.n_u < discretization.degree + 1 ||
        discretization.n_v < discretization.degree + 1)
        throw ConfigError("discretization.control_net", "needs at least degree+1 points per direction");
    if (modes < 1) throw ConfigError("modes", "must be >= 1");
    if (shear_correction <= 0.0 || shear_correction > 1.0)
        throw ConfigError("shear_correction", "must lie in (0, 1]");
}

namespace {

AnalysisConfig config_from_json(const json& root, const std::string& path) {
    require_object(root, path);
    check_keys(root, path,
               {"geometry", "material", "nonlocal", "discretization", "bc", "modes",
                "shear_correction"});

    AnalysisConfig config;

    if (!root.contains("geometry")) throw ConfigError(path + ".geometry", "missing section");
    const json& geo = root.at("geometry");
    require_object(geo, path + ".geometry");
    check_keys(geo, path + ".geometry", {"a", "b", "h"});
    config.geometry.a = get_number(geo, path + ".geometry", "a");
    config.geometry.b = get_number(geo, path + ".geometry", "b");
    config.geometry.h = get_number(geo, path + ".geometry", "h");

    if (!root.contains("material")) throw ConfigError(path + ".material", "missing section");
    const json& mat = root.at("material");
    require_object(mat, path + ".material");
    check_keys(mat, path + ".material",
               {"ceramic", "metal", "gradient_index", "poisson_override"});
    if (!mat.contains("ceramic")) throw ConfigError(path + ".material.ceramic", "missing section");
    if (!mat.contains("metal")) throw ConfigError(path + ".material.metal", "missing section");
    config.material.ceramic = parse_phase(mat.at("ceramic"), path + ".material.ceramic");
    config.material.metal = parse_phase(mat.at("metal"), path + ".material.metal");
    config.material.gradient_index = get_number(mat, path + ".material", "gradient_index");
    if (mat.contains("poisson_override")) {
        const json& po = mat.at("poisson_override");
        if (po.is_null())
            config.material.poisson_override.reset();
        else if (po.is_number())
            config.material.poisson_override = po.get<double>();
        else
            throw ConfigError(path + ".material.poisson_override", "expected a number or null");
    } else {
        config.material.poisson_override.reset();
    }

    if (root.contains("nonlocal")) {
        const json& nl = root.at("nonlocal");
        require_object(nl, path + ".nonlocal");
        check_keys(nl, path + ".nonlocal", {"mu"});
        config.mu = get_number_or(nl, path + ".nonlocal", "mu", 0.0);
    } else {
        config.mu = 0.0;
    }

    if (!root.contains("discretization"))
        throw ConfigError(path + ".discretization", "missing section");
    const json& disc = root.at("discretization");
    require_object(disc, path + ".discretization");
    check_keys(disc, path + ".discretization", {"degree", "control_net"});
    config.discretization.degree = get_int(disc, path + ".discretization", "degree");
    if (!disc.contains("control_net"))
        throw ConfigError(path + ".discretization.control_net", "missing required value");
    const json& net = disc.at("control_net");
    if (!net.is_array() || net.size() != 2 || !net[0].is_number_integer() ||
        !net[1].is_number_integer())
        throw ConfigError(path + ".discretization.control_net", "expected [n_u, n_v]");
    config.discretization.n_u = net[0].get<int>();
    config.discretization.n_v = net[1].get<int>();

    if (!root.contains("bc")) throw ConfigError(path + ".bc", "missing required value");
    if (!root.at("bc").is_string()) throw ConfigError(path + ".bc", "expected a string");
    config.bc = bc_from_string(root.at("bc").get<std::string>());

    if (root.contains("modes")) config.modes = get_int(root, path, "modes");
    config.shear_correction =
        get_number_or(root, path, "shear_correction", kDefaultShearCorrection);

    config.validate();
    return config;
}

json config_to_json(const AnalysisConfig& config) {
    json root;
    root["geometry"] = {{"a", config.geometry.a}, {"b", config.geometry.b},
                        {"h", config.geometry.h}};
    json mat;
    mat["ceramic"] = {{"youngs", config.material.ceramic.youngs},
                      {"poisson", config.material.ceramic.poisson},
                      {"density", config.material.ceramic.density}};
    mat["metal"] = {{"youngs", config.material.metal.youngs},
                    {"poisson", config.material.metal.poisson},
                    {"density", config.material.metal.density}};
    mat["gradient_index"] = config.material.gradient_index;
    if (config.material.poisson_override)
        mat["poisson_override"] = *config.material.poisson_override;
    root["material"] = mat;
    root["nonlocal"] = {{"mu", config.mu}};
    root["discretization"] = {
        {"degree", config.discretization.degree},
        {"control_net", {config.discretization.n_u, config.discretization.n_v}}};
    root["bc"] = to_string(config.bc);
    root["modes"] = config.modes;
    root["shear_correction"] = config.shear_correction;
    return root;
}

json parse_text(const std::string& text) {
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded()) throw ConfigError("<config>", "malformed JSON");
    return root;
}

}  // namespace

AnalysisConfig parse_config(const std::string& json_text) {
    return config_from_json(parse_text(json_text), "<config>");
}

std::string serialize_config(const AnalysisConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

SweepConfig parse_sweep_config(const std::string& json_text) {
    const json root = parse_text(json_text);
    require_object(root, "<sweep>");
    check_keys(root, "<sweep>", {"base", "grid"});
    if (!root.contains("base")) throw ConfigError("<sweep>.base", "missing section");

    SweepConfig sweep;
    sweep.base = config_from_json(root.at("base"), "<sweep>.base");

    if (root.contains("grid")) {
        const json& grid = root.at("grid");
        require_object(grid, "<sweep>.grid");
        check_keys(grid, "<sweep>.grid", {"gradient_index", "mu", "a_b_ratio", "a_h_ratio", "bc"});
        auto read_numbers = [&](const char* key, std::vector<double>& out) {
            if (!grid.contains(key)) return;
            const json& arr = grid.at(key);
            if (!arr.is_array() || arr.empty())
                throw ConfigError(std::string("<sweep>.grid.") + key, "expected a non-empty array");
            for (const json& v : arr) {
                if (!v.is_number())
                    throw ConfigError(std::string("<sweep>.grid.") + key, "expected numbers");
                out.push_back(v.get<double>());
            }
        };
        read_numbers("gradient_index", sweep.grid.gradient_index);
        read_numbers("mu", sweep.grid.mu);
        read_numbers("a_b_ratio", sweep.grid.a_b_ratio);
        read_numbers("a_h_ratio", sweep.grid.a_h_ratio);
        if (grid.contains("bc")) {
            const json& arr = grid.at("bc");
            if (!arr.is_array() || arr.empty())
                throw ConfigError("<sweep>.grid.bc", "expected a non-empty array");
            for (const json& v : arr) {
                if (!v.is_string()) throw ConfigError("<sweep>.grid.bc", "expected strings");
                sweep.grid.bc.push_back(bc_from_string(v.get<std::string>()));
            }
        }
    }
    return sweep;
}

ConvergeConfig parse_converge_config(const std::string& json_text) {
    const json root = parse_text(json_text);
    require_object(root, "<converge>");
    check_keys(root, "<converge>", {"base", "nets"});
    if (!root.contains("base")) throw ConfigError("<converge>.base", "missing section");

    ConvergeConfig converge;
    converge.base = config_from_json(root.at("base"), "<converge>.base");

    if (!root.contains("nets")) throw ConfigError("<converge>.nets", "missing required value");
    const json& nets = root.at("nets");
    if (!nets.is_array() || nets.empty())
        throw ConfigError("<converge>.nets", "expected a non-empty array of net sizes");
    int previous = 0;
    for (const json& v : nets) {
        if (!v.is_number_integer()) throw ConfigError("<converge>.nets", "expected integers");
        const int net = v.get<int>();
        if (net < converge.base.discretization.degree + 1)
            throw ConfigError("<converge>.nets", "net smaller than degree+1");
        if (net <= previous) throw ConfigError("<converge>.nets", "net sizes must be ascending");
        converge.nets.push_back(net);
        previous = net;
    }
    return converge;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

AnalysisConfig load_config_file(const std::string& path) { return parse_config(read_file(path)); }

SweepConfig load_sweep_config_file(const std::string& path) {
    return parse_sweep_config(read_file(path));
}

ConvergeConfig load_converge_config_file(const std::string& path) {
    return parse_converge_config(read_file(path));
}

}  // namespace nanoplate
