#include "cdirac/config.hpp"

#include "cdirac/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cdirac {

using Json = nlohmann::ordered_json;

namespace {

const Json& require_field(const Json& obj, const std::string& section, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError("config: missing field " +
                          (section.empty() ? std::string(key) : section + "." + key));
    }
    return *it;
}

double require_number(const Json& obj, const std::string& section, const char* key) {
    const Json& v = require_field(obj, section, key);
    if (!v.is_number()) {
        throw ConfigError("config: field " + section + "." + key + " must be a number");
    }
    return v.get<double>();
}

int require_int(const Json& obj, const std::string& section, const char* key) {
    const Json& v = require_field(obj, section, key);
    if (!v.is_number_integer()) {
        throw ConfigError("config: field " + section + "." + key + " must be an integer");
    }
    return v.get<int>();
}

ConformalFactor parse_omega(const Json& j) {
    if (!j.is_object()) throw ConfigError("config: omega section must be an object");
    const Json& fam = require_field(j, "omega", "family");
    if (!fam.is_string()) throw ConfigError("config: omega.family must be a string");
    const std::string family = fam.get<std::string>();
    try {
        if (family == "polynomial_even") {
            return ConformalFactor::polynomial_even(require_number(j, "omega", "omega"),
                                                    require_number(j, "omega", "c"),
                                                    require_int(j, "omega", "n"));
        }
        if (family == "cosh_power") {
            return ConformalFactor::cosh_power(require_number(j, "omega", "alpha"),
                                               require_int(j, "omega", "n"));
        }
        if (family == "tabulated") {
            const Json& xs = require_field(j, "omega", "x");
            const Json& vs = require_field(j, "omega", "values");
            if (!xs.is_array() || !vs.is_array()) {
                throw ConfigError("config: omega.x and omega.values must be arrays");
            }
            return ConformalFactor::tabulated(xs.get<std::vector<double>>(),
                                              vs.get<std::vector<double>>());
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: omega: " + std::string(e.what()));
    }
    throw ConfigError("config: omega.family must be one of polynomial_even, cosh_power, tabulated");
}

Json omega_to_json(const ConformalFactor& f) {
    Json j;
    if (const auto* p = f.as_polynomial_even()) {
        j["family"] = "polynomial_even";
        j["omega"] = p->omega;
        j["c"] = p->c;
        j["n"] = p->n;
    } else if (const auto* p = f.as_cosh_power()) {
        j["family"] = "cosh_power";
        j["alpha"] = p->alpha;
        j["n"] = p->n;
    } else {
        const auto* t = f.as_tabulated();
        j["family"] = "tabulated";
        j["x"] = t->x;
        j["values"] = t->values;
    }
    return j;
}

bool same_omega(const ConformalFactor& a, const ConformalFactor& b) {
    if (const auto* pa = a.as_polynomial_even()) {
        const auto* pb = b.as_polynomial_even();
        return pb && pa->omega == pb->omega && pa->c == pb->c && pa->n == pb->n;
    }
    if (const auto* ca = a.as_cosh_power()) {
        const auto* cb = b.as_cosh_power();
        return cb && ca->alpha == cb->alpha && ca->n == cb->n;
    }
    const auto* ta = a.as_tabulated();
    const auto* tb = b.as_tabulated();
    return ta && tb && ta->x == tb->x && ta->values == tb->values;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config: JSON syntax error: " + std::string(e.what()));
    }
    if (!root.is_object()) throw ConfigError("config: top level must be a JSON object");

    RunConfig cfg;
    cfg.omega = parse_omega(require_field(root, "", "omega"));

    const Json& params = require_field(root, "", "params");
    if (!params.is_object()) throw ConfigError("config: params section must be an object");
    cfg.params.mass = require_number(params, "params", "M");
    cfg.params.k_v = require_number(params, "params", "k_v");
    cfg.params.k_y = require_number(params, "params", "k_y");
    cfg.params.length = require_number(params, "params", "L");
    cfg.params.sigma = require_int(params, "params", "sigma");
    try {
        cfg.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }

    if (auto it = root.find("grid"); it != root.end()) {
        const Json& grid = *it;
        if (!grid.is_object()) throw ConfigError("config: grid section must be an object");
        try {
            cfg.grid = Grid(require_number(grid, "grid", "x_min"),
                            require_number(grid, "grid", "x_max"),
                            require_int(grid, "grid", "n_points"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("config: " + std::string(e.what()));
        }
        if (auto b = grid.find("boundary"); b != grid.end()) {
            const std::string bc = b->get<std::string>();
            if (bc == "dirichlet") {
                cfg.boundary = BoundaryCondition::Dirichlet;
            } else if (bc == "periodic") {
                cfg.boundary = BoundaryCondition::Periodic;
            } else {
                throw ConfigError("config: grid.boundary must be \"dirichlet\" or \"periodic\"");
            }
        }
    }

    if (auto it = root.find("eigen_count"); it != root.end()) {
        if (!it->is_number_integer() || it->get<int>() < 1) {
            throw ConfigError("config: eigen_count must be a positive integer");
        }
        cfg.eigen_count = it->get<int>();
    }
    if (auto it = root.find("out_dir"); it != root.end()) {
        if (!it->is_string()) throw ConfigError("config: out_dir must be a string");
        cfg.out_dir = it->get<std::string>();
    }
    if (auto it = root.find("tolerance_scale"); it != root.end()) {
        if (!it->is_number() || it->get<double>() < 0.0) {
            throw ConfigError("config: tolerance_scale must be a nonnegative number");
        }
        cfg.tolerance_scale = it->get<double>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    Json root;
    root["omega"] = omega_to_json(cfg.omega);
    root["params"] = {{"M", cfg.params.mass},
                      {"k_v", cfg.params.k_v},
                      {"k_y", cfg.params.k_y},
                      {"L", cfg.params.length},
                      {"sigma", cfg.params.sigma}};
    if (cfg.grid) {
        root["grid"] = {
            {"x_min", cfg.grid->x_min},
            {"x_max", cfg.grid->x_max},
            {"n_points", cfg.grid->n_points},
            {"boundary", cfg.boundary == BoundaryCondition::Periodic ? "periodic" : "dirichlet"}};
    }
    root["eigen_count"] = cfg.eigen_count;
    root["out_dir"] = cfg.out_dir;
    root["tolerance_scale"] = cfg.tolerance_scale;
    return root.dump(2) + "\n";
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    const bool grids_equal =
        a.grid.has_value() == b.grid.has_value() &&
        (!a.grid || (a.grid->x_min == b.grid->x_min && a.grid->x_max == b.grid->x_max &&
                     a.grid->n_points == b.grid->n_points));
    return same_omega(a.omega, b.omega) && a.params.mass == b.params.mass &&
           a.params.k_v == b.params.k_v && a.params.k_y == b.params.k_y &&
           a.params.length == b.params.length && a.params.sigma == b.params.sigma &&
           grids_equal && a.boundary == b.boundary && a.eigen_count == b.eigen_count &&
           a.out_dir == b.out_dir && a.tolerance_scale == b.tolerance_scale;
}

}  // namespace cdirac
