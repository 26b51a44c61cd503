#pragma once

#include "cdirac/conformal.hpp"
#include "cdirac/discrete.hpp"
#include "cdirac/zeromode.hpp"

#include <optional>
#include <string>

namespace cdirac {

/// Parsed run configuration. The on-disk form is a single JSON document whose
/// sections mirror the domain types; see the README for the grammar.
struct RunConfig {
    ConformalFactor omega = ConformalFactor::polynomial_even(1.0, 1.0, 1);
    PhysicalParams params;
    std::optional<Grid> grid;
    BoundaryCondition boundary = BoundaryCondition::Dirichlet;
    int eigen_count = 6;
    std::string out_dir = "out";
    double tolerance_scale = 1.0;
};

/// Parses a JSON config document. Throws ConfigError naming the offending
/// field (or the byte position for syntax errors).
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Canonical serialization; parse_config(serialize_config(c)) reproduces c
/// and re-serializing reproduces the bytes.
std::string serialize_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace cdirac
