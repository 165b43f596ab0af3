#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nanoplate/assembly.hpp"
#include "nanoplate/material.hpp"

namespace nanoplate {

/// Config/input failure carrying the offending field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(path) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// One complete plate analysis: geometry, grading, discretization, bc.
struct AnalysisConfig {
    struct Geometry {
        double a = 10.0;  // nm
        double b = 10.0;
        double h = 1.0;
    } geometry;

    struct Material {
        Phase ceramic{348.43e9, 0.3, 2370.0};  // Si3N4
        Phase metal{201.04e9, 0.3, 8166.0};    // SUS304
        double gradient_index = 0.0;
        std::optional<double> poisson_override = 0.3;
    } material;

    double mu = 0.0;  // nm^2

    struct Discretization {
        int degree = 3;
        int n_u = 13;
        int n_v = 13;
    } discretization;

    BoundaryCondition bc = BoundaryCondition::SSSS;
    int modes = 3;
    double shear_correction = kDefaultShearCorrection;

    double a_b_ratio() const { return geometry.a / geometry.b; }
    double a_h_ratio() const { return geometry.a / geometry.h; }

    FgmProfile profile() const;
    void validate() const;  // throws ConfigError with the field path
};

/// Sweep grid; empty axes fall back to the base config's value.
struct SweepGrid {
    std::vector<double> gradient_index;
    std::vector<double> mu;
    std::vector<double> a_b_ratio;
    std::vector<double> a_h_ratio;
    std::vector<BoundaryCondition> bc;
};

struct SweepConfig {
    AnalysisConfig base;
    SweepGrid grid;
};

struct ConvergeConfig {
    AnalysisConfig base;
    std::vector<int> nets;  // square control-net sizes, ascending
};

std::string to_string(BoundaryCondition bc);
BoundaryCondition bc_from_string(const std::string& text);

AnalysisConfig parse_config(const std::string& json_text);
std::string serialize_config(const AnalysisConfig& config);

SweepConfig parse_sweep_config(const std::string& json_text);
ConvergeConfig parse_converge_config(const std::string& json_text);

AnalysisConfig load_config_file(const std::string& path);
SweepConfig load_sweep_config_file(const std::string& path);
ConvergeConfig load_converge_config_file(const std::string& path);

}  // namespace nanoplate
