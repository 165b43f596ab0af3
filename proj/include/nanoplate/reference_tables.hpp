#pragma once

#include <string>
#include <vector>

#include "nanoplate/assembly.hpp"

namespace nanoplate {

/// Raw CSV text of the reference tables (embedded from data/ at build time).
const char* isotropic_reference_csv();
const char* graded_reference_csv();

struct IsotropicReferenceRow {
    double a_b = 0.0;
    double a_h = 0.0;
    double mu = 0.0;
    double omega_nd = 0.0;
};

struct GradedReferenceRow {
    BoundaryCondition bc = BoundaryCondition::SSSS;
    double a_b = 0.0;
    double a_h = 0.0;
    double mu = 0.0;
    int mode = 1;
    double omega_nd = 0.0;
};

std::vector<IsotropicReferenceRow> isotropic_reference_rows();
std::vector<GradedReferenceRow> graded_reference_rows();

}  // namespace nanoplate
