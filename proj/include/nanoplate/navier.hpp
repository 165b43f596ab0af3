#pragma once

#include "nanoplate/material.hpp"

namespace nanoplate {

/// One term of the double-sine expansion for a simply supported plate.
struct NavierMode {
    int m = 1;
    int n = 1;
    double alpha = 0.0;  // m*pi/a
    double beta = 0.0;   // n*pi/b

    NavierMode(int m_halfwaves, int n_halfwaves, double a, double b);

    double laplace_eigenvalue() const { return alpha * alpha + beta * beta; }
};

/// Closed-form nonlocal/local frequency ratio 1/sqrt(1 + mu*(alpha^2+beta^2));
/// exact for simply supported sinusoidal modes, independent of the material.
double nonlocal_ratio(const NavierMode& mode, double mu);

/// Local FSDT natural frequency of a simply supported rectangular plate for
/// one (m, n) term: smallest eigenvalue of the per-mode 5x5 stiffness/mass
/// problem (handles B-coupled graded sections; for homogeneous sections the
/// in-plane block decouples).
double navier_local_fsdt(const NavierMode& mode, const SectionProperties& section, double a,
                         double b);

}  // namespace nanoplate
