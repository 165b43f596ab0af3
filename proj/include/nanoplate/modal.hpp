#pragma once

#include <Eigen/Core>

#include "nanoplate/assembly.hpp"

namespace nanoplate {

/// Sorted natural frequencies and M-orthonormal mode shapes of one solve.
struct ModalResult {
    Eigen::VectorXd omegas;     // angular frequencies, ascending
    Eigen::VectorXd omegas_nd;  // nondimensional companions (see nondimensionalize)
    Eigen::MatrixXd modes;      // one column per mode, over the free dofs
    Eigen::VectorXd residuals;  // ||K x - w^2 M x|| / ||K x|| per mode
    double mu = 0.0;

    /// Fill omegas_nd = omega * h * sqrt(rho_ref / shear_ref).
    void set_nondimensional(double h, double rho_ref, double shear_ref);
};

/// k smallest eigenpairs of K x = omega^2 M x on the constrained system.
/// M is Cholesky-factored and the problem reduced to standard symmetric
/// form; eigenvectors come back M-orthonormal.
ModalResult solve_modes(const GlobalSystem& system, int count);

/// Omega = omega * h * sqrt(rho_ref / shear_ref).
double nondimensionalize(double omega, double h, double rho_ref, double shear_ref);

/// Nonlocal-to-local frequency ratio; 1 exactly when the inputs coincide.
double frequency_ratio(double omega_nonlocal, double omega_local);

}  // namespace nanoplate
