#include "nanoplate/modal.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nanoplate {

void ModalResult::set_nondimensional(double h, double rho_ref, double shear_ref) {
    omegas_nd.resize(omegas.size());
    for (int i = 0; i < omegas.size(); ++i)
        omegas_nd(i) = nondimensionalize(omegas(i), h, rho_ref, shear_ref);
}

ModalResult solve_modes(const GlobalSystem& system, int count) {
    const int n = static_cast<int>(system.stiffness.rows());
    if (count < 1 || count > n)
        throw std::invalid_argument("solve_modes: mode count must lie in [1, free dof count]");

    const Eigen::MatrixXd stiffness = Eigen::MatrixXd(system.stiffness);
    const Eigen::MatrixXd mass = Eigen::MatrixXd(system.mass);

    const Eigen::LLT<Eigen::MatrixXd> mass_llt(mass);
    if (mass_llt.info() != Eigen::Success)
        throw std::runtime_error("solve_modes: mass matrix is not positive definite");

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        stiffness, mass, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("solve_modes: eigensolver failed to converge");

    const Eigen::VectorXd eigenvalues = solver.eigenvalues();
    const double max_eig = eigenvalues.cwiseAbs().maxCoeff();
    for (int i = 0; i < count; ++i) {
        if (eigenvalues(i) < 1e-12 * max_eig)
            throw std::runtime_error(
                "solve_modes: near-singular eigenvalue " + std::to_string(eigenvalues(i)) +
                " at mode " + std::to_string(i + 1) + " (unconstrained rigid mode?)");
    }

    // Ascending already; break degenerate ties by the dof index of the
    // mode's peak amplitude so paired square-plate modes report stably.
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    auto peak_dof = [&](int mode) {
        int idx = 0;
        solver.eigenvectors().col(mode).cwiseAbs().maxCoeff(&idx);
        return idx;
    };
    for (int begin = 0; begin < count;) {
        int end = begin + 1;
        while (end < count && std::abs(eigenvalues(end) - eigenvalues(begin)) <=
                                  1e-9 * std::abs(eigenvalues(end)))
            ++end;
        if (end - begin > 1)
            std::sort(order.begin() + begin, order.begin() + end,
                      [&](int a, int b) { return peak_dof(a) < peak_dof(b); });
        begin = end;
    }

    ModalResult result;
    result.mu = system.mu;
    result.omegas.resize(count);
    result.modes.resize(n, count);
    result.residuals.resize(count);
    for (int i = 0; i < count; ++i) {
        const double lambda = eigenvalues(order[i]);
        const Eigen::VectorXd mode = solver.eigenvectors().col(order[i]);
        result.omegas(i) = std::sqrt(lambda);
        result.modes.col(i) = mode;
        const Eigen::VectorXd k_mode = stiffness * mode;
        result.residuals(i) = (k_mode - lambda * (mass * mode)).norm() / k_mode.norm();
        if (!(result.residuals(i) < 1e-8))
            throw std::runtime_error("solve_modes: eigen residual " +
                                     std::to_string(result.residuals(i)) +
                                     " exceeds 1e-8 at mode " + std::to_string(i + 1));
    }
    return result;
}

double nondimensionalize(double omega, double h, double rho_ref, double shear_ref) {
    if (h <= 0.0 || rho_ref <= 0.0 || shear_ref <= 0.0)
        throw std::invalid_argument("nondimensionalize: h, rho, G must be positive");
    if (omega < 0.0) throw std::invalid_argument("nondimensionalize: omega must be non-negative");
    return omega * h * std::sqrt(rho_ref / shear_ref);
}

double frequency_ratio(double omega_nonlocal, double omega_local) {
    if (!(omega_local > 0.0))
        throw std::domain_error("frequency_ratio: local frequency must be positive");
    return omega_nonlocal / omega_local;
}

}  // namespace nanoplate
