#include "nanoplate/navier.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace nanoplate {

NavierMode::NavierMode(int m_halfwaves, int n_halfwaves, double a, double b)
    : m(m_halfwaves), n(n_halfwaves) {
    if (m < 1 || n < 1) throw std::invalid_argument("NavierMode: half-wave numbers must be >= 1");
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("NavierMode: edge lengths must be positive");
    alpha = m * M_PI / a;
    beta = n * M_PI / b;
}

double nonlocal_ratio(const NavierMode& mode, double mu) {
    if (mu < 0.0) throw std::invalid_argument("nonlocal_ratio: mu must be non-negative");
    return 1.0 / std::sqrt(1.0 + mu * mode.laplace_eigenvalue());
}

double navier_local_fsdt(const NavierMode& mode, const SectionProperties& section, double a,
                         double b) {
    if (a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("navier_local_fsdt: edge lengths must be positive");
    const double al = mode.alpha;
    const double be = mode.beta;
    const Eigen::Matrix3d& A = section.A;
    const Eigen::Matrix3d& B = section.B;
    const Eigen::Matrix3d& D = section.D;
    const Eigen::Matrix2d& Es = section.Es;

    // Amplitude order (U, V, W, X, Y) for
    //   u0 = U cos(al x) sin(be y),  v0 = V sin(al x) cos(be y),
    //   w0 = W sin(al x) sin(be y),  tx = X cos(al x) sin(be y),
    //   ty = Y sin(al x) cos(be y).
    Eigen::Matrix<double, 5, 5> K = Eigen::Matrix<double, 5, 5>::Zero();

    K(0, 0) = A(0, 0) * al * al + A(2, 2) * be * be;
    K(0, 1) = (A(0, 1) + A(2, 2)) * al * be;
    K(1, 1) = A(1, 1) * be * be + A(2, 2) * al * al;

    K(0, 3) = B(0, 0) * al * al + B(2, 2) * be * be;
    K(0, 4) = (B(0, 1) + B(2, 2)) * al * be;
    K(1, 3) = (B(0, 1) + B(2, 2)) * al * be;
    K(1, 4) = B(1, 1) * be * be + B(2, 2) * al * al;

    K(3, 3) = D(0, 0) * al * al + D(2, 2) * be * be + Es(0, 0);
    K(3, 4) = (D(0, 1) + D(2, 2)) * al * be;
    K(4, 4) = D(1, 1) * be * be + D(2, 2) * al * al + Es(1, 1);

    K(2, 2) = Es(0, 0) * al * al + Es(1, 1) * be * be;
    K(2, 3) = Es(0, 0) * al;
    K(2, 4) = Es(1, 1) * be;

    K = K.selfadjointView<Eigen::Upper>();

    Eigen::Matrix<double, 5, 5> M = Eigen::Matrix<double, 5, 5>::Zero();
    M(0, 0) = M(1, 1) = M(2, 2) = section.I11;
    M(3, 3) = M(4, 4) = section.I22;
    M(0, 3) = M(3, 0) = section.I12;
    M(1, 4) = M(4, 1) = section.I12;

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix<double, 5, 5>> solver(K, M);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("navier_local_fsdt: singular per-mode system");
    const double lambda = solver.eigenvalues()(0);
    if (!(lambda > 0.0))
        throw std::runtime_error("navier_local_fsdt: non-positive squared frequency");
    return std::sqrt(lambda);
}

}  // namespace nanoplate
