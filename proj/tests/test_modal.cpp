#include <doctest.h>

#include <Eigen/Dense>

#include "nanoplate/config.hpp"
#include "nanoplate/navier.hpp"
#include "nanoplate/runner.hpp"

using namespace nanoplate;

namespace {

GlobalSystem tiny_system(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m) {
    GlobalSystem system{Eigen::SparseMatrix<double>(k.rows(), k.cols()),
                        Eigen::SparseMatrix<double>(m.rows(), m.cols()), DofMap(1, 1), 0.0};
    system.stiffness = k.sparseView();
    system.mass = m.sparseView();
    return system;
}

AnalysisConfig isotropic_config(double a, double b, double h, double mu) {
    AnalysisConfig config;
    const Phase iso{30e6, 0.3, 1.0};
    config.material.ceramic = iso;
    config.material.metal = iso;
    config.material.gradient_index = 0.0;
    config.geometry = {a, b, h};
    config.mu = mu;
    config.bc = BoundaryCondition::SSSS;
    config.modes = 3;
    return config;
}

AnalysisConfig graded_config(double mu) {
    AnalysisConfig config;  // Si3N4/SUS304 defaults
    config.material.gradient_index = 5.0;
    config.geometry = {10.0, 10.0, 1.0};
    config.mu = mu;
    config.bc = BoundaryCondition::SSSS;
    config.modes = 3;
    return config;
}

}  // namespace

// ==========================================================
// Eigen solver basics
// ==========================================================

TEST_CASE("diagonal two-dof problem") {
    Eigen::MatrixXd k(2, 2), m(2, 2);
    k << 2, 0, 0, 8;
    m << 2, 0, 0, 2;
    const ModalResult result = solve_modes(tiny_system(k, m), 2);
    CHECK(result.omegas(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.omegas(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(result.residuals.maxCoeff() < 1e-12);
}

TEST_CASE("modes come back mass-orthonormal") {
    const ModalResult result = solve_config(isotropic_config(10, 10, 1, 0));
    // rebuild the reduced mass to check orthonormality
    const AnalysisConfig config = isotropic_config(10, 10, 1, 0);
    const PatchMesh patch = make_patch(10, 10, 3, 13, 13, ControlPlacement::Uniform);
    const GlobalSystem reduced =
        apply_bcs(assemble(patch, section_constants(config.profile()), NonlocalParams::local()),
                  BoundaryCondition::SSSS);
    const Eigen::MatrixXd gram =
        result.modes.transpose() * Eigen::MatrixXd(reduced.mass) * result.modes;
    CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("indefinite mass matrix is a formulation error") {
    Eigen::MatrixXd k(2, 2), m(2, 2);
    k << 2, 0, 0, 2;
    m << 1, 0, 0, -1;
    CHECK_THROWS_AS(solve_modes(tiny_system(k, m), 1), std::runtime_error);
}

TEST_CASE("unconstrained rigid modes are flagged, not reported") {
    const PatchMesh patch = make_patch(10, 10, 1, 3, 3);
    const Phase iso{30e6, 0.3, 1.0};
    const GlobalSystem system =
        assemble(patch, section_constants(FgmProfile{{iso, iso}, 0.0, 1.0, 0.3}),
                 NonlocalParams::local());
    CHECK_THROWS_WITH_AS(solve_modes(system, 3), doctest::Contains("near-singular"),
                         std::runtime_error);
}

TEST_CASE("mode count must fit the system") {
    Eigen::MatrixXd k = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(solve_modes(tiny_system(k, k), 4), std::invalid_argument);
    CHECK_THROWS_AS(solve_modes(tiny_system(k, k), 0), std::invalid_argument);
}

// ==========================================================
// Benchmarks
// ==========================================================

TEST_CASE("isotropic simply supported plate fundamental frequencies") {
    // a/h = 10 and the three nonlocal parameters of the reference row
    const double refs[3] = {0.0930, 0.0850, 0.0660};
    const double mus[3] = {0.0, 1.0, 5.0};
    for (int i = 0; i < 3; ++i) {
        const ModalResult result = solve_config(isotropic_config(10, 10, 1, mus[i]));
        CHECK(result.omegas_nd(0) == doctest::Approx(refs[i]).epsilon(0.01));
        CHECK(result.residuals.maxCoeff() < 1e-8);
        CHECK(result.mu == mus[i]);
    }
}

TEST_CASE("graded plate fundamental frequency") {
    const ModalResult result = solve_config(graded_config(0.0));
    CHECK(result.omegas_nd(0) == doctest::Approx(0.0441).epsilon(0.02));
}

TEST_CASE("local limit matches the analytical plate solution") {
    const AnalysisConfig config = isotropic_config(10, 10, 1, 0);
    const ModalResult iga = solve_config(config);
    const SectionProperties section = section_constants(config.profile());
    const double navier = navier_local_fsdt(NavierMode(1, 1, 10, 10), section, 10, 10);
    const double navier_nd = nondimensionalize(navier, 1.0, 1.0, phase_moduli(config.material.ceramic).shear);
    CHECK(iga.omegas_nd(0) == doctest::Approx(navier_nd).epsilon(0.005));
}

TEST_CASE("degenerate square-plate pair is reported in full") {
    const ModalResult result = solve_config(graded_config(0.0));
    CHECK(result.omegas(1) <= result.omegas(2));
    CHECK(result.omegas(2) == doctest::Approx(result.omegas(1)).epsilon(1e-6));
    CHECK(result.omegas(1) > result.omegas(0));
}

// ==========================================================
// Nondimensionalization and frequency ratios
// ==========================================================

TEST_CASE("nondimensionalization basics") {
    CHECK(nondimensionalize(0.0, 1.0, 2370.0, 1.34e11) == 0.0);
    CHECK(nondimensionalize(2.0, 0.5, 8.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(nondimensionalize(1.0, -1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(nondimensionalize(-1.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("nondimensional frequency is unit-system invariant") {
    AnalysisConfig nano = graded_config(2.0);
    nano.discretization = {3, 9, 9};
    nano.modes = 2;
    AnalysisConfig si = nano;
    si.geometry = {10.0e-9, 10.0e-9, 1.0e-9};  // meters
    si.mu = 2.0e-18;                           // m^2
    const ModalResult rn = solve_config(nano);
    const ModalResult rs = solve_config(si);
    for (int k = 0; k < 2; ++k)
        CHECK(rs.omegas_nd(k) == doctest::Approx(rn.omegas_nd(k)).epsilon(1e-12));
}

TEST_CASE("frequency ratio definition") {
    CHECK(frequency_ratio(0.5, 0.5) == 1.0);
    CHECK(frequency_ratio(0.3, 0.6) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(frequency_ratio(0.3, 0.0), std::domain_error);
}

TEST_CASE("square plate frequency ratios against the closed form") {
    // 9x9 net is plenty for the ratio: discretization error cancels
    AnalysisConfig local = isotropic_config(10, 10, 1, 0);
    local.discretization = {3, 9, 9};
    const ModalResult base = solve_config(local);
    for (double mu : {1.0, 5.0}) {
        AnalysisConfig cfg = local;
        cfg.mu = mu;
        const ModalResult result = solve_config(cfg);
        const double ratio1 = frequency_ratio(result.omegas_nd(0), base.omegas_nd(0));
        const double expected1 = 1.0 / std::sqrt(1.0 + mu * 2.0 * M_PI * M_PI / 100.0);
        CHECK(ratio1 == doctest::Approx(expected1).epsilon(0.005));
    }
    // pinned reference ratios for the two nonlocal parameters above
    AnalysisConfig mu1 = local;
    mu1.mu = 1.0;
    CHECK(frequency_ratio(solve_config(mu1).omegas_nd(0), base.omegas_nd(0)) ==
          doctest::Approx(0.9138).epsilon(0.005));
    AnalysisConfig mu5 = local;
    mu5.mu = 5.0;
    CHECK(frequency_ratio(solve_config(mu5).omegas_nd(0), base.omegas_nd(0)) ==
          doctest::Approx(0.7094).epsilon(0.005));
}

TEST_CASE("nonlocal effect grows with mu and with the mode number") {
    AnalysisConfig base = graded_config(0.0);
    base.discretization = {3, 9, 9};
    const ModalResult local = solve_config(base);
    double prev_ratio1 = 1.0;
    for (double mu : {1.0, 2.0, 4.0}) {
        AnalysisConfig cfg = base;
        cfg.mu = mu;
        const ModalResult result = solve_config(cfg);
        const double ratio1 = result.omegas_nd(0) / local.omegas_nd(0);
        const double ratio2 = result.omegas_nd(1) / local.omegas_nd(1);
        CHECK(ratio1 < prev_ratio1);  // monotone in mu
        CHECK(ratio2 < ratio1);       // higher modes more affected
        prev_ratio1 = ratio1;
    }
}
