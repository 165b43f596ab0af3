#include <doctest.h>

#include <random>

#include "nanoplate/nurbs.hpp"
#include "oracles.hpp"

using namespace nanoplate;

namespace {

const std::vector<double> kMultiKnot = {0,       0,       0,       0, 1.0 / 3, 1.0 / 3, 1.0 / 3,
                                        1.0 / 2, 2.0 / 3, 1,       1, 1,       1};

}  // namespace

// ==========================================================
// Knot vectors
// ==========================================================

TEST_CASE("knot vector validation") {
    CHECK_NOTHROW(KnotVector({0, 0, 0, 0.5, 1, 1, 1}, 2));
    CHECK_THROWS_AS(KnotVector({0, 0, 1, 0.5, 1, 1}, 1), std::invalid_argument);  // decreasing
    CHECK_THROWS_AS(KnotVector({0, 0, 0, 1, 1}, 2), std::invalid_argument);       // not clamped
    CHECK_THROWS_AS(KnotVector({0, 1}, 1), std::invalid_argument);                // too short
    CHECK_NOTHROW(KnotVector(kMultiKnot, 3));  // interior multiplicities are fine
}

TEST_CASE("span lookup maps the right end to the final nonzero span") {
    KnotVector kv(kMultiKnot, 3);
    CHECK(kv.num_basis() == 9);
    CHECK(kv.num_spans() == 4);
    CHECK(kv.find_span(0.0) == 3);
    CHECK(kv.find_span(0.4) == 6);
    CHECK(kv.find_span(0.55) == 7);
    CHECK(kv.find_span(1.0) == 8);  // last nonzero span, not the trailing zero ones
    CHECK_THROWS_AS(kv.find_span(1.5), std::domain_error);
    CHECK_THROWS_AS(kv.find_span(-0.1), std::domain_error);
}

// ==========================================================
// B-spline basis values
// ==========================================================

TEST_CASE("degree zero basis is the indicator function") {
    KnotVector kv({0.0, 0.25, 1.0}, 0);
    const Eigen::VectorXd vals = bspline_basis(kv, kv.find_span(0.1), 0.1);
    REQUIRE(vals.size() == 1);
    CHECK(vals(0) == 1.0);
}

TEST_CASE("quadratic Bernstein values at midpoint") {
    // Expand (1-x)^2, 2x(1-x), x^2 at x = 0.5 by hand.
    KnotVector kv({0, 0, 0, 1, 1, 1}, 2);
    const Eigen::VectorXd vals = bspline_basis(kv, 2, 0.5);
    CHECK(vals(0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(vals(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(vals(2) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("cubic basis on the multi-knot vector at xi = 0.4") {
    // Frozen from the direct recursion (also cross-checked below).
    KnotVector kv(kMultiKnot, 3);
    const int span = kv.find_span(0.4);
    const Eigen::VectorXd vals = bspline_basis(kv, span, 0.4);
    REQUIRE(vals.size() == 4);
    CHECK(vals(0) == doctest::Approx(0.216).epsilon(1e-12));
    CHECK(vals(1) == doctest::Approx(0.592).epsilon(1e-12));
    CHECK(vals(2) == doctest::Approx(0.184).epsilon(1e-12));
    CHECK(vals(3) == doctest::Approx(0.008).epsilon(1e-12));
    CHECK(vals.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(vals.minCoeff() >= 0.0);

    for (int i = 0; i < 4; ++i) {
        const double ref = oracles::cox_de_boor(kMultiKnot, span - 3 + i, 3, 0.4);
        CHECK(vals(i) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("span-local evaluation agrees with the direct recursion everywhere") {
    KnotVector kv(kMultiKnot, 3);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double xi = uni(rng);
        const int span = kv.find_span(xi);
        const Eigen::VectorXd vals = bspline_basis(kv, span, xi);
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double ref = oracles::cox_de_boor(kMultiKnot, span - 3 + i, 3, xi);
            CHECK(vals(i) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
            CHECK(vals(i) >= 0.0);
            sum += vals(i);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("basis evaluation outside the span is rejected") {
    KnotVector kv({0, 0, 0, 0.5, 1, 1, 1}, 2);
    CHECK_THROWS_AS(bspline_basis(kv, 2, 0.7), std::domain_error);
    CHECK_THROWS_AS(bspline_basis(kv, 3, 0.2), std::domain_error);
    CHECK_THROWS_AS(bspline_basis(kv, 0, 0.2), std::domain_error);  // zero-width span
}

// ==========================================================
// Derivatives
// ==========================================================

TEST_CASE("linear hat function derivatives") {
    KnotVector kv({0, 0, 1, 1}, 1);
    const Eigen::MatrixXd ders = bspline_basis_derivs(kv, 1, 0.3, 1);
    CHECK(ders(0, 0) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(ders(1, 0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(ders(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ders(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("quadratic Bernstein first derivatives at midpoint") {
    // d/dx of (1-x)^2, 2x(1-x), x^2 at 0.5 gives -1, 0, 1.
    KnotVector kv({0, 0, 0, 1, 1, 1}, 2);
    const Eigen::MatrixXd ders = bspline_basis_derivs(kv, 2, 0.5, 1);
    CHECK(ders(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ders(1, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(ders(2, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("derivative column zero equals the basis and columns sum to zero") {
    KnotVector kv(kMultiKnot, 3);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double xi = uni(rng);
        const int span = kv.find_span(xi);
        const Eigen::MatrixXd ders = bspline_basis_derivs(kv, span, xi, 3);
        const Eigen::VectorXd vals = bspline_basis(kv, span, xi);
        CHECK((ders.col(0) - vals).cwiseAbs().maxCoeff() < 1e-14);
        for (int k = 1; k <= 3; ++k) CHECK(std::abs(ders.col(k).sum()) < 1e-10);
    }
}

TEST_CASE("derivatives match central differences") {
    KnotVector kv(kMultiKnot, 3);
    const double xi = 0.45, h = 1e-6;
    const int span = kv.find_span(xi);
    const Eigen::MatrixXd ders = bspline_basis_derivs(kv, span, xi, 1);
    const Eigen::VectorXd fwd = bspline_basis(kv, span, xi + h);
    const Eigen::VectorXd bwd = bspline_basis(kv, span, xi - h);
    for (int i = 0; i < 4; ++i)
        CHECK(ders(i, 1) == doctest::Approx((fwd(i) - bwd(i)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("derivative order above the degree is rejected") {
    KnotVector kv({0, 0, 0, 1, 1, 1}, 2);
    CHECK_THROWS_AS(bspline_basis_derivs(kv, 2, 0.5, 3), std::invalid_argument);
}

// ==========================================================
// Patch construction
// ==========================================================

TEST_CASE("cubic 5x5 patch matches the reference discretization") {
    const PatchMesh patch = make_patch(10.0, 10.0, 3, 5, 5);
    const std::vector<double> expected = {0, 0, 0, 0, 0.5, 1, 1, 1, 1};
    REQUIRE(patch.knot_u.knots().size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i)
        CHECK(patch.knot_u.knots()[i] == doctest::Approx(expected[i]).epsilon(1e-15));
    CHECK(patch.num_control_points() == 25);
    CHECK(patch.num_elements() == 4);
    CHECK(patch.weights.minCoeff() == 1.0);
    CHECK(patch.weights.maxCoeff() == 1.0);
    for (const auto& elem : patch.elements) CHECK(elem.nodes.size() == 16);
}

TEST_CASE("bilinear 2x2 patch is a single element") {
    const PatchMesh patch = make_patch(10.0, 10.0, 1, 2, 2);
    CHECK(patch.num_elements() == 1);
    CHECK(patch.elements[0].nodes.size() == 4);
}

TEST_CASE("patch center maps to the plate center for either placement") {
    for (auto placement : {ControlPlacement::Greville, ControlPlacement::Uniform}) {
        const PatchMesh patch = make_patch(12.0, 4.0, 3, 7, 6, placement);
        const Eigen::Vector2d center = patch.map_point(0.5, 0.5);
        CHECK(center(0) == doctest::Approx(6.0).epsilon(1e-13));
        CHECK(center(1) == doctest::Approx(2.0).epsilon(1e-13));
    }
}

TEST_CASE("geometry is exactly affine with Greville placement") {
    const PatchMesh patch = make_patch(7.0, 3.0, 3, 8, 5);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double xi = uni(rng), eta = uni(rng);
        const Eigen::Vector2d pos = patch.map_point(xi, eta);
        CHECK(std::abs(pos(0) - 7.0 * xi) < 1e-12 * 7.0);
        CHECK(std::abs(pos(1) - 3.0 * eta) < 1e-12 * 3.0);
    }
}

TEST_CASE("too few control points are rejected") {
    CHECK_THROWS_AS(make_patch(10.0, 10.0, 3, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_patch(-1.0, 10.0, 3, 5, 5), std::invalid_argument);
}

// ==========================================================
// Patch basis evaluation
// ==========================================================

TEST_CASE("partition of unity and non-negativity at random points") {
    for (auto placement : {ControlPlacement::Greville, ControlPlacement::Uniform}) {
        const PatchMesh patch = make_patch(10.0, 5.0, 3, 6, 6, placement);
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int e = 0; e < patch.num_elements(); ++e) {
            const auto [x0, x1, y0, y1] = patch.element_bounds(e);
            for (int trial = 0; trial < 5; ++trial) {
                const double xi = x0 + (x1 - x0) * uni(rng);
                const double eta = y0 + (y1 - y0) * uni(rng);
                const BasisEval eval = eval_basis(patch, e, xi, eta);
                CHECK(std::abs(eval.values.sum() - 1.0) < 1e-12);
                CHECK(eval.values.minCoeff() >= 0.0);
                CHECK(eval.det_jacobian > 0.0);
            }
        }
    }
}

TEST_CASE("clamped corners interpolate the corner control point") {
    const PatchMesh patch = make_patch(10.0, 10.0, 3, 5, 5);
    const BasisEval eval = eval_basis(patch, 0, 0.0, 0.0);
    // local node 0 is the (0,0) control point on element 0
    CHECK(eval.values(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval.values.tail(15).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("jacobian determinant is constant over Greville patches") {
    const PatchMesh patch = make_patch(9.0, 4.0, 3, 7, 5);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uni(0.01, 0.99);
    for (int e = 0; e < patch.num_elements(); ++e) {
        const auto [x0, x1, y0, y1] = patch.element_bounds(e);
        const BasisEval eval =
            eval_basis(patch, e, x0 + (x1 - x0) * uni(rng), y0 + (y1 - y0) * uni(rng));
        // affine map (xi,eta) -> (a xi, b eta): det = a*b everywhere
        CHECK(eval.det_jacobian == doctest::Approx(36.0).epsilon(1e-12));
    }
}

TEST_CASE("unit weights reduce the rational basis to the B-spline product") {
    const PatchMesh patch = make_patch(10.0, 10.0, 2, 5, 4);
    const int e = 1;
    const auto [x0, x1, y0, y1] = patch.element_bounds(e);
    const double xi = 0.5 * (x0 + x1), eta = 0.4 * y0 + 0.6 * y1;
    const BasisEval eval = eval_basis(patch, e, xi, eta);

    const auto& elem = patch.elements[e];
    const Eigen::VectorXd nu = bspline_basis(patch.knot_u, elem.span_u, xi);
    const Eigen::VectorXd nv = bspline_basis(patch.knot_v, elem.span_v, eta);
    for (int jv = 0; jv < 3; ++jv)
        for (int iu = 0; iu < 3; ++iu)
            CHECK(eval.values(jv * 3 + iu) == doctest::Approx(nu(iu) * nv(jv)).epsilon(1e-14));
}

TEST_CASE("rational machinery keeps its properties under non-unit weights") {
    PatchMesh patch = make_patch(10.0, 10.0, 3, 6, 6);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> wdist(0.5, 3.0);
    for (int c = 0; c < patch.num_control_points(); ++c) patch.weights(c) = wdist(rng);

    std::uniform_real_distribution<double> uni(0.1, 0.9);
    for (int e = 0; e < patch.num_elements(); e += 2) {
        const auto [x0, x1, y0, y1] = patch.element_bounds(e);
        const double xi = x0 + (x1 - x0) * uni(rng);
        const double eta = y0 + (y1 - y0) * uni(rng);
        const BasisEval eval = eval_basis(patch, e, xi, eta);
        CHECK(std::abs(eval.values.sum() - 1.0) < 1e-12);
        CHECK(eval.values.minCoeff() >= 0.0);

        // parametric gradients against central differences
        const double h = 1e-6;
        const BasisEval fwd = eval_basis(patch, e, xi + h, eta);
        const BasisEval bwd = eval_basis(patch, e, xi - h, eta);
        for (int i = 0; i < eval.values.size(); ++i) {
            const double fd = (fwd.values(i) - bwd.values(i)) / (2 * h);
            CHECK(eval.grad(i, 0) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("physical gradients match finite differences through the geometry map") {
    for (auto placement : {ControlPlacement::Greville, ControlPlacement::Uniform}) {
        const PatchMesh patch = make_patch(8.0, 6.0, 3, 7, 7, placement);
        const int e = 4;
        const auto [x0, x1, y0, y1] = patch.element_bounds(e);
        const double xi = 0.37 * x0 + 0.63 * x1, eta = 0.52 * y0 + 0.48 * y1;
        const BasisEval eval = eval_basis(patch, e, xi, eta);

        // interpolate a scalar field with random nodal values and difference
        // it against the perturbed physical positions
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        Eigen::VectorXd nodal(eval.values.size());
        for (int i = 0; i < nodal.size(); ++i) nodal(i) = uni(rng);

        const double h = 1e-6;
        auto field_at = [&](double u, double v) {
            const BasisEval ev = eval_basis(patch, e, u, v);
            return std::make_pair(ev.values.dot(nodal), patch.map_point(u, v));
        };
        const auto [fx1, px1] = field_at(xi + h, eta);
        const auto [fx0, px0] = field_at(xi - h, eta);
        const auto [fy1, py1] = field_at(xi, eta + h);
        const auto [fy0, py0] = field_at(xi, eta - h);

        Eigen::Matrix2d dpos;  // columns: d(x,y)/dxi, d(x,y)/deta
        dpos.col(0) = (px1 - px0) / (2 * h);
        dpos.col(1) = (py1 - py0) / (2 * h);
        const Eigen::Vector2d df_param((fx1 - fx0) / (2 * h), (fy1 - fy0) / (2 * h));
        // df/dx = (J^-T) df/dxi with J from the differenced geometry
        const Eigen::Vector2d grad_fd = dpos.transpose().colPivHouseholderQr().solve(df_param);

        const Eigen::Vector2d grad = (nodal.transpose() * eval.grad_phys).transpose();
        CHECK(grad(0) == doctest::Approx(grad_fd(0)).epsilon(1e-6));
        CHECK(grad(1) == doctest::Approx(grad_fd(1)).epsilon(1e-6));
    }
}

TEST_CASE("degenerate geometry is rejected at evaluation") {
    PatchMesh patch = make_patch(10.0, 10.0, 1, 2, 2);
    patch.control_points.setZero();  // collapse the patch to a point
    CHECK_THROWS_AS(eval_basis(patch, 0, 0.4, 0.4), std::runtime_error);
}
