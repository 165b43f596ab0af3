#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

namespace nanoplate {

/// Open (clamped) knot vector together with the polynomial degree.
///
/// Invariants enforced on construction: the sequence is non-decreasing,
/// the first and last values repeat exactly degree+1 times, and the number
/// of basis functions (knots - degree - 1) is at least degree+1.
class KnotVector {
public:
    KnotVector(std::vector<double> knots, int degree);

    /// Open uniform knot vector on [0, 1] for num_basis functions.
    static KnotVector open_uniform(int degree, int num_basis);

    int degree() const { return degree_; }
    int num_basis() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
    int num_spans() const { return static_cast<int>(span_offsets_.size()); }
    const std::vector<double>& knots() const { return knots_; }

    double front() const { return knots_.front(); }
    double back() const { return knots_.back(); }

    /// Knot index of the element-th nonzero span.
    int span_of_element(int element) const;

    /// Knot span containing xi (binary search); xi == back() maps to the
    /// final nonzero span.
    int find_span(double xi) const;

    /// Greville abscissa of basis function i (mean of degree consecutive
    /// interior knots); the control grid built on these gives the patch
    /// linear precision, i.e. an exactly affine rectangle map.
    double greville(int i) const;

private:
    std::vector<double> knots_;
    int degree_ = 0;
    std::vector<int> span_offsets_;  // knot indices of nonzero spans
};

/// All nonzero B-spline basis functions N_{span-p..span,p} at xi.
Eigen::VectorXd bspline_basis(const KnotVector& kv, int span, double xi);

/// Nonzero basis functions and derivatives up to order k at xi.
/// Column j of the (p+1) x (k+1) result holds the j-th derivatives;
/// column 0 equals bspline_basis.
Eigen::MatrixXd bspline_basis_derivs(const KnotVector& kv, int span, double xi, int k);

/// Rational tensor-product basis evaluated at one parametric point.
struct BasisEval {
    Eigen::VectorXd values;     // R_i, one per supported control point
    Eigen::MatrixX2d grad;      // dR/dxi, dR/deta (parametric)
    Eigen::MatrixX2d grad_phys; // dR/dx, dR/dy (physical)
    Eigen::Matrix2d jacobian;   // d(x,y)/d(xi,eta)
    double det_jacobian = 0.0;
};

/// Tensor-product NURBS patch over a rectangle.
struct PatchMesh {
    struct Element {
        int span_u = 0;
        int span_v = 0;
        std::vector<int> nodes;  // (p+1)(q+1) supported control-point ids
    };

    KnotVector knot_u;
    KnotVector knot_v;
    Eigen::MatrixX2d control_points;  // row c = (x, y), c = j*n_u + i
    Eigen::VectorXd weights;          // strictly positive, one per control point
    std::vector<Element> elements;

    int num_u() const { return knot_u.num_basis(); }
    int num_v() const { return knot_v.num_basis(); }
    int num_control_points() const { return num_u() * num_v(); }
    int num_elements() const { return static_cast<int>(elements.size()); }
    int nodes_per_element() const { return (knot_u.degree() + 1) * (knot_v.degree() + 1); }

    /// Parametric rectangle of an element: {xi0, xi1, eta0, eta1}.
    std::array<double, 4> element_bounds(int element) const;

    /// Physical position of the parametric point (xi, eta).
    Eigen::Vector2d map_point(double xi, double eta) const;
};

/// Control-point placement for rectangle patches.  Greville abscissae give
/// linear precision, hence an exactly affine map with a constant jacobian.
/// Uniform spacing spans the same rectangle through a non-affine map whose
/// boundary elements are wider in physical space.
enum class ControlPlacement { Greville, Uniform };

/// Rectangular patch [0,a] x [0,b]: open uniform knots, equal degree in both
/// directions, unit weights.
PatchMesh make_patch(double a, double b, int degree, int n_u, int n_v,
                     ControlPlacement placement = ControlPlacement::Greville);

/// Rational basis, parametric and physical gradients, and the geometry
/// jacobian at (xi, eta) inside the given element.
BasisEval eval_basis(const PatchMesh& patch, int element, double xi, double eta);

}  // namespace nanoplate
