#include "nanoplate/nurbs.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nanoplate {

namespace {

constexpr double kKnotTol = 1e-12;

}  // namespace

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
    if (degree_ < 0) throw std::invalid_argument("KnotVector: degree must be non-negative");
    const int n = static_cast<int>(knots_.size());
    if (n < 2 * (degree_ + 1))
        throw std::invalid_argument("KnotVector: too few knots for degree " + std::to_string(degree_));
    for (int i = 0; i + 1 < n; ++i)
        if (knots_[i] > knots_[i + 1])
            throw std::invalid_argument("KnotVector: knots must be non-decreasing");

    // Clamped ends: first/last value repeated exactly degree+1 times.
    auto multiplicity_front = std::count_if(knots_.begin(), knots_.end(), [&](double t) {
        return std::abs(t - knots_.front()) <= kKnotTol;
    });
    auto multiplicity_back = std::count_if(knots_.begin(), knots_.end(), [&](double t) {
        return std::abs(t - knots_.back()) <= kKnotTol;
    });
    if (multiplicity_front != degree_ + 1 || multiplicity_back != degree_ + 1)
        throw std::invalid_argument("KnotVector: end knots must repeat exactly degree+1 times (open/clamped)");
    if (num_basis() < degree_ + 1)
        throw std::invalid_argument("KnotVector: fewer basis functions than degree+1");

    for (int i = degree_; i < n - degree_ - 1; ++i)
        if (knots_[i + 1] > knots_[i]) span_offsets_.push_back(i);
}

KnotVector KnotVector::open_uniform(int degree, int num_basis) {
    if (num_basis < degree + 1)
        throw std::invalid_argument("KnotVector::open_uniform: need at least degree+1 basis functions");
    std::vector<double> knots;
    knots.reserve(num_basis + degree + 1);
    const int interior = num_basis - degree - 1;
    for (int i = 0; i <= degree; ++i) knots.push_back(0.0);
    for (int i = 1; i <= interior; ++i) knots.push_back(static_cast<double>(i) / (interior + 1));
    for (int i = 0; i <= degree; ++i) knots.push_back(1.0);
    return KnotVector(std::move(knots), degree);
}

int KnotVector::span_of_element(int element) const {
    if (element < 0 || element >= num_spans())
        throw std::out_of_range("KnotVector: element index out of range");
    return span_offsets_[element];
}

int KnotVector::find_span(double xi) const {
    if (xi < front() - kKnotTol || xi > back() + kKnotTol)
        throw std::domain_error("KnotVector: parameter outside knot range");
    if (xi >= back()) return span_offsets_.back();
    // Binary search over the nonzero spans: largest span start <= xi.
    int lo = 0, hi = num_spans() - 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (knots_[span_offsets_[mid]] <= xi)
            lo = mid;
        else
            hi = mid - 1;
    }
    return span_offsets_[lo];
}

double KnotVector::greville(int i) const {
    double sum = 0.0;
    for (int j = 1; j <= degree_; ++j) sum += knots_[i + j];
    return degree_ > 0 ? sum / degree_ : 0.5 * (knots_[i] + knots_[i + 1]);
}

Eigen::VectorXd bspline_basis(const KnotVector& kv, int span, double xi) {
    const int p = kv.degree();
    const auto& knots = kv.knots();
    if (span < p || span >= static_cast<int>(knots.size()) - p - 1 || knots[span + 1] <= knots[span])
        throw std::domain_error("bspline_basis: span is not a nonzero knot span");
    const bool at_end = span == kv.span_of_element(kv.num_spans() - 1) && xi >= kv.back();
    if (xi < knots[span] || (xi >= knots[span + 1] && !at_end))
        throw std::domain_error("bspline_basis: parameter outside the given span");

    // Cox-de Boor recursion restricted to the p+1 functions alive on the span.
    Eigen::VectorXd values(p + 1);
    values(0) = 1.0;
    Eigen::VectorXd left(p + 1), right(p + 1);
    for (int j = 1; j <= p; ++j) {
        left(j) = xi - knots[span + 1 - j];
        right(j) = knots[span + j] - xi;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            double tmp = values(r) / (right(r + 1) + left(j - r));
            values(r) = saved + right(r + 1) * tmp;
            saved = left(j - r) * tmp;
        }
        values(j) = saved;
    }
    return values;
}

Eigen::MatrixXd bspline_basis_derivs(const KnotVector& kv, int span, double xi, int k) {
    const int p = kv.degree();
    if (k > p)
        throw std::invalid_argument("bspline_basis_derivs: derivative order exceeds degree");
    if (k < 0) throw std::invalid_argument("bspline_basis_derivs: negative derivative order");
    bspline_basis(kv, span, xi);  // span/parameter validation
    const auto& knots = kv.knots();

    // Triangular table of all lower-degree bases plus knot differences,
    // then the derivative recursion over inverted differences.
    Eigen::MatrixXd ndu(p + 1, p + 1);
    ndu(0, 0) = 1.0;
    Eigen::VectorXd left(p + 1), right(p + 1);
    for (int j = 1; j <= p; ++j) {
        left(j) = xi - knots[span + 1 - j];
        right(j) = knots[span + j] - xi;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu(j, r) = right(r + 1) + left(j - r);
            double tmp = ndu(r, j - 1) / ndu(j, r);
            ndu(r, j) = saved + right(r + 1) * tmp;
            saved = left(j - r) * tmp;
        }
        ndu(j, j) = saved;
    }

    Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(p + 1, k + 1);
    ders.col(0) = ndu.col(p);

    Eigen::MatrixXd a(2, p + 1);
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a(0, 0) = 1.0;
        for (int order = 1; order <= k; ++order) {
            double d = 0.0;
            const int rk = r - order;
            const int pk = p - order;
            if (r >= order) {
                a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
                d = a(s2, 0) * ndu(rk, pk);
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = r - 1 <= pk ? order - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
                d += a(s2, j) * ndu(rk + j, pk);
            }
            if (r <= pk) {
                a(s2, order) = -a(s1, order - 1) / ndu(pk + 1, r);
                d += a(s2, order) * ndu(r, pk);
            }
            ders(r, order) = d;
            std::swap(s1, s2);
        }
    }

    double factor = p;
    for (int order = 1; order <= k; ++order) {
        for (int r = 0; r <= p; ++r) ders(r, order) *= factor;
        factor *= p - order;
    }
    return ders;
}

std::array<double, 4> PatchMesh::element_bounds(int element) const {
    if (element < 0 || element >= num_elements())
        throw std::out_of_range("PatchMesh: element index out of range");
    const Element& e = elements[element];
    const auto& ku = knot_u.knots();
    const auto& kvv = knot_v.knots();
    return {ku[e.span_u], ku[e.span_u + 1], kvv[e.span_v], kvv[e.span_v + 1]};
}

Eigen::Vector2d PatchMesh::map_point(double xi, double eta) const {
    const int span_u = knot_u.find_span(xi);
    const int span_v = knot_v.find_span(eta);
    const Eigen::VectorXd nu = bspline_basis(knot_u, span_u, xi);
    const Eigen::VectorXd nv = bspline_basis(knot_v, span_v, eta);
    const int p = knot_u.degree(), q = knot_v.degree();

    Eigen::Vector2d num = Eigen::Vector2d::Zero();
    double den = 0.0;
    for (int jv = 0; jv <= q; ++jv) {
        for (int iu = 0; iu <= p; ++iu) {
            const int c = (span_v - q + jv) * num_u() + (span_u - p + iu);
            const double nw = nu(iu) * nv(jv) * weights(c);
            num += nw * control_points.row(c).transpose();
            den += nw;
        }
    }
    return num / den;
}

PatchMesh make_patch(double a, double b, int degree, int n_u, int n_v,
                     ControlPlacement placement) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("make_patch: plate edges must be positive");
    if (degree < 1) throw std::invalid_argument("make_patch: degree must be at least 1");
    if (n_u < degree + 1 || n_v < degree + 1)
        throw std::invalid_argument("make_patch: control net needs at least degree+1 points per direction");

    PatchMesh patch{KnotVector::open_uniform(degree, n_u), KnotVector::open_uniform(degree, n_v),
                    {}, {}, {}};
    patch.control_points.resize(n_u * n_v, 2);
    auto abscissa = [&](const KnotVector& kv, int i, int count) {
        return placement == ControlPlacement::Greville ? kv.greville(i) : i / (count - 1.0);
    };
    for (int j = 0; j < n_v; ++j) {
        const double y = b * abscissa(patch.knot_v, j, n_v);
        for (int i = 0; i < n_u; ++i) {
            patch.control_points.row(j * n_u + i) << a * abscissa(patch.knot_u, i, n_u), y;
        }
    }
    patch.weights = Eigen::VectorXd::Ones(n_u * n_v);

    const int p = degree, q = degree;
    for (int ev = 0; ev < patch.knot_v.num_spans(); ++ev) {
        const int span_v = patch.knot_v.span_of_element(ev);
        for (int eu = 0; eu < patch.knot_u.num_spans(); ++eu) {
            const int span_u = patch.knot_u.span_of_element(eu);
            PatchMesh::Element elem{span_u, span_v, {}};
            elem.nodes.reserve((p + 1) * (q + 1));
            for (int jv = 0; jv <= q; ++jv)
                for (int iu = 0; iu <= p; ++iu)
                    elem.nodes.push_back((span_v - q + jv) * n_u + (span_u - p + iu));
            patch.elements.push_back(std::move(elem));
        }
    }
    return patch;
}

BasisEval eval_basis(const PatchMesh& patch, int element, double xi, double eta) {
    if (element < 0 || element >= patch.num_elements())
        throw std::out_of_range("eval_basis: element index out of range");
    const PatchMesh::Element& elem = patch.elements[element];
    const int p = patch.knot_u.degree(), q = patch.knot_v.degree();
    const int nen = (p + 1) * (q + 1);

    const Eigen::MatrixXd du = bspline_basis_derivs(patch.knot_u, elem.span_u, xi, 1);
    const Eigen::MatrixXd dv = bspline_basis_derivs(patch.knot_v, elem.span_v, eta, 1);

    // Weighted projection: R_i = N_i w_i / W with W = sum N_j w_j.
    Eigen::VectorXd nw(nen), nw_xi(nen), nw_eta(nen);
    double w = 0.0, w_xi = 0.0, w_eta = 0.0;
    for (int jv = 0; jv <= q; ++jv) {
        for (int iu = 0; iu <= p; ++iu) {
            const int local = jv * (p + 1) + iu;
            const double wi = patch.weights(elem.nodes[local]);
            nw(local) = du(iu, 0) * dv(jv, 0) * wi;
            nw_xi(local) = du(iu, 1) * dv(jv, 0) * wi;
            nw_eta(local) = du(iu, 0) * dv(jv, 1) * wi;
            w += nw(local);
            w_xi += nw_xi(local);
            w_eta += nw_eta(local);
        }
    }

    BasisEval eval;
    eval.values = nw / w;
    eval.grad.resize(nen, 2);
    eval.grad.col(0) = (nw_xi - w_xi * eval.values) / w;
    eval.grad.col(1) = (nw_eta - w_eta * eval.values) / w;

    eval.jacobian.setZero();
    for (int local = 0; local < nen; ++local) {
        const Eigen::RowVector2d pt = patch.control_points.row(elem.nodes[local]);
        eval.jacobian.col(0) += eval.grad(local, 0) * pt.transpose();
        eval.jacobian.col(1) += eval.grad(local, 1) * pt.transpose();
    }
    eval.det_jacobian = eval.jacobian.determinant();
    if (!(eval.det_jacobian > 0.0))
        throw std::runtime_error("eval_basis: non-positive jacobian (degenerate geometry)");

    eval.grad_phys = eval.grad * eval.jacobian.inverse();
    return eval;
}

}  // namespace nanoplate
