#include "nanoplate/assembly.hpp"

#include <stdexcept>

#include "nanoplate/quadrature.hpp"

namespace nanoplate {

namespace {

// Field component indices within a control point's dof block.
enum : int { kU0 = 0, kV0 = 1, kW0 = 2, kThetaX = 3, kThetaY = 4 };

/// 5x5 inertia pattern from the translational/rotary terms of the five
/// equations of motion: I11 on translations, I22 on rotations, I12 coupling
/// in-plane translations with the matching rotations.
Eigen::Matrix<double, 5, 5> inertia_matrix(const SectionProperties& section) {
    Eigen::Matrix<double, 5, 5> m = Eigen::Matrix<double, 5, 5>::Zero();
    m(kU0, kU0) = m(kV0, kV0) = m(kW0, kW0) = section.I11;
    m(kThetaX, kThetaX) = m(kThetaY, kThetaY) = section.I22;
    m(kU0, kThetaX) = m(kThetaX, kU0) = section.I12;
    m(kV0, kThetaY) = m(kThetaY, kV0) = section.I12;
    return m;
}

}  // namespace

DofMap::DofMap(int n_u, int n_v) : n_u_(n_u), n_v_(n_v) {
    if (n_u < 1 || n_v < 1) throw std::invalid_argument("DofMap: grid dimensions must be positive");
    constrained_.assign(total_dofs(), false);
    rebuild();
}

void DofMap::constrain(int point, int component) {
    if (point < 0 || point >= n_u_ * n_v_ || component < 0 || component >= kDofsPerPoint)
        throw std::out_of_range("DofMap::constrain: index out of range");
    constrained_[dof_of(point, component)] = true;
    rebuild();
}

void DofMap::rebuild() {
    free_index_.assign(total_dofs(), -1);
    free_dofs_.clear();
    for (int dof = 0; dof < total_dofs(); ++dof) {
        if (!constrained_[dof]) {
            free_index_[dof] = static_cast<int>(free_dofs_.size());
            free_dofs_.push_back(dof);
        }
    }
}

StrainOperators strain_operators(const BasisEval& basis) {
    const int nen = static_cast<int>(basis.values.size());
    const int cols = kDofsPerPoint * nen;

    StrainOperators ops;
    ops.membrane = Eigen::MatrixXd::Zero(3, cols);
    ops.bending = Eigen::MatrixXd::Zero(3, cols);
    ops.shear = Eigen::MatrixXd::Zero(2, cols);
    ops.gradient = Eigen::MatrixXd::Zero(2 * kDofsPerPoint, cols);

    for (int a = 0; a < nen; ++a) {
        const double val = basis.values(a);
        const double dx = basis.grad_phys(a, 0);
        const double dy = basis.grad_phys(a, 1);
        const int base = kDofsPerPoint * a;

        ops.membrane(0, base + kU0) = dx;
        ops.membrane(1, base + kV0) = dy;
        ops.membrane(2, base + kU0) = dy;
        ops.membrane(2, base + kV0) = dx;

        ops.bending(0, base + kThetaX) = dx;
        ops.bending(1, base + kThetaY) = dy;
        ops.bending(2, base + kThetaX) = dy;
        ops.bending(2, base + kThetaY) = dx;

        ops.shear(0, base + kThetaX) = val;
        ops.shear(0, base + kW0) = dx;
        ops.shear(1, base + kThetaY) = val;
        ops.shear(1, base + kW0) = dy;

        for (int f = 0; f < kDofsPerPoint; ++f) {
            ops.gradient(2 * f + 0, base + f) = dx;
            ops.gradient(2 * f + 1, base + f) = dy;
        }
    }
    return ops;
}

Eigen::MatrixXd field_matrix(const BasisEval& basis) {
    const int nen = static_cast<int>(basis.values.size());
    Eigen::MatrixXd fields = Eigen::MatrixXd::Zero(kDofsPerPoint, kDofsPerPoint * nen);
    for (int a = 0; a < nen; ++a)
        for (int f = 0; f < kDofsPerPoint; ++f)
            fields(f, kDofsPerPoint * a + f) = basis.values(a);
    return fields;
}

ElementMatrices element_matrices(const PatchMesh& patch, int element,
                                 const SectionProperties& section, NonlocalParams nl,
                                 int gauss_per_dir) {
    if (nl.mu < 0.0) throw std::invalid_argument("element_matrices: mu must be non-negative");
    const int p = patch.knot_u.degree();
    const int q = patch.knot_v.degree();
    const int n_gauss_u = gauss_per_dir > 0 ? gauss_per_dir : p + 1;
    const int n_gauss_v = gauss_per_dir > 0 ? gauss_per_dir : q + 1;
    const GaussRule rule_u = gauss_legendre(n_gauss_u);
    const GaussRule rule_v = gauss_legendre(n_gauss_v);

    const auto [xi0, xi1, eta0, eta1] = patch.element_bounds(element);
    const double scale_u = 0.5 * (xi1 - xi0);
    const double scale_v = 0.5 * (eta1 - eta0);

    const int ndof = kDofsPerPoint * patch.nodes_per_element();
    ElementMatrices out{Eigen::MatrixXd::Zero(ndof, ndof), Eigen::MatrixXd::Zero(ndof, ndof)};

    const Eigen::Matrix<double, 5, 5> inertia = inertia_matrix(section);
    // Gradient-gradient inertia: the same 5x5 pattern applied to both the
    // x- and y-derivatives of each field.
    Eigen::Matrix<double, 10, 10> inertia_grad = Eigen::Matrix<double, 10, 10>::Zero();
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) {
            inertia_grad(2 * r + 0, 2 * c + 0) = inertia(r, c);
            inertia_grad(2 * r + 1, 2 * c + 1) = inertia(r, c);
        }

    for (int gv = 0; gv < rule_v.size(); ++gv) {
        const double eta = eta0 + scale_v * (rule_v.points(gv) + 1.0);
        for (int gu = 0; gu < rule_u.size(); ++gu) {
            const double xi = xi0 + scale_u * (rule_u.points(gu) + 1.0);
            const BasisEval basis = eval_basis(patch, element, xi, eta);
            if (!(basis.det_jacobian > 0.0))
                throw std::runtime_error("element_matrices: non-positive jacobian");

            const double dA = basis.det_jacobian * scale_u * scale_v * rule_u.weights(gu) *
                              rule_v.weights(gv);
            const StrainOperators ops = strain_operators(basis);
            const Eigen::MatrixXd fields = field_matrix(basis);

            out.stiffness.noalias() += dA * ops.membrane.transpose() * section.A * ops.membrane;
            out.stiffness.noalias() += dA * ops.membrane.transpose() * section.B * ops.bending;
            out.stiffness.noalias() += dA * ops.bending.transpose() * section.B * ops.membrane;
            out.stiffness.noalias() += dA * ops.bending.transpose() * section.D * ops.bending;
            out.stiffness.noalias() += dA * ops.shear.transpose() * section.Es * ops.shear;

            out.mass.noalias() += dA * fields.transpose() * inertia * fields;
            if (nl.mu > 0.0)
                out.mass.noalias() +=
                    (nl.mu * dA) * ops.gradient.transpose() * inertia_grad * ops.gradient;
        }
    }
    return out;
}

GlobalSystem assemble(const PatchMesh& patch, const SectionProperties& section, NonlocalParams nl,
                      int gauss_per_dir) {
    const int nen = patch.nodes_per_element();
    const int ndof_e = kDofsPerPoint * nen;

    std::vector<Eigen::Triplet<double>> k_triplets, m_triplets;
    k_triplets.reserve(static_cast<size_t>(patch.num_elements()) * ndof_e * ndof_e);
    m_triplets.reserve(k_triplets.capacity());

    for (int e = 0; e < patch.num_elements(); ++e) {
        const ElementMatrices mats = element_matrices(patch, e, section, nl, gauss_per_dir);
        const auto& nodes = patch.elements[e].nodes;
        if (static_cast<int>(nodes.size()) != nen)
            throw std::runtime_error("assemble: element connectivity size mismatch");
        for (int a = 0; a < ndof_e; ++a) {
            const int row = kDofsPerPoint * nodes[a / kDofsPerPoint] + a % kDofsPerPoint;
            for (int b = 0; b < ndof_e; ++b) {
                const int col = kDofsPerPoint * nodes[b / kDofsPerPoint] + b % kDofsPerPoint;
                k_triplets.emplace_back(row, col, mats.stiffness(a, b));
                m_triplets.emplace_back(row, col, mats.mass(a, b));
            }
        }
    }

    GlobalSystem system{Eigen::SparseMatrix<double>(), Eigen::SparseMatrix<double>(),
                        DofMap(patch.num_u(), patch.num_v()), nl.mu};
    const int n = system.dof_map.total_dofs();
    system.stiffness.resize(n, n);
    system.mass.resize(n, n);
    system.stiffness.setFromTriplets(k_triplets.begin(), k_triplets.end());
    system.mass.setFromTriplets(m_triplets.begin(), m_triplets.end());
    return system;
}

GlobalSystem apply_bcs(const GlobalSystem& system, BoundaryCondition bc) {
    const int n_u = system.dof_map.n_u();
    const int n_v = system.dof_map.n_v();

    DofMap reduced_map(n_u, n_v);
    for (int j = 0; j < n_v; ++j) {
        for (int i = 0; i < n_u; ++i) {
            const bool on_x_edge = (i == 0 || i == n_u - 1);  // x = 0, a
            const bool on_y_edge = (j == 0 || j == n_v - 1);  // y = 0, b
            if (!on_x_edge && !on_y_edge) continue;
            const int point = j * n_u + i;
            if (bc == BoundaryCondition::CCCC) {
                for (int c = 0; c < kDofsPerPoint; ++c) reduced_map.constrain(point, c);
                continue;
            }
            if (on_x_edge) {
                reduced_map.constrain(point, 0);  // u0
                reduced_map.constrain(point, 2);  // w0
                reduced_map.constrain(point, 4);  // theta_y
            }
            if (on_y_edge) {
                reduced_map.constrain(point, 1);  // v0
                reduced_map.constrain(point, 2);  // w0
                reduced_map.constrain(point, 3);  // theta_x
            }
        }
    }
    if (reduced_map.num_free() == 0)
        throw std::runtime_error("apply_bcs: all dofs constrained (over-constrained system)");

    // Gather the free-free block.
    const int n_free = reduced_map.num_free();
    std::vector<Eigen::Triplet<double>> k_triplets, m_triplets;
    for (int outer = 0; outer < system.stiffness.outerSize(); ++outer) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(system.stiffness, outer); it; ++it) {
            const int r = reduced_map.free_index(static_cast<int>(it.row()));
            const int c = reduced_map.free_index(static_cast<int>(it.col()));
            if (r >= 0 && c >= 0) k_triplets.emplace_back(r, c, it.value());
        }
    }
    for (int outer = 0; outer < system.mass.outerSize(); ++outer) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(system.mass, outer); it; ++it) {
            const int r = reduced_map.free_index(static_cast<int>(it.row()));
            const int c = reduced_map.free_index(static_cast<int>(it.col()));
            if (r >= 0 && c >= 0) m_triplets.emplace_back(r, c, it.value());
        }
    }

    GlobalSystem reduced{Eigen::SparseMatrix<double>(n_free, n_free),
                         Eigen::SparseMatrix<double>(n_free, n_free), reduced_map, system.mu};
    reduced.stiffness.setFromTriplets(k_triplets.begin(), k_triplets.end());
    reduced.mass.setFromTriplets(m_triplets.begin(), m_triplets.end());
    return reduced;
}

}  // namespace nanoplate
