#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <vector>

#include "nanoplate/material.hpp"
#include "nanoplate/nurbs.hpp"

namespace nanoplate {

/// Eringen nonlocal parameter mu = (e0 * a)^2 in length^2 units.
struct NonlocalParams {
    double mu = 0.0;

    static NonlocalParams local() { return {0.0}; }
    static NonlocalParams from_lengths(double e0, double internal_length) {
        const double ea = e0 * internal_length;
        return {ea * ea};
    }
};

enum class BoundaryCondition { SSSS, CCCC };

/// Five dofs per control point, ordered (u0, v0, w0, theta_x, theta_y).
inline constexpr int kDofsPerPoint = 5;

/// Global dof bookkeeping: grid dimensions, constrained set, free ordering.
class DofMap {
public:
    DofMap(int n_u, int n_v);

    int n_u() const { return n_u_; }
    int n_v() const { return n_v_; }
    int total_dofs() const { return kDofsPerPoint * n_u_ * n_v_; }
    int num_free() const { return static_cast<int>(free_dofs_.size()); }
    int num_constrained() const { return total_dofs() - num_free(); }

    static int dof_of(int point, int component) { return kDofsPerPoint * point + component; }

    void constrain(int point, int component);
    bool is_constrained(int dof) const { return free_index_[dof] < 0; }

    /// Position of a global dof in the free ordering, -1 if constrained.
    int free_index(int dof) const { return free_index_[dof]; }
    const std::vector<int>& free_dofs() const { return free_dofs_; }

private:
    void rebuild();

    int n_u_ = 0;
    int n_v_ = 0;
    std::vector<bool> constrained_;
    std::vector<int> free_index_;
    std::vector<int> free_dofs_;
};

/// Strain-displacement and gradient operators at one integration point,
/// acting on the element dof vector (5 dofs per supported control point).
struct StrainOperators {
    Eigen::MatrixXd membrane;  // 3 x 5n: (u0,x ; v0,y ; u0,y + v0,x)
    Eigen::MatrixXd bending;   // 3 x 5n: (tx,x ; ty,y ; tx,y + ty,x)
    Eigen::MatrixXd shear;     // 2 x 5n: (tx + w0,x ; ty + w0,y)
    Eigen::MatrixXd gradient;  // 10 x 5n: (d/dx, d/dy) of each field, in dof order
};

StrainOperators strain_operators(const BasisEval& basis);

/// Field interpolation matrix: maps element dofs to the five field values.
Eigen::MatrixXd field_matrix(const BasisEval& basis);

struct ElementMatrices {
    Eigen::MatrixXd stiffness;
    Eigen::MatrixXd mass;
};

/// Element stiffness and consistent mass, the latter with the nonlocal
/// gradient augmentation M = M0 + mu * Mg.  gauss_per_dir = 0 selects the
/// full (p+1)-point rule per direction.
ElementMatrices element_matrices(const PatchMesh& patch, int element,
                                 const SectionProperties& section, NonlocalParams nl,
                                 int gauss_per_dir = 0);

/// Assembled global system.  Unconstrained after assemble(); reduced to the
/// free dofs after apply_bcs().
struct GlobalSystem {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::SparseMatrix<double> mass;
    DofMap dof_map;
    double mu = 0.0;
};

GlobalSystem assemble(const PatchMesh& patch, const SectionProperties& section, NonlocalParams nl,
                      int gauss_per_dir = 0);

/// Eliminate constrained rows/columns for the given boundary condition.
GlobalSystem apply_bcs(const GlobalSystem& system, BoundaryCondition bc);

}  // namespace nanoplate
