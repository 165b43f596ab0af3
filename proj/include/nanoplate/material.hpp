#pragma once

#include <Eigen/Core>
#include <optional>

namespace nanoplate {

/// Isotropic phase constants (Young's modulus, Poisson ratio, density).
struct Phase {
    double youngs = 0.0;
    double poisson = 0.0;
    double density = 0.0;
};

/// Ceramic/metal pair of the graded plate; ceramic sits on the top surface
/// (z = +h/2), metal on the bottom (z = -h/2).
struct ConstituentPair {
    Phase ceramic;
    Phase metal;
};

/// Through-thickness grading profile.
struct FgmProfile {
    ConstituentPair constituents;
    double gradient_index = 0.0;  // n >= 0; n = 0 is pure ceramic
    double thickness = 0.0;       // h
    std::optional<double> poisson_override;  // constant nu when set

    void validate() const;
};

/// Ceramic volume fraction V_c(z) = ((2z + h) / 2h)^n.
double volume_fraction(double z, double h, double n);

struct BulkShear {
    double bulk = 0.0;
    double shear = 0.0;
};

/// Mori-Tanaka estimate of the effective bulk/shear moduli of the two-phase
/// mix at ceramic volume fraction V_c.
BulkShear mori_tanaka(double v_c, double bulk_c, double shear_c, double bulk_m, double shear_m);

struct PointProperties {
    double youngs = 0.0;
    double poisson = 0.0;
    double density = 0.0;
};

/// Effective (E, nu, rho) at height z: Mori-Tanaka moduli, rule of mixtures
/// for density, optional constant-nu override.
PointProperties effective_props(double z, const FgmProfile& profile);

/// Bulk/shear moduli of an isotropic phase from (E, nu).
BulkShear phase_moduli(const Phase& phase);

/// Through-thickness integrated FSDT section constants.
struct SectionProperties {
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();  // extensional
    Eigen::Matrix3d B = Eigen::Matrix3d::Zero();  // bending-extension coupling
    Eigen::Matrix3d D = Eigen::Matrix3d::Zero();  // bending
    Eigen::Matrix2d Es = Eigen::Matrix2d::Zero(); // transverse shear (kappa included)
    double I11 = 0.0;  // integral of rho
    double I12 = 0.0;  // integral of rho*z
    double I22 = 0.0;  // integral of rho*z^2
    double kappa = 0.0;

    /// Achieved quadrature accuracy estimate, set only for fractional
    /// gradient indices (where the volume-fraction power law is not smooth
    /// at the metal surface).
    std::optional<double> quadrature_error;
};

inline constexpr double kDefaultShearCorrection = 5.0 / 6.0;

/// Integrate plane-stress stiffness and inertia through the thickness with
/// 30-point Gauss-Legendre (pairwise-symmetric accumulation, so odd moments
/// of even profiles vanish exactly).
SectionProperties section_constants(const FgmProfile& profile,
                                    double kappa = kDefaultShearCorrection,
                                    int integration_points = 30);

}  // namespace nanoplate
