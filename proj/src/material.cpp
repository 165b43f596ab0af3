#include "nanoplate/material.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nanoplate/quadrature.hpp"

namespace nanoplate {

namespace {

void validate_phase(const Phase& phase, const char* name) {
    if (phase.youngs <= 0.0)
        throw std::invalid_argument(std::string(name) + ": Young's modulus must be positive");
    if (phase.poisson <= 0.0 || phase.poisson >= 0.5)
        throw std::invalid_argument(std::string(name) + ": Poisson ratio must lie in (0, 0.5)");
    if (phase.density <= 0.0)
        throw std::invalid_argument(std::string(name) + ": density must be positive");
}

/// Plane-stress stiffness entries at one height: {Q11, Q12, Q66}.
/// Q22 = Q11 and Q44 = Q55 = Q66 for the isotropic grading used here.
struct PlaneStress {
    double q11, q12, q66;
};

PlaneStress plane_stress(const PointProperties& props) {
    const double denom = 1.0 - props.poisson * props.poisson;
    return {props.youngs / denom, props.poisson * props.youngs / denom,
            props.youngs / (2.0 * (1.0 + props.poisson))};
}

}  // namespace

void FgmProfile::validate() const {
    validate_phase(constituents.ceramic, "ceramic phase");
    validate_phase(constituents.metal, "metal phase");
    if (gradient_index < 0.0)
        throw std::invalid_argument("FgmProfile: gradient index must be non-negative");
    if (thickness <= 0.0) throw std::invalid_argument("FgmProfile: thickness must be positive");
    if (poisson_override && (*poisson_override <= 0.0 || *poisson_override >= 0.5))
        throw std::invalid_argument("FgmProfile: Poisson override must lie in (0, 0.5)");
}

double volume_fraction(double z, double h, double n) {
    if (n < 0.0) throw std::invalid_argument("volume_fraction: gradient index must be non-negative");
    if (std::abs(z) > h / 2.0 * (1.0 + 1e-12))
        throw std::domain_error("volume_fraction: height outside [-h/2, h/2]");
    return std::pow((2.0 * z + h) / (2.0 * h), n);
}

BulkShear mori_tanaka(double v_c, double bulk_c, double shear_c, double bulk_m, double shear_m) {
    if (v_c < 0.0 || v_c > 1.0)
        throw std::invalid_argument("mori_tanaka: volume fraction must lie in [0, 1]");
    if (bulk_c <= 0.0 || shear_c <= 0.0 || bulk_m <= 0.0 || shear_m <= 0.0)
        throw std::invalid_argument("mori_tanaka: moduli must be positive");

    const double f1 = shear_m * (9.0 * bulk_m + 8.0 * shear_m) / (6.0 * (bulk_m + 2.0 * shear_m));
    const double bulk = bulk_m + (bulk_c - bulk_m) * v_c /
                                     (1.0 + (1.0 - v_c) * 3.0 * (bulk_c - bulk_m) /
                                                (3.0 * bulk_m + 4.0 * shear_m));
    const double shear = shear_m + (shear_c - shear_m) * v_c /
                                       (1.0 + (1.0 - v_c) * (shear_c - shear_m) / (shear_m + f1));
    return {bulk, shear};
}

BulkShear phase_moduli(const Phase& phase) {
    return {phase.youngs / (3.0 * (1.0 - 2.0 * phase.poisson)),
            phase.youngs / (2.0 * (1.0 + phase.poisson))};
}

PointProperties effective_props(double z, const FgmProfile& profile) {
    const double v_c = volume_fraction(z, profile.thickness, profile.gradient_index);
    const BulkShear ceramic = phase_moduli(profile.constituents.ceramic);
    const BulkShear metal = phase_moduli(profile.constituents.metal);
    const BulkShear mix = mori_tanaka(v_c, ceramic.bulk, ceramic.shear, metal.bulk, metal.shear);

    PointProperties props;
    props.youngs = 9.0 * mix.bulk * mix.shear / (3.0 * mix.bulk + mix.shear);
    props.poisson = profile.poisson_override
                        ? *profile.poisson_override
                        : (3.0 * mix.bulk - 2.0 * mix.shear) / (2.0 * (3.0 * mix.bulk + mix.shear));
    props.density = profile.constituents.ceramic.density * v_c +
                    profile.constituents.metal.density * (1.0 - v_c);
    return props;
}

namespace {

SectionProperties integrate_section(const FgmProfile& profile, double kappa,
                                    int integration_points) {
    const double h = profile.thickness;
    const GaussRule rule = gauss_legendre(integration_points);

    SectionProperties section;
    section.kappa = kappa;
    double es = 0.0;

    struct Moments {
        double a[3]{}, b[3]{}, d[3]{}, e{}, i11{}, i12{}, i22{};
    };
    auto point_moments = [&](double z, double wz) {
        Moments m;
        const PointProperties props = effective_props(z, profile);
        const PlaneStress q = plane_stress(props);
        const double qs[3] = {q.q11, q.q12, q.q66};
        for (int c = 0; c < 3; ++c) {
            m.a[c] = qs[c] * wz;
            m.b[c] = qs[c] * z * wz;
            m.d[c] = qs[c] * z * z * wz;
        }
        m.e = q.q66 * wz;
        m.i11 = props.density * wz;
        m.i12 = props.density * z * wz;
        m.i22 = props.density * z * z * wz;
        return m;
    };
    auto add_moments = [&](const Moments& m) {
        section.A(0, 0) += m.a[0];
        section.A(0, 1) += m.a[1];
        section.A(2, 2) += m.a[2];
        section.B(0, 0) += m.b[0];
        section.B(0, 1) += m.b[1];
        section.B(2, 2) += m.b[2];
        section.D(0, 0) += m.d[0];
        section.D(0, 1) += m.d[1];
        section.D(2, 2) += m.d[2];
        es += m.e;
        section.I11 += m.i11;
        section.I12 += m.i12;
        section.I22 += m.i22;
    };

    // Combine each mirrored Gauss pair before accumulating: for z-symmetric
    // sections the pair's odd-moment terms (B, I12) are exact IEEE negatives,
    // so homogeneous profiles produce bitwise-zero coupling.
    const int n = rule.size();
    for (int k = 0; k < n / 2; ++k) {
        const Moments lo = point_moments(0.5 * h * rule.points(k), 0.5 * h * rule.weights(k));
        const Moments hi =
            point_moments(0.5 * h * rule.points(n - 1 - k), 0.5 * h * rule.weights(n - 1 - k));
        Moments pair;
        for (int c = 0; c < 3; ++c) {
            pair.a[c] = lo.a[c] + hi.a[c];
            pair.b[c] = lo.b[c] + hi.b[c];
            pair.d[c] = lo.d[c] + hi.d[c];
        }
        pair.e = lo.e + hi.e;
        pair.i11 = lo.i11 + hi.i11;
        pair.i12 = lo.i12 + hi.i12;
        pair.i22 = lo.i22 + hi.i22;
        add_moments(pair);
    }
    if (n % 2 == 1) add_moments(point_moments(0.0, 0.5 * h * rule.weights(n / 2)));

    // Isotropic grading: Q22 = Q11 at every height.
    section.A(1, 1) = section.A(0, 0);
    section.B(1, 1) = section.B(0, 0);
    section.D(1, 1) = section.D(0, 0);
    section.A(1, 0) = section.A(0, 1);
    section.B(1, 0) = section.B(0, 1);
    section.D(1, 0) = section.D(0, 1);
    section.Es = kappa * es * Eigen::Matrix2d::Identity();
    return section;
}

}  // namespace

SectionProperties section_constants(const FgmProfile& profile, double kappa,
                                    int integration_points) {
    profile.validate();
    if (kappa <= 0.0 || kappa > 1.0)
        throw std::invalid_argument("section_constants: shear correction must lie in (0, 1]");
    if (integration_points < 2)
        throw std::invalid_argument("section_constants: need at least two integration points");

    SectionProperties section = integrate_section(profile, kappa, integration_points);

    // The power law loses smoothness at the metal surface for fractional
    // exponents; report the accuracy achieved there against a doubled rule.
    const double gi = profile.gradient_index;
    if (gi != std::floor(gi)) {
        const SectionProperties fine = integrate_section(profile, kappa, 2 * integration_points);
        double worst = 0.0;
        auto track = [&worst](double coarse_v, double fine_v) {
            const double denom = std::max(std::abs(fine_v), 1e-300);
            worst = std::max(worst, std::abs(coarse_v - fine_v) / denom);
        };
        track(section.A(0, 0), fine.A(0, 0));
        track(section.B(0, 0), fine.B(0, 0));
        track(section.D(0, 0), fine.D(0, 0));
        track(section.I11, fine.I11);
        track(section.I22, fine.I22);
        section.quadrature_error = worst;
    }
    return section;
}

}  // namespace nanoplate
