#pragma once

#include <array>
#include <complex>
#include <optional>

#include "faddeev/ansatz.hpp"
#include "faddeev/profile.hpp"

namespace faddeev {

// Grid for the residual of the static field equation div alpha + i beta .
// alpha = 0. The window must sit strictly inside (0, rho_end); by default it
// avoids the first 5% and the last 10% of [0, rho_end], where series-start
// and steep-tail interpolation error dominate.
struct VerifyGridSpec {
    double rho_lo = 0.0;
    double rho_hi = 0.0;
    int n_rho = 256;
    int n_phi = 16;
    int n_z = 16;
    double phi0 = 0.0;  // grid offsets; residual norms are offset-invariant
    double z0 = 0.0;
    // Angular derivatives of the pure phase are exact by default; this flag
    // switches every coordinate to central differences.
    bool fully_finite_difference = false;
};

VerifyGridSpec default_verify_window(const ProfileSolution& profile);

struct ResidualReport {
    VerifyGridSpec grid;
    double spacing = 0.0;
    double l2_norm = 0.0;    // normalized by reference_scale
    double linf_norm = 0.0;  // normalized by reference_scale
    double reference_scale = 0.0;
    std::optional<double> convergence_order;
};

ResidualReport field_equation_residual(const ProfileSolution& profile, const VerifyGridSpec& spec);

struct ConvergenceStudy {
    std::array<double, 3> l2{};      // norms at h, h/2, h/4
    std::array<double, 2> orders{};  // pairwise observed orders
    std::optional<double> order;     // fitted; empty when unreliable
    bool reliable = false;
};

// Residual norms at three nested radial resolutions (N, 2N, 4N); second-order
// differences should show p ~ 2 until the interpolation-error floor.
ConvergenceStudy convergence_study(const ProfileSolution& profile, const VerifyGridSpec& base);

struct BoundaryAudit {
    double periodicity_z_defect = 0.0;
    double periodicity_phi_defect = 0.0;
    std::complex<double> axis_value{0.0, 0.0};
    double edge_magnitude = 0.0;
    bool singular_boundary_applicable = false;
    bool singular_boundary_ok = false;
};

BoundaryAudit boundary_audit(const ProfileSolution& profile);

struct AsymptoticExponents {
    double origin_slope = 0.0;            // expect |m|
    std::optional<double> pole_slope;     // expect 1; empty for bounded profiles
};

AsymptoticExponents asymptotic_exponents(const ProfileSolution& profile);

}  // namespace faddeev
