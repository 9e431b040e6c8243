#pragma once

#include <optional>
#include <string>

#include "faddeev/ansatz.hpp"
#include "faddeev/profile.hpp"
#include "faddeev/vec3.hpp"

namespace faddeev {

// Four-dimensional Levi-Civita symbol with eps(1,2,3,4) = +1; 0 on repeats.
int levi_civita4(int a, int b, int c, int d);

// Gauge potential A_i = (1/i)(Z^dag d_i Z - (d_i Z^dag) Z) of the ansatz
// spinor and its curl, in physical cylindrical components. f = |Z1|^2.
struct GaugeData {
    Vec3d A;
    Vec3d Bcurl;
    double f = 0.0;
};

GaugeData gauge_potential(const CylPoint& point, const ProfileSolution& profile);

enum class ChargeMethod { closed, reduced, grid3d };

struct ChargeDiscretization {
    std::string rule;
    int n_rho = 0;
    int n_phi = 0;
    int n_z = 0;
    double axis_excision = 0.0;
};

struct ChargeReport {
    ChargeMethod method = ChargeMethod::closed;
    double value = 0.0;
    int expected = 0;  // m * n
    double abs_error_estimate = 0.0;
    ChargeDiscretization discretization;
    // Closed-form tail contribution mn (1 - f(rho_last)) added to the
    // quadrature methods for singular profiles; never silently.
    double tail_correction = 0.0;
    bool tail_correction_applied = false;
    bool error_estimate_available = true;
    double distance_to_integer = 0.0;
};

// Endpoint formula Q = mn (f_end - f_0): f_end = 1 exactly for a Singular
// classification (g(rho0) = infinity is part of the model's boundary data),
// otherwise f at the last sample; f_0 from the interpolant's origin limit.
// abs_error_estimate reports the tail truncation mn (1 - f(rho_last)).
ChargeReport hopf_closed(const ProfileSolution& profile);

// (1/16pi^2) * 4pi^2 * integral of (A . B) rho drho by composite quadrature
// over the profile samples; order 2 = trapezoid, 4 = Simpson with interpolant
// midpoints.
ChargeReport hopf_reduced(const ProfileSolution& profile, int quad_order = 4);

struct Grid3dSpec {
    int n_rho = 256;
    int n_phi = 16;
    int n_z = 16;
    double axis_excision = 1e-3;
};

// Full 3-D quadrature of the Levi-Civita form (1/12pi^2) eps_{abgd} Phi_a
// d(Phi_b,Phi_c,Phi_d)/d(x,y,z) on a cylindrical grid: radial derivatives by
// differences, angular by exact phase factors, Cartesian partials by chain
// rule. Richardson error estimate from two rho-resolutions plus the
// O(eps^{2|m|}) axis-excision bound.
ChargeReport hopf_grid3d(const ProfileSolution& profile, const Grid3dSpec& spec = {});

}  // namespace faddeev
