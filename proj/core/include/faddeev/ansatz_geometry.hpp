#pragma once

#include <functional>
#include <span>

#include "faddeev/ansatz.hpp"
#include "faddeev/profile.hpp"

namespace faddeev {

// Decomposition coefficients of grad zeta over the (grad R x R grad Phi,
// grad R, R grad Phi) frame. Xi vanishes identically for the ansatz.
struct GeometryFactors {
    double Gamma = 0.0;
    double Xi = 0.0;
    double Sigma = 0.0;
};

// General formulas evaluated from the analytic cylindrical gradients of
// R = g(rho), Phi = m phi + l(z), zeta = z at one state (rho, g, g', l').
GeometryFactors geometry_factors_general(double rho, double g, double gp, double lp, int m);

// Ansatz-specialized closed forms; cross-checked against the general route
// (disagreement beyond 1e-9 relative throws).
GeometryFactors geometry_factors(double rho, double g, double gp, double lp, int m);

struct AbcCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// a = 0, b = rho^2 / ([m^2 + l'^2 rho^2] g^2 (g^2+1)), c = 1/((g^2+1) g'^2);
// always b, c >= 0 and a^2 - bc <= 0.
AbcCoefficients abc_coefficients(double rho, double g, double gp, double lp, int m);

// Max relative deviation of the three first-order relations
//   (grad R)^2        = -bX/(a^2-bc),
//   grad R . R grad Phi =  aX/(a^2-bc),
//   (R grad Phi)^2    = -cX/(a^2-bc),
// over a probe set. These are algebraic identities for the ansatz, holding
// for any positive profile, solution or not. Axis probes are skipped.
struct FirstOrderDeviation {
    double grad_R_sq = 0.0;
    double mixed = 0.0;
    double grad_Phi_sq = 0.0;
    int skipped = 0;
};

FirstOrderDeviation first_order_residual(const ProfileSolution& profile,
                                         std::span<const CylPoint> probes);

// Phase function l(z) with its derivative (the consistency probe needs l'
// exactly where the caller defines it, not a truncated reconstruction).
struct PhaseFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
};

// Max over z of |d/dz [Sigma (c+Y)/Gamma]| at a fixed profile cross-section
// (rho, g, g'). Zero iff l'' == 0; with the l(0)=0, l(2pi)=2pi n boundary
// that forces l(z) = n z.
double phase_linearity_defect(const PhaseFunction& ell, double rho, double g, double gp, int m,
                              int n, int nodes = 256);

// Residual of d/dR ln(R(b+Y)/Gamma) = (1-R^2)/(1+R^2) (c+Y)/(R(b+Y)) along a
// profile, with d/dR = (1/g') d/drho and the rho-derivative taken numerically
// from the dense output. An independent form of the reduced equation.
double by_form_residual(const ProfileSolution& profile, std::span<const double> probes);

}  // namespace faddeev
