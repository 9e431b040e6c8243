#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "faddeev/profile.hpp"

namespace faddeev {

// The reduced profile equation in conservation form is
//   d/drho [ P(rho, g) g' ] = RHS(rho, g, g'),
//   P   = [2 (m^2 + n^2 rho^2) g^2 + rho^2 (1+g^2)^2] / (rho (1+g^2)^3),
//   RHS = (m^2 + n^2 rho^2) g (1-g^2) [(1+g^2)^2 + 2 g'^2] / (rho (1+g^2)^4).
// Expanding by the product rule gives the explicit second derivative
//   g'' = [RHS - (P_rho + P_g g') g'] / P.
struct OdeTerms {
    double P = 0.0;
    double dP_drho = 0.0;
    double dP_dg = 0.0;
    double rhs = 0.0;
    double gpp = 0.0;
};

OdeTerms ode_rhs(const OdeState& state, const AnsatzParams& params);

// Leading-monomial start g = c rho^|m|, g' = c |m| rho^{|m|-1} at rho_eps.
// The decaying branch g ~ rho^{-|m|} is excluded by the boundary u(0) = 0.
OdeState series_start(const AnsatzParams& params, double rho_eps);

// Adaptive Dormand-Prince 5(4) integration from the series start; terminates
// on the blow-up event g >= g_max (-> Singular, rho0 from the tail fit) or at
// rho_max (-> Bounded). Throws SolverError on step underflow or non-finite
// state.
ProfileSolution integrate_profile(const AnsatzParams& params, const SolveConfig& cfg = {});

struct TailPoint {
    double rho = 0.0;
    double g = 0.0;
};

struct TailFit {
    double rho0 = 0.0;
    double C = 0.0;
    double fit_residual = 0.0;
};

// Least-squares line through h = 1/g against rho (h is asymptotically linear
// for g ~ C/(rho0-rho)); the h = 0 crossing estimates rho0. Requires >= 8
// points with strictly increasing g; a non-negative slope means the tail is
// not blowing up like a simple pole and raises FitError.
TailFit estimate_rho0(std::span<const TailPoint> tail);

enum class RowStatus { singular, bounded, error };

struct ScanRow {
    double c_lead = 0.0;
    RowStatus status = RowStatus::error;
    std::optional<double> rho0;
    std::string message;  // non-empty only for error rows
};

struct ScanTable {
    int m = 0;
    int n = 0;
    std::vector<ScanRow> rows;
};

// One integrate_profile per c on a log-spaced grid over [c_lo, c_hi]
// (rho0 varies over decades with c). Per-row failures become error rows.
ScanTable scan_coefficient(int m, int n, double c_lo, double c_hi, int steps,
                           const SolveConfig& cfg = {});

// Bisection on c until |rho0(c) - target| < tol. Both bracket ends must be
// Singular and straddle the target; a Bounded classification encountered
// inside the bracket raises ClassificationChangeError.
double match_rho0(int m, int n, double target_rho0, std::pair<double, double> c_bracket,
                  double tol, const SolveConfig& cfg = {});

}  // namespace faddeev
