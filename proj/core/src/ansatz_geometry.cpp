#include "faddeev/ansatz_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "faddeev/vec3.hpp"

namespace faddeev {

namespace {

void check_state(double rho, double g, double gp, const char* who, bool need_g_pos) {
    if (!(rho > 0.0)) throw DomainError(std::string(who) + ": rho must be > 0");
    if (need_g_pos && !(g > 0.0)) throw DomainError(std::string(who) + ": g must be > 0");
    if (gp == 0.0) throw DomainError(std::string(who) + ": degenerate gradient (g' = 0)");
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace

GeometryFactors geometry_factors_general(double rho, double g, double gp, double lp, int m) {
    check_state(rho, g, gp, "geometry_factors_general", true);
    const Vec3d grad_R{gp, 0.0, 0.0};
    const Vec3d grad_Phi{0.0, m / rho, lp};
    const Vec3d grad_zeta{0.0, 0.0, 1.0};

    const Vec3d cr = cross(grad_R, grad_Phi);
    const double cr2 = dot(cr, cr);
    if (!(cr2 > 0.0)) throw DomainError("geometry_factors_general: grad R x grad Phi vanishes");

    GeometryFactors f;
    f.Gamma = dot(cr, grad_zeta) / (g * cr2);
    f.Xi = dot(cross(grad_Phi, cr), grad_zeta) / cr2;
    f.Sigma = dot(cross(grad_R, cross(grad_Phi, grad_R)), grad_zeta) / (g * cr2);
    return f;
}

GeometryFactors geometry_factors(double rho, double g, double gp, double lp, int m) {
    check_state(rho, g, gp, "geometry_factors", true);
    const double denom = double(m) * m + lp * lp * rho * rho;

    GeometryFactors f;
    f.Gamma = m * rho / (denom * g * gp);
    f.Xi = 0.0;
    f.Sigma = lp * rho * rho / (denom * g);

    const GeometryFactors gen = geometry_factors_general(rho, g, gp, lp, m);
    if (rel_diff(f.Gamma, gen.Gamma) > 1e-9 || std::abs(gen.Xi) > 1e-9 ||
        rel_diff(f.Sigma, gen.Sigma) > 1e-9)
        throw DomainError("geometry_factors: specialized and general formulas disagree");
    return f;
}

AbcCoefficients abc_coefficients(double rho, double g, double gp, double lp, int m) {
    check_state(rho, g, gp, "abc_coefficients", false);
    if (g == 0.0) throw DomainError("abc_coefficients: b undefined at g = 0");
    const double denom = double(m) * m + lp * lp * rho * rho;
    const double one = g * g + 1.0;
    AbcCoefficients out;
    out.a = 0.0;
    out.b = rho * rho / (denom * g * g * one);
    out.c = 1.0 / (one * gp * gp);
    return out;
}

FirstOrderDeviation first_order_residual(const ProfileSolution& profile,
                                         std::span<const CylPoint> probes) {
    const int m = profile.params.m;
    const double lp = profile.params.n;  // l(z) = n z under the ansatz
    FirstOrderDeviation dev;

    for (const CylPoint& p : probes) {
        if (!(p.rho > 0.0)) {
            ++dev.skipped;
            continue;
        }
        const double g = profile.g_at(p.rho);
        const double gp = profile.gp_at(p.rho);

        const Vec3d grad_R{gp, 0.0, 0.0};
        const Vec3d R_grad_Phi{0.0, g * m / p.rho, g * lp};

        const AbcCoefficients abc = abc_coefficients(p.rho, g, gp, lp, m);
        const double X = 1.0 / (1.0 + g * g);
        const double disc = abc.a * abc.a - abc.b * abc.c;

        const double lhs1 = dot(grad_R, grad_R);
        const double rhs1 = -abc.b * X / disc;
        const double lhs2 = dot(grad_R, R_grad_Phi);
        const double rhs2 = abc.a * X / disc;
        const double lhs3 = dot(R_grad_Phi, R_grad_Phi);
        const double rhs3 = -abc.c * X / disc;

        auto rel = [](double l, double r) {
            const double s = std::max({std::abs(l), std::abs(r), 1.0e-300});
            return (l == r) ? 0.0 : std::abs(l - r) / s;
        };
        dev.grad_R_sq = std::max(dev.grad_R_sq, rel(lhs1, rhs1));
        dev.mixed = std::max(dev.mixed, rel(lhs2, rhs2));
        dev.grad_Phi_sq = std::max(dev.grad_Phi_sq, rel(lhs3, rhs3));
    }
    return dev;
}

double phase_linearity_defect(const PhaseFunction& ell, double rho, double g, double gp, int m,
                              int n, int nodes) {
    if (!ell.value || !ell.deriv) throw DomainError("phase_linearity_defect: ell needs value and deriv");
    if (nodes < 8) throw DomainError("phase_linearity_defect: need at least 8 nodes");
    check_state(rho, g, gp, "phase_linearity_defect", true);

    const double l0 = ell.value(0.0);
    const double l1 = ell.value(two_pi);
    if (std::abs(l0) > 1e-12 || std::abs(l1 - two_pi * n) > 1e-9 * std::max(1.0, std::abs(two_pi * n)))
        throw DomainError("phase_linearity_defect: ell must satisfy l(0)=0, l(2pi)=2pi n");

    const double cc = 1.0 / ((g * g + 1.0) * gp * gp);
    const double X = 1.0 / (1.0 + g * g);
    const double Y = 2.0 * X * X * X;

    auto T = [&](double z) {
        const double lp = ell.deriv(z);
        const double denom = double(m) * m + lp * lp * rho * rho;
        const double Gamma = m * rho / (denom * g * gp);
        const double Sigma = lp * rho * rho / (denom * g);
        return Sigma * (cc + Y) / Gamma;
    };

    const double dz = two_pi / nodes;
    std::vector<double> t(nodes + 1);
    for (int k = 0; k <= nodes; ++k) t[static_cast<std::size_t>(k)] = T(k * dz);

    double defect = 0.0;
    for (int k = 1; k < nodes; ++k)
        defect = std::max(defect, std::abs(t[k + 1] - t[k - 1]) / (2.0 * dz));
    defect = std::max(defect, std::abs(t[1] - t[0]) / dz);
    defect = std::max(defect, std::abs(t[nodes] - t[nodes - 1]) / dz);
    return defect;
}

namespace {

// Derivative of the degree-4 Lagrange interpolant through five nodes at xq.
double lagrange5_deriv(const double x[5], const double y[5], double xq) {
    double result = 0.0;
    for (int i = 0; i < 5; ++i) {
        double denom = 1.0;
        for (int j = 0; j < 5; ++j)
            if (j != i) denom *= x[i] - x[j];
        double dnum = 0.0;
        for (int k = 0; k < 5; ++k) {
            if (k == i) continue;
            double term = 1.0;
            for (int j = 0; j < 5; ++j)
                if (j != i && j != k) term *= xq - x[j];
            dnum += term;
        }
        result += y[i] * dnum / denom;
    }
    return result;
}

}  // namespace

double by_form_residual(const ProfileSolution& profile, std::span<const double> probes) {
    const int m = profile.params.m;
    const double lp = profile.params.n;

    // W = ln( R (b+Y) / Gamma ) at a profile state. Differencing uses node
    // data only: sample values carry integrator accuracy, the interpolant
    // between nodes does not.
    auto W_of = [&](double rho, double g, double gp) {
        if (!(g > 0.0) || !(gp > 0.0))
            throw DomainError("by_form_residual: probe outside the g > 0, g' > 0 window");
        const AbcCoefficients abc = abc_coefficients(rho, g, gp, lp, m);
        const double X = 1.0 / (1.0 + g * g);
        const double Y = 2.0 * X * X * X;
        const double Gamma = m * rho / ((double(m) * m + lp * lp * rho * rho) * g * gp);
        return std::log(g * (abc.b + Y) / Gamma);
    };

    const std::vector<Sample>& smp = profile.samples;
    if (smp.size() < 5) throw DomainError("by_form_residual: profile too short for a 5-node stencil");

    double worst = 0.0;
    for (double rho : probes) {
        auto it = std::upper_bound(smp.begin(), smp.end(), rho,
                                   [](double r, const Sample& s) { return r < s.rho; });
        std::ptrdiff_t center = (it - smp.begin()) - 1;
        std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(center - 2, 0,
                                                       std::ptrdiff_t(smp.size()) - 5);
        double x[5], y[5];
        for (int k = 0; k < 5; ++k) {
            const Sample& s = smp[static_cast<std::size_t>(lo + k)];
            x[k] = s.rho;
            y[k] = W_of(s.rho, s.g, s.gp);
        }
        const double dW = lagrange5_deriv(x, y, rho);

        const double g = profile.g_at(rho);
        const double gp = profile.gp_at(rho);
        const AbcCoefficients abc = abc_coefficients(rho, g, gp, lp, m);
        const double X = 1.0 / (1.0 + g * g);
        const double Y = 2.0 * X * X * X;

        const double lhs = dW / gp;  // d/dR = (1/g') d/drho
        const double rhs = (1.0 - g * g) / (1.0 + g * g) * (abc.c + Y) / (g * (abc.b + Y));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1.0));
    }
    return worst;
}

}  // namespace faddeev
