#include "faddeev/reduced_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "faddeev/parallel.hpp"

namespace faddeev {

OdeTerms ode_rhs(const OdeState& state, const AnsatzParams& params) {
    params.validate();
    const double rho = state.rho, g = state.g, gp = state.gp;
    if (!(rho > 0.0)) throw DomainError("ode_rhs: rho must be > 0");
    if (!std::isfinite(rho) || !std::isfinite(g) || !std::isfinite(gp))
        throw DomainError("ode_rhs: non-finite state");

    const double m2 = double(params.m) * params.m;
    const double n2 = double(params.n) * params.n;
    const double k = m2 + n2 * rho * rho;
    const double one = 1.0 + g * g;
    const double one2 = one * one;

    const double N = 2.0 * k * g * g + rho * rho * one2;
    const double D = rho * one * one2;
    const double N_rho = 4.0 * n2 * rho * g * g + 2.0 * rho * one2;
    const double N_g = 4.0 * k * g + 4.0 * rho * rho * g * one;
    const double D_rho = one * one2;
    const double D_g = 6.0 * rho * g * one2;

    OdeTerms t;
    t.P = N / D;
    if (!(t.P > 0.0) || !std::isfinite(t.P))
        throw DomainError("ode_rhs: singular coefficient P");
    t.dP_drho = (N_rho * D - N * D_rho) / (D * D);
    t.dP_dg = (N_g * D - N * D_g) / (D * D);
    t.rhs = k * g * (1.0 - g * g) * (one2 + 2.0 * gp * gp) / (rho * one2 * one2);
    t.gpp = (t.rhs - (t.dP_drho + t.dP_dg * gp) * gp) / t.P;
    return t;
}

OdeState series_start(const AnsatzParams& params, double rho_eps) {
    params.validate();
    if (!(rho_eps > 0.0)) throw DomainError("series_start: rho_eps must be > 0");
    const int am = std::abs(params.m);
    OdeState s;
    s.rho = rho_eps;
    s.g = params.c_lead * std::pow(rho_eps, am);
    s.gp = params.c_lead * am * std::pow(rho_eps, am - 1);
    if (!(s.g > 0.0))
        throw DomainError("series_start: c_lead * rho_eps^|m| underflows to zero");
    return s;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Deriv {
    double dg, dgp;
};

Deriv eval(const AnsatzParams& p, double rho, double g, double gp) {
    return {gp, ode_rhs({rho, g, gp}, p).gpp};
}

// g on the cubic Hermite of one accepted step, at parameter t in [0,1].
double hermite_g(const Sample& a, const Sample& b, double t) {
    const double h = b.rho - a.rho;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * a.g + (t3 - 2 * t2 + t) * h * a.gp + (-2 * t3 + 3 * t2) * b.g +
           (t3 - t2) * h * b.gp;
}

double hermite_gp(const Sample& a, const Sample& b, double t) {
    const double h = b.rho - a.rho;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * a.g + (3 * t2 - 4 * t + 1) * h * a.gp + (-6 * t2 + 6 * t) * b.g +
            (3 * t2 - 2 * t) * h * b.gp) /
           h;
}

}  // namespace

ProfileSolution integrate_profile(const AnsatzParams& params, const SolveConfig& cfg) {
    params.validate();
    cfg.validate();

    const OdeState start = series_start(params, cfg.rho_eps);
    std::vector<Sample> samples;
    samples.push_back({start.rho, start.g, start.gp});

    double rho = start.rho;
    double g = start.g;
    double gp = start.gp;
    double h = 0.5 * cfg.rho_eps;
    double err_old = 1e-4;
    double fac_max = 4.0;
    bool blew_up = false;

    Deriv k1 = eval(params, rho, g, gp);

    while (true) {
        if (rho + h >= cfg.rho_max) h = cfg.rho_max - rho;
        if (h > cfg.max_step) h = cfg.max_step;
        // keep nodes locally fine near the axis (log-spaced at ratio <= 1.05):
        // quantities differentiated along the profile carry a ln(rho) piece
        const double rel_cap = std::max(0.05 * rho, 0.5 * cfg.rho_eps);
        if (h > rel_cap) h = rel_cap;
        if (h < 32.0 * std::numeric_limits<double>::epsilon() * std::max(rho, 1.0))
            throw SolverError("step size underflow (stiffness) at rho=" + std::to_string(rho), rho,
                              g, gp);

        const Deriv k2 = eval(params, rho + c2 * h, g + h * a21 * k1.dg, gp + h * a21 * k1.dgp);
        const Deriv k3 = eval(params, rho + c3 * h, g + h * (a31 * k1.dg + a32 * k2.dg),
                              gp + h * (a31 * k1.dgp + a32 * k2.dgp));
        const Deriv k4 = eval(params, rho + c4 * h, g + h * (a41 * k1.dg + a42 * k2.dg + a43 * k3.dg),
                              gp + h * (a41 * k1.dgp + a42 * k2.dgp + a43 * k3.dgp));
        const Deriv k5 =
            eval(params, rho + c5 * h, g + h * (a51 * k1.dg + a52 * k2.dg + a53 * k3.dg + a54 * k4.dg),
                 gp + h * (a51 * k1.dgp + a52 * k2.dgp + a53 * k3.dgp + a54 * k4.dgp));
        const Deriv k6 = eval(
            params, rho + h,
            g + h * (a61 * k1.dg + a62 * k2.dg + a63 * k3.dg + a64 * k4.dg + a65 * k5.dg),
            gp + h * (a61 * k1.dgp + a62 * k2.dgp + a63 * k3.dgp + a64 * k4.dgp + a65 * k5.dgp));

        const double g_new = g + h * (b1 * k1.dg + b3 * k3.dg + b4 * k4.dg + b5 * k5.dg + b6 * k6.dg);
        const double gp_new =
            gp + h * (b1 * k1.dgp + b3 * k3.dgp + b4 * k4.dgp + b5 * k5.dgp + b6 * k6.dgp);

        if (!std::isfinite(g_new) || !std::isfinite(gp_new))
            throw SolverError("non-finite state during integration", rho, g, gp);

        const Deriv k7 = eval(params, rho + h, g_new, gp_new);  // FSAL

        const double err_g = h * (e1 * k1.dg + e3 * k3.dg + e4 * k4.dg + e5 * k5.dg + e6 * k6.dg +
                                  e7 * k7.dg);
        const double err_gp = h * (e1 * k1.dgp + e3 * k3.dgp + e4 * k4.dgp + e5 * k5.dgp +
                                   e6 * k6.dgp + e7 * k7.dgp);
        const double sc_g = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(g), std::abs(g_new));
        const double sc_gp = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(gp), std::abs(gp_new));
        const double err = std::sqrt(0.5 * ((err_g / sc_g) * (err_g / sc_g) +
                                            (err_gp / sc_gp) * (err_gp / sc_gp)));

        if (err <= 1.0) {
            const Sample prev{rho, g, gp};
            Sample next{rho + h, g_new, gp_new};

            if (next.g >= cfg.g_max && prev.g < cfg.g_max) {
                // Blow-up event: localize g = g_max on the step's Hermite and
                // cut the step there; the pole itself is never stepped over.
                double lo = 0.0, hi = 1.0;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (hermite_g(prev, next, mid) >= cfg.g_max ? hi : lo) = mid;
                }
                const double t = hi;
                next = Sample{rho + t * h, hermite_g(prev, next, t), hermite_gp(prev, next, t)};
                if (next.rho > prev.rho) samples.push_back(next);
                blew_up = true;
                break;
            }

            rho = next.rho;
            g = next.g;
            gp = next.gp;
            k1 = k7;
            samples.push_back(next);

            if (rho >= cfg.rho_max) break;

            // PI step controller (order 5, beta = 0.04).
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.17) * std::pow(err_old, 0.04);
            fac = std::clamp(fac, 0.2, fac_max);
            h *= fac;
            err_old = std::max(err, 1e-10);
            fac_max = 4.0;
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            fac_max = 1.0;
        }
    }

    Classification cls;
    if (blew_up) {
        // Fit over the top three decades of g (never below tail_lo): the
        // sub-leading curvature of 1/g over a wider window biases the root
        // below the last sample, breaking the rho0 > rho_last invariant.
        double fit_lo = std::max(cfg.tail_lo, 1e-3 * cfg.g_max);
        std::vector<TailPoint> tail;
        for (const Sample& s : samples)
            if (s.g >= fit_lo) tail.push_back({s.rho, s.g});
        if (tail.size() < 8) {
            tail.clear();
            for (const Sample& s : samples)
                if (s.g >= cfg.tail_lo) tail.push_back({s.rho, s.g});
        }
        const TailFit fit = estimate_rho0(tail);
        if (!(fit.rho0 > samples.back().rho))
            throw FitError("fitted rho0 does not lie beyond the last sample");
        cls = Singular{fit.rho0, fit.C, fit.fit_residual};
    } else {
        double g_sup = 0.0;
        for (const Sample& s : samples) g_sup = std::max(g_sup, s.g);
        cls = Bounded{cfg.rho_max, g_sup};
    }

    return ProfileSolution(params, cfg, std::move(samples), cls);
}

TailFit estimate_rho0(std::span<const TailPoint> tail) {
    if (tail.size() < 8) throw FitError("rho0 fit needs at least 8 tail samples");
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (!std::isfinite(tail[i].rho) || !(tail[i].g > 0.0))
            throw FitError("rho0 fit: invalid tail sample");
        if (i > 0 && !(tail[i].g > tail[i - 1].g))
            throw FitError("rho0 fit: tail g must be strictly increasing");
    }

    const std::size_t n = tail.size();
    double xm = 0.0, ym = 0.0;
    for (const TailPoint& p : tail) {
        xm += p.rho;
        ym += 1.0 / p.g;
    }
    xm /= double(n);
    ym /= double(n);

    double sxx = 0.0, sxy = 0.0;
    for (const TailPoint& p : tail) {
        const double dx = p.rho - xm;
        sxx += dx * dx;
        sxy += dx * (1.0 / p.g - ym);
    }
    if (!(sxx > 0.0)) throw FitError("rho0 fit: degenerate rho span");
    const double slope = sxy / sxx;
    if (!(slope < 0.0))
        throw FitError("rho0 fit: 1/g is not decreasing; tail is not a 1/(rho0-rho) blow-up");

    TailFit fit;
    fit.rho0 = xm - ym / slope;
    fit.C = -1.0 / slope;
    double ss = 0.0;
    for (const TailPoint& p : tail) {
        const double r = (1.0 / p.g) - (ym + slope * (p.rho - xm));
        ss += r * r;
    }
    fit.fit_residual = std::sqrt(ss / double(n));
    return fit;
}

ScanTable scan_coefficient(int m, int n, double c_lo, double c_hi, int steps,
                           const SolveConfig& cfg) {
    if (!(c_lo > 0.0) || !(c_hi > c_lo))
        throw DomainError("scan_coefficient: need 0 < c_lo < c_hi");
    if (steps < 2) throw DomainError("scan_coefficient: need steps >= 2");

    ScanTable table;
    table.m = m;
    table.n = n;
    table.rows.resize(steps);

    const double log_ratio = std::log(c_hi / c_lo);
    parallel_for(static_cast<std::size_t>(steps), [&](std::size_t i) {
        ScanRow& row = table.rows[i];
        row.c_lead = c_lo * std::exp(log_ratio * double(i) / double(steps - 1));
        try {
            const ProfileSolution sol = integrate_profile({m, n, row.c_lead}, cfg);
            if (sol.is_singular()) {
                row.status = RowStatus::singular;
                row.rho0 = sol.singular().rho0;
            } else {
                row.status = RowStatus::bounded;
            }
        } catch (const std::exception& e) {
            row.status = RowStatus::error;
            row.message = e.what();
        }
    });
    return table;
}

namespace {

std::optional<double> rho0_of(int m, int n, double c, const SolveConfig& cfg) {
    const ProfileSolution sol = integrate_profile({m, n, c}, cfg);
    if (!sol.is_singular()) return std::nullopt;
    return sol.singular().rho0;
}

}  // namespace

double match_rho0(int m, int n, double target_rho0, std::pair<double, double> c_bracket, double tol,
                  const SolveConfig& cfg) {
    if (!(c_bracket.first > 0.0) || !(c_bracket.second > c_bracket.first))
        throw BracketError("match_rho0: need 0 < c_lo < c_hi");
    if (!(tol > 0.0)) throw DomainError("match_rho0: tol must be > 0");

    const std::optional<double> r_lo = rho0_of(m, n, c_bracket.first, cfg);
    const std::optional<double> r_hi = rho0_of(m, n, c_bracket.second, cfg);
    if (!r_lo || !r_hi)
        throw BracketError("match_rho0: bracket end is not Singular (no rho0 to match)");

    double f_lo = *r_lo - target_rho0;
    double f_hi = *r_hi - target_rho0;
    if (std::abs(f_lo) < tol) return c_bracket.first;
    if (std::abs(f_hi) < tol) return c_bracket.second;
    if (f_lo * f_hi > 0.0)
        throw BracketError("match_rho0: rho0 offsets at bracket ends have equal sign");

    double lo = c_bracket.first, hi = c_bracket.second;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);  // bisection in log c
        const std::optional<double> r_mid = rho0_of(m, n, mid, cfg);
        if (!r_mid)
            throw ClassificationChangeError(
                "match_rho0: Bounded classification inside the bracket at c=" + std::to_string(mid));
        const double f_mid = *r_mid - target_rho0;
        if (std::abs(f_mid) < tol) return mid;
        if (f_mid * f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if (hi - lo <= 16.0 * std::numeric_limits<double>::epsilon() * hi)
            throw FitError("match_rho0: bracket collapsed before reaching tol");
    }
    throw FitError("match_rho0: bisection did not converge");
}

}  // namespace faddeev
