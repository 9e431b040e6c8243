#include "faddeev/pde_verify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "faddeev/field_core.hpp"
#include "faddeev/parallel.hpp"
#include "faddeev/vec3.hpp"

namespace faddeev {

VerifyGridSpec default_verify_window(const ProfileSolution& profile) {
    VerifyGridSpec spec;
    const double end = profile.rho_end();
    spec.rho_lo = 0.05 * end;
    spec.rho_hi = std::min(0.90 * end, profile.rho_last());
    return spec;
}

namespace {

struct NodeTerms {
    cplx residual{0.0, 0.0};
    double scale = 0.0;  // largest individual term magnitude at the node
};

// div alpha + i beta . alpha at one grid node. Radial derivative of
// rho*alpha_rho by central difference with spacing h; angular derivatives
// either exact (alpha's phi, z dependence is the phase e^{-i(m phi + n z)})
// or by central differences on the angular lattice.
class ResidualEvaluator {
public:
    ResidualEvaluator(const ProfileSolution& profile, const VerifyGridSpec& spec)
        : profile_(profile), spec_(spec) {
        if (!(spec.rho_lo > 0.0) || !(spec.rho_hi > spec.rho_lo) ||
            spec.rho_hi > profile.rho_last())
            throw DomainError("residual grid window must sit strictly inside (0, rho_end)");
        if (spec.n_rho < 8 || spec.n_phi < 8 || spec.n_z < 8)
            throw DomainError("residual grid sizes must be >= 8");
        h_ = (spec.rho_hi - spec.rho_lo) / (spec.n_rho - 1);
        if (!(spec.rho_lo - h_ > 0.0))
            throw DomainError("residual grid window touches the axis (ghost node at rho <= 0)");
        if (spec.rho_hi + h_ > profile.rho_last())
            throw DomainError("residual grid window too close to the domain edge (ghost node)");
        d_phi_ = two_pi / spec.n_phi;
        d_z_ = two_pi / spec.n_z;
    }

    double spacing() const { return h_; }

    AlphaBeta fields_at(double rho, double phi, double z) const {
        const CylPoint p{rho, phi, z};
        return alpha_beta(q_field(p, profile_), ansatz_u(p, profile_));
    }

    NodeTerms node(int i, int j, int k) const {
        const double rho = spec_.rho_lo + i * h_;
        const double phi = spec_.phi0 + j * d_phi_;
        const double z = spec_.z0 + k * d_z_;
        const int m = profile_.params.m;
        const int n = profile_.params.n;
        const cplx iu{0.0, 1.0};

        const AlphaBeta ab = fields_at(rho, phi, z);
        const AlphaBeta ab_p = fields_at(rho + h_, phi, z);
        const AlphaBeta ab_m = fields_at(rho - h_, phi, z);

        const cplx d_rho_term =
            ((rho + h_) * ab_p.alpha[0] - (rho - h_) * ab_m.alpha[0]) / (2.0 * h_ * rho);

        cplx d_phi_term, d_z_term;
        if (spec_.fully_finite_difference) {
            const AlphaBeta ap = fields_at(rho, phi + d_phi_, z);
            const AlphaBeta am = fields_at(rho, phi - d_phi_, z);
            d_phi_term = (ap.alpha[1] - am.alpha[1]) / (2.0 * d_phi_ * rho);
            const AlphaBeta zp = fields_at(rho, phi, z + d_z_);
            const AlphaBeta zm = fields_at(rho, phi, z - d_z_);
            d_z_term = (zp.alpha[2] - zm.alpha[2]) / (2.0 * d_z_);
        } else {
            d_phi_term = -iu * double(m) / rho * ab.alpha[1];
            d_z_term = -iu * double(n) * ab.alpha[2];
        }

        const cplx beta_term = iu * dot(ab.beta, ab.alpha);

        NodeTerms out;
        out.residual = d_rho_term + d_phi_term + d_z_term + beta_term;
        out.scale = std::max({std::abs(d_rho_term), std::abs(d_phi_term), std::abs(d_z_term),
                              std::abs(beta_term)});
        return out;
    }

private:
    const ProfileSolution& profile_;
    VerifyGridSpec spec_;
    double h_ = 0.0;
    double d_phi_ = 0.0;
    double d_z_ = 0.0;
};

}  // namespace

ResidualReport field_equation_residual(const ProfileSolution& profile,
                                       const VerifyGridSpec& spec) {
    const ResidualEvaluator eval(profile, spec);

    std::vector<double> row_sq(static_cast<std::size_t>(spec.n_rho));
    std::vector<double> row_max(static_cast<std::size_t>(spec.n_rho));
    std::vector<double> row_scale(static_cast<std::size_t>(spec.n_rho));

    parallel_for(static_cast<std::size_t>(spec.n_rho), [&](std::size_t i) {
        double sq = 0.0, mx = 0.0, sc = 0.0;
        for (int j = 0; j < spec.n_phi; ++j)
            for (int k = 0; k < spec.n_z; ++k) {
                const NodeTerms t = eval.node(static_cast<int>(i), j, k);
                const double r = std::abs(t.residual);
                sq += r * r;
                mx = std::max(mx, r);
                sc = std::max(sc, t.scale);
            }
        row_sq[i] = sq;
        row_max[i] = mx;
        row_scale[i] = sc;
    });

    const double n_nodes = double(spec.n_rho) * spec.n_phi * spec.n_z;
    const double l2_raw = std::sqrt(pairwise_sum(row_sq) / n_nodes);
    const double linf_raw = *std::max_element(row_max.begin(), row_max.end());
    const double scale = *std::max_element(row_scale.begin(), row_scale.end());

    ResidualReport report;
    report.grid = spec;
    report.spacing = eval.spacing();
    report.reference_scale = scale;
    report.l2_norm = scale > 0.0 ? l2_raw / scale : l2_raw;
    report.linf_norm = scale > 0.0 ? linf_raw / scale : linf_raw;
    return report;
}

ConvergenceStudy convergence_study(const ProfileSolution& profile, const VerifyGridSpec& base) {
    ConvergenceStudy study;
    for (int lvl = 0; lvl < 3; ++lvl) {
        VerifyGridSpec spec = base;
        spec.n_rho = base.n_rho << lvl;
        study.l2[static_cast<std::size_t>(lvl)] = field_equation_residual(profile, spec).l2_norm;
    }
    const bool decreasing =
        study.l2[0] > study.l2[1] && study.l2[1] > study.l2[2] && study.l2[2] > 0.0;
    if (decreasing) {
        study.orders[0] = std::log2(study.l2[0] / study.l2[1]);
        study.orders[1] = std::log2(study.l2[1] / study.l2[2]);
        study.order = 0.5 * (study.orders[0] + study.orders[1]);
        study.reliable = true;
    }
    return study;
}

BoundaryAudit boundary_audit(const ProfileSolution& profile) {
    BoundaryAudit audit;

    const double lo = profile.rho_first();
    const double hi = profile.rho_last();
    const double probes_rho[5] = {lo, lo + 0.25 * (hi - lo), lo + 0.5 * (hi - lo),
                                  lo + 0.75 * (hi - lo), hi};
    const double probes_angle[3] = {0.0, 1.2345, 4.5};

    for (double rho : probes_rho)
        for (double a : probes_angle) {
            const cplx dz = ansatz_u({rho, a, 0.0}, profile) - ansatz_u({rho, a, two_pi}, profile);
            const cplx dp = ansatz_u({rho, 0.0, a}, profile) - ansatz_u({rho, two_pi, a}, profile);
            audit.periodicity_z_defect = std::max(audit.periodicity_z_defect, std::abs(dz));
            audit.periodicity_phi_defect = std::max(audit.periodicity_phi_defect, std::abs(dp));
        }

    audit.axis_value = ansatz_u({lo, 0.0, 0.0}, profile);
    audit.edge_magnitude = profile.g_last();
    audit.singular_boundary_applicable = profile.is_singular();
    audit.singular_boundary_ok =
        profile.is_singular() && profile.g_last() >= profile.config.tail_lo;
    return audit;
}

namespace {

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= double(n);
    ym /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    return sxy / sxx;
}

}  // namespace

AsymptoticExponents asymptotic_exponents(const ProfileSolution& profile) {
    AsymptoticExponents out;

    // Origin: log-log slope over [rho_eps, 10 rho_eps].
    const double lo = profile.rho_first();
    const double hi = std::min(10.0 * lo, profile.rho_last());
    constexpr int n_pts = 16;
    std::vector<double> lx, ly;
    for (int i = 0; i < n_pts; ++i) {
        const double rho = lo * std::pow(hi / lo, double(i) / (n_pts - 1));
        const double g = profile.g_at(rho);
        if (g > 0.0) {
            lx.push_back(std::log(rho));
            ly.push_back(std::log(g));
        }
    }
    if (lx.size() < 3) throw DomainError("asymptotic_exponents: no usable origin window");
    out.origin_slope = lsq_slope(lx, ly);

    // Pole: slope of log g against -log(rho0 - rho) over the moderate tail
    // (very last samples sit within the rho0 fit's own uncertainty).
    if (profile.is_singular()) {
        const double rho0 = profile.singular().rho0;
        const double g_lo = profile.config.tail_lo;
        const double g_hi = 100.0 * profile.config.tail_lo;
        std::vector<double> px, py;
        for (const Sample& s : profile.samples)
            if (s.g >= g_lo && s.g <= g_hi && rho0 > s.rho) {
                px.push_back(-std::log(rho0 - s.rho));
                py.push_back(std::log(s.g));
            }
        if (px.size() >= 8) out.pole_slope = lsq_slope(px, py);
    }
    return out;
}

}  // namespace faddeev
