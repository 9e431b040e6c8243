#include "faddeev/field_core.hpp"

#include <cmath>

namespace faddeev {

namespace {

// Directional derivatives of u = g e^{i(m phi + n z)} along (rho-hat,
// phi-hat, z-hat): the one genuinely radial factor g' plus exact phase
// derivatives, the phi component carrying 1/rho.
Vec3c u_gradient(double rho, double g, double gp, int m, int n, cplx phase) {
    const cplx iu{0.0, 1.0};
    return {phase * gp, iu * phase * (g * m / rho), iu * phase * (g * n)};
}

}  // namespace

ProfileScalars profile_scalars(double R) {
    if (!std::isfinite(R) || R < 0.0) throw DomainError("profile_scalars: R must be finite and >= 0");
    const double R2 = R * R;
    const double X = 1.0 / (1.0 + R2);
    return {X, 2.0 * R2 * X, 2.0 * X * X * X};
}

Vec3d n_from_u(cplx u) {
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
        throw DomainError("n_from_u: non-finite u; use UValue::infinity() for the point at infinity");
    const double d = std::norm(u) + 1.0;
    return {2.0 * u.real() / d, 2.0 * u.imag() / d, (std::norm(u) - 1.0) / d};
}

Vec3d n_from_u(const UValue& u) {
    if (u.infinite) return {0.0, 0.0, 1.0};
    return n_from_u(u.value);
}

cplx ansatz_u(const CylPoint& point, const ProfileSolution& profile) {
    const double g = profile.g_at(point.rho);
    return std::polar(g, profile.params.m * point.phi + profile.params.n * point.z);
}

Vec3c q_field(const CylPoint& point, const ProfileSolution& profile) {
    if (!(point.rho > 0.0)) throw AxisError("q_field: rho = 0 (phi-component carries 1/rho)");
    const double g = profile.g_at(point.rho);
    const double gp = profile.gp_at(point.rho);
    const double X = 1.0 / (1.0 + g * g);
    const cplx phase = std::polar(1.0, profile.params.m * point.phi + profile.params.n * point.z);
    Vec3c grad = u_gradient(point.rho, g, gp, profile.params.m, profile.params.n, phase);
    return {X * grad[0], X * grad[1], X * grad[2]};
}

AlphaBeta alpha_beta(const Vec3c& q, cplx u) {
    for (int i = 0; i < 3; ++i)
        if (!std::isfinite(q[i].real()) || !std::isfinite(q[i].imag()))
            throw DomainError("alpha_beta: non-finite q");
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
        throw DomainError("alpha_beta: non-finite u");
    const Vec3c qc = conj(q);
    const Vec3c alpha = qc - cross(qc, cross(q, qc));
    // (1/i)(u* q - u q*) == 2 Im(u* q) componentwise.
    const cplx uc = std::conj(u);
    Vec3d beta{2.0 * (uc * q[0]).imag(), 2.0 * (uc * q[1]).imag(), 2.0 * (uc * q[2]).imag()};
    return {alpha, beta};
}

double energy_density(const CylPoint& point, const ProfileSolution& profile,
                      const EnergyConfig& cfg) {
    cfg.validate();
    if (!(point.rho > 0.0)) throw AxisError("energy_density: rho = 0");
    const int m = profile.params.m;
    const int n = profile.params.n;
    const double g = profile.g_at(point.rho);
    const double gp = profile.gp_at(point.rho);
    const cplx phase = std::polar(1.0, m * point.phi + n * point.z);
    const cplx u = g * phase;
    const Vec3c du = u_gradient(point.rho, g, gp, m, n, phase);

    const double D = 1.0 + std::norm(u);
    const Vec3d nv = n_from_u(u);

    // dn_a = (dN_a - n_a dD)/D with N1 = u+u*, N2 = -i(u-u*), N3 = |u|^2 - 1.
    Vec3d dn[3];
    for (int i = 0; i < 3; ++i) {
        const double dD = 2.0 * (std::conj(u) * du[i]).real();
        dn[i] = Vec3d{(2.0 * du[i].real() - nv[0] * dD) / D,
                      (2.0 * du[i].imag() - nv[1] * dD) / D,
                      (dD - nv[2] * dD) / D};
    }

    double l2 = 0.0;
    for (int i = 0; i < 3; ++i) l2 += dot(dn[i], dn[i]);

    double h2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double Hij = dot(nv, cross(dn[i], dn[j]));
            h2 += Hij * Hij;
        }

    return cfg.c2 * l2 + 2.0 * cfg.c4 * h2;
}

SpinorZ make_spinor(double g, double m_phi, double n_z) {
    if (std::isinf(g)) return {std::polar(1.0, -n_z), cplx{0.0, 0.0}};
    if (!std::isfinite(g) || g < 0.0) throw DomainError("make_spinor: g must be >= 0 or +infinity");
    const double s = g / std::sqrt(1.0 + g * g);
    const double w = 1.0 / std::sqrt(1.0 + g * g);
    return {std::polar(s, -n_z), std::polar(w, m_phi)};
}

SpinorZ spinor_Z(const CylPoint& point, const ProfileSolution& profile) {
    const double g = profile.g_at(point.rho);
    return make_spinor(g, profile.params.m * point.phi, profile.params.n * point.z);
}

Vec3d n_from_spinor(const SpinorZ& Z) {
    const cplx c = std::conj(Z.z1) * Z.z2;
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(Z.z1) - std::norm(Z.z2)};
}

FieldSample sample_fields(const CylPoint& point, const ProfileSolution& profile,
                          const EnergyConfig& cfg) {
    FieldSample out;
    out.u = ansatz_u(point, profile);
    out.R = std::abs(out.u);
    out.Phi = std::arg(out.u);
    const ProfileScalars ps = profile_scalars(out.R);
    out.X = ps.X;
    out.B = ps.B;
    out.Y = ps.Y;
    out.q = q_field(point, profile);
    const AlphaBeta ab = alpha_beta(out.q, out.u);
    out.alpha = ab.alpha;
    out.beta = ab.beta;
    out.n_vec = n_from_u(out.u);
    out.energy_density = energy_density(point, profile, cfg);
    return out;
}

}  // namespace faddeev
