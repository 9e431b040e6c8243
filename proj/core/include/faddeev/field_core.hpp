#pragma once

#include <complex>

#include "faddeev/ansatz.hpp"
#include "faddeev/profile.hpp"
#include "faddeev/vec3.hpp"

namespace faddeev {

// Scalars tied to R = |u|: X = 1/(1+R^2), B = 2R^2/(1+R^2), Y = 2X^3.
struct ProfileScalars {
    double X = 0.0;
    double B = 0.0;
    double Y = 0.0;
};

ProfileScalars profile_scalars(double R);

// u with the point at infinity represented explicitly, never as a non-finite
// float. |u(rho0)| = infinity is part of the model's boundary data.
struct UValue {
    cplx value{0.0, 0.0};
    bool infinite = false;

    static UValue finite(cplx u) { return {u, false}; }
    static UValue infinity() { return {cplx{0.0, 0.0}, true}; }
};

// Unit 3-vector n from the stereographic field u.
Vec3d n_from_u(cplx u);
Vec3d n_from_u(const UValue& u);

// u at a point of M under the ansatz, from the profile interpolant.
cplx ansatz_u(const CylPoint& point, const ProfileSolution& profile);

// q = X grad u in the cylindrical orthonormal frame. rho > 0 required.
Vec3c q_field(const CylPoint& point, const ProfileSolution& profile);

struct AlphaBeta {
    Vec3c alpha;
    Vec3d beta;
};

// alpha = q* - q* x (q x q*), beta = (1/i)(u* q - u q*). beta is real by
// construction; it is returned as the real vector 2 Im(u* q).
AlphaBeta alpha_beta(const Vec3c& q, cplx u);

// Static energy density e = c2 sum_i |d_i n|^2 + 2 c4 sum_{i<j} H_ij^2 with
// H_ij = n . (d_i n x d_j n); derivatives of n taken analytically through the
// u -> n map from (g, g') samples. A pointwise diagnostic: no energy
// functional (surface terms included) is defined on the bounded domain M,
// so nothing here integrates it.
double energy_density(const CylPoint& point, const ProfileSolution& profile,
                      const EnergyConfig& cfg = {});

struct SpinorZ {
    cplx z1{0.0, 0.0};
    cplx z2{0.0, 0.0};
};

// Z1 = g/sqrt(1+g^2) e^{-i n z}, Z2 = 1/sqrt(1+g^2) e^{i m phi}. g may be
// +infinity (the singular boundary limit |Z1| -> 1, Z2 -> 0).
SpinorZ make_spinor(double g, double m_phi, double n_z);
SpinorZ spinor_Z(const CylPoint& point, const ProfileSolution& profile);

// n^a = Z^dagger sigma^a Z.
Vec3d n_from_spinor(const SpinorZ& Z);

// All pointwise quantities at one interior point (rho > 0).
struct FieldSample {
    cplx u{0.0, 0.0};
    double R = 0.0;
    double Phi = 0.0;
    double X = 0.0;
    double B = 0.0;
    double Y = 0.0;
    Vec3c q;
    Vec3c alpha;
    Vec3d beta;
    Vec3d n_vec;
    double energy_density = 0.0;
};

FieldSample sample_fields(const CylPoint& point, const ProfileSolution& profile,
                          const EnergyConfig& cfg = {});

}  // namespace faddeev
