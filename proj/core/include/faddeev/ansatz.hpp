#pragma once

#include <cmath>
#include <numbers>

#include "faddeev/errors.hpp"

namespace faddeev {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Toroidal ansatz u = g(rho) e^{i(m phi + n z)}: integer windings m (in phi)
// and n (in z), plus the free leading coefficient of g ~ c_lead rho^|m| at the
// origin. Lengths are in units of 2 sqrt(c4/c2) = 1.
struct AnsatzParams {
    int m = 1;
    int n = 1;
    double c_lead = 1.0;

    void validate() const {
        if (m == 0 || n == 0) throw DomainError("ansatz windings m, n must be non-zero integers");
        if (!(c_lead > 0.0) || !std::isfinite(c_lead))
            throw DomainError("leading coefficient c_lead must be positive and finite");
    }
};

// Point of the solid-torus domain M in cylindrical coordinates. Angles are
// canonicalized into [0, 2pi); fmod maps exactly-2pi inputs to exactly 0, so
// periodicity in phi and z holds bitwise for integer windings.
struct CylPoint {
    double rho = 0.0;
    double phi = 0.0;
    double z = 0.0;

    CylPoint() = default;
    CylPoint(double rho_, double phi_, double z_) : rho(rho_), phi(wrap(phi_)), z(wrap(z_)) {
        if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("rho must be finite and >= 0");
    }

    static double wrap(double a) {
        if (!std::isfinite(a)) throw DomainError("angle must be finite");
        double w = std::fmod(a, two_pi);
        if (w < 0.0) w += two_pi;
        if (w >= two_pi) w = 0.0;  // a tiny negative can round up to 2pi
        return w;
    }
};

// Couplings of the quadratic and quartic terms. The default pair keeps the
// length unit 2 sqrt(c4/c2) = 1.
struct EnergyConfig {
    double c2 = 1.0;
    double c4 = 0.25;

    void validate() const {
        if (!(c2 > 0.0) || !(c4 > 0.0)) throw DomainError("couplings c2, c4 must be positive");
    }
};

}  // namespace faddeev
