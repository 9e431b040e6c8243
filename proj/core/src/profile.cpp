#include "faddeev/profile.hpp"

#include <algorithm>
#include <cmath>

namespace faddeev {

void ProfileSolution::validate() const {
    params.validate();
    config.validate();
    if (samples.size() < 2) throw DomainError("profile needs at least two samples");
    if (!(samples.front().rho > 0.0)) throw DomainError("profile samples must start at rho > 0");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        if (!std::isfinite(s.rho) || !std::isfinite(s.g) || !std::isfinite(s.gp))
            throw DomainError("profile sample is not finite");
        if (i > 0 && !(s.rho > samples[i - 1].rho))
            throw DomainError("profile samples must be strictly increasing in rho");
    }
    if (is_singular()) {
        if (!(singular().rho0 > rho_last()))
            throw DomainError("singular rho0 must lie beyond the last sample");
    }
}

std::size_t ProfileSolution::segment_of(double rho) const {
    if (!std::isfinite(rho) || rho < 0.0) throw DomainError("profile query rho must be finite and >= 0");
    if (rho > rho_last())
        throw DomainError(is_singular() ? "rho beyond the sampled range of a singular profile"
                                        : "rho beyond the profile domain");
    // Queries below the first node fall into segment 0 (extrapolated cubic).
    auto it = std::upper_bound(samples.begin(), samples.end(), rho,
                               [](double r, const Sample& s) { return r < s.rho; });
    std::size_t hi = static_cast<std::size_t>(it - samples.begin());
    if (hi == 0) return 0;
    if (hi >= samples.size()) hi = samples.size() - 1;
    return hi - 1;
}

double ProfileSolution::g_at(double rho) const {
    const std::size_t i = segment_of(rho);
    const Sample& a = samples[i];
    const Sample& b = samples[i + 1];
    if (rho == a.rho) return a.g;
    if (rho == b.rho) return b.g;
    const double h = b.rho - a.rho;
    const double t = (rho - a.rho) / h;
    const double t2 = t * t, t3 = t2 * t;
    // difference form: exact at the nodes and for constant data
    return a.g + (b.g - a.g) * (3 * t2 - 2 * t3) +
           h * (a.gp * (t3 - 2 * t2 + t) + b.gp * (t3 - t2));
}

double ProfileSolution::gp_at(double rho) const {
    const std::size_t i = segment_of(rho);
    const Sample& a = samples[i];
    const Sample& b = samples[i + 1];
    if (rho == a.rho) return a.gp;
    if (rho == b.rho) return b.gp;
    const double h = b.rho - a.rho;
    const double t = (rho - a.rho) / h;
    const double t2 = t * t;
    return (b.g - a.g) / h * (6 * t - 6 * t2) + a.gp * (3 * t2 - 4 * t + 1) +
           b.gp * (3 * t2 - 2 * t);
}

double ProfileSolution::f_at(double rho) const { return f_of_g(g_at(rho)); }

double ProfileSolution::fp_at(double rho) const {
    const double g = g_at(rho);
    const double gp = gp_at(rho);
    const double d = 1.0 + g * g;
    return 2.0 * g * gp / (d * d);
}

}  // namespace faddeev
