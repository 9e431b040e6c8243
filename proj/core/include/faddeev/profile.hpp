#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "faddeev/ansatz.hpp"
#include "faddeev/errors.hpp"

namespace faddeev {

// One point of the integrated profile: rho, g(rho), g'(rho).
struct OdeState {
    double rho = 0.0;
    double g = 0.0;
    double gp = 0.0;
};

struct SolveConfig {
    double rho_eps = 1e-6;   // series-start radius
    double g_max = 1e6;      // blow-up threshold
    double rho_max = 50.0;   // bounded-domain horizon
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double tail_lo = 1e2;    // samples with g >= tail_lo enter the rho0 fit
    double max_step = 0.02;  // caps node spacing so the Hermite interpolant stays tight

    void validate() const {
        if (!(rho_eps > 0.0) || rho_eps >= 0.5) throw DomainError("rho_eps must satisfy 0 < rho_eps << 1");
        if (!(g_max > tail_lo) || !(tail_lo > 1.0))
            throw DomainError("thresholds must satisfy g_max > tail_lo > 1");
        if (!(rho_max > rho_eps)) throw DomainError("rho_max must exceed rho_eps");
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("tolerances must be positive");
        if (!(max_step > 0.0)) throw DomainError("max_step must be positive");
    }
};

// Blow-up detected: rho0 and C from the 1/g tail fit (g ~ C/(rho0 - rho)).
struct Singular {
    double rho0 = 0.0;
    double C = 0.0;
    double fit_residual = 0.0;
};

// No blow-up event on [rho_eps, rho_max]. Says nothing beyond rho_max.
struct Bounded {
    double rho_max = 0.0;
    double g_sup = 0.0;
};

using Classification = std::variant<Singular, Bounded>;

struct Sample {
    double rho = 0.0;
    double g = 0.0;
    double gp = 0.0;
};

// Solved radial profile. Immutable after construction; evaluation between
// nodes uses the cubic Hermite of (g, g') per segment. Queries in [0, rho
// of first sample) extrapolate the first segment's cubic, which recovers the
// g(0) = 0 origin limit of solver output to O(rho_eps^{|m|+2}).
class ProfileSolution {
public:
    AnsatzParams params;
    SolveConfig config;
    std::vector<Sample> samples;
    Classification classification = Bounded{};

    ProfileSolution() = default;
    ProfileSolution(AnsatzParams p, SolveConfig cfg, std::vector<Sample> smp, Classification cls)
        : params(p), config(cfg), samples(std::move(smp)), classification(cls) {
        validate();
    }

    void validate() const;

    bool is_singular() const { return std::holds_alternative<Singular>(classification); }
    const Singular& singular() const { return std::get<Singular>(classification); }
    const Bounded& bounded() const { return std::get<Bounded>(classification); }

    double rho_first() const { return samples.front().rho; }
    double rho_last() const { return samples.back().rho; }
    double g_last() const { return samples.back().g; }

    // rho0 for singular profiles, otherwise the last sampled rho.
    double rho_end() const { return is_singular() ? singular().rho0 : rho_last(); }

    // Dense evaluation on [0, rho_last]; beyond rho_last is out of domain.
    double g_at(double rho) const;
    double gp_at(double rho) const;

    // f = |Z1|^2 = g^2/(1+g^2) and its rho-derivative.
    double f_at(double rho) const;
    double fp_at(double rho) const;

    static double f_of_g(double g) {
        const double g2 = g * g;
        return g2 / (1.0 + g2);
    }

private:
    std::size_t segment_of(double rho) const;
};

}  // namespace faddeev
