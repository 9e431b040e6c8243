#pragma once

#include <stdexcept>
#include <string>

namespace faddeev {

// Evaluation outside the validity region of a formula or profile.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// rho = 0 where a 1/rho factor lives (phi-component of gradients).
struct AxisError : DomainError {
    explicit AxisError(const std::string& what) : DomainError(what) {}
};

// Tail fit cannot be performed or does not look like 1/(rho0 - rho).
struct FitError : std::runtime_error {
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

// Root bracketing violated (no straddle, or an end fails a precondition).
struct BracketError : std::runtime_error {
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// Classification flipped Singular <-> Bounded inside a bisection bracket.
struct ClassificationChangeError : std::runtime_error {
    explicit ClassificationChangeError(const std::string& what) : std::runtime_error(what) {}
};

// Integration failed: step size underflow (stiffness) or non-finite state.
struct SolverError : std::runtime_error {
    double last_rho = 0.0;
    double last_g = 0.0;
    double last_gp = 0.0;
    SolverError(const std::string& what, double rho, double g, double gp)
        : std::runtime_error(what), last_rho(rho), last_g(g), last_gp(gp) {}
};

// Solution file missing or unreadable.
struct FileError : std::runtime_error {
    explicit FileError(const std::string& what) : std::runtime_error(what) {}
};

// Solution file has an unsupported format_version or malformed content.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace faddeev
