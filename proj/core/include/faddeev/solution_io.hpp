#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "faddeev/pde_verify.hpp"
#include "faddeev/profile.hpp"
#include "faddeev/reduced_ode.hpp"
#include "faddeev/topology.hpp"

namespace faddeev {

// Full-precision decimal formatting (up to 17 significant digits); parsing
// the result recovers the double bit-exactly.
std::string format_double(double v);

// Writes via a temp file in the same directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Deterministic FNV-1a hash of the solve configuration, hex-encoded.
std::string config_hash(const SolveConfig& cfg);

// --- solution files (JSON, format_version checked on load) ---

std::string solution_to_json(const ProfileSolution& profile);
ProfileSolution solution_from_json(const std::string& text);

void save_solution(const ProfileSolution& profile, const std::filesystem::path& path);
ProfileSolution load_solution(const std::filesystem::path& path);

// --- report serialization ---

std::string charge_report_to_json(const ChargeReport& report);
std::string residual_report_to_json(const ResidualReport& report);
std::string boundary_audit_to_json(const BoundaryAudit& audit);
std::string convergence_study_to_json(const ConvergenceStudy& study);

// --- CSV exports (headers exactly as documented) ---

// "c_lead,classification,rho0"
std::string scan_table_to_csv(const ScanTable& table);
// "rho,g,gp,f"
std::string profile_to_csv(const ProfileSolution& profile);
// "rho,e"
std::string energy_to_csv(const ProfileSolution& profile, const EnergyConfig& cfg = {});
// "rho,hopf_integrand" with hopf_integrand = (A . B) rho
std::string integrand_to_csv(const ProfileSolution& profile);

// --- run manifests ---

struct RunManifest {
    std::string command_line;
    std::string resolved_config;  // JSON text of the effective options
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;
    int exit_status = 0;
};

std::string manifest_to_json(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

}  // namespace faddeev
