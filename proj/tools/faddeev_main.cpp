// Command-line driver: solve / charge / verify / scan / export. Every
// invocation writes one run manifest (see --manifest) with the resolved
// options, inputs/outputs, wall time and exit status.
//
// Exit codes: 0 success, 1 verification failure, 2 numerical failure,
// 64 usage error, 66 missing or unusable input file.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faddeev/field_core.hpp"
#include "faddeev/pde_verify.hpp"
#include "faddeev/profile.hpp"
#include "faddeev/reduced_ode.hpp"
#include "faddeev/solution_io.hpp"
#include "faddeev/topology.hpp"
#include "faddeev/version.hpp"

namespace {

using namespace faddeev;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_numerical = 2;
constexpr int exit_usage = 64;
constexpr int exit_noinput = 66;

struct RunContext {
    std::string resolved_config = "{}";
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

struct KV {
    std::ostringstream body;
    bool first = true;
    void add(const std::string& k, const std::string& raw) {
        body << (first ? "" : ", ") << quote(k) << ": " << raw;
        first = false;
    }
    void add(const std::string& k, double v) { add(k, format_double(v)); }
    void add(const std::string& k, int v) { add(k, std::to_string(v)); }
    void add_str(const std::string& k, const std::string& v) { add(k, quote(v)); }
    std::string str() const { return "{" + body.str() + "}"; }
};

ProfileSolution load_input(const std::string& path, RunContext& ctx) {
    ctx.inputs.push_back(path);
    return load_solution(path);
}

// --- solve ---------------------------------------------------------------

struct SolveOptions {
    int m = 1, n = 1;
    double c_lead = 1.0;
    SolveConfig cfg;
    double tol = 0.0;  // when set, rel_tol = tol and abs_tol = tol/100
    std::string out;
};

int cmd_solve(const SolveOptions& opt, RunContext& ctx) {
    SolveConfig cfg = opt.cfg;
    if (opt.tol > 0.0) {
        cfg.rel_tol = opt.tol;
        cfg.abs_tol = opt.tol * 1e-2;
    }
    KV kv;
    kv.add("m", opt.m);
    kv.add("n", opt.n);
    kv.add("c_lead", opt.c_lead);
    kv.add("rho_eps", cfg.rho_eps);
    kv.add("g_max", cfg.g_max);
    kv.add("rho_max", cfg.rho_max);
    kv.add("rel_tol", cfg.rel_tol);
    kv.add("abs_tol", cfg.abs_tol);
    ctx.resolved_config = kv.str();

    const ProfileSolution sol = integrate_profile({opt.m, opt.n, opt.c_lead}, cfg);
    save_solution(sol, opt.out);
    ctx.outputs.push_back(opt.out);

    if (sol.is_singular())
        std::cout << "SINGULAR rho0=" << format_double(sol.singular().rho0)
                  << " C=" << format_double(sol.singular().C) << "\n";
    else
        std::cout << "BOUNDED rho_max=" << format_double(sol.bounded().rho_max)
                  << " g_sup=" << format_double(sol.bounded().g_sup) << "\n";
    return exit_ok;
}

// --- charge --------------------------------------------------------------

struct ChargeOptions {
    std::string sol;
    std::string method = "closed";
    int grid = 256;
    double eps = 1e-3;
    int quad_order = 4;
    std::string out;
};

int cmd_charge(const ChargeOptions& opt, RunContext& ctx) {
    KV kv;
    kv.add_str("sol", opt.sol);
    kv.add_str("method", opt.method);
    kv.add("grid", opt.grid);
    kv.add("eps", opt.eps);
    ctx.resolved_config = kv.str();

    const ProfileSolution sol = load_input(opt.sol, ctx);
    ChargeReport report;
    if (opt.method == "closed")
        report = hopf_closed(sol);
    else if (opt.method == "reduced")
        report = hopf_reduced(sol, opt.quad_order);
    else
        report = hopf_grid3d(sol, Grid3dSpec{opt.grid, 16, 16, opt.eps});

    const std::string text = charge_report_to_json(report);
    std::cout << text << "\n";
    if (!opt.out.empty()) {
        atomic_write(opt.out, text + "\n");
        ctx.outputs.push_back(opt.out);
    }
    return exit_ok;
}

// --- verify --------------------------------------------------------------

struct VerifyOptions {
    std::string sol;
    std::vector<double> window;  // empty or {lo, hi}
    int grid = 0;      // 0 = choose from the window length
    int angular = 0;   // 0 = 16 (analytic angular mode) or 64 (--fd)
    int refinements = 2;
    double max_residual = 0.0;  // 0 = 1e-4 (analytic) or 1e-2 (--fd)
    bool fully_fd = false;
    std::string out;
};

int cmd_verify(const VerifyOptions& opt, RunContext& ctx) {
    const ProfileSolution sol = load_input(opt.sol, ctx);

    VerifyGridSpec spec = default_verify_window(sol);
    if (opt.window.size() == 2) {
        spec.rho_lo = opt.window[0];
        spec.rho_hi = opt.window[1];
    }
    // default resolution targets a fixed spacing so long bounded windows are
    // not under-resolved; an explicit --grid wins
    spec.n_rho = opt.grid > 0
                     ? opt.grid
                     : std::clamp(int(std::ceil((spec.rho_hi - spec.rho_lo) / 0.008)), 256, 8192);
    spec.fully_finite_difference = opt.fully_fd;
    // the FD-everywhere mode carries its own angular truncation, so its
    // defaults are a denser angular grid and a threshold sized to it
    spec.n_phi = spec.n_z = opt.angular > 0 ? opt.angular : (opt.fully_fd ? 64 : 16);
    const double max_residual =
        opt.max_residual > 0.0 ? opt.max_residual : (opt.fully_fd ? 1e-2 : 1e-4);

    KV kv;
    kv.add_str("sol", opt.sol);
    kv.add("grid", spec.n_rho);
    kv.add("refinements", opt.refinements);
    kv.add("max_residual", max_residual);
    kv.add("rho_lo", spec.rho_lo);
    kv.add("rho_hi", spec.rho_hi);
    ctx.resolved_config = kv.str();

    ResidualReport residual = field_equation_residual(sol, spec);
    ConvergenceStudy study;
    // radial refinement cannot shrink an angular-truncation-dominated
    // residual, so the order check only applies to the analytic-angular mode
    const bool run_study = opt.refinements >= 2 && !opt.fully_fd;
    if (run_study) {
        VerifyGridSpec base = spec;
        base.n_rho = spec.n_rho / (1 << opt.refinements);
        if (base.n_rho < 8) base.n_rho = 8;
        study = convergence_study(sol, base);
        residual.convergence_order = study.order;
    }
    const BoundaryAudit audit = boundary_audit(sol);
    const AsymptoticExponents exps = asymptotic_exponents(sol);

    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    checks.push_back({"residual_linf", residual.linf_norm < max_residual,
                      "relative linf residual " + format_double(residual.linf_norm) +
                          " vs threshold " + format_double(max_residual)});
    if (run_study)
        checks.push_back({"convergence_order",
                          study.reliable && study.order && std::abs(*study.order - 2.0) <= 0.3,
                          study.order ? "order " + format_double(*study.order)
                                      : "order unreliable (non-monotone norms)"});
    checks.push_back({"periodicity", audit.periodicity_z_defect == 0.0 &&
                                         audit.periodicity_phi_defect == 0.0,
                      "z defect " + format_double(audit.periodicity_z_defect) + ", phi defect " +
                          format_double(audit.periodicity_phi_defect)});
    if (audit.singular_boundary_applicable)
        checks.push_back({"singular_boundary", audit.singular_boundary_ok,
                          "|u| at last sample " + format_double(audit.edge_magnitude)});
    const double origin_target = std::abs(sol.params.m);
    checks.push_back({"origin_exponent", std::abs(exps.origin_slope - origin_target) <= 1e-3,
                      "slope " + format_double(exps.origin_slope) + " expected " +
                          format_double(origin_target)});
    if (exps.pole_slope)
        checks.push_back({"pole_exponent", std::abs(*exps.pole_slope - 1.0) <= 1e-2,
                          "slope " + format_double(*exps.pole_slope) + " expected 1"});

    bool all_pass = true;
    std::ostringstream checks_json;
    checks_json << "[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        all_pass = all_pass && checks[i].pass;
        checks_json << (i ? ", " : "") << "{\"name\": " << quote(checks[i].name)
                    << ", \"pass\": " << (checks[i].pass ? "true" : "false")
                    << ", \"detail\": " << quote(checks[i].detail) << "}";
    }
    checks_json << "]";

    std::ostringstream combined;
    combined << "{\n\"residual\": " << residual_report_to_json(residual);
    if (run_study) combined << ",\n\"convergence\": " << convergence_study_to_json(study);
    combined << ",\n\"boundary\": " << boundary_audit_to_json(audit);
    combined << ",\n\"exponents\": {\"origin_slope\": " << format_double(exps.origin_slope)
             << ", \"pole_slope\": "
             << (exps.pole_slope ? format_double(*exps.pole_slope) : std::string("null"))
             << ", \"singular_boundary_applicable\": "
             << (audit.singular_boundary_applicable ? "true" : "false") << "}";
    combined << ",\n\"checks\": " << checks_json.str();
    combined << ",\n\"pass\": " << (all_pass ? "true" : "false") << "\n}";

    std::cout << combined.str() << "\n";
    if (!opt.out.empty()) {
        atomic_write(opt.out, combined.str() + "\n");
        ctx.outputs.push_back(opt.out);
    }

    if (!all_pass) {
        for (const Check& c : checks)
            if (!c.pass) std::cerr << "FAIL " << c.name << ": " << c.detail << "\n";
        return exit_verify_failed;
    }
    std::cout << "PASS\n";
    return exit_ok;
}

// --- scan ----------------------------------------------------------------

struct ScanOptions {
    int m = 1, n = 1;
    double c_from = 0.0, c_to = 0.0;
    int steps = 8;
    SolveConfig cfg;
    std::string out;
};

int cmd_scan(const ScanOptions& opt, RunContext& ctx) {
    KV kv;
    kv.add("m", opt.m);
    kv.add("n", opt.n);
    kv.add("c_from", opt.c_from);
    kv.add("c_to", opt.c_to);
    kv.add("steps", opt.steps);
    ctx.resolved_config = kv.str();

    const ScanTable table = scan_coefficient(opt.m, opt.n, opt.c_from, opt.c_to, opt.steps, opt.cfg);
    atomic_write(opt.out, scan_table_to_csv(table));
    ctx.outputs.push_back(opt.out);

    std::size_t failed = 0;
    for (const ScanRow& row : table.rows)
        if (row.status == RowStatus::error) ++failed;
    std::cout << "scan: " << table.rows.size() << " rows, " << failed << " errors\n";
    return failed == table.rows.size() ? exit_numerical : exit_ok;
}

// --- export --------------------------------------------------------------

struct ExportOptions {
    std::string sol;
    std::string what = "profile";
    std::string out;
};

int cmd_export(const ExportOptions& opt, RunContext& ctx) {
    KV kv;
    kv.add_str("sol", opt.sol);
    kv.add_str("what", opt.what);
    ctx.resolved_config = kv.str();

    const ProfileSolution sol = load_input(opt.sol, ctx);
    std::string csv;
    if (opt.what == "profile")
        csv = profile_to_csv(sol);
    else if (opt.what == "energy")
        csv = energy_to_csv(sol);
    else
        csv = integrand_to_csv(sol);
    atomic_write(opt.out, csv);
    ctx.outputs.push_back(opt.out);
    std::cout << "wrote " << opt.out << "\n";
    return exit_ok;
}

}  // namespace

namespace {

int run_cli(int argc, char** argv) {
    std::ostringstream cmdline;
    for (int i = 0; i < argc; ++i) cmdline << (i ? " " : "") << argv[i];

    CLI::App app{"Hopf solitons of the Faddeev model under the toroidal ansatz"};
    app.set_version_flag("--version", faddeev::tool_version);
    app.require_subcommand(1);
    app.fallthrough();  // app-level options (--manifest) may follow the subcommand

    std::string manifest_path = "faddeev-manifest.json";
    app.add_option("--manifest", manifest_path, "run manifest output path")
        ->capture_default_str();

    const auto nonzero = CLI::Validator(
        [](std::string& s) -> std::string {
            if (s == "0" || s == "-0" || s == "+0") return "winding must be a non-zero integer";
            return {};
        },
        "NONZERO");

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand("solve", "integrate the profile equation");
    solve->add_option("--m", solve_opt.m, "winding in phi")->required()->check(nonzero);
    solve->add_option("--n", solve_opt.n, "winding in z")->required()->check(nonzero);
    solve->add_option("--c-lead", solve_opt.c_lead, "leading coefficient of g ~ c rho^|m|")
        ->capture_default_str();
    solve->add_option("--rho-eps", solve_opt.cfg.rho_eps, "series-start radius")
        ->capture_default_str();
    solve->add_option("--g-max", solve_opt.cfg.g_max, "blow-up threshold")->capture_default_str();
    solve->add_option("--rho-max", solve_opt.cfg.rho_max, "bounded-domain horizon")
        ->capture_default_str();
    solve->add_option("--tol", solve_opt.tol, "relative tolerance (abs = rel/100)");
    solve->add_option("--max-step", solve_opt.cfg.max_step, "max integrator step")
        ->capture_default_str();
    solve->add_option("--out", solve_opt.out, "solution file (JSON)")->required();

    ChargeOptions charge_opt;
    CLI::App* charge = app.add_subcommand("charge", "evaluate the Hopf charge");
    charge->add_option("--sol", charge_opt.sol, "solution file")->required();
    charge->add_option("--method", charge_opt.method, "closed | reduced | grid3d")
        ->check(CLI::IsMember({"closed", "reduced", "grid3d"}))
        ->capture_default_str();
    charge->add_option("--grid", charge_opt.grid, "radial grid size for grid3d")
        ->capture_default_str();
    charge->add_option("--eps", charge_opt.eps, "axis excision radius for grid3d")
        ->capture_default_str();
    charge->add_option("--quad-order", charge_opt.quad_order, "2 or 4, for reduced")
        ->check(CLI::IsMember({2, 4}))
        ->capture_default_str();
    charge->add_option("--out", charge_opt.out, "optional report file");

    VerifyOptions verify_opt;
    CLI::App* verify = app.add_subcommand("verify", "residual and boundary verification");
    verify->add_option("--sol", verify_opt.sol, "solution file")->required();
    verify->add_option("--window", verify_opt.window, "rho window: lo hi")->expected(2);
    verify->add_option("--grid", verify_opt.grid, "radial grid size (default: window/0.008)");
    verify->add_option("--refinements", verify_opt.refinements, "nested refinements for the order fit")
        ->capture_default_str();
    verify->add_option("--max-residual", verify_opt.max_residual,
                       "pass threshold on the relative linf residual (default 1e-4, or 1e-2 with --fd)");
    verify->add_option("--angular", verify_opt.angular,
                       "angular grid size (default 16, or 64 with --fd)");
    verify->add_flag("--fd", verify_opt.fully_fd, "finite differences in all three coordinates");
    verify->add_option("--out", verify_opt.out, "optional report file");

    ScanOptions scan_opt;
    CLI::App* scan = app.add_subcommand("scan", "scan the leading coefficient");
    scan->add_option("--m", scan_opt.m, "winding in phi")->required()->check(nonzero);
    scan->add_option("--n", scan_opt.n, "winding in z")->required()->check(nonzero);
    scan->add_option("--c-from", scan_opt.c_from, "lower c_lead")->required();
    scan->add_option("--c-to", scan_opt.c_to, "upper c_lead")->required();
    scan->add_option("--steps", scan_opt.steps, "rows (log-spaced)")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    scan->add_option("--out", scan_opt.out, "CSV output path")->required();

    ExportOptions export_opt;
    CLI::App* exp = app.add_subcommand("export", "columnar CSV export");
    exp->add_option("--sol", export_opt.sol, "solution file")->required();
    exp->add_option("--what", export_opt.what, "profile | energy | integrand")
        ->check(CLI::IsMember({"profile", "energy", "integrand"}))
        ->capture_default_str();
    exp->add_option("--out", export_opt.out, "CSV output path")->required();

    const auto t0 = std::chrono::steady_clock::now();
    faddeev::RunManifest manifest;
    manifest.command_line = cmdline.str();

    RunContext ctx;
    int code = exit_ok;
    try {
        app.parse(argc, argv);

        if (solve->parsed())
            code = cmd_solve(solve_opt, ctx);
        else if (charge->parsed())
            code = cmd_charge(charge_opt, ctx);
        else if (verify->parsed())
            code = cmd_verify(verify_opt, ctx);
        else if (scan->parsed())
            code = cmd_scan(scan_opt, ctx);
        else if (exp->parsed())
            code = cmd_export(export_opt, ctx);
    } catch (const CLI::ParseError& e) {
        const int cli_code = app.exit(e);
        code = cli_code == 0 ? exit_ok : exit_usage;
    } catch (const faddeev::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = exit_noinput;
    } catch (const faddeev::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = exit_noinput;
    } catch (const faddeev::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = exit_numerical;
    }

    manifest.resolved_config = ctx.resolved_config;
    manifest.inputs = ctx.inputs;
    manifest.outputs = ctx.outputs;
    manifest.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest.exit_status = code;
    try {
        faddeev::write_manifest(manifest, manifest_path);
    } catch (const std::exception& e) {
        std::cerr << "warning: could not write manifest: " << e.what() << "\n";
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return exit_numerical;
    } catch (...) {
        std::cerr << "fatal: unknown error\n";
        return exit_numerical;
    }
}
