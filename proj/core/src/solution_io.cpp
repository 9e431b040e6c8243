#include "faddeev/solution_io.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "faddeev/field_core.hpp"
#include "faddeev/version.hpp"

namespace faddeev {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FileError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw FileError("short write: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string config_hash(const SolveConfig& cfg) {
    std::ostringstream canon;
    canon << format_double(cfg.rho_eps) << '|' << format_double(cfg.g_max) << '|'
          << format_double(cfg.rho_max) << '|' << format_double(cfg.rel_tol) << '|'
          << format_double(cfg.abs_tol) << '|' << format_double(cfg.tail_lo) << '|'
          << format_double(cfg.max_step);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon.str()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string iso_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json config_to_json(const SolveConfig& cfg) {
    return json{{"rho_eps", cfg.rho_eps},   {"g_max", cfg.g_max},     {"rho_max", cfg.rho_max},
                {"rel_tol", cfg.rel_tol},   {"abs_tol", cfg.abs_tol}, {"tail_lo", cfg.tail_lo},
                {"max_step", cfg.max_step}};
}

SolveConfig config_from_json(const json& j) {
    SolveConfig cfg;
    cfg.rho_eps = j.at("rho_eps").get<double>();
    cfg.g_max = j.at("g_max").get<double>();
    cfg.rho_max = j.at("rho_max").get<double>();
    cfg.rel_tol = j.at("rel_tol").get<double>();
    cfg.abs_tol = j.at("abs_tol").get<double>();
    cfg.tail_lo = j.at("tail_lo").get<double>();
    cfg.max_step = j.value("max_step", 0.02);
    return cfg;
}

}  // namespace

std::string solution_to_json(const ProfileSolution& profile) {
    json j;
    j["format_version"] = solution_format_version;
    j["params"] = {{"m", profile.params.m},
                   {"n", profile.params.n},
                   {"c_lead", profile.params.c_lead}};
    j["config"] = config_to_json(profile.config);

    if (profile.is_singular()) {
        const Singular& s = profile.singular();
        j["classification"] = {{"kind", "singular"},
                               {"rho0", s.rho0},
                               {"C", s.C},
                               {"fit_residual", s.fit_residual}};
    } else {
        const Bounded& b = profile.bounded();
        j["classification"] = {{"kind", "bounded"}, {"rho_max", b.rho_max}, {"g_sup", b.g_sup}};
    }

    json rho = json::array(), g = json::array(), gp = json::array();
    for (const Sample& s : profile.samples) {
        rho.push_back(s.rho);
        g.push_back(s.g);
        gp.push_back(s.gp);
    }
    j["samples"] = {{"rho", std::move(rho)}, {"g", std::move(g)}, {"gp", std::move(gp)}};

    j["provenance"] = {{"tool_version", tool_version},
                       {"timestamp", iso_timestamp_utc()},
                       {"config_hash", config_hash(profile.config)}};
    return j.dump(2);
}

ProfileSolution solution_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("solution file is not valid JSON: ") + e.what());
    }
    try {
        const int version = j.at("format_version").get<int>();
        if (version > solution_format_version)
            throw FormatError("solution file format_version " + std::to_string(version) +
                              " is newer than supported " +
                              std::to_string(solution_format_version));

        AnsatzParams params;
        params.m = j.at("params").at("m").get<int>();
        params.n = j.at("params").at("n").get<int>();
        params.c_lead = j.at("params").at("c_lead").get<double>();

        const SolveConfig cfg = config_from_json(j.at("config"));

        const json& jc = j.at("classification");
        Classification cls;
        const std::string kind = jc.at("kind").get<std::string>();
        if (kind == "singular")
            cls = Singular{jc.at("rho0").get<double>(), jc.at("C").get<double>(),
                           jc.value("fit_residual", 0.0)};
        else if (kind == "bounded")
            cls = Bounded{jc.at("rho_max").get<double>(), jc.at("g_sup").get<double>()};
        else
            throw FormatError("unknown classification kind: " + kind);

        const json& js = j.at("samples");
        const auto& rho = js.at("rho");
        const auto& g = js.at("g");
        const auto& gp = js.at("gp");
        if (rho.size() != g.size() || rho.size() != gp.size())
            throw FormatError("sample columns have mismatched lengths");
        std::vector<Sample> samples(rho.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            samples[i] = Sample{rho[i].get<double>(), g[i].get<double>(), gp[i].get<double>()};

        try {
            return ProfileSolution(params, cfg, std::move(samples), cls);
        } catch (const DomainError& e) {
            throw FormatError(std::string("solution file violates profile invariants: ") +
                              e.what());
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed solution file: ") + e.what());
    }
}

void save_solution(const ProfileSolution& profile, const std::filesystem::path& path) {
    atomic_write(path, solution_to_json(profile) + "\n");
}

ProfileSolution load_solution(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open solution file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return solution_from_json(buf.str());
}

namespace {

const char* method_name(ChargeMethod m) {
    switch (m) {
        case ChargeMethod::closed: return "closed";
        case ChargeMethod::reduced: return "reduced";
        case ChargeMethod::grid3d: return "grid3d";
    }
    return "?";
}

}  // namespace

std::string charge_report_to_json(const ChargeReport& r) {
    json j;
    j["method"] = method_name(r.method);
    j["value"] = r.value;
    j["expected"] = r.expected;
    j["deviation_from_expected"] = r.value - double(r.expected);
    j["distance_to_integer"] = r.distance_to_integer;
    j["abs_error_estimate"] = r.abs_error_estimate;
    j["error_estimate_available"] = r.error_estimate_available;
    j["tail_correction"] = r.tail_correction;
    j["tail_correction_applied"] = r.tail_correction_applied;
    j["discretization"] = {{"rule", r.discretization.rule},
                           {"n_rho", r.discretization.n_rho},
                           {"n_phi", r.discretization.n_phi},
                           {"n_z", r.discretization.n_z},
                           {"axis_excision", r.discretization.axis_excision}};
    return j.dump(2);
}

std::string residual_report_to_json(const ResidualReport& r) {
    json j;
    j["grid"] = {{"rho_lo", r.grid.rho_lo},   {"rho_hi", r.grid.rho_hi},
                 {"n_rho", r.grid.n_rho},     {"n_phi", r.grid.n_phi},
                 {"n_z", r.grid.n_z},         {"spacing", r.spacing},
                 {"fully_finite_difference", r.grid.fully_finite_difference}};
    j["l2_norm"] = r.l2_norm;
    j["linf_norm"] = r.linf_norm;
    j["reference_scale"] = r.reference_scale;
    if (r.convergence_order)
        j["convergence_order"] = *r.convergence_order;
    else
        j["convergence_order"] = nullptr;
    return j.dump(2);
}

std::string boundary_audit_to_json(const BoundaryAudit& a) {
    json j;
    j["periodicity_z_defect"] = a.periodicity_z_defect;
    j["periodicity_phi_defect"] = a.periodicity_phi_defect;
    j["axis_value"] = {{"re", a.axis_value.real()}, {"im", a.axis_value.imag()}};
    j["edge_magnitude"] = a.edge_magnitude;
    j["singular_boundary_applicable"] = a.singular_boundary_applicable;
    j["singular_boundary_ok"] = a.singular_boundary_ok;
    return j.dump(2);
}

std::string convergence_study_to_json(const ConvergenceStudy& s) {
    json j;
    j["l2_norms"] = {s.l2[0], s.l2[1], s.l2[2]};
    j["pairwise_orders"] = {s.orders[0], s.orders[1]};
    j["reliable"] = s.reliable;
    if (s.order)
        j["order"] = *s.order;
    else
        j["order"] = nullptr;
    return j.dump(2);
}

std::string scan_table_to_csv(const ScanTable& table) {
    std::ostringstream out;
    out << "c_lead,classification,rho0\n";
    for (const ScanRow& row : table.rows) {
        out << format_double(row.c_lead) << ',';
        switch (row.status) {
            case RowStatus::singular:
                out << "singular," << format_double(row.rho0.value());
                break;
            case RowStatus::bounded:
                out << "bounded,";
                break;
            case RowStatus::error:
                out << "ERROR,";
                break;
        }
        out << '\n';
    }
    return out.str();
}

std::string profile_to_csv(const ProfileSolution& profile) {
    std::ostringstream out;
    out << "rho,g,gp,f\n";
    for (const Sample& s : profile.samples)
        out << format_double(s.rho) << ',' << format_double(s.g) << ',' << format_double(s.gp)
            << ',' << format_double(ProfileSolution::f_of_g(s.g)) << '\n';
    return out.str();
}

std::string energy_to_csv(const ProfileSolution& profile, const EnergyConfig& cfg) {
    std::ostringstream out;
    out << "rho,e\n";
    for (const Sample& s : profile.samples)
        out << format_double(s.rho) << ','
            << format_double(energy_density({s.rho, 0.0, 0.0}, profile, cfg)) << '\n';
    return out.str();
}

std::string integrand_to_csv(const ProfileSolution& profile) {
    std::ostringstream out;
    out << "rho,hopf_integrand\n";
    for (const Sample& s : profile.samples) {
        const GaugeData gd = gauge_potential({s.rho, 0.0, 0.0}, profile);
        out << format_double(s.rho) << ',' << format_double(dot(gd.A, gd.Bcurl) * s.rho) << '\n';
    }
    return out.str();
}

std::string manifest_to_json(const RunManifest& m) {
    json j;
    j["command_line"] = m.command_line;
    try {
        j["resolved_config"] = json::parse(m.resolved_config);
    } catch (const json::exception&) {
        j["resolved_config"] = m.resolved_config;
    }
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["wall_time_s"] = m.wall_time_s;
    j["exit_status"] = m.exit_status;
    j["tool_version"] = tool_version;
    j["timestamp"] = iso_timestamp_utc();
    return j.dump(2);
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    atomic_write(path, manifest_to_json(manifest) + "\n");
}

}  // namespace faddeev
