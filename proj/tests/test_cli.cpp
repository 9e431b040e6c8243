// End-to-end tests of the installed command surface: spawns the real binary,
// checks stdout, exit codes and emitted files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "faddeev/solution_io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path work_dir = [] {
    const fs::path dir = fs::temp_directory_path() / "faddeev_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}();

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    static int counter = 0;
    const fs::path out = work_dir / ("stdout" + std::to_string(counter) + ".txt");
    const fs::path err = work_dir / ("stderr" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(FADDEEV_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult result;
    result.code = WEXITSTATUS(rc);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

std::string in_dir(const std::string& name) { return (work_dir / name).string(); }

}  // namespace

TEST_CASE("solve writes a solution and a manifest") {
    const RunResult r = run("solve --m 1 --n 1 --c-lead 1 --out " + in_dir("s11.json") +
                            " --manifest " + in_dir("s11.manifest.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("SINGULAR rho0=2.344") != std::string::npos);
    CHECK(fs::exists(in_dir("s11.json")));
    REQUIRE(fs::exists(in_dir("s11.manifest.json")));
    const json manifest = json::parse(std::ifstream(in_dir("s11.manifest.json")));
    CHECK(manifest.at("exit_status").get<int>() == 0);
    CHECK(manifest.at("outputs").size() == 1);
    CHECK(manifest.at("wall_time_s").get<double>() < 10.0);

    const RunResult r12 = run("solve --m 1 --n 2 --c-lead 1 --out " + in_dir("s12.json") +
                              " --manifest " + in_dir("s12.manifest.json"));
    CHECK(r12.code == 0);
    CHECK(r12.out.find("BOUNDED") != std::string::npos);
}

TEST_CASE("solve rejects zero windings with a usage error") {
    const RunResult r = run("solve --m 0 --n 1 --out " + in_dir("bad.json") + " --manifest " +
                            in_dir("bad.manifest.json"));
    CHECK(r.code == 64);
    CHECK_FALSE(fs::exists(in_dir("bad.json")));
}

TEST_CASE("charge closed and grid3d") {
    run("solve --m 1 --n 1 --c-lead 1 --out " + in_dir("c11.json") + " --manifest " +
        in_dir("m,c11.json"));
    const RunResult closed = run("charge --sol " + in_dir("c11.json") +
                                 " --method closed --manifest " + in_dir("m1.json"));
    CHECK(closed.code == 0);
    const json jc = json::parse(closed.out);
    CHECK(jc.at("value").get<double>() == 1.0);
    CHECK(jc.at("expected").get<int>() == 1);

    const RunResult grid = run("charge --sol " + in_dir("c11.json") +
                               " --method grid3d --grid 256 --eps 1e-3 --manifest " +
                               in_dir("m2.json"));
    CHECK(grid.code == 0);
    const json jg = json::parse(grid.out);
    CHECK(std::abs(jg.at("value").get<double>() - 1.0) < 0.02);

    const RunResult missing = run("charge --sol " + in_dir("missing.json") + " --manifest " +
                                  in_dir("m3.json"));
    CHECK(missing.code == 66);
}

TEST_CASE("verify passes on a solution and fails on a tampered file") {
    run("solve --m 1 --n 1 --c-lead 1 --out " + in_dir("v11.json") + " --manifest " +
        in_dir("mv0.json"));
    const RunResult good = run("verify --sol " + in_dir("v11.json") + " --manifest " +
                               in_dir("mv1.json"));
    CHECK(good.code == 0);
    CHECK(good.out.find("PASS") != std::string::npos);

    // perturb the samples mid-range by 2%
    {
        json j = json::parse(std::ifstream(in_dir("v11.json")));
        auto& g = j["samples"]["g"];
        for (std::size_t i = g.size() / 4; i < g.size() / 2; ++i)
            g[i] = g[i].get<double>() * 1.02;
        std::ofstream out(in_dir("tampered.json"));
        out << j.dump(2);
    }
    const RunResult bad = run("verify --sol " + in_dir("tampered.json") + " --manifest " +
                              in_dir("mv2.json"));
    CHECK(bad.code == 1);
    CHECK(bad.err.find("FAIL") != std::string::npos);

    // bounded case: singular-boundary check not applicable, still PASS
    run("solve --m 1 --n 2 --c-lead 1 --out " + in_dir("v12.json") + " --manifest " +
        in_dir("mv3.json"));
    const RunResult bounded = run("verify --sol " + in_dir("v12.json") + " --manifest " +
                                  in_dir("mv4.json"));
    CHECK(bounded.code == 0);
    const auto jpos = bounded.out.find('{');
    REQUIRE(jpos != std::string::npos);
    const json jb = json::parse(bounded.out.substr(jpos, bounded.out.rfind('}') - jpos + 1));
    CHECK_FALSE(jb.at("boundary").at("singular_boundary_applicable").get<bool>());
}

TEST_CASE("scan CSV and its usage errors") {
    const RunResult r = run("scan --m 1 --n 1 --c-from 0.5 --c-to 2 --steps 8 --out " +
                            in_dir("scan.csv") + " --manifest " + in_dir("ms1.json"));
    CHECK(r.code == 0);
    std::ifstream in(in_dir("scan.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "c_lead,classification,rho0");
    int rows = 0, singular = 0;
    double prev_rho0 = 1e300;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        if (line.find("singular") != std::string::npos) {
            ++singular;
            const double rho0 = std::stod(line.substr(line.rfind(',') + 1));
            CHECK(rho0 < prev_rho0);  // monotone in c where singular
            prev_rho0 = rho0;
        }
    }
    CHECK(rows == 8);
    CHECK(singular == 4);

    CHECK(run("scan --m 1 --n 1 --c-from 0.5 --c-to 2 --steps 1 --out " + in_dir("bad.csv") +
              " --manifest " + in_dir("ms2.json"))
              .code == 64);
}

TEST_CASE("export subcommand") {
    run("solve --m 1 --n 2 --c-lead 1 --out " + in_dir("e12.json") + " --manifest " +
        in_dir("me0.json"));
    for (const std::string what : {"profile", "energy", "integrand"}) {
        const RunResult r = run("export --sol " + in_dir("e12.json") + " --what " + what +
                                " --out " + in_dir(what + ".csv") + " --manifest " +
                                in_dir("me_" + what + ".json"));
        CHECK(r.code == 0);
        CHECK(fs::exists(in_dir(what + ".csv")));
    }
    CHECK(run("export --sol " + in_dir("e12.json") + " --what bogus --out " + in_dir("x.csv") +
              " --manifest " + in_dir("me9.json"))
              .code == 64);
}

TEST_CASE("results are independent of the worker count") {
    run("solve --m 1 --n 1 --c-lead 1 --out " + in_dir("t11.json") + " --manifest " +
        in_dir("mt0.json"));
    auto charge_with = [&](const std::string& env, const std::string& tag) {
        static int k = 0;
        const std::string cmd = env + " " + std::string(FADDEEV_CLI_PATH) + " charge --sol " +
                                in_dir("t11.json") + " --method grid3d --grid 64 --manifest " +
                                in_dir("mt_" + tag + std::to_string(k) + ".json") + " > " +
                                in_dir("charge_" + tag + ".json") + " 2> /dev/null";
        ++k;
        REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
        return json::parse(std::ifstream(in_dir("charge_" + tag + ".json")));
    };
    const json one = charge_with("FADDEEV_THREADS=1", "one");
    const json four = charge_with("FADDEEV_THREADS=4", "four");
    CHECK(one.at("value").get<double>() == four.at("value").get<double>());
    CHECK(one.at("abs_error_estimate").get<double>() ==
          four.at("abs_error_estimate").get<double>());
}

TEST_CASE("reruns with identical flags produce identical numerical output") {
    run("solve --m 2 --n 1 --c-lead 1 --out " + in_dir("r1.json") + " --manifest " +
        in_dir("mr1.json"));
    run("solve --m 2 --n 1 --c-lead 1 --out " + in_dir("r2.json") + " --manifest " +
        in_dir("mr2.json"));
    json a = json::parse(std::ifstream(in_dir("r1.json")));
    json b = json::parse(std::ifstream(in_dir("r2.json")));
    a.erase("provenance");
    b.erase("provenance");
    CHECK(a == b);  // identical apart from provenance timestamps
}
