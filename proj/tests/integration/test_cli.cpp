#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int rc = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("crnbal_cli_" + std::to_string(static_cast<long>(::getpid())));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << content;
}

fs::path data(const std::string& name) { return fs::path(CRNBAL_DATA_DIR) / name; }

// Runs the CLI through the shell; `env` is prepended verbatim (e.g. "X=1 ").
CliResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd = env + std::string(CRNBAL_CLI_PATH) + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("analyze reports the constraint systems as JSON") {
    CliResult r = run_cli("analyze " + data("net4.crn").string() + " --format json");
    REQUIRE(r.rc == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["species"] == nlohmann::json::array({"A", "B"}));
    CHECK(j["reactions"] == 4);
    CHECK(j["classes"].size() == 2);
    CHECK(j["rndb"]["constraints"].size() == 2);
    CHECK(j["mcdb"]["constraints"].size() == 1);
    CHECK(j["classification"]["strict_gap"] == true);
    CHECK(j["classification"]["unconditional_mcdb"] == false);
    CHECK(j["classification"]["gap_witness_classes"] == nlohmann::json::array({0}));
    CHECK(j["verdict"].get<std::string>().find("⟹") != std::string::npos);
}

TEST_CASE("analyze text output lists ranks and a verdict") {
    CliResult r = run_cli("analyze " + data("net1.crn").string());
    REQUIRE(r.rc == 0);
    CHECK(r.out.find("2 species, 4 reversible reactions, 3 reaction-vector classes") !=
          std::string::npos);
    CHECK(r.out.find("RNDB constraints (rank 2):") != std::string::npos);
    CHECK(r.out.find("MCDB constraints (rank 2):") != std::string::npos);
    CHECK(r.out.find("verdict: RNDB ⟺ MCDB") != std::string::npos);
}

TEST_CASE("check exit codes reflect the verdict") {
    CliResult ok = run_cli("check " + data("horn-jackson.crn").string());
    CHECK(ok.rc == 0);
    CHECK(ok.out.find("RNDB: holds") != std::string::npos);
    CHECK(ok.out.find("MCDB: holds") != std::string::npos);
    CHECK(ok.out.find("equilibrium: 1/2 1") != std::string::npos);

    CliResult bad = run_cli("check " + data("bistable.crn").string() + " --format json");
    CHECK(bad.rc == 1);
    const auto j = nlohmann::json::parse(bad.out);
    CHECK(j["rndb"] == false);
    CHECK(j["mcdb"] == true);  // birth-death chains always balance
    CHECK(!j.contains("equilibrium"));
}

TEST_CASE("check accepts a rate file for symbolic networks") {
    const fs::path rates = scratch_dir() / "ones.rates";
    std::string content = "# all-ones assignment\n";
    for (int i = 1; i <= 4; ++i)
        content += "k" + std::to_string(i) + " = 1\nk-" + std::to_string(i) + " = 1\n";
    spit(rates, content);
    CliResult r = run_cli("check " + data("net1.crn").string() + " --rates " + rates.string());
    CHECK(r.rc == 0);
    CHECK(r.out.find("RNDB: holds") != std::string::npos);

    // Overriding one label of a balanced instance breaks the circuit.
    const fs::path bump = scratch_dir() / "bump.rates";
    spit(bump, "k5 = 7\n");
    CliResult broken =
        run_cli("check " + data("horn-jackson.crn").string() + " --rates " + bump.string());
    CHECK(broken.rc == 1);
    CHECK(broken.out.find("RNDB: fails") != std::string::npos);
}

TEST_CASE("failure exit codes") {
    CliResult missing = run_cli("analyze " + (scratch_dir() / "absent.crn").string());
    CHECK(missing.rc == 2);
    CHECK(missing.err.find("error:") != std::string::npos);

    CliResult incomplete = run_cli("check " + data("net1.crn").string());
    CHECK(incomplete.rc == 2);
    CHECK(incomplete.err.find("IncompleteRates") != std::string::npos);

    CliResult usage = run_cli("");
    CHECK(usage.rc == 64);
    CliResult badflag = run_cli("analyze --no-such-flag x.crn");
    CHECK(badflag.rc == 64);
}

TEST_CASE("stationary emits exact birth-death masses") {
    CliResult r = run_cli("stationary " + data("bistable.crn").string() + " --cap 200");
    REQUIRE(r.rc == 0);
    std::istringstream in(r.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "state_A,mass,mass_exact");
    long rows = 0;
    double best_low = -1, best_high = -1;
    long arg_low = -1, arg_high = -1;
    while (std::getline(in, line)) {
        const auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
        REQUIRE(c1 != std::string::npos);
        REQUIRE(c2 != std::string::npos);
        const long state = std::stol(line.substr(0, c1));
        const double mass = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(state == rows);
        if (state <= 50 && mass > best_low) best_low = mass, arg_low = state;
        if (state > 50 && mass > best_high) best_high = mass, arg_high = state;
        ++rows;
    }
    CHECK(rows == 201);
    // The two modes sit near the stable deterministic steady states.
    CHECK(std::abs(arg_low - 5) <= 2);
    CHECK(std::abs(arg_high - 100) <= 2);
}

TEST_CASE("stationary with --init on a conservative network") {
    CliResult r = run_cli("stationary " + data("horn-jackson.crn").string() +
                          " --init 0,10 --cap 10");
    REQUIRE(r.rc == 0);
    std::istringstream in(r.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "state_A,state_B,mass,mass_exact");
    int rows = 0;
    bool found_exact = false;
    while (std::getline(in, line)) {
        if (line.rfind("0,10,", 0) == 0)
            found_exact = line.substr(line.rfind(',') + 1) == "1024/59049";
        ++rows;
    }
    CHECK(rows == 11);
    CHECK(found_exact);

    CliResult no_init = run_cli("stationary " + data("horn-jackson.crn").string());
    CHECK(no_init.rc == 2);
    CHECK(no_init.err.find("--init") != std::string::npos);
}

TEST_CASE("stationary --out writes atomically and --plot-data mirrors the masses") {
    const fs::path out = scratch_dir() / "dist.csv";
    const fs::path plot = scratch_dir() / "dist.dat";
    CliResult direct = run_cli("stationary " + data("bistable.crn").string() + " --cap 30");
    CliResult filed = run_cli("stationary " + data("bistable.crn").string() + " --cap 30 --out " +
                              out.string() + " --plot-data " + plot.string());
    REQUIRE(direct.rc == 0);
    REQUIRE(filed.rc == 0);
    CHECK(filed.out.empty());
    CHECK(slurp(out) == direct.out);
    CHECK(!fs::exists(out.string() + ".tmp"));

    const std::string plot_data = slurp(plot);
    CHECK(count_lines(plot_data) == 31);
    CHECK(plot_data.rfind("0 ", 0) == 0);
    std::istringstream in(plot_data);
    long index;
    double mass;
    double total = 0;
    while (in >> index >> mass) total += mass;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("simulate is reproducible and honours CRNBAL_SEED") {
    const std::string base = "simulate " + data("bistable.crn").string() +
                             " --init 5 --t-end 5 --seed 123";
    CliResult a = run_cli(base);
    CliResult b = run_cli(base);
    REQUIRE(a.rc == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("t,A\n", 0) == 0);
    CHECK(a.out.find("\n0,5\n") != std::string::npos);

    CliResult env_seeded = run_cli("simulate " + data("bistable.crn").string() +
                                       " --init 5 --t-end 5",
                                   "CRNBAL_SEED=123 ");
    CHECK(env_seeded.out == a.out);

    CliResult other = run_cli("simulate " + data("bistable.crn").string() +
                              " --init 5 --t-end 5 --seed 124");
    CHECK(other.out != a.out);

    const fs::path out = scratch_dir() / "traj.csv";
    CliResult filed = run_cli(base + " --out " + out.string());
    REQUIRE(filed.rc == 0);
    CHECK(slurp(out) == a.out);
}

TEST_CASE("cycles counts irreducible cycle types") {
    CliResult text = run_cli("cycles " + data("open-ab.crn").string() + " --max-cycle-len 4");
    REQUIRE(text.rc == 0);
    CHECK(text.out.rfind("5 cycle types (length <= 4)\n", 0) == 0);
    CHECK(count_lines(text.out) == 6);

    CliResult json = run_cli("cycles " + data("open-ab.crn").string() +
                             " --max-cycle-len 4 --format json");
    REQUIRE(json.rc == 0);
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j["count"] == 5);
    REQUIRE(j["cycles"].size() == 5);
    for (const auto& cycle : j["cycles"]) {
        std::vector<long> sum(2, 0);
        for (const auto& step : cycle) {
            const auto u = step["u"].get<std::vector<long>>();
            for (std::size_t t = 0; t < u.size(); ++t) sum[t] += u[t];
        }
        CHECK(sum == std::vector<long>({0, 0}));
    }

    CliResult none = run_cli("cycles " + data("net3.crn").string());
    CHECK(none.out.rfind("0 cycle types", 0) == 0);
}
