#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>

#include "crnbal/crnbal.hpp"

namespace {

using namespace crnbal;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::IoError, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

State parse_init(const std::string& text, std::size_t species) {
    State a;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        a.push_back(static_cast<std::int64_t>(std::stoll(item)));
    if (a.size() != species)
        fail(ErrorCode::DimensionMismatch,
             "--init needs " + std::to_string(species) + " comma-separated populations");
    return a;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_atomic(out_path, content);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CRNBAL_SEED")) return std::strtoull(env, nullptr, 10);
    return 20240101ull;
}

RateAssignment resolve_rates(const ParsedNetwork& parsed, const std::string& rates_path) {
    RateAssignment rates = parsed.rates;
    if (!rates_path.empty()) {
        for (auto& [label, value] : parse_rate_file(read_file(rates_path)).values)
            rates.values[label] = value;
    }
    return rates;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"Detailed-balance analysis of reversible reaction networks"};
    app.require_subcommand(1);

    std::string input, out_path, rates_path, format = "text", init_text, plot_path;
    std::int64_t cap = 200;
    double t_end = 100.0, burn_in = -1.0, tol = 1e-9;
    int max_cycle_len = 6;
    std::uint64_t seed = default_seed();

    const auto add_common = [&](CLI::App* cmd, bool needs_rates) {
        cmd->add_option("input", input, "network file")->required();
        cmd->add_option("--out", out_path, "write output here (atomically) instead of stdout");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
        if (needs_rates)
            cmd->add_option("--rates", rates_path, "rate file overriding in-network values");
    };

    auto* cmd_analyze = app.add_subcommand("analyze", "derive RNDB/MCDB constraint systems");
    add_common(cmd_analyze, false);
    cmd_analyze->add_option("--max-cycle-len", max_cycle_len, "cycle length bound");
    cmd_analyze->add_option("--seed", seed, "seed for the necessity sampling");

    auto* cmd_check = app.add_subcommand("check", "check detailed balance of concrete rates");
    add_common(cmd_check, true);
    cmd_check->add_option("--max-cycle-len", max_cycle_len, "cycle length bound");
    cmd_check->add_option("--seed", seed, "seed for state sampling");

    auto* cmd_stationary =
        app.add_subcommand("stationary", "exact stationary distribution on a truncated box");
    add_common(cmd_stationary, true);
    cmd_stationary->add_option("--init", init_text, "initial populations a0 (comma-separated)");
    cmd_stationary->add_option("--cap", cap, "per-species population cap");
    cmd_stationary->add_option("--plot-data", plot_path, "also write two-column plot data here");

    auto* cmd_simulate = app.add_subcommand("simulate", "stochastic simulation (CSV trajectory)");
    add_common(cmd_simulate, true);
    cmd_simulate->add_option("--init", init_text, "initial populations a0")->required();
    cmd_simulate->add_option("--t-end", t_end, "time horizon");
    cmd_simulate->add_option("--seed", seed, "RNG seed");

    auto* cmd_cycles = app.add_subcommand("cycles", "enumerate irreducible cycle types");
    add_common(cmd_cycles, false);
    cmd_cycles->add_option("--max-cycle-len", max_cycle_len, "cycle length bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    const ParsedNetwork parsed = parse_network(read_file(input));
    const ReactionNetwork& net = parsed.network;

    AnalysisOptions opts;
    opts.max_cycle_len = max_cycle_len;
    opts.seed = seed;

    if (*cmd_analyze) {
        const AnalysisReport report = analyze(net, opts);
        if (format == "json")
            emit(out_path, report_to_json(net, report).dump(2) + "\n");
        else
            emit(out_path, report_to_text(net, report));
        return 0;
    }

    if (*cmd_check) {
        const RateAssignment rates = resolve_rates(parsed, rates_path);
        const bool rndb = check_rndb(net, rates);
        const bool mcdb = rndb || check_mcdb(net, rates, opts);
        const auto x_star = rndb_equilibrium(net, rates);
        std::string text;
        if (format == "json") {
            nlohmann::json j{{"rndb", rndb}, {"mcdb", mcdb}};
            if (x_star) {
                std::vector<std::string> xs;
                for (const auto& v : *x_star) xs.push_back(rat_string(v));
                j["equilibrium"] = xs;
            }
            text = j.dump(2) + "\n";
        } else {
            text = std::string("RNDB: ") + (rndb ? "holds" : "fails") + "\n" +
                   "MCDB: " + (mcdb ? "holds" : "fails") + "\n";
            if (x_star) {
                text += "equilibrium:";
                for (const auto& v : *x_star) text += " " + rat_string(v);
                text += "\n";
            }
        }
        emit(out_path, text);
        return rndb ? 0 : 1;
    }

    if (*cmd_stationary) {
        const RateAssignment rates = resolve_rates(parsed, rates_path);
        Distribution dist;
        const bool birth_death = net.species_count() == 1 && net.classes().size() == 1 &&
                                 net.classes()[0].u == IntVec{1};
        if (birth_death) {
            dist = stationary_birth_death(net, rates, cap);
        } else {
            if (init_text.empty())
                fail(ErrorCode::InvalidArgument, "--init is required for this network");
            dist = stationary_rndb(net, rates, parse_init(init_text, net.species_count()), cap);
        }
        emit(out_path, distribution_to_csv(dist, net.species(), true));
        if (!plot_path.empty()) write_file_atomic(plot_path, distribution_to_plot_data(dist));
        if (dist.tail_bound > tol)
            std::cerr << "warning: truncation tail bound " << dist.tail_bound << " at cap " << cap
                      << "\n";
        return 0;
    }

    if (*cmd_simulate) {
        const RateAssignment rates = resolve_rates(parsed, rates_path);
        const State a0 = parse_init(init_text, net.species_count());
        std::string header = "t";
        for (const auto& sp : net.species()) header += "," + sp;
        header += "\n";
        if (out_path.empty()) {
            std::cout << header;
            gillespie_stream(net, rates, a0, t_end, seed, [&](double t, const State& a) {
                std::string row = fmt17(t);
                for (const auto c : a) row += "," + std::to_string(c);
                std::cout << row << "\n";
            });
        } else {
            // Stream straight to the temporary so huge trajectories never sit
            // in memory, then rename into place.
            const std::string tmp = out_path + ".tmp";
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) fail(ErrorCode::IoError, "cannot open " + tmp + " for writing");
            f << header;
            gillespie_stream(net, rates, a0, t_end, seed, [&](double t, const State& a) {
                std::string row = fmt17(t);
                for (const auto c : a) row += "," + std::to_string(c);
                row += "\n";
                f << row;
            });
            f.flush();
            if (!f) {
                std::remove(tmp.c_str());
                fail(ErrorCode::IoError, "short write to " + tmp);
            }
            f.close();
            if (std::rename(tmp.c_str(), out_path.c_str()) != 0) {
                std::remove(tmp.c_str());
                fail(ErrorCode::IoError, "cannot move " + tmp + " into place");
            }
        }
        return 0;
    }

    // cycles
    const auto cycles = enumerate_cycle_types(net, max_cycle_len);
    if (format == "json") {
        nlohmann::json j;
        j["count"] = cycles.size();
        j["cycles"] = nlohmann::json::array();
        for (const auto& cycle : cycles) {
            nlohmann::json steps = nlohmann::json::array();
            for (const auto& step : cycle.steps)
                steps.push_back({{"class", step.class_index},
                                 {"sign", step.sign},
                                 {"u", cycle_step_vector(net, step)}});
            j["cycles"].push_back(std::move(steps));
        }
        emit(out_path, j.dump(2) + "\n");
    } else {
        std::string text = std::to_string(cycles.size()) + " cycle types (length <= " +
                           std::to_string(max_cycle_len) + ")\n";
        for (const auto& cycle : cycles) {
            text += " ";
            for (const auto& step : cycle.steps)
                text += " " + vec_to_string(cycle_step_vector(net, step));
            text += "\n";
        }
        emit(out_path, text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const crnbal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
