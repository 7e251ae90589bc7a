#include "crnbal/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "crnbal/error.hpp"

namespace crnbal {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return nlohmann::json(v.get_si());
    return nlohmann::json(v.get_str());
}

std::string render_system(const ConstraintSystem& sys, const std::string& indent) {
    if (sys.generators().empty()) return indent + "(none)\n";
    std::string out;
    for (const auto& c : sys.generators()) out += indent + c.render() + "\n";
    return out;
}

}  // namespace

AnalysisReport analyze(const ReactionNetwork& net, const AnalysisOptions& opts) {
    AnalysisReport report;
    report.rndb = rndb_constraints(net);
    report.mcdb = mcdb_constraints(net, opts);
    report.classification = classify(net);
    report.cycle_type_count = enumerate_cycle_types(net, opts.max_cycle_len).size();
    report.verdict = report.mcdb.equals(report.rndb) ? "RNDB ⟺ MCDB" : "RNDB ⟹ MCDB";
    return report;
}

nlohmann::json constraint_system_to_json(const ConstraintSystem& sys) {
    nlohmann::json j;
    j["label_order"] = sys.label_order();
    j["constraints"] = nlohmann::json::array();
    for (const auto& c : sys.generators()) {
        nlohmann::json entry = nlohmann::json::object();
        for (const auto& [label, e] : c.exponents) entry[label] = e;
        j["constraints"].push_back(std::move(entry));
    }
    j["canonical_basis"] = nlohmann::json::array();
    for (const auto& row : sys.canonical_basis()) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const auto& v : row) jrow.push_back(int_to_json(v));
        j["canonical_basis"].push_back(std::move(jrow));
    }
    return j;
}

nlohmann::json classification_to_json(const Classification& c) {
    return nlohmann::json{{"single_channel_equivalence", c.single_channel_equivalence},
                          {"birth_death", c.birth_death},
                          {"unconditional_mcdb", c.unconditional_mcdb},
                          {"strict_gap", c.strict_gap},
                          {"box_width", c.box_width},
                          {"gap_witness_classes", c.gap_witness_classes}};
}

nlohmann::json report_to_json(const ReactionNetwork& net, const AnalysisReport& report) {
    nlohmann::json j;
    j["species"] = net.species();
    j["reactions"] = net.reactions().size();
    j["classes"] = nlohmann::json::array();
    for (const auto& cls : net.classes())
        j["classes"].push_back({{"u", cls.u}, {"channels", cls.channels.size()}});
    j["cycle_types"] = report.cycle_type_count;
    j["classification"] = classification_to_json(report.classification);
    j["rndb"] = constraint_system_to_json(report.rndb);
    j["mcdb"] = constraint_system_to_json(report.mcdb);
    j["verdict"] = report.verdict;
    return j;
}

std::string report_to_text(const ReactionNetwork& net, const AnalysisReport& report) {
    std::string out;
    out += "network: " + std::to_string(net.species_count()) + " species, " +
           std::to_string(net.reactions().size()) + " reversible reactions, " +
           std::to_string(net.classes().size()) + " reaction-vector classes\n";
    for (std::size_t c = 0; c < net.classes().size(); ++c) {
        const auto& cls = net.classes()[c];
        out += "  class " + std::to_string(c) + ": u = " + vec_to_string(cls.u) + ", " +
               std::to_string(cls.channels.size()) +
               (cls.channels.size() == 1 ? " channel\n" : " channels\n");
    }
    const auto& cl = report.classification;
    const auto flag = [](bool b) { return b ? "yes" : "no"; };
    out += "classification:\n";
    out += std::string("  single-channel equivalence: ") + flag(cl.single_channel_equivalence) +
           "\n";
    out += std::string("  birth-death: ") + flag(cl.birth_death) + "\n";
    out += std::string("  unconditional MCDB: ") + flag(cl.unconditional_mcdb) + "\n";
    out += std::string("  strict RNDB/MCDB gap: ") + flag(cl.strict_gap);
    if (!cl.gap_witness_classes.empty()) {
        out += " (witness classes:";
        for (int c : cl.gap_witness_classes) out += " " + std::to_string(c);
        out += ")";
    }
    out += "\n";
    out += "cycle types: " + std::to_string(report.cycle_type_count) + "\n";
    out += "RNDB constraints (rank " + std::to_string(report.rndb.rank()) + "):\n";
    out += render_system(report.rndb, "  ");
    out += "MCDB constraints (rank " + std::to_string(report.mcdb.rank()) + "):\n";
    out += render_system(report.mcdb, "  ");
    out += "verdict: " + report.verdict + "\n";
    return out;
}

std::string distribution_to_csv(const Distribution& dist,
                                const std::vector<std::string>& species, bool include_exact) {
    std::string out;
    for (const auto& sp : species) out += "state_" + sp + ",";
    out += "mass";
    if (include_exact) out += ",mass_exact";
    out += "\n";
    for (const auto& row : dist.rows) {
        if (row.state.size() != species.size())
            fail(ErrorCode::DimensionMismatch, "state length does not match species list");
        for (const auto c : row.state) out += std::to_string(c) + ",";
        out += fmt17(row.mass);
        if (include_exact) {
            out += ",";
            if (row.exact) out += rat_string(*row.exact);
        }
        out += "\n";
    }
    return out;
}

std::string trajectory_to_csv(const Trajectory& traj, const std::vector<std::string>& species) {
    std::string out = "t";
    for (const auto& sp : species) out += "," + sp;
    out += "\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        if (traj.states[i].size() != species.size())
            fail(ErrorCode::DimensionMismatch, "state length does not match species list");
        out += fmt17(traj.times[i]);
        for (const auto c : traj.states[i]) out += "," + std::to_string(c);
        out += "\n";
    }
    return out;
}

std::string distribution_to_plot_data(const Distribution& dist) {
    const bool scalar = std::all_of(dist.rows.begin(), dist.rows.end(),
                                    [](const WeightedState& r) { return r.state.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < dist.rows.size(); ++i) {
        const auto index = scalar ? dist.rows[i].state[0] : static_cast<std::int64_t>(i);
        out += std::to_string(index) + " " + fmt17(dist.rows[i].mass) + "\n";
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) fail(ErrorCode::IoError, "cannot open " + tmp + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            std::remove(tmp.c_str());
            fail(ErrorCode::IoError, "short write to " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        fail(ErrorCode::IoError, "cannot move " + tmp + " into place");
    }
}

}  // namespace crnbal
