#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "crnbal/balance.hpp"
#include "crnbal/stochastic.hpp"

namespace crnbal {

// Full analysis of a network: both constraint systems, the structural
// classification and the implication verdict between them.
struct AnalysisReport {
    ConstraintSystem rndb;
    ConstraintSystem mcdb;
    Classification classification;
    std::size_t cycle_type_count = 0;
    std::string verdict;  // "RNDB ⟺ MCDB" or "RNDB ⟹ MCDB"
};

AnalysisReport analyze(const ReactionNetwork& net, const AnalysisOptions& opts = {});

// JSON renderings. Constraint systems follow the documented schema:
//   {"constraints": [{"k1": 1, "k-1": -1, ...}, ...],
//    "canonical_basis": [[...], ...],
//    "label_order": [...]}
nlohmann::json constraint_system_to_json(const ConstraintSystem& sys);
nlohmann::json classification_to_json(const Classification& c);
nlohmann::json report_to_json(const ReactionNetwork& net, const AnalysisReport& report);
std::string report_to_text(const ReactionNetwork& net, const AnalysisReport& report);

// CSV renderings.
//   distribution: header state_<sp1>,...,state_<spN>,mass[,mass_exact],
//                 masses with 17 significant digits, exact masses as "p/q".
//   trajectory:   header t,<sp1>,...,<spN>.
std::string distribution_to_csv(const Distribution& dist,
                                const std::vector<std::string>& species,
                                bool include_exact);
std::string trajectory_to_csv(const Trajectory& traj, const std::vector<std::string>& species);

// Two-column "index mass" rendering for external plotting tools (the index is
// the species count for one-species networks, the row rank otherwise).
std::string distribution_to_plot_data(const Distribution& dist);

// Write-to-temporary-then-rename, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace crnbal
