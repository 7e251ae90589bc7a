#pragma once

// Shared helpers for the unit and acceptance tests: data-file loading, an
// error-code matcher, and a small random-network generator used by the
// property suites.

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crnbal/balance.hpp"
#include "crnbal/core.hpp"
#include "crnbal/error.hpp"
#include "crnbal/parser.hpp"
#include "crnbal/rational.hpp"

#ifndef CRNBAL_DATA_DIR
#define CRNBAL_DATA_DIR "data"
#endif

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(CRNBAL_DATA_DIR) + "/" + name;
}

inline crnbal::ParsedNetwork load_net(const std::string& name) {
    return crnbal::parse_network(read_file(data_path(name)));
}

// Runs fn, expecting a crnbal::Error with the given code; returns true and
// stores the message when it matched.
template <typename Fn>
bool throws_code(Fn&& fn, crnbal::ErrorCode expected, std::string* message = nullptr) {
    try {
        fn();
    } catch (const crnbal::Error& e) {
        if (message) *message = e.what();
        return e.code() == expected;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Random reversible networks and rate assignments for the property suites
// ---------------------------------------------------------------------------

inline std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    // Fixed-width draw independent of library implementation details.
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline crnbal::Rat rand_rat(std::mt19937_64& rng, std::int64_t max_num = 12,
                            std::int64_t max_den = 12) {
    crnbal::Rat q(rand_int(rng, 1, max_num), rand_int(rng, 1, max_den));
    q.canonicalize();  // mpq arithmetic and comparisons require canonical form
    return q;
}

inline crnbal::IntVec rand_complex(std::mt19937_64& rng, std::size_t species, std::int64_t max_coeff,
                                   std::int64_t max_total) {
    crnbal::IntVec y(species, 0);
    std::int64_t total = 0;
    for (auto& c : y) {
        std::int64_t room = max_total - total;
        if (room <= 0) break;
        c = rand_int(rng, 0, std::min(max_coeff, room));
        total += c;
    }
    return y;
}

// A random reversible network with up to `max_pairs` reactions over at most
// `max_species` species. Regenerates until validation passes (no self loops,
// no orphan species, no duplicate labels by construction).
inline crnbal::ReactionNetwork random_network(std::mt19937_64& rng, std::size_t max_species = 3,
                                              std::size_t max_pairs = 4) {
    for (;;) {
        std::size_t s = static_cast<std::size_t>(rand_int(rng, 1, static_cast<std::int64_t>(max_species)));
        std::size_t n = static_cast<std::size_t>(rand_int(rng, 1, static_cast<std::int64_t>(max_pairs)));
        std::vector<std::string> species;
        for (std::size_t j = 0; j < s; ++j) species.push_back(std::string(1, static_cast<char>('A' + j)));
        std::vector<crnbal::ReversibleReaction> reactions;
        for (std::size_t i = 0; i < n; ++i) {
            crnbal::IntVec y = rand_complex(rng, s, 2, 3);
            crnbal::IntVec yp = rand_complex(rng, s, 2, 3);
            reactions.push_back({y, yp, "k" + std::to_string(i + 1), "k-" + std::to_string(i + 1)});
        }
        try {
            return crnbal::ReactionNetwork::build(species, reactions);
        } catch (const crnbal::Error&) {
            continue;  // self loop or orphan species; draw again
        }
    }
}

// Arbitrary positive rational rates for every label (generically violates
// every balance condition).
inline crnbal::RateAssignment random_rates(std::mt19937_64& rng, const crnbal::ReactionNetwork& net) {
    crnbal::RateAssignment rates;
    for (const auto& label : net.rate_labels()) rates.values[label] = rand_rat(rng);
    return rates;
}

// Rates satisfying reaction-network detailed balance by construction: pick a
// positive rational x*, then force k_i(-u) = k_i(u) / (x*)^u for every channel
// of every class. Returns the witness equilibrium through x_star.
inline crnbal::RateAssignment rndb_rates(std::mt19937_64& rng, const crnbal::ReactionNetwork& net,
                                         std::vector<crnbal::Rat>* x_star = nullptr) {
    std::vector<crnbal::Rat> x;
    for (std::size_t j = 0; j < net.species_count(); ++j) x.push_back(rand_rat(rng, 6, 6));
    crnbal::RateAssignment rates;
    for (const auto& cls : net.classes()) {
        crnbal::Rat xu(1);
        for (std::size_t j = 0; j < cls.u.size(); ++j) xu *= crnbal::rat_pow(x[j], cls.u[j]);
        for (const auto& ch : cls.channels) {
            crnbal::Rat fwd = rand_rat(rng);
            rates.values[ch.forward_label] = fwd;
            rates.values[ch.backward_label] = fwd / xu;
        }
    }
    if (x_star) *x_star = x;
    return rates;
}

}  // namespace testutil
