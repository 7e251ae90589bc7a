#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crnbal/algebra.hpp"
#include "crnbal/core.hpp"
#include "crnbal/parser.hpp"

namespace crnbal {

// ---------------------------------------------------------------------------
// Cycles
// ---------------------------------------------------------------------------

// One step of a reaction cycle: traverse the class with index class_index in
// the +u (sign=+1) or -u (sign=-1) direction.
struct CycleStep {
    int class_index = 0;
    int sign = +1;
};

// A cyclically ordered sequence of signed reaction vectors summing to zero.
// Stored without a base state; find_base_state anchors it in the state space.
struct ReactionCycle {
    std::vector<CycleStep> steps;

    std::size_t length() const { return steps.size(); }
};

// The signed reaction vector of step j.
IntVec cycle_step_vector(const ReactionNetwork& net, const CycleStep& step);

// All irreducible, nontrivial cycle types of length <= max_len, one
// representative per equivalence class under cyclic rotation and reversal.
// Irreducible = no proper consecutive (cyclically) subsequence sums to zero,
// equivalently all partial sums along the walk are distinct. Trivial = the
// two-step back-and-forth (u, -u). Deterministic order: by length, then by
// the rotation-canonical signed index sequence.
std::vector<ReactionCycle> enumerate_cycle_types(const ReactionNetwork& net, int max_len);

// Componentwise-minimal state (ties broken lexicographically) at which every
// transition of the cycle has positive rate for any positive rate constants.
// Throws NoBaseState if none exists in the search box.
State find_base_state(const ReactionNetwork& net, const ReactionCycle& cycle);

// Is the cycle based at a: all intermediate states nonnegative and every
// forward/backward transition structurally available?
bool cycle_based_at(const ReactionNetwork& net, const ReactionCycle& cycle, const State& base);

// ---------------------------------------------------------------------------
// Rates and the cycle functional
// ---------------------------------------------------------------------------

// Escort vector F(u, a): entry i is <(a - m)_{y_i - m}> for channel i of the
// signed class, where m is the componentwise minimum of the channel reactants
// in that direction. Entries are nonnegative; when the direction is available
// at a (some channel reactant fits under a), at least one entry is positive.
struct FVector {
    std::vector<Int> entries;
};

FVector f_vector(const ReactionNetwork& net, int class_index, int sign, const State& a);

// Markov transition rate rho(a, a + sign*u) = sum_i k_i (a)_{y_i} over the
// channels of the signed class. Exact; requires complete rates for the class.
Rat transition_rate(const ReactionNetwork& net, const RateAssignment& rates,
                    const State& a, int class_index, int sign);

// Kolmogorov cycle quotient: product over the cycle of forward over backward
// transition rates, evaluated exactly. Computed twice, once from raw
// transition rates and once in rate-escort form
//   prod_j <k(u_j), F(u_j, a_{j-1})> / <k(-u_j), F(u_j, a_{j-1})>,
// and the two values are asserted identical. Throws CycleNotBasedAtState when
// some transition has zero rate, InvalidArgument if the steps do not sum to
// zero.
Rat cycle_functional(const ReactionNetwork& net, const RateAssignment& rates,
                     const ReactionCycle& cycle, const State& base);

// ---------------------------------------------------------------------------
// Detailed-balance constraint derivation and checks
// ---------------------------------------------------------------------------

struct AnalysisOptions {
    int max_cycle_len = 6;
    int n_rate_trials = 5;   // random rate draws per candidate constraint
    int n_states = 20;       // sampled base states per cycle
    std::uint64_t seed = 20240101ull;
};

// Conditions for the deterministic system to be detailed balanced for every
// choice of equilibrium: per-class channel-ratio conditions
//   k_1(u) k_i(-u) = k_1(-u) k_i(u),  i = 2..r(u),
// plus one circuit condition per kernel basis vector of the class vectors.
ConstraintSystem rndb_constraints(const ReactionNetwork& net);

// Conditions for the Markov chain to be detailed balanced: the subset of the
// reaction conditions that the Kolmogorov cycle criterion actually forces.
// For each candidate z, rates satisfying all other conditions exactly but
// violating z are drawn (deterministically from opts.seed), and z is kept iff
// some enumerated cycle's functional differs from 1 at some sampled state.
ConstraintSystem mcdb_constraints(const ReactionNetwork& net, const AnalysisOptions& opts = {});

// Exact check of the reaction conditions at the given rates.
bool check_rndb(const ReactionNetwork& net, const RateAssignment& rates);

// Exact Kolmogorov check at the given rates: every enumerated cycle type has
// functional 1 at its base state and at opts.n_states sampled states above it.
bool check_mcdb(const ReactionNetwork& net, const RateAssignment& rates,
                const AnalysisOptions& opts = {});

// Per-channel (Whittle) detailed balance with respect to the product-form
// measure mu(a) = x*^a / a!: holds iff k_i(u)/k_i(-u) = (x*)^u for every
// channel of every class. Checked exactly, symbolically and at sampled states.
bool check_wsdb(const ReactionNetwork& net, const RateAssignment& rates,
                const std::vector<Rat>& x_star, int n_states = 10,
                std::uint64_t seed = 20240101ull);

// Positive rational equilibrium with (x*)^u = k_1(u)/k_1(-u) for every class,
// if the channel ratios are consistent and the multiplicative system has a
// rational solution (integer diagonalization plus exact roots). nullopt
// otherwise (including the RNDB-but-irrational case).
std::optional<std::vector<Rat>> rndb_equilibrium(const ReactionNetwork& net,
                                                 const RateAssignment& rates);

// ---------------------------------------------------------------------------
// Structural classification
// ---------------------------------------------------------------------------

// Sufficient structural conditions, each verified exactly; the box-quantified
// hypotheses are checked on a finite grid (box_width) and flagged as such.
struct Classification {
    // Every class has a single channel, hence reaction and Markov detailed
    // balance impose identical conditions.
    bool single_channel_equivalence = false;
    // Exactly one reaction-vector class: the chain is birth-death along u and
    // Markov detailed balance holds unconditionally.
    bool birth_death = false;
    // Every class u is outside the span of the others and its escort vector is
    // translation invariant along that span (verified on the box): Markov
    // detailed balance holds for all rate values.
    bool unconditional_mcdb = false;
    // Some class as above additionally has several channels, so rates exist
    // that are Markov detailed balanced but not reaction detailed balanced.
    bool strict_gap = false;

    std::int64_t box_width = 0;
    std::vector<int> gap_witness_classes;  // classes with >1 channel meeting the span test
};

Classification classify(const ReactionNetwork& net);

}  // namespace crnbal
