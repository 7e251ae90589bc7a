#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "crnbal/balance.hpp"
#include "crnbal/core.hpp"
#include "crnbal/parser.hpp"

namespace crnbal {

// ---------------------------------------------------------------------------
// Distributions and trajectories
// ---------------------------------------------------------------------------

struct WeightedState {
    State state;
    double mass = 0.0;            // normalized
    std::optional<Rat> exact;     // present for closed-form distributions
};

// A probability distribution over states, sorted lexicographically by state.
// cap is the per-species population bound used to truncate the support;
// tail_bound is the mass sitting on the truncation boundary (some coordinate
// at the cap) divided by the total retained mass; ~0 means the box captured
// the distribution. Empirical distributions report cap = -1.
struct Distribution {
    std::vector<WeightedState> rows;
    std::int64_t cap = -1;
    double tail_bound = 0.0;

    double mass_at(const State& s) const;  // 0 when absent
};

// Jump trajectory: states[i] is occupied on [times[i], times[i+1]), the last
// state until t_end. times[0] == 0 and states[0] is the initial state.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    double t_end = 0.0;
    bool absorbed = false;       // total propensity hit zero before t_end
    std::uint64_t seed = 0;      // reproducibility metadata
    std::string rng = "mt19937_64";
};

// Total-variation distance between two distributions (float masses).
double total_variation(const Distribution& a, const Distribution& b);

// ---------------------------------------------------------------------------
// Deterministic (mass-action ODE) layer — floating point
// ---------------------------------------------------------------------------

// dx/dt = sum_u u * sum_i k_i(u) x^{y_i(u)}, both directions of every class.
std::vector<double> deterministic_rhs(const ReactionNetwork& net, const RateAssignment& rates,
                                      const std::vector<double>& x);

// Damped Newton from x0 > 0 with a forward-integration fallback; returns the
// steady state the iteration settles on (the one whose basin x0 belongs to,
// for stable states). Throws NoConvergence.
std::vector<double> find_positive_steady_state(const ReactionNetwork& net,
                                               const RateAssignment& rates,
                                               const std::vector<double>& x0,
                                               double tol = 1e-9, int max_iter = 500);

// Complex balance at x: for every complex y, outflow x^y * sum_{y->y'} k
// equals inflow sum_{y'->y} k x^{y'}. Float version with absolute/relative
// tolerance; exact version for rational x.
bool check_complex_balance(const ReactionNetwork& net, const RateAssignment& rates,
                           const std::vector<double>& x, double tol = 1e-9);
bool check_complex_balance_exact(const ReactionNetwork& net, const RateAssignment& rates,
                                 const std::vector<Rat>& x);

// ---------------------------------------------------------------------------
// Exact stationary distributions on truncated state spaces
// ---------------------------------------------------------------------------

// Stationary law under reaction detailed balance, on the compatibility class
// of a0 intersected with the box [0, cap]^s:
//   pi(a) proportional to (1/a!) prod_i kappa(u_i)^{alpha_i},
// kappa(u) the common channel ratio and alpha any integer decomposition of
// a - a0 over the class vectors (choice-independent under RNDB, which is
// checked first). Errors: NotDetailedBalanced, EmptyTruncation.
Distribution stationary_rndb(const ReactionNetwork& net, const RateAssignment& rates,
                             const State& a0, std::int64_t cap);

// Product-form law pi(a) proportional to x*^a / a! on the same support, valid
// under complex balance at x* (checked via check_complex_balance at the
// default tolerance; NotComplexBalanced when it fails).
Distribution stationary_anderson(const ReactionNetwork& net, const RateAssignment& rates,
                                 const std::vector<Rat>& x_star, const State& a0,
                                 std::int64_t cap);

// Birth-death closed form for one-species networks whose single class has
// reaction vector (1): pi(a) proportional to prod_{i<a} rho(i,i+1)/rho(i+1,i).
// Errors: NotBirthDeathForm, IncompleteRates.
Distribution stationary_birth_death(const ReactionNetwork& net, const RateAssignment& rates,
                                    std::int64_t cap);

// ---------------------------------------------------------------------------
// Stochastic simulation (floating point, deterministic in the seed)
// ---------------------------------------------------------------------------

// Exact stochastic simulation; waiting times by inverse-CDF exponentials from
// a seeded mt19937_64. The trajectory records every jump: memory grows with
// the jump count, so use gillespie_occupation for long horizons.
Trajectory gillespie(const ReactionNetwork& net, const RateAssignment& rates,
                     const State& a0, double t_end, std::uint64_t seed);

// Streaming variant of the very same chain (identical draws): calls
// on_state(t, a) for the initial state and after each jump, recording
// nothing. Returns whether the chain was absorbed.
bool gillespie_stream(const ReactionNetwork& net, const RateAssignment& rates, const State& a0,
                      double t_end, std::uint64_t seed,
                      const std::function<void(double, const State&)>& on_state);

// Occupation-time distribution of the very same chain (identical draws),
// streamed instead of recorded; burn_in is the initial stretch of time
// discarded (pass a negative value for the default of t_end / 10).
Distribution gillespie_occupation(const ReactionNetwork& net, const RateAssignment& rates,
                                  const State& a0, double t_end, double burn_in,
                                  std::uint64_t seed);

// Occupation-time distribution of a recorded trajectory; burn_in as above.
Distribution empirical_distribution(const Trajectory& traj, double burn_in = -1.0);

}  // namespace crnbal
