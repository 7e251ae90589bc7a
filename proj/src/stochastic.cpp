#include "crnbal/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "crnbal/error.hpp"

namespace crnbal {

namespace {

struct DirectedReaction {
    IntVec reactant;
    IntVec change;
    std::string label;
};

std::vector<DirectedReaction> directed_reactions(const ReactionNetwork& net) {
    std::vector<DirectedReaction> out;
    out.reserve(2 * net.reactions().size());
    for (const auto& rxn : net.reactions()) {
        out.push_back({rxn.reactant, vec_sub(rxn.product, rxn.reactant), rxn.forward_label});
        out.push_back({rxn.product, vec_sub(rxn.reactant, rxn.product), rxn.backward_label});
    }
    return out;
}

void check_state(const ReactionNetwork& net, const State& a) {
    if (a.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "state length does not match species count");
    if (!vec_all_nonneg(a)) fail(ErrorCode::InvalidArgument, "state must be nonnegative");
}

double falling_factorial_double(const State& a, const IntVec& y) {
    double p = 1.0;
    for (std::size_t t = 0; t < a.size(); ++t)
        for (std::int64_t l = 0; l < y[t]; ++l) {
            if (a[t] - l <= 0) return 0.0;
            p *= static_cast<double>(a[t] - l);
        }
    return p;
}

double monomial(const std::vector<double>& x, const IntVec& y) {
    double p = 1.0;
    for (std::size_t t = 0; t < x.size(); ++t)
        for (std::int64_t l = 0; l < y[t]; ++l) p *= x[t];
    return p;
}

// d/dx_j of x^y, written as a product so zero coordinates stay harmless.
double monomial_partial(const std::vector<double>& x, const IntVec& y, std::size_t j) {
    if (y[j] == 0) return 0.0;
    double p = static_cast<double>(y[j]);
    for (std::size_t t = 0; t < x.size(); ++t) {
        const std::int64_t e = y[t] - (t == j ? 1 : 0);
        for (std::int64_t l = 0; l < e; ++l) p *= x[t];
    }
    return p;
}

double inf_norm(const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n = std::max(n, std::abs(x));
    return n;
}

// Gaussian elimination with partial pivoting; false when singular.
bool solve_linear(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>& out) {
    const std::size_t n = rhs.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[best][c])) best = r;
        if (std::abs(m[best][c]) < 1e-12) return false;
        std::swap(m[c], m[best]);
        std::swap(rhs[c], rhs[best]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double v = rhs[r];
        for (std::size_t k = r + 1; k < n; ++k) v -= m[r][k] * out[k];
        out[r] = v / m[r][r];
    }
    return true;
}

// The one simulation loop behind gillespie and gillespie_occupation; both must
// consume identical draws, so they share it through an interval callback
// (state, entry time, exit time). Returns true when the chain got absorbed.
template <typename Interval>
bool simulate_chain(const ReactionNetwork& net, const RateAssignment& rates, const State& a0,
                    double t_end, std::uint64_t seed, Interval&& interval) {
    check_state(net, a0);
    if (!(t_end > 0)) fail(ErrorCode::InvalidArgument, "t_end must be positive");
    auto reactions = directed_reactions(net);
    std::vector<double> k;
    k.reserve(reactions.size());
    for (const auto& r : reactions) k.push_back(rat_double(rates.at(r.label)));

    std::mt19937_64 rng(seed);
    const auto uniform01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    State a = a0;
    double t = 0.0;
    std::vector<double> props(reactions.size(), 0.0);
    while (true) {
        double total = 0.0;
        for (std::size_t j = 0; j < reactions.size(); ++j) {
            props[j] = k[j] * falling_factorial_double(a, reactions[j].reactant);
            total += props[j];
        }
        if (total <= 0.0) {
            interval(a, t, t_end);
            return true;
        }
        const double tau = -std::log1p(-uniform01()) / total;
        if (t + tau >= t_end) {
            interval(a, t, t_end);
            return false;
        }
        const double t_next = t + tau;
        double target = uniform01() * total;
        std::size_t j = 0;
        for (; j + 1 < reactions.size(); ++j) {
            if (target < props[j]) break;
            target -= props[j];
        }
        interval(a, t, t_next);
        a = vec_add(a, reactions[j].change);
        t = t_next;
    }
}

// Occupation-time accumulator shared by the streamed and the recorded route,
// so the two produce bit-identical distributions for the same jump sequence.
struct OccupationSink {
    double burn = 0.0;
    double horizon = 0.0;
    double recorded = 0.0;
    std::map<State, double> mass;

    void add(const State& s, double from, double to) {
        const double lo = std::max(from, burn);
        const double hi = std::min(to, horizon);
        if (hi <= lo) return;
        mass[s] += hi - lo;
        recorded += hi - lo;
    }

    Distribution finish() const {
        if (recorded <= 0.0)
            fail(ErrorCode::InvalidArgument, "burn-in consumed the whole trajectory");
        Distribution d;
        d.cap = -1;
        d.tail_bound = 0.0;
        for (const auto& [state, m] : mass) d.rows.push_back({state, m / recorded, std::nullopt});
        return d;
    }
};

double resolve_burn_in(double burn_in, double t_end) {
    if (burn_in < 0.0) return 0.1 * t_end;
    if (burn_in >= t_end) fail(ErrorCode::InvalidArgument, "burn-in must be below the horizon");
    return burn_in;
}

// Lexicographic odometer over the box [0, cap]^s; calls visit(a) for each box
// state belonging to the compatibility class of a0, in lexicographic order.
template <typename Visit>
void for_each_class_state(const ReactionNetwork& net, const State& a0, std::int64_t cap,
                          Visit&& visit) {
    check_state(net, a0);
    if (cap < 0) fail(ErrorCode::InvalidArgument, "cap must be nonnegative");
    const std::size_t s = net.species_count();
    ZMatrix basis;
    for (const auto& cls : net.classes()) basis.push_back(to_zvec(cls.u));
    basis = hnf_rows(std::move(basis));

    State a(s, 0);
    while (true) {
        if (auto coeff = lattice_coefficients(basis, to_zvec(vec_sub(a, a0)))) visit(a, *coeff);
        std::size_t t = s;
        bool advanced = false;
        while (t > 0) {
            --t;
            if (a[t] < cap) {
                ++a[t];
                for (std::size_t r = t + 1; r < s; ++r) a[r] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

Distribution normalize_exact(std::vector<std::pair<State, Rat>> weights, std::int64_t cap) {
    if (weights.empty())
        fail(ErrorCode::EmptyTruncation, "no states of the compatibility class fit under the cap");
    Rat total = 0;
    for (const auto& [state, w] : weights) total += w;
    Rat shell = 0;
    for (const auto& [state, w] : weights)
        if (std::any_of(state.begin(), state.end(), [cap](auto c) { return c == cap; }))
            shell += w;
    Distribution d;
    d.cap = cap;
    d.tail_bound = rat_double(shell / total);
    d.rows.reserve(weights.size());
    for (auto& [state, w] : weights) {
        Rat mass = w / total;
        const double approx = rat_double(mass);
        d.rows.push_back({std::move(state), approx, std::move(mass)});
    }
    return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Distribution utilities
// ---------------------------------------------------------------------------

double Distribution::mass_at(const State& s) const {
    const auto it = std::lower_bound(rows.begin(), rows.end(), s,
                                     [](const WeightedState& w, const State& x) {
                                         return w.state < x;
                                     });
    if (it == rows.end() || it->state != s) return 0.0;
    return it->mass;
}

double total_variation(const Distribution& a, const Distribution& b) {
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.rows.size() || j < b.rows.size()) {
        if (j == b.rows.size() || (i < a.rows.size() && a.rows[i].state < b.rows[j].state)) {
            sum += std::abs(a.rows[i].mass);
            ++i;
        } else if (i == a.rows.size() || b.rows[j].state < a.rows[i].state) {
            sum += std::abs(b.rows[j].mass);
            ++j;
        } else {
            sum += std::abs(a.rows[i].mass - b.rows[j].mass);
            ++i;
            ++j;
        }
    }
    return 0.5 * sum;
}

// ---------------------------------------------------------------------------
// Deterministic layer
// ---------------------------------------------------------------------------

std::vector<double> deterministic_rhs(const ReactionNetwork& net, const RateAssignment& rates,
                                      const std::vector<double>& x) {
    if (x.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "x length does not match species count");
    std::vector<double> f(x.size(), 0.0);
    for (const auto& r : directed_reactions(net)) {
        const double rate = rat_double(rates.at(r.label)) * monomial(x, r.reactant);
        for (std::size_t t = 0; t < x.size(); ++t) f[t] += rate * static_cast<double>(r.change[t]);
    }
    return f;
}

std::vector<double> find_positive_steady_state(const ReactionNetwork& net,
                                               const RateAssignment& rates,
                                               const std::vector<double>& x0, double tol,
                                               int max_iter) {
    const std::size_t s = net.species_count();
    if (x0.size() != s) fail(ErrorCode::DimensionMismatch, "x0 length does not match species count");
    for (double v : x0)
        if (!(v > 0)) fail(ErrorCode::InvalidArgument, "x0 must be positive");
    if (!(tol > 0)) fail(ErrorCode::InvalidArgument, "tol must be positive");

    const auto reactions = directed_reactions(net);
    std::vector<double> k;
    for (const auto& r : reactions) k.push_back(rat_double(rates.at(r.label)));
    const auto jacobian = [&](const std::vector<double>& x) {
        std::vector<std::vector<double>> jac(s, std::vector<double>(s, 0.0));
        for (std::size_t j = 0; j < reactions.size(); ++j)
            for (std::size_t col = 0; col < s; ++col) {
                const double d = k[j] * monomial_partial(x, reactions[j].reactant, col);
                if (d == 0.0) continue;
                for (std::size_t row = 0; row < s; ++row)
                    jac[row][col] += d * static_cast<double>(reactions[j].change[row]);
            }
        return jac;
    };

    std::vector<double> x = x0;
    std::vector<double> fx = deterministic_rhs(net, rates, x);
    for (int iter = 0; iter < max_iter; ++iter) {
        const double norm = inf_norm(fx);
        if (norm <= tol) return x;

        bool stepped = false;
        std::vector<double> rhs(s);
        for (std::size_t t = 0; t < s; ++t) rhs[t] = -fx[t];
        std::vector<double> delta;
        if (solve_linear(jacobian(x), rhs, delta)) {
            double lambda = 1.0;
            for (int h = 0; h < 40 && !stepped; ++h) {
                std::vector<double> xn(s);
                bool positive = true;
                for (std::size_t t = 0; t < s; ++t) {
                    xn[t] = x[t] + lambda * delta[t];
                    if (!(xn[t] > 0)) positive = false;
                }
                if (positive) {
                    auto fn = deterministic_rhs(net, rates, xn);
                    if (inf_norm(fn) < norm) {
                        x = std::move(xn);
                        fx = std::move(fn);
                        stepped = true;
                    }
                }
                lambda *= 0.5;
            }
        }
        if (!stepped) {
            // Forward-integration fallback: follow the vector field with a
            // positivity-preserving step.
            double h = 0.1 * (1.0 + inf_norm(x)) / (1.0 + norm);
            for (int halvings = 0; halvings < 60; ++halvings) {
                bool positive = true;
                for (std::size_t t = 0; t < s; ++t)
                    if (!(x[t] + h * fx[t] > 0)) positive = false;
                if (positive) break;
                h *= 0.5;
            }
            for (std::size_t t = 0; t < s; ++t) x[t] += h * fx[t];
            fx = deterministic_rhs(net, rates, x);
        }
    }
    fail(ErrorCode::NoConvergence, "steady-state search did not converge");
}

namespace {

std::vector<Complex> all_complexes(const ReactionNetwork& net) {
    std::set<Complex> seen;
    for (const auto& rxn : net.reactions()) {
        seen.insert(rxn.reactant);
        seen.insert(rxn.product);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

bool check_complex_balance(const ReactionNetwork& net, const RateAssignment& rates,
                           const std::vector<double>& x, double tol) {
    if (x.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "x length does not match species count");
    for (double v : x)
        if (!(v > 0)) fail(ErrorCode::InvalidArgument, "x must be positive");
    const auto reactions = directed_reactions(net);
    for (const auto& y : all_complexes(net)) {
        double outflow = 0.0, inflow = 0.0;
        for (const auto& r : reactions) {
            const double rate = rat_double(rates.at(r.label));
            if (r.reactant == y) outflow += rate * monomial(x, y);
            if (vec_add(r.reactant, r.change) == y) inflow += rate * monomial(x, r.reactant);
        }
        const double scale = std::max({1.0, std::abs(outflow), std::abs(inflow)});
        if (std::abs(outflow - inflow) > tol * scale) return false;
    }
    return true;
}

bool check_complex_balance_exact(const ReactionNetwork& net, const RateAssignment& rates,
                                 const std::vector<Rat>& x) {
    if (x.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "x length does not match species count");
    for (const auto& v : x)
        if (v <= 0) fail(ErrorCode::InvalidArgument, "x must be positive");
    const auto mono = [&](const Complex& y) {
        Rat p = 1;
        for (std::size_t t = 0; t < x.size(); ++t)
            if (y[t] != 0) p *= rat_pow(x[t], y[t]);
        return p;
    };
    const auto reactions = directed_reactions(net);
    for (const auto& y : all_complexes(net)) {
        Rat outflow = 0, inflow = 0;
        for (const auto& r : reactions) {
            if (r.reactant == y) outflow += rates.at(r.label) * mono(y);
            if (vec_add(r.reactant, r.change) == y) inflow += rates.at(r.label) * mono(r.reactant);
        }
        if (outflow != inflow) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Exact stationary distributions
// ---------------------------------------------------------------------------

Distribution stationary_rndb(const ReactionNetwork& net, const RateAssignment& rates,
                             const State& a0, std::int64_t cap) {
    if (!check_rndb(net, rates))
        fail(ErrorCode::NotDetailedBalanced, "rates do not satisfy the reaction conditions");

    // Ratio per class, and the ratio monomial per Hermite basis row of the
    // class lattice, so each state's weight follows from its coefficients.
    std::vector<IntVec> vectors;
    std::vector<Rat> ratios;
    for (const auto& cls : net.classes()) {
        vectors.push_back(cls.u);
        ratios.push_back(rates.at(cls.channels.front().forward_label) /
                         rates.at(cls.channels.front().backward_label));
    }
    std::vector<IntVec> basis_rows = stoichiometric_lattice_basis(net);
    std::vector<Rat> lambda;
    for (const auto& row : basis_rows) {
        const ZVec gamma = solve_integer_combination(vectors, row);
        Rat l = 1;
        for (std::size_t c = 0; c < gamma.size(); ++c) {
            const long e = gamma[c].get_si();
            if (e != 0) l *= rat_pow(ratios[c], e);
        }
        lambda.push_back(std::move(l));
    }

    std::map<std::pair<std::size_t, long>, Rat> power_cache;
    const auto lambda_pow = [&](std::size_t t, long e) {
        const auto key = std::make_pair(t, e);
        auto it = power_cache.find(key);
        if (it == power_cache.end())
            it = power_cache.emplace(key, rat_pow(lambda[t], e)).first;
        return it->second;
    };

    std::vector<std::pair<State, Rat>> weights;
    for_each_class_state(net, a0, cap, [&](const State& a, const ZVec& coeff) {
        Rat w = 1;
        for (std::size_t t = 0; t < coeff.size(); ++t) {
            const long e = coeff[t].get_si();
            if (e != 0) w *= lambda_pow(t, e);
        }
        for (const auto c : a) w /= Rat(factorial(c));
        weights.emplace_back(a, std::move(w));
    });
    return normalize_exact(std::move(weights), cap);
}

Distribution stationary_anderson(const ReactionNetwork& net, const RateAssignment& rates,
                                 const std::vector<Rat>& x_star, const State& a0,
                                 std::int64_t cap) {
    if (x_star.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "x* length does not match species count");
    for (const auto& v : x_star)
        if (v <= 0) fail(ErrorCode::InvalidArgument, "x* must be positive");
    std::vector<double> xd;
    for (const auto& v : x_star) xd.push_back(rat_double(v));
    if (!check_complex_balance(net, rates, xd))
        fail(ErrorCode::NotComplexBalanced, "x* is not a complex-balanced equilibrium");

    std::vector<std::pair<State, Rat>> weights;
    for_each_class_state(net, a0, cap, [&](const State& a, const ZVec&) {
        Rat w = 1;
        for (std::size_t t = 0; t < a.size(); ++t) {
            if (a[t] != 0) w *= rat_pow(x_star[t], a[t]);
            w /= Rat(factorial(a[t]));
        }
        weights.emplace_back(a, std::move(w));
    });
    return normalize_exact(std::move(weights), cap);
}

Distribution stationary_birth_death(const ReactionNetwork& net, const RateAssignment& rates,
                                    std::int64_t cap) {
    if (net.species_count() != 1 || net.classes().size() != 1 || net.classes()[0].u != IntVec{1})
        fail(ErrorCode::NotBirthDeathForm,
             "needs a one-species network whose single reaction vector is +1");
    if (cap < 0) fail(ErrorCode::InvalidArgument, "cap must be nonnegative");

    std::vector<std::pair<State, Rat>> weights;
    Rat w = 1;
    weights.emplace_back(State{0}, w);
    for (std::int64_t a = 0; a < cap; ++a) {
        const Rat birth = transition_rate(net, rates, State{a}, 0, +1);
        const Rat death = transition_rate(net, rates, State{a + 1}, 0, -1);
        if (death == 0)
            fail(ErrorCode::NotBirthDeathForm,
                 "chain has no transition between " + std::to_string(a) + " and " +
                     std::to_string(a + 1));
        w *= birth / death;
        weights.emplace_back(State{a + 1}, w);
    }
    return normalize_exact(std::move(weights), cap);
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

Trajectory gillespie(const ReactionNetwork& net, const RateAssignment& rates, const State& a0,
                     double t_end, std::uint64_t seed) {
    Trajectory traj;
    traj.t_end = t_end;
    traj.seed = seed;
    traj.absorbed = simulate_chain(net, rates, a0, t_end, seed,
                                   [&](const State& s, double from, double) {
                                       traj.states.push_back(s);
                                       traj.times.push_back(from);
                                   });
    return traj;
}

bool gillespie_stream(const ReactionNetwork& net, const RateAssignment& rates, const State& a0,
                      double t_end, std::uint64_t seed,
                      const std::function<void(double, const State&)>& on_state) {
    return simulate_chain(net, rates, a0, t_end, seed,
                          [&](const State& s, double from, double) { on_state(from, s); });
}

Distribution gillespie_occupation(const ReactionNetwork& net, const RateAssignment& rates,
                                  const State& a0, double t_end, double burn_in,
                                  std::uint64_t seed) {
    OccupationSink sink;
    sink.burn = resolve_burn_in(burn_in, t_end);
    sink.horizon = t_end;
    simulate_chain(net, rates, a0, t_end, seed,
                   [&](const State& s, double from, double to) { sink.add(s, from, to); });
    return sink.finish();
}

Distribution empirical_distribution(const Trajectory& traj, double burn_in) {
    if (traj.times.empty() || traj.states.size() != traj.times.size())
        fail(ErrorCode::InvalidArgument, "empty or inconsistent trajectory");
    OccupationSink sink;
    sink.burn = resolve_burn_in(burn_in, traj.t_end);
    sink.horizon = traj.t_end;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const double to = (i + 1 < traj.times.size()) ? traj.times[i + 1] : traj.t_end;
        sink.add(traj.states[i], traj.times[i], to);
    }
    return sink.finish();
}

}  // namespace crnbal
