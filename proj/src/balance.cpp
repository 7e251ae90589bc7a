#include "crnbal/balance.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "crnbal/error.hpp"

namespace crnbal {

namespace {

const ReactionVectorClass& class_at(const ReactionNetwork& net, int index) {
    if (index < 0 || static_cast<std::size_t>(index) >= net.classes().size())
        fail(ErrorCode::InvalidArgument, "reaction-vector class index out of range");
    return net.classes()[static_cast<std::size_t>(index)];
}

void check_sign(int sign) {
    if (sign != 1 && sign != -1) fail(ErrorCode::InvalidArgument, "step sign must be +1 or -1");
}

// Reactant of channel i when the class is traversed in the given direction.
IntVec directed_reactant(const ReactionVectorClass& cls, int sign, std::size_t i) {
    const IntVec& y = cls.channels[i].reactant;
    return sign > 0 ? y : vec_add(y, cls.u);
}

// Rate label of channel i in the given direction.
const std::string& directed_label(const ReactionVectorClass& cls, int sign, std::size_t i) {
    return sign > 0 ? cls.channels[i].forward_label : cls.channels[i].backward_label;
}

// Partial sums s_0 = 0, s_1, ..., s_{L-1} of the step vectors; validates that
// the steps close up (sum to zero).
std::vector<IntVec> cycle_prefix_sums(const ReactionNetwork& net, const ReactionCycle& cycle) {
    if (cycle.steps.empty()) fail(ErrorCode::InvalidArgument, "empty cycle");
    std::vector<IntVec> prefix;
    prefix.reserve(cycle.length());
    IntVec sum(net.species_count(), 0);
    for (const auto& step : cycle.steps) {
        prefix.push_back(sum);
        sum = vec_add(sum, cycle_step_vector(net, step));
    }
    if (!vec_is_zero(sum)) fail(ErrorCode::InvalidArgument, "cycle steps do not sum to zero");
    return prefix;
}

// Is the signed class traversable from a: does some channel reactant fit
// under a? (The reverse transition from a + u is then available through the
// same channel, so one test covers both directions of the step.)
bool direction_available(const ReactionVectorClass& cls, int sign, const State& a) {
    for (std::size_t i = 0; i < cls.channels.size(); ++i)
        if (vec_all_ge(a, directed_reactant(cls, sign, i))) return true;
    return false;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {  // uniform-ish in [0, bound]
    return rng() % (bound + 1);
}

Rat random_positive_rational(std::mt19937_64& rng) {
    const auto num = 1 + draw(rng, 8);
    const auto den = 1 + draw(rng, 8);
    Rat r(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    r.canonicalize();
    return r;
}

State sample_state_above(std::mt19937_64& rng, const State& base, std::int64_t width) {
    State s = base;
    for (auto& c : s) c += static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(width)));
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cycles
// ---------------------------------------------------------------------------

IntVec cycle_step_vector(const ReactionNetwork& net, const CycleStep& step) {
    check_sign(step.sign);
    const auto& cls = class_at(net, step.class_index);
    return step.sign > 0 ? cls.u : vec_neg(cls.u);
}

std::vector<ReactionCycle> enumerate_cycle_types(const ReactionNetwork& net, int max_len) {
    if (max_len < 2) fail(ErrorCode::InvalidArgument, "max_len must be at least 2");
    const auto& classes = net.classes();
    const int m = static_cast<int>(classes.size());
    const std::size_t s = net.species_count();

    // Symbols encode signed classes: +(i+1) for +u_i, -(i+1) for -u_i.
    std::vector<int> symbols;
    for (int i = 0; i < m; ++i) {
        symbols.push_back(i + 1);
        symbols.push_back(-(i + 1));
    }
    std::sort(symbols.begin(), symbols.end());
    const auto symbol_vector = [&](int sym) {
        const IntVec& u = classes[static_cast<std::size_t>(std::abs(sym) - 1)].u;
        return sym > 0 ? u : vec_neg(u);
    };
    std::int64_t max_step_l1 = 0;
    for (const auto& cls : classes) {
        std::int64_t l1 = 0;
        for (auto x : cls.u) l1 += std::abs(x);
        max_step_l1 = std::max(max_step_l1, l1);
    }

    // Canonical form: lexicographically minimal among all rotations of the
    // sequence and of its reversal (reverse order, negated signs).
    const auto canonical = [](const std::vector<int>& seq) {
        std::vector<int> best;
        const auto consider = [&](std::vector<int> cand) {
            const std::size_t n = cand.size();
            for (std::size_t r = 0; r < n; ++r) {
                std::rotate(cand.begin(), cand.begin() + 1, cand.end());
                if (best.empty() || cand < best) best = cand;
            }
        };
        consider(seq);
        std::vector<int> rev(seq.rbegin(), seq.rend());
        for (auto& x : rev) x = -x;
        consider(rev);
        return best;
    };

    std::set<std::vector<int>> canon;
    std::vector<int> seq;
    std::set<IntVec> visited;
    IntVec sum(s, 0);
    visited.insert(sum);

    // DFS over signed-symbol sequences with pairwise-distinct partial sums
    // (the irreducibility criterion). Only sequences whose first symbol is
    // minimal are explored; every cycle has such a rotation.
    const std::function<void()> dfs = [&]() {
        const int depth = static_cast<int>(seq.size());
        for (int sym : symbols) {
            if (depth > 0 && sym < seq.front()) continue;
            const IntVec w = symbol_vector(sym);
            IntVec next = vec_add(sum, w);
            if (vec_is_zero(next)) {
                if (depth + 1 >= 3) {
                    seq.push_back(sym);
                    canon.insert(canonical(seq));
                    seq.pop_back();
                }
                continue;
            }
            if (depth + 1 >= max_len) continue;  // cannot close anymore
            if (visited.count(next)) continue;
            std::int64_t l1 = 0;
            for (auto x : next) l1 += std::abs(x);
            if (l1 > static_cast<std::int64_t>(max_len - depth - 1) * max_step_l1) continue;
            seq.push_back(sym);
            visited.insert(next);
            std::swap(sum, next);
            dfs();
            std::swap(sum, next);
            visited.erase(next);
            seq.pop_back();
        }
    };
    dfs();

    std::vector<std::vector<int>> ordered(canon.begin(), canon.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<ReactionCycle> out;
    out.reserve(ordered.size());
    for (const auto& c : ordered) {
        ReactionCycle cyc;
        for (int sym : c) cyc.steps.push_back({std::abs(sym) - 1, sym > 0 ? +1 : -1});
        out.push_back(std::move(cyc));
    }
    return out;
}

bool cycle_based_at(const ReactionNetwork& net, const ReactionCycle& cycle, const State& base) {
    if (base.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "state length does not match species count");
    const auto prefix = cycle_prefix_sums(net, cycle);
    for (std::size_t j = 0; j < cycle.length(); ++j) {
        const State a = vec_add(base, prefix[j]);
        if (!vec_all_nonneg(a)) return false;
        const auto& step = cycle.steps[j];
        if (!direction_available(class_at(net, step.class_index), step.sign, a)) return false;
    }
    return true;
}

State find_base_state(const ReactionNetwork& net, const ReactionCycle& cycle) {
    const auto prefix = cycle_prefix_sums(net, cycle);
    const std::size_t s = net.species_count();

    // Upper corner: large enough that every channel of every step fits, so the
    // corner itself is always a valid base.
    IntVec upper(s, 0);
    for (std::size_t j = 0; j < cycle.length(); ++j) {
        const auto& step = cycle.steps[j];
        const auto& cls = class_at(net, step.class_index);
        for (std::size_t i = 0; i < cls.channels.size(); ++i) {
            const IntVec r = directed_reactant(cls, step.sign, i);
            for (std::size_t t = 0; t < s; ++t)
                upper[t] = std::max({upper[t], r[t] - prefix[j][t], -prefix[j][t]});
        }
    }

    // Lexicographic scan of the box [0, upper]; the first hit is the
    // componentwise-minimal base with lexicographic tie-breaking, because any
    // state componentwise below a valid state is lexicographically smaller.
    State a(s, 0);
    while (true) {
        if (cycle_based_at(net, cycle, a)) return a;
        std::size_t t = s;
        while (t > 0) {
            --t;
            if (a[t] < upper[t]) {
                ++a[t];
                for (std::size_t r = t + 1; r < s; ++r) a[r] = 0;
                break;
            }
            if (t == 0) {
                fail(ErrorCode::NoBaseState, "no base state in the search box");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Rates and the cycle functional
// ---------------------------------------------------------------------------

FVector f_vector(const ReactionNetwork& net, int class_index, int sign, const State& a) {
    check_sign(sign);
    const auto& cls = class_at(net, class_index);
    if (a.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "state length does not match species count");
    const IntVec m = sign > 0 ? cls.min_reactant : vec_add(cls.min_reactant, cls.u);
    const IntVec shifted = vec_sub(a, m);
    FVector f;
    f.entries.reserve(cls.channels.size());
    for (const auto& ch : cls.channels)
        f.entries.push_back(falling_factorial(shifted, vec_sub(ch.reactant, cls.min_reactant)));
    return f;
}

Rat transition_rate(const ReactionNetwork& net, const RateAssignment& rates, const State& a,
                    int class_index, int sign) {
    check_sign(sign);
    const auto& cls = class_at(net, class_index);
    if (a.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "state length does not match species count");
    Rat total = 0;
    for (std::size_t i = 0; i < cls.channels.size(); ++i) {
        const Int ff = falling_factorial(a, directed_reactant(cls, sign, i));
        if (ff == 0) continue;
        total += rates.at(directed_label(cls, sign, i)) * Rat(ff);
    }
    return total;
}

Rat cycle_functional(const ReactionNetwork& net, const RateAssignment& rates,
                     const ReactionCycle& cycle, const State& base) {
    if (base.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "state length does not match species count");
    const auto prefix = cycle_prefix_sums(net, cycle);

    Rat raw = 1;
    for (std::size_t j = 0; j < cycle.length(); ++j) {
        const auto& step = cycle.steps[j];
        const State from = vec_add(base, prefix[j]);
        const State to = vec_add(from, cycle_step_vector(net, step));
        const Rat forward = transition_rate(net, rates, from, step.class_index, step.sign);
        const Rat backward = transition_rate(net, rates, to, step.class_index, -step.sign);
        if (forward == 0 || backward == 0)
            fail(ErrorCode::CycleNotBasedAtState,
                 "cycle transition has zero rate at " + vec_to_string(from));
        raw *= forward / backward;
    }

    // Second route: the rate-escort form, which shares one escort vector
    // between the numerator and denominator of each step.
    Rat escort = 1;
    for (std::size_t j = 0; j < cycle.length(); ++j) {
        const auto& step = cycle.steps[j];
        const State from = vec_add(base, prefix[j]);
        const auto& cls = class_at(net, step.class_index);
        const FVector f = f_vector(net, step.class_index, step.sign, from);
        Rat num = 0, den = 0;
        for (std::size_t i = 0; i < cls.channels.size(); ++i) {
            const Rat weight{f.entries[i]};
            num += rates.at(directed_label(cls, step.sign, i)) * weight;
            den += rates.at(directed_label(cls, -step.sign, i)) * weight;
        }
        escort *= num / den;
    }

    if (raw != escort)
        fail(ErrorCode::InvalidArgument,
             "internal invariant violated: the two cycle-functional forms disagree");
    return raw;
}

// ---------------------------------------------------------------------------
// Constraint derivation and checks
// ---------------------------------------------------------------------------

ConstraintSystem rndb_constraints(const ReactionNetwork& net) {
    std::vector<MonomialConstraint> gens;
    for (const auto& cls : net.classes()) {
        const auto& first = cls.channels.front();
        for (std::size_t i = 1; i < cls.channels.size(); ++i) {
            const auto& ch = cls.channels[i];
            MonomialConstraint c;
            c.exponents[first.forward_label] += 1;
            c.exponents[ch.backward_label] += 1;
            c.exponents[first.backward_label] -= 1;
            c.exponents[ch.forward_label] -= 1;
            gens.push_back(std::move(c));
        }
    }
    std::vector<IntVec> vectors;
    for (const auto& cls : net.classes()) vectors.push_back(cls.u);
    for (const auto& alpha : integer_kernel_basis(vectors)) {
        MonomialConstraint c;
        const IntVec a = to_intvec(alpha);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            c.exponents[net.classes()[i].channels.front().forward_label] += a[i];
            c.exponents[net.classes()[i].channels.front().backward_label] -= a[i];
        }
        gens.push_back(std::move(c));
    }
    return ConstraintSystem(net.rate_labels(), std::move(gens));
}

bool check_rndb(const ReactionNetwork& net, const RateAssignment& rates) {
    return rndb_constraints(net).holds(rates.values);
}

namespace {

struct CycleWithBase {
    ReactionCycle cycle;
    State base;
    std::set<std::string> labels;  // all rate labels of the classes it steps through
};

std::vector<CycleWithBase> cycles_with_bases(const ReactionNetwork& net, int max_len) {
    std::vector<CycleWithBase> out;
    for (auto& cyc : enumerate_cycle_types(net, max_len)) {
        CycleWithBase c;
        c.base = find_base_state(net, cyc);
        for (const auto& step : cyc.steps)
            for (const auto& ch : net.classes()[static_cast<std::size_t>(step.class_index)].channels) {
                c.labels.insert(ch.forward_label);
                c.labels.insert(ch.backward_label);
            }
        c.cycle = std::move(cyc);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

ConstraintSystem mcdb_constraints(const ReactionNetwork& net, const AnalysisOptions& opts) {
    const ConstraintSystem rndb = rndb_constraints(net);
    const auto& candidates = rndb.generators();
    if (candidates.empty()) return rndb;

    const auto cycles = cycles_with_bases(net, opts.max_cycle_len);
    const std::int64_t width = net.max_complex_size() + 2;
    const std::size_t n_labels = net.rate_labels().size();
    std::map<std::string, std::size_t> label_index;
    for (std::size_t j = 0; j < n_labels; ++j) label_index[net.rate_labels()[j]] = j;

    std::mt19937_64 rng(opts.seed);
    std::vector<MonomialConstraint> kept;
    for (std::size_t z = 0; z < candidates.size(); ++z) {
        // Witness cycles: those whose classes carry every label of z.
        std::vector<const CycleWithBase*> witnesses;
        for (const auto& c : cycles) {
            bool all = true;
            for (const auto& [label, e] : candidates[z].exponents)
                if (c.labels.count(label) == 0) {
                    all = false;
                    break;
                }
            if (all) witnesses.push_back(&c);
        }
        if (witnesses.empty()) continue;  // no cycle can force z

        // Parametrize the rates satisfying every candidate except z: rows of
        // the integer kernel of the remaining exponent vectors span the
        // admissible exponents, so k_j = prod_t x_t^{B[t][j]} with x_t > 0.
        std::vector<IntVec> columns(n_labels, IntVec());
        for (std::size_t other = 0; other < candidates.size(); ++other) {
            if (other == z) continue;
            IntVec dense(n_labels, 0);
            for (const auto& [label, e] : candidates[other].exponents)
                dense[label_index.at(label)] = e;
            for (std::size_t j = 0; j < n_labels; ++j) columns[j].push_back(dense[j]);
        }
        const ZMatrix basis = integer_kernel_basis(columns);

        bool necessary = false;
        for (int trial = 0; trial < opts.n_rate_trials && !necessary; ++trial) {
            RateAssignment sampled;
            std::vector<Rat> x;
            x.reserve(basis.size());
            for (std::size_t t = 0; t < basis.size(); ++t) x.push_back(random_positive_rational(rng));
            for (std::size_t j = 0; j < n_labels; ++j) {
                Rat k = 1;
                for (std::size_t t = 0; t < basis.size(); ++t) {
                    const long e = basis[t][j].get_si();
                    if (e != 0) k *= rat_pow(x[t], e);
                }
                sampled.values[net.rate_labels()[j]] = std::move(k);
            }
            if (evaluate_monomial(candidates[z].exponents, sampled.values) == 1)
                continue;  // draw failed to violate z; try again
            for (const auto* w : witnesses) {
                if (cycle_functional(net, sampled, w->cycle, w->base) != 1) {
                    necessary = true;
                    break;
                }
                for (int n = 0; n < opts.n_states && !necessary; ++n) {
                    const State a = sample_state_above(rng, w->base, width);
                    if (cycle_functional(net, sampled, w->cycle, a) != 1) necessary = true;
                }
                if (necessary) break;
            }
        }
        if (necessary) kept.push_back(candidates[z]);
    }
    return ConstraintSystem(net.rate_labels(), std::move(kept));
}

bool check_mcdb(const ReactionNetwork& net, const RateAssignment& rates,
                const AnalysisOptions& opts) {
    const std::int64_t width = net.max_complex_size() + 2;
    std::mt19937_64 rng(opts.seed);
    for (const auto& c : cycles_with_bases(net, opts.max_cycle_len)) {
        if (cycle_functional(net, rates, c.cycle, c.base) != 1) return false;
        for (int n = 0; n < opts.n_states; ++n) {
            const State a = sample_state_above(rng, c.base, width);
            if (cycle_functional(net, rates, c.cycle, a) != 1) return false;
        }
    }
    return true;
}

bool check_wsdb(const ReactionNetwork& net, const RateAssignment& rates,
                const std::vector<Rat>& x_star, int n_states, std::uint64_t seed) {
    const std::size_t s = net.species_count();
    if (x_star.size() != s)
        fail(ErrorCode::DimensionMismatch, "x* length does not match species count");
    for (const auto& x : x_star)
        if (x <= 0) fail(ErrorCode::InvalidArgument, "x* must be positive");

    // Symbolic route: every channel ratio equals the monomial (x*)^u.
    bool symbolic = true;
    for (const auto& cls : net.classes()) {
        Rat xu = 1;
        for (std::size_t t = 0; t < s; ++t)
            if (cls.u[t] != 0) xu *= rat_pow(x_star[t], cls.u[t]);
        for (const auto& ch : cls.channels)
            if (rates.at(ch.forward_label) != xu * rates.at(ch.backward_label)) symbolic = false;
    }

    // Sampled route: per-channel balance of mu(a) = (x*)^a / a! at random
    // states. Mathematically equivalent; a disagreement in the confirming
    // direction indicates an internal defect.
    const auto mu = [&](const State& a) {
        Rat m = 1;
        for (std::size_t t = 0; t < s; ++t) {
            m *= rat_pow(x_star[t], a[t]);
            m /= Rat(factorial(a[t]));
        }
        return m;
    };
    bool sampled = true;
    std::mt19937_64 rng(seed);
    const std::int64_t width = net.max_complex_size() + 3;
    for (int n = 0; n < n_states; ++n) {
        State a(s, 0);
        for (auto& c : a) c = static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(width)));
        for (const auto& cls : net.classes()) {
            const State a_next = vec_add(a, cls.u);
            for (const auto& ch : cls.channels) {
                if (!vec_all_ge(a, ch.reactant)) continue;  // both channel rates vanish
                const Rat lhs = mu(a) * rates.at(ch.forward_label) *
                                Rat(falling_factorial(a, ch.reactant));
                const Rat rhs = mu(a_next) * rates.at(ch.backward_label) *
                                Rat(falling_factorial(a_next, vec_add(ch.reactant, cls.u)));
                if (lhs != rhs) sampled = false;
            }
        }
    }
    if (symbolic && !sampled)
        fail(ErrorCode::InvalidArgument,
             "internal invariant violated: symbolic and sampled channel balance disagree");
    return symbolic && sampled;
}

namespace {

// Exact positive rational d-th root, if one exists.
std::optional<Rat> rational_root(const Rat& r, unsigned long d) {
    if (d == 1) return r;
    Int num = r.get_num(), den = r.get_den();
    Int rnum, rden;
    if (mpz_root(rnum.get_mpz_t(), num.get_mpz_t(), d) == 0) return std::nullopt;
    if (mpz_root(rden.get_mpz_t(), den.get_mpz_t(), d) == 0) return std::nullopt;
    Rat root(rnum, rden);
    root.canonicalize();
    return root;
}

}  // namespace

std::optional<std::vector<Rat>> rndb_equilibrium(const ReactionNetwork& net,
                                                 const RateAssignment& rates) {
    const auto& classes = net.classes();
    const std::size_t n = classes.size();
    const std::size_t s = net.species_count();

    // Common channel ratio per class; inconsistent ratios mean no equilibrium.
    std::vector<Rat> q;
    q.reserve(n);
    for (const auto& cls : classes) {
        const Rat ratio =
            rates.at(cls.channels.front().forward_label) / rates.at(cls.channels.front().backward_label);
        for (const auto& ch : cls.channels)
            if (rates.at(ch.forward_label) != ratio * rates.at(ch.backward_label))
                return std::nullopt;
        q.push_back(ratio);
    }

    // Solve (x*)^{u_c} = q_c multiplicatively through an integer
    // diagonalization D = P U Q: with x = prod y^{Q columns}, the system
    // becomes y_i^{D_ii} = prod_j q_j^{P_ij}.
    ZMatrix u_rows(n, ZVec(s, Int(0)));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t t = 0; t < s; ++t) u_rows[c][t] = Int(static_cast<long>(classes[c].u[t]));
    const Diagonalization dg = diagonalize(std::move(u_rows));

    std::vector<Rat> y(s, Rat(1));
    for (std::size_t i = 0; i < n; ++i) {
        Rat rhs = 1;
        for (std::size_t j = 0; j < n; ++j) {
            const long e = dg.p[i][j].get_si();
            if (e != 0) rhs *= rat_pow(q[j], e);
        }
        if (i < dg.rank) {
            long d = dg.a[i][i].get_si();
            if (d < 0) {
                d = -d;
                rhs = 1 / rhs;
            }
            const auto root = rational_root(rhs, static_cast<unsigned long>(d));
            if (!root) return std::nullopt;  // equilibrium exists but is irrational
            y[i] = *root;
        } else if (rhs != 1) {
            return std::nullopt;  // circuit conditions fail
        }
    }

    std::vector<Rat> x(s, Rat(1));
    for (std::size_t t = 0; t < s; ++t)
        for (std::size_t j = 0; j < s; ++j) {
            const long e = dg.q[t][j].get_si();
            if (e != 0) x[t] *= rat_pow(y[j], e);
        }

    for (std::size_t c = 0; c < n; ++c) {
        Rat xu = 1;
        for (std::size_t t = 0; t < s; ++t)
            if (classes[c].u[t] != 0) xu *= rat_pow(x[t], classes[c].u[t]);
        if (xu != q[c])
            fail(ErrorCode::InvalidArgument,
                 "internal invariant violated: multiplicative solve failed verification");
    }
    return x;
}

// ---------------------------------------------------------------------------
// Structural classification
// ---------------------------------------------------------------------------

Classification classify(const ReactionNetwork& net) {
    const auto& classes = net.classes();
    const std::size_t m = classes.size();
    const std::size_t s = net.species_count();

    Classification out;
    out.box_width = net.max_complex_size() + 2;
    out.single_channel_equivalence = true;
    for (const auto& cls : classes)
        if (cls.channel_count() != 1) out.single_channel_equivalence = false;
    out.birth_death = (m == 1);

    bool all_meet = true;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<IntVec> others;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) others.push_back(classes[j].u);

        // (a) u outside the span of the other class vectors.
        std::vector<IntVec> with_u = others;
        with_u.push_back(classes[i].u);
        const bool span_excluded = rational_rank(with_u) == rational_rank(others) + 1;

        // (b) escort translation invariance along that span. The escort vector
        // reads only coordinates where some channel sits above the class
        // minimum, so invariance holds exactly when every other class vector
        // vanishes on those coordinates.
        std::vector<bool> relevant(s, false);
        for (const auto& ch : classes[i].channels)
            for (std::size_t t = 0; t < s; ++t)
                if (ch.reactant[t] - classes[i].min_reactant[t] >= 1) relevant[t] = true;
        bool invariant = true;
        for (const auto& v : others)
            for (std::size_t t = 0; t < s; ++t)
                if (relevant[t] && v[t] != 0) invariant = false;

        // Confirm the invariance verdict on the finite box the record
        // advertises: states in [0, box_width]^s against lattice offsets built
        // from the other class vectors.
        if (s <= 4 && others.size() <= 4) {
            bool box_ok = true;
            std::vector<IntVec> offsets;
            std::vector<std::int64_t> coeff(others.size(), -3);
            while (true) {
                IntVec v(s, 0);
                for (std::size_t j = 0; j < others.size(); ++j)
                    for (std::size_t t = 0; t < s; ++t) v[t] += coeff[j] * others[j][t];
                bool inside = !vec_is_zero(v);
                for (std::size_t t = 0; t < s && inside; ++t)
                    if (std::abs(v[t]) > out.box_width) inside = false;
                if (inside) offsets.push_back(std::move(v));
                std::size_t j = 0;
                while (j < others.size() && coeff[j] == 3) coeff[j++] = -3;
                if (j == others.size()) break;
                ++coeff[j];
            }
            State a(s, 0);
            while (box_ok) {
                for (const auto& v : offsets) {
                    for (int sign : {+1, -1}) {
                        const FVector lhs = f_vector(net, static_cast<int>(i), sign, a);
                        const FVector rhs =
                            f_vector(net, static_cast<int>(i), sign, vec_add(a, v));
                        if (lhs.entries != rhs.entries) {
                            box_ok = false;
                            break;
                        }
                    }
                    if (!box_ok) break;
                }
                std::size_t t = s;
                bool advanced = false;
                while (t > 0) {
                    --t;
                    if (a[t] < out.box_width) {
                        ++a[t];
                        for (std::size_t r = t + 1; r < s; ++r) a[r] = 0;
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) break;
            }
            if (box_ok != invariant)
                fail(ErrorCode::InvalidArgument,
                     "internal invariant violated: box check contradicts the exact "
                     "invariance criterion");
        }

        const bool meets = span_excluded && invariant;
        if (!meets) all_meet = false;
        if (meets && classes[i].channel_count() > 1)
            out.gap_witness_classes.push_back(static_cast<int>(i));
    }
    out.unconditional_mcdb = all_meet;
    out.strict_gap = !out.gap_witness_classes.empty();
    return out;
}

}  // namespace crnbal
