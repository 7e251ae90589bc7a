#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "crnbal/balance.hpp"
#include "crnbal/error.hpp"

#include "../support/test_util.hpp"

using namespace crnbal;

namespace {

MonomialConstraint relation(std::map<std::string, std::int64_t> exps) {
    MonomialConstraint c;
    c.exponents = std::move(exps);
    return c;
}

ConstraintSystem system_over(const ReactionNetwork& net,
                             std::vector<MonomialConstraint> cons) {
    return ConstraintSystem(net.rate_labels(), std::move(cons));
}

RateAssignment rates_of(const ReactionNetwork& net, const std::vector<Rat>& values) {
    RateAssignment rates;
    const auto& labels = net.rate_labels();
    REQUIRE(labels.size() == values.size());
    for (std::size_t i = 0; i < labels.size(); ++i) rates.values[labels[i]] = values[i];
    return rates;
}

RateAssignment all_ones(const ReactionNetwork& net) {
    RateAssignment rates;
    for (const auto& label : net.rate_labels()) rates.values[label] = 1;
    return rates;
}

// The three-step loop 0->A, A+B->2B, B->0 in its textbook traversal order,
// anchored so that the walk visits (a,b), (a+1,b), (a,b+1).
ReactionCycle chain_triangle(const ReactionNetwork& net) {
    ReactionCycle cycle;
    cycle.steps = {{net.class_index_of({1, 0}), +1},
                   {net.class_index_of({1, -1}), -1},
                   {net.class_index_of({0, 1}), -1}};
    return cycle;
}

ReactionCycle reversed_cycle(const ReactionCycle& cycle) {
    ReactionCycle rev;
    for (auto it = cycle.steps.rbegin(); it != cycle.steps.rend(); ++it)
        rev.steps.push_back({it->class_index, -it->sign});
    return rev;
}

// Signed step vectors of a cycle, for structural assertions.
std::vector<IntVec> step_vectors(const ReactionNetwork& net, const ReactionCycle& cycle) {
    std::vector<IntVec> out;
    for (const auto& st : cycle.steps) out.push_back(cycle_step_vector(net, st));
    return out;
}

bool same_cycle_type(const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (int mirror = 0; mirror < 2; ++mirror) {
        std::vector<IntVec> probe = b;
        if (mirror) {
            std::reverse(probe.begin(), probe.end());
            for (auto& v : probe) v = vec_neg(v);
        }
        for (std::size_t shift = 0; shift < n; ++shift) {
            bool match = true;
            for (std::size_t i = 0; i < n && match; ++i)
                match = (a[i] == probe[(i + shift) % n]);
            if (match) return true;
        }
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Constraint derivation
// ---------------------------------------------------------------------------

TEST_CASE("rndb_constraints reproduces the six benchmark systems") {
    SUBCASE("open two-species chain") {
        auto net = testutil::load_net("net1.crn").network;
        ConstraintSystem expected = system_over(
            net, {relation({{"k2", 1}, {"k-2", -1}, {"k3", -1}, {"k-3", 1}}),
                  relation({{"k1", 1}, {"k3", 1}, {"k4", 1},
                            {"k-1", -1}, {"k-3", -1}, {"k-4", -1}})});
        CHECK(rndb_constraints(net).equals(expected));
    }
    SUBCASE("half-open chain") {
        auto net = testutil::load_net("net2.crn").network;
        ConstraintSystem expected = system_over(
            net, {relation({{"k2", 1}, {"k-2", -1}, {"k3", -1}, {"k-3", 1}})});
        CHECK(rndb_constraints(net).equals(expected));
    }
    SUBCASE("closed two-channel chain") {
        auto net = testutil::load_net("net3.crn").network;
        ConstraintSystem expected = system_over(
            net, {relation({{"k2", 1}, {"k-2", -1}, {"k3", -1}, {"k-3", 1}})});
        CHECK(rndb_constraints(net).equals(expected));
    }
    SUBCASE("two independent two-channel axes") {
        auto net = testutil::load_net("net4.crn").network;
        ConstraintSystem expected = system_over(
            net, {relation({{"k1", 1}, {"k-1", -1}, {"k2", -1}, {"k-2", 1}}),
                  relation({{"k3", 1}, {"k-3", -1}, {"k4", -1}, {"k-4", 1}})});
        CHECK(rndb_constraints(net).equals(expected));
    }
    SUBCASE("five-species network") {
        auto net = testutil::load_net("net5.crn").network;
        ConstraintSystem expected = system_over(
            net, {relation({{"k1", 1}, {"k-1", -1}, {"k2", -1}, {"k-2", 1}}),
                  relation({{"k3", 1}, {"k4", 1}, {"k5", 1},
                            {"k-3", -1}, {"k-4", -1}, {"k-5", -1}})});
        CHECK(rndb_constraints(net).equals(expected));
    }
    SUBCASE("fully open two-axis network") {
        auto net = testutil::load_net("net6.crn").network;
        ConstraintSystem expected = system_over(
            net, {relation({{"k1", 1}, {"k-1", -1}, {"k2", -1}, {"k-2", 1}}),
                  relation({{"k3", 1}, {"k-3", -1}, {"k4", -1}, {"k-4", 1}})});
        CHECK(rndb_constraints(net).equals(expected));
    }
}

TEST_CASE("check_rndb") {
    SUBCASE("bistable rates violate the channel-ratio condition") {
        ParsedNetwork p = testutil::load_net("bistable.crn");
        CHECK(!check_rndb(p.network, p.rates));
    }
    SUBCASE("all-ones rates satisfy every monomial relation") {
        for (const char* name : {"net1.crn", "net4.crn", "net5.crn", "net6.crn"}) {
            CAPTURE(name);
            auto net = testutil::load_net(name).network;
            CHECK(check_rndb(net, all_ones(net)));
        }
    }
    SUBCASE("two-channel exchange instance") {
        ParsedNetwork p = testutil::load_net("horn-jackson.crn");
        CHECK(check_rndb(p.network, p.rates));
    }
    SUBCASE("incomplete rates are rejected") {
        auto net = testutil::load_net("net1.crn").network;
        CHECK(testutil::throws_code([&] { check_rndb(net, RateAssignment{}); },
                                    ErrorCode::IncompleteRates));
    }
}

// ---------------------------------------------------------------------------
// Escort vectors and transition rates
// ---------------------------------------------------------------------------

TEST_CASE("f_vector closed forms on the two-axis network") {
    auto net = testutil::load_net("net4.crn").network;
    const int ax = net.class_index_of({1, 0});
    const int bx = net.class_index_of({0, 1});
    for (std::int64_t a = 0; a <= 7; ++a) {
        for (std::int64_t b = 0; b <= 7; ++b) {
            FVector fa = f_vector(net, ax, +1, {a, b});
            REQUIRE(fa.entries.size() == 2);
            CHECK(fa.entries[0] == 1);
            CHECK(fa.entries[1] == a * (a - 1));
            FVector fb = f_vector(net, bx, +1, {a, b});
            CHECK(fb.entries[0] == a);
            CHECK(fb.entries[1] == b * (b - 1));
        }
    }
    FVector at74 = f_vector(net, ax, +1, {7, 4});
    CHECK(at74.entries == std::vector<Int>{1, 42});
    FVector bt74 = f_vector(net, bx, +1, {7, 4});
    CHECK(bt74.entries == std::vector<Int>{7, 12});
}

TEST_CASE("single-channel classes have constant escort vector") {
    auto net = testutil::load_net("phosphofructokinase.crn").network;
    for (int i = 0; i < static_cast<int>(net.classes().size()); ++i) {
        for (std::int64_t a = 0; a <= 4; ++a)
            for (std::int64_t b = 0; b <= 4; ++b)
                for (std::int64_t c = 0; c <= 4; ++c)
                    for (int sign : {+1, -1}) {
                        FVector f = f_vector(net, i, sign, {a, b, c});
                        CHECK(f.entries == std::vector<Int>{1});
                    }
    }
}

TEST_CASE("escort vector is symmetric under direction reversal") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 60; ++trial) {
        ReactionNetwork net = testutil::random_network(rng);
        const std::size_t s = net.species_count();
        for (int i = 0; i < static_cast<int>(net.classes().size()); ++i) {
            const IntVec& u = net.classes()[static_cast<std::size_t>(i)].u;
            for (int probe = 0; probe < 12; ++probe) {
                State a(s);
                for (auto& c : a) c = testutil::rand_int(rng, 0, 5);
                State au = vec_add(a, u);
                if (!vec_all_nonneg(au)) continue;
                // F(-u, a+u) = F(u, a)
                FVector lhs = f_vector(net, i, -1, au);
                FVector rhs = f_vector(net, i, +1, a);
                CHECK(lhs.entries == rhs.entries);
            }
        }
    }
}

TEST_CASE("transition_rate closed forms") {
    auto net1 = testutil::load_net("net1.crn").network;
    RateAssignment k = rates_of(net1, {Rat(11), Rat(13), Rat(5), Rat(17), Rat(7), Rat(19),
                                       Rat(23), Rat(29)});
    // labels in order: k1,k-1,k2,k-2,k3,k-3,k4,k-4
    const int exchange = net1.class_index_of({1, -1});
    const int inflow = net1.class_index_of({1, 0});
    const int bflow = net1.class_index_of({0, 1});

    // rho((a+1,b) -> (a,b+1)) = k2 (a+1) a + k3 (a+1) b at (a+1,b) = (4,2)
    CHECK(transition_rate(net1, k, {4, 2}, exchange, -1) == Rat(5 * 4 * 3 + 7 * 4 * 2));
    // reverse direction at (3,3): k-2 a b + k-3 b (b-1)
    CHECK(transition_rate(net1, k, {3, 3}, exchange, +1) ==
          Rat(17 * 3 * 3 + 19 * 3 * 2));
    // inflow 0 -> A runs at k1 everywhere
    CHECK(transition_rate(net1, k, {0, 0}, inflow, +1) == Rat(11));
    CHECK(transition_rate(net1, k, {9, 4}, inflow, +1) == Rat(11));
    // B -> 0 at (a,b): the forward label of class (0,1) is the inflow k-4
    CHECK(transition_rate(net1, k, {2, 5}, bflow, -1) == Rat(23 * 5));
    CHECK(transition_rate(net1, k, {2, 5}, bflow, +1) == Rat(29));

    auto net3 = testutil::load_net("net3.crn").network;
    RateAssignment k3 = rates_of(net3, {Rat(1), Rat(2), Rat(3), Rat(4)});
    CHECK(transition_rate(net3, k3, {0, 5}, 0, -1) == 0);  // no reactant available
}

TEST_CASE("transition rate is zero exactly when the direction is unavailable") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 40; ++trial) {
        ReactionNetwork net = testutil::random_network(rng);
        RateAssignment rates = testutil::random_rates(rng, net);
        const std::size_t s = net.species_count();
        for (int probe = 0; probe < 20; ++probe) {
            State a(s);
            for (auto& c : a) c = testutil::rand_int(rng, 0, 4);
            for (int i = 0; i < static_cast<int>(net.classes().size()); ++i) {
                const auto& cls = net.classes()[static_cast<std::size_t>(i)];
                for (int sign : {+1, -1}) {
                    bool available = false;
                    for (const auto& ch : cls.channels) {
                        IntVec y = sign > 0 ? ch.reactant : vec_add(ch.reactant, cls.u);
                        if (vec_all_ge(a, y)) available = true;
                    }
                    Rat rho = transition_rate(net, rates, a, i, sign);
                    CHECK((rho > 0) == available);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Cycle functional
// ---------------------------------------------------------------------------

TEST_CASE("cycle functional on the textbook triangle") {
    auto net = testutil::load_net("net1.crn").network;
    ReactionCycle tri = chain_triangle(net);

    SUBCASE("all rates one gives 1") {
        CHECK(cycle_functional(net, all_ones(net), tri, {1, 1}) == 1);
    }
    SUBCASE("scaling the inflow scales the functional") {
        RateAssignment k = all_ones(net);
        k.values["k1"] = 2;
        CHECK(cycle_functional(net, k, tri, {1, 1}) == 2);
    }
    SUBCASE("symbolic shape (k1/k-1)((k2 a + k3 b)/(k-2 a + k-3 b))(k4/k-4)") {
        std::mt19937_64 rng(111);
        for (int trial = 0; trial < 120; ++trial) {
            RateAssignment k;
            for (const auto& label : net.rate_labels())
                k.values[label] = testutil::rand_rat(rng);
            std::int64_t a = testutil::rand_int(rng, 0, 3);
            std::int64_t b = testutil::rand_int(rng, 0, 3);
            if (a == 0 && b == 0) continue;  // middle edge unavailable
            Rat expected = (k.values["k1"] / k.values["k-1"]) *
                           ((k.values["k2"] * a + k.values["k3"] * b) /
                            (k.values["k-2"] * a + k.values["k-3"] * b)) *
                           (k.values["k4"] / k.values["k-4"]);
            CHECK(cycle_functional(net, k, tri, {a, b}) == expected);
        }
    }
    SUBCASE("unavailable transition raises CycleNotBasedAtState") {
        CHECK(testutil::throws_code(
            [&] { cycle_functional(net, all_ones(net), tri, {0, 0}); },
            ErrorCode::CycleNotBasedAtState));
    }
    SUBCASE("steps must sum to zero") {
        ReactionCycle broken;
        broken.steps = {{0, +1}, {2, -1}};
        CHECK(testutil::throws_code(
            [&] { cycle_functional(net, all_ones(net), broken, {1, 1}); },
            ErrorCode::InvalidArgument));
    }
}

TEST_CASE("cycle reversal inverts the functional") {
    std::mt19937_64 rng(222);
    int evaluated = 0;
    for (int trial = 0; trial < 60 && evaluated < 200; ++trial) {
        ReactionNetwork net = testutil::random_network(rng);
        RateAssignment rates = testutil::random_rates(rng, net);
        for (const auto& cycle : enumerate_cycle_types(net, 4)) {
            State base = find_base_state(net, cycle);
            Rat fwd = cycle_functional(net, rates, cycle, base);
            Rat bwd = cycle_functional(net, rates, reversed_cycle(cycle), base);
            CHECK(fwd * bwd == 1);
            ++evaluated;
        }
    }
    CHECK(evaluated > 50);
}

// ---------------------------------------------------------------------------
// Cycle enumeration
// ---------------------------------------------------------------------------

TEST_CASE("enumerate_cycle_types on the fully open exchange network") {
    auto net = testutil::load_net("open-ab.crn").network;
    auto cycles = enumerate_cycle_types(net, 4);
    // Both triangle orientations are distinct types (a triangle's reversal is its
    // mirror image, never a rotation), plus the three two-class parallelograms.
    CHECK(cycles.size() == 5);
    int triangles = 0, squares = 0;
    for (const auto& c : cycles) {
        auto vecs = step_vectors(net, c);
        IntVec sum(net.species_count(), 0);
        for (const auto& v : vecs) sum = vec_add(sum, v);
        CHECK(vec_is_zero(sum));
        if (c.length() == 3) ++triangles;
        if (c.length() == 4) ++squares;
    }
    CHECK(triangles == 2);
    CHECK(squares == 3);

    // The textbook triangle {0->A, A+B->2B, B->0} appears as a type.
    std::vector<IntVec> tri = {{1, 0}, {-1, 1}, {0, -1}};
    // The unit square over the two inflow classes appears as a type.
    std::vector<IntVec> square = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    bool tri_found = false, square_found = false;
    for (const auto& c : cycles) {
        if (same_cycle_type(step_vectors(net, c), tri)) tri_found = true;
        if (same_cycle_type(step_vectors(net, c), square)) square_found = true;
    }
    CHECK(tri_found);
    CHECK(square_found);
}

TEST_CASE("enumerate_cycle_types counts on the benchmark networks") {
    auto net3 = testutil::load_net("net3.crn").network;
    CHECK(enumerate_cycle_types(net3, 4).empty());
    CHECK(enumerate_cycle_types(net3, 6).empty());

    auto net6 = testutil::load_net("net6.crn").network;
    auto four = enumerate_cycle_types(net6, 4);
    REQUIRE(four.size() == 1);  // the unit square; longer rectangles need length 6
    CHECK(same_cycle_type(step_vectors(net6, four[0]),
                          {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
    CHECK(enumerate_cycle_types(net6, 5).size() == 1);
    CHECK(enumerate_cycle_types(net6, 6).size() == 3);

    auto net4 = testutil::load_net("net4.crn").network;
    CHECK(enumerate_cycle_types(net4, 4).size() == 1);
    CHECK(enumerate_cycle_types(net4, 6).size() == 3);

    auto net1 = testutil::load_net("net1.crn").network;
    CHECK(enumerate_cycle_types(net1, 6).size() == 26);

    // Deterministic output.
    auto again = enumerate_cycle_types(net1, 6);
    REQUIRE(again.size() == 26);
    for (std::size_t i = 0; i < again.size(); ++i)
        CHECK(step_vectors(net1, again[i]) == step_vectors(net1, enumerate_cycle_types(net1, 6)[i]));
}

TEST_CASE("enumerated cycles are irreducible, nontrivial and pairwise distinct") {
    std::mt19937_64 rng(333);
    for (int trial = 0; trial < 30; ++trial) {
        ReactionNetwork net = testutil::random_network(rng);
        auto cycles = enumerate_cycle_types(net, 5);
        std::vector<std::vector<IntVec>> seen;
        for (const auto& c : cycles) {
            CHECK(c.length() >= 3);
            CHECK(c.length() <= 5);
            auto vecs = step_vectors(net, c);
            // All partial sums distinct (irreducibility) and total zero.
            std::vector<IntVec> partials;
            IntVec sum(net.species_count(), 0);
            partials.push_back(sum);
            for (std::size_t i = 0; i + 1 < vecs.size(); ++i) {
                sum = vec_add(sum, vecs[i]);
                partials.push_back(sum);
            }
            sum = vec_add(sum, vecs.back());
            CHECK(vec_is_zero(sum));
            for (std::size_t i = 0; i < partials.size(); ++i)
                for (std::size_t j = i + 1; j < partials.size(); ++j)
                    CHECK(partials[i] != partials[j]);
            // No other representative of the same type in the output.
            for (const auto& prev : seen) CHECK(!same_cycle_type(prev, vecs));
            seen.push_back(vecs);
        }
    }
}

TEST_CASE("find_base_state") {
    auto net1 = testutil::load_net("net1.crn").network;
    CHECK(find_base_state(net1, chain_triangle(net1)) == State{0, 1});

    auto open = testutil::load_net("open-ab.crn").network;
    ReactionCycle square;
    square.steps = {{open.class_index_of({1, 0}), +1},
                    {open.class_index_of({0, 1}), +1},
                    {open.class_index_of({1, 0}), -1},
                    {open.class_index_of({0, 1}), -1}};
    CHECK(find_base_state(open, square) == State{0, 0});

    std::mt19937_64 rng(444);
    for (int trial = 0; trial < 25; ++trial) {
        ReactionNetwork net = testutil::random_network(rng);
        for (const auto& cycle : enumerate_cycle_types(net, 5)) {
            State base = find_base_state(net, cycle);
            CHECK(cycle_based_at(net, cycle, base));
        }
    }
}

// ---------------------------------------------------------------------------
// The Markov-side constraint systems and checks
// ---------------------------------------------------------------------------

TEST_CASE("mcdb_constraints on the benchmark networks") {
    auto net1 = testutil::load_net("net1.crn").network;
    CHECK(mcdb_constraints(net1).equals(rndb_constraints(net1)));

    auto net2 = testutil::load_net("net2.crn").network;
    CHECK(mcdb_constraints(net2).equals(rndb_constraints(net2)));

    auto net3 = testutil::load_net("net3.crn").network;
    CHECK(mcdb_constraints(net3).trivial());

    auto net4 = testutil::load_net("net4.crn").network;
    ConstraintSystem expected4 = system_over(
        net4, {relation({{"k3", 1}, {"k-3", -1}, {"k4", -1}, {"k-4", 1}})});
    CHECK(mcdb_constraints(net4).equals(expected4));

    auto net5 = testutil::load_net("net5.crn").network;
    CHECK(mcdb_constraints(net5).equals(rndb_constraints(net5)));

    auto net6 = testutil::load_net("net6.crn").network;
    CHECK(mcdb_constraints(net6).trivial());
}

TEST_CASE("mcdb system is always contained in the rndb system") {
    std::mt19937_64 rng(555);
    AnalysisOptions opts;
    opts.max_cycle_len = 4;
    opts.n_rate_trials = 3;
    opts.n_states = 8;
    for (int trial = 0; trial < 25; ++trial) {
        ReactionNetwork net = testutil::random_network(rng);
        ConstraintSystem rndb = rndb_constraints(net);
        ConstraintSystem mcdb = mcdb_constraints(net, opts);
        CHECK(rndb.contains(mcdb));
    }
}

TEST_CASE("mcdb_constraints is deterministic") {
    auto net = testutil::load_net("net4.crn").network;
    AnalysisOptions opts;
    CHECK(mcdb_constraints(net, opts).equals(mcdb_constraints(net, opts)));
}

TEST_CASE("check_mcdb") {
    SUBCASE("bistable rates: a birth-death chain has no cycles to violate") {
        ParsedNetwork p = testutil::load_net("bistable.crn");
        CHECK(check_mcdb(p.network, p.rates));
        CHECK(!check_rndb(p.network, p.rates));
    }
    SUBCASE("violating the circuit condition fails the cycle check") {
        auto net = testutil::load_net("net1.crn").network;
        RateAssignment k = rates_of(net, {Rat(1), Rat(1), Rat(2), Rat(1), Rat(3), Rat(1),
                                          Rat(1), Rat(1)});
        CHECK(!check_mcdb(net, k));
    }
    SUBCASE("reaction detailed balance implies the cycle condition") {
        std::mt19937_64 rng(666);
        for (int trial = 0; trial < 40; ++trial) {
            ReactionNetwork net = testutil::random_network(rng);
            RateAssignment rates = testutil::rndb_rates(rng, net);
            CHECK(check_rndb(net, rates));
            CHECK(check_mcdb(net, rates));
        }
    }
    SUBCASE("single-class networks pass for arbitrary rates") {
        std::mt19937_64 rng(777);
        for (int trial = 0; trial < 30; ++trial) {
            ReactionNetwork net = testutil::random_network(rng, 3, 1);
            RateAssignment rates = testutil::random_rates(rng, net);
            CHECK(check_mcdb(net, rates));
        }
    }
}

TEST_CASE("check_wsdb") {
    SUBCASE("two-channel exchange with its equilibrium") {
        ParsedNetwork p = testutil::load_net("horn-jackson.crn");
        CHECK(check_wsdb(p.network, p.rates, {Rat(1, 2), Rat(1)}));
        CHECK(!check_wsdb(p.network, p.rates, {Rat(1), Rat(1)}));
    }
    SUBCASE("bistable rates admit no product-form equilibrium") {
        ParsedNetwork p = testutil::load_net("bistable.crn");
        CHECK(!check_wsdb(p.network, p.rates, {Rat(5)}));
        CHECK(!check_wsdb(p.network, p.rates, {Rat(100)}));
        CHECK(!check_wsdb(p.network, p.rates, {Rat(2700, 667)}));
    }
    SUBCASE("all-ones rates balance at the all-ones state") {
        auto net = testutil::load_net("net5.crn").network;
        CHECK(check_wsdb(net, all_ones(net), std::vector<Rat>(5, Rat(1))));
    }
    SUBCASE("agreement with check_rndb") {
        std::mt19937_64 rng(888);
        for (int trial = 0; trial < 40; ++trial) {
            ReactionNetwork net = testutil::random_network(rng);
            std::vector<Rat> x_star;
            RateAssignment good = testutil::rndb_rates(rng, net, &x_star);
            CHECK(check_rndb(net, good));
            CHECK(check_wsdb(net, good, x_star));

            RateAssignment arbitrary = testutil::random_rates(rng, net);
            if (!check_rndb(net, arbitrary)) {
                auto x = rndb_equilibrium(net, arbitrary);
                std::vector<Rat> probe =
                    x ? *x : std::vector<Rat>(net.species_count(), Rat(1));
                CHECK(!check_wsdb(net, arbitrary, probe));
            }
        }
    }
}

TEST_CASE("rndb_equilibrium") {
    SUBCASE("product-form equilibria of the benchmark instances") {
        ParsedNetwork pfk = testutil::load_net("phosphofructokinase.crn");
        auto x = rndb_equilibrium(pfk.network, pfk.rates);
        REQUIRE(x.has_value());
        CHECK(*x == std::vector<Rat>{Rat(2), Rat(3, 2), Rat(1)});

        ParsedNetwork hj = testutil::load_net("horn-jackson.crn");
        auto y = rndb_equilibrium(hj.network, hj.rates);
        REQUIRE(y.has_value());
        CHECK(*y == std::vector<Rat>{Rat(1, 2), Rat(1)});
    }
    SUBCASE("inconsistent channel ratios give no equilibrium") {
        ParsedNetwork p = testutil::load_net("bistable.crn");
        CHECK(!rndb_equilibrium(p.network, p.rates).has_value());
    }
    SUBCASE("irrational equilibria are reported as absent") {
        ParsedNetwork p = parse_network("0 <-> 2A ; kf=2, kr=1\n");
        CHECK(check_rndb(p.network, p.rates));  // single channel, no conditions
        CHECK(!rndb_equilibrium(p.network, p.rates).has_value());  // x^2 = 2
    }
    SUBCASE("returned equilibrium satisfies every channel ratio") {
        std::mt19937_64 rng(999);
        for (int trial = 0; trial < 40; ++trial) {
            ReactionNetwork net = testutil::random_network(rng);
            RateAssignment rates = testutil::rndb_rates(rng, net);
            auto x = rndb_equilibrium(net, rates);
            if (!x.has_value()) continue;  // rational solution may genuinely not exist
            for (const auto& cls : net.classes()) {
                Rat xu(1);
                for (std::size_t j = 0; j < cls.u.size(); ++j)
                    xu *= rat_pow((*x)[j], cls.u[j]);
                for (const auto& ch : cls.channels)
                    CHECK(rates.at(ch.forward_label) / rates.at(ch.backward_label) == xu);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Structural classification
// ---------------------------------------------------------------------------

TEST_CASE("classify on the benchmark networks") {
    auto pfk = testutil::load_net("phosphofructokinase.crn").network;
    Classification c = classify(pfk);
    CHECK(c.single_channel_equivalence);
    CHECK(!c.birth_death);
    CHECK(!c.unconditional_mcdb);
    CHECK(!c.strict_gap);

    auto net3 = testutil::load_net("net3.crn").network;
    c = classify(net3);
    CHECK(c.birth_death);
    CHECK(!c.single_channel_equivalence);
    CHECK(c.unconditional_mcdb);  // a single class meets the span test vacuously
    CHECK(c.strict_gap);

    auto net6 = testutil::load_net("net6.crn").network;
    c = classify(net6);
    CHECK(c.unconditional_mcdb);
    CHECK(!c.birth_death);
    CHECK(c.strict_gap);
    CHECK(c.gap_witness_classes == std::vector<int>{0, 1});

    auto net4 = testutil::load_net("net4.crn").network;
    c = classify(net4);
    CHECK(!c.unconditional_mcdb);  // the second axis reads populations of the first
    CHECK(c.strict_gap);
    CHECK(c.gap_witness_classes == std::vector<int>{0});

    auto net1 = testutil::load_net("net1.crn").network;
    c = classify(net1);
    CHECK(!c.single_channel_equivalence);
    CHECK(!c.birth_death);
    CHECK(!c.unconditional_mcdb);
    CHECK(!c.strict_gap);
}

TEST_CASE("single-reaction networks classify as birth-death") {
    std::mt19937_64 rng(1212);
    for (int trial = 0; trial < 20; ++trial) {
        ReactionNetwork net = testutil::random_network(rng, 3, 1);
        CHECK(classify(net).birth_death);
    }
}
