// Python bindings for the crnbal core. Exact rationals cross the boundary as
// fractions.Fraction (floats are rejected rather than silently rounded);
// states cross as tuples of ints.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "crnbal/balance.hpp"
#include "crnbal/core.hpp"
#include "crnbal/error.hpp"
#include "crnbal/parser.hpp"
#include "crnbal/report.hpp"
#include "crnbal/stochastic.hpp"

namespace py = pybind11;

namespace pybind11::detail {

// mpq_class <-> fractions.Fraction through exact decimal-free text forms.
template <>
struct type_caster<crnbal::Rat> {
    PYBIND11_TYPE_CASTER(crnbal::Rat, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (!src || src.is_none() || PyFloat_Check(src.ptr())) return false;
        try {
            object fraction = module_::import("fractions").attr("Fraction");
            if (!PyLong_Check(src.ptr()) && !PyUnicode_Check(src.ptr()) &&
                !isinstance(src, fraction))
                return false;
            value = crnbal::parse_rational(static_cast<std::string>(str(fraction(src))));
            return true;
        } catch (error_already_set&) {
            PyErr_Clear();
            return false;
        } catch (const std::exception&) {
            return false;
        }
    }

    static handle cast(const crnbal::Rat& q, return_value_policy, handle) {
        object fraction = module_::import("fractions").attr("Fraction");
        return fraction(crnbal::rat_string(q)).release();
    }
};

}  // namespace pybind11::detail

namespace {

using namespace crnbal;

RateAssignment to_rates(const std::map<std::string, Rat>& values) {
    RateAssignment rates;
    rates.values = values;
    return rates;
}

py::tuple state_tuple(const State& s) {
    py::tuple t(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) t[j] = s[j];
    return t;
}

AnalysisOptions make_options(int max_cycle_len, int n_rate_trials, int n_states,
                             std::uint64_t seed) {
    AnalysisOptions opts;
    opts.max_cycle_len = max_cycle_len;
    opts.n_rate_trials = n_rate_trials;
    opts.n_states = n_states;
    opts.seed = seed;
    return opts;
}

ReactionCycle to_cycle(const std::vector<std::pair<int, int>>& steps) {
    ReactionCycle cycle;
    for (const auto& [index, sign] : steps) cycle.steps.push_back({index, sign});
    return cycle;
}

std::vector<std::string> rendered(const ConstraintSystem& sys) {
    std::vector<std::string> out;
    for (const auto& g : sys.generators()) out.push_back(g.render());
    return out;
}

}  // namespace

PYBIND11_MODULE(_crnbal, m) {
    using namespace crnbal;

    m.doc() = "Exact detailed-balance analysis of reversible reaction networks";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "Error");

    py::class_<ReactionNetwork>(m, "Network")
        .def_property_readonly("species", &ReactionNetwork::species)
        .def_property_readonly("rate_labels", &ReactionNetwork::rate_labels)
        .def_property_readonly(
            "reaction_count",
            [](const ReactionNetwork& net) { return net.reactions().size(); })
        .def_property_readonly(
            "class_count", [](const ReactionNetwork& net) { return net.classes().size(); })
        .def_property_readonly(
            "reaction_vectors",
            [](const ReactionNetwork& net) {
                py::list out;
                for (const auto& cls : net.classes()) out.append(state_tuple(cls.u));
                return out;
            })
        .def(
            "reactions",
            [](const ReactionNetwork& net) {
                py::list out;
                for (const auto& rxn : net.reactions()) {
                    py::dict d;
                    d["reactant"] = state_tuple(rxn.reactant);
                    d["product"] = state_tuple(rxn.product);
                    d["forward_label"] = rxn.forward_label;
                    d["backward_label"] = rxn.backward_label;
                    out.append(d);
                }
                return out;
            },
            "Reversible reactions as dicts with reactant/product tuples and labels")
        .def_static(
            "build",
            [](std::vector<std::string> species,
               const std::vector<std::tuple<IntVec, IntVec, std::string, std::string>>& rxns) {
                std::vector<ReversibleReaction> reactions;
                for (const auto& [y, yp, fwd, bwd] : rxns) reactions.push_back({y, yp, fwd, bwd});
                return ReactionNetwork::build(std::move(species), std::move(reactions));
            },
            py::arg("species"), py::arg("reactions"),
            "Construct from species names and (reactant, product, fwd, bwd) tuples")
        .def("__repr__", [](const ReactionNetwork& net) {
            return "<crnbal.Network: " + std::to_string(net.species_count()) + " species, " +
                   std::to_string(net.reactions().size()) + " reversible reactions, " +
                   std::to_string(net.classes().size()) + " classes>";
        });

    py::class_<Distribution>(m, "Distribution")
        .def_readonly("cap", &Distribution::cap)
        .def_readonly("tail_bound", &Distribution::tail_bound)
        .def("__len__", [](const Distribution& d) { return d.rows.size(); })
        .def(
            "support",
            [](const Distribution& d) {
                py::list out;
                for (const auto& row : d.rows) out.append(state_tuple(row.state));
                return out;
            },
            "States carrying mass, in lexicographic order")
        .def(
            "mass", [](const Distribution& d, const State& s) { return d.mass_at(s); },
            py::arg("state"))
        .def("masses",
             [](const Distribution& d) {
                 py::dict out;
                 for (const auto& row : d.rows) out[state_tuple(row.state)] = row.mass;
                 return out;
             })
        .def(
            "exact_masses",
            [](const Distribution& d) {
                py::dict out;
                for (const auto& row : d.rows)
                    if (row.exact) out[state_tuple(row.state)] = py::cast(*row.exact);
                return out;
            },
            "Exact masses as Fractions; empty for empirical distributions")
        .def("__repr__", [](const Distribution& d) {
            return "<crnbal.Distribution: " + std::to_string(d.rows.size()) + " states>";
        });

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_property_readonly("states",
                               [](const Trajectory& t) {
                                   py::list out;
                                   for (const auto& s : t.states) out.append(state_tuple(s));
                                   return out;
                               })
        .def_readonly("t_end", &Trajectory::t_end)
        .def_readonly("absorbed", &Trajectory::absorbed)
        .def_readonly("seed", &Trajectory::seed)
        .def_readonly("rng", &Trajectory::rng)
        .def("__len__", [](const Trajectory& t) { return t.states.size(); })
        .def("__repr__", [](const Trajectory& t) {
            return "<crnbal.Trajectory: " + std::to_string(t.states.size()) + " states, t_end=" +
                   std::to_string(t.t_end) + ">";
        });

    m.def(
        "parse",
        [](const std::string& text) {
            ParsedNetwork p = parse_network(text);
            return py::make_tuple(p.network, py::cast(p.rates.values));
        },
        py::arg("text"), "Parse network text; returns (Network, {label: Fraction})");
    m.def(
        "serialize",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates) {
            return serialize_network(net, to_rates(rates));
        },
        py::arg("network"), py::arg("rates") = std::map<std::string, Rat>{});
    m.def(
        "parse_rate_file",
        [](const std::string& text) { return py::cast(parse_rate_file(text).values); },
        py::arg("text"), "Parse 'label = value' lines into {label: Fraction}");

    m.def(
        "rndb_constraints",
        [](const ReactionNetwork& net) { return rendered(rndb_constraints(net)); },
        py::arg("network"), "Rendered reaction detailed-balance conditions");
    m.def(
        "mcdb_constraints",
        [](const ReactionNetwork& net, int max_cycle_len, int n_rate_trials, int n_states,
           std::uint64_t seed) {
            return rendered(
                mcdb_constraints(net, make_options(max_cycle_len, n_rate_trials, n_states, seed)));
        },
        py::arg("network"), py::arg("max_cycle_len") = 6, py::arg("n_rate_trials") = 5,
        py::arg("n_states") = 20, py::arg("seed") = 20240101ull,
        "Rendered Markov (Kolmogorov) detailed-balance conditions");

    m.def(
        "check_rndb",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates) {
            return check_rndb(net, to_rates(rates));
        },
        py::arg("network"), py::arg("rates"));
    m.def(
        "check_mcdb",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates, int max_cycle_len,
           int n_rate_trials, int n_states, std::uint64_t seed) {
            return check_mcdb(net, to_rates(rates),
                              make_options(max_cycle_len, n_rate_trials, n_states, seed));
        },
        py::arg("network"), py::arg("rates"), py::arg("max_cycle_len") = 6,
        py::arg("n_rate_trials") = 5, py::arg("n_states") = 20, py::arg("seed") = 20240101ull);
    m.def(
        "check_wsdb",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates,
           const std::vector<Rat>& x_star) { return check_wsdb(net, to_rates(rates), x_star); },
        py::arg("network"), py::arg("rates"), py::arg("x_star"));
    m.def(
        "rndb_equilibrium",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates) {
            return rndb_equilibrium(net, to_rates(rates));
        },
        py::arg("network"), py::arg("rates"),
        "Rational equilibrium witness, or None when none exists");

    m.def(
        "check_complex_balance",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates,
           const std::vector<double>& x, double tol) {
            return check_complex_balance(net, to_rates(rates), x, tol);
        },
        py::arg("network"), py::arg("rates"), py::arg("x"), py::arg("tol") = 1e-9);
    m.def(
        "check_complex_balance_exact",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates,
           const std::vector<Rat>& x) {
            return check_complex_balance_exact(net, to_rates(rates), x);
        },
        py::arg("network"), py::arg("rates"), py::arg("x"));

    m.def(
        "classify",
        [](const ReactionNetwork& net) {
            Classification c = classify(net);
            py::dict d;
            d["single_channel_equivalence"] = c.single_channel_equivalence;
            d["birth_death"] = c.birth_death;
            d["unconditional_mcdb"] = c.unconditional_mcdb;
            d["strict_gap"] = c.strict_gap;
            d["box_width"] = c.box_width;
            d["gap_witness_classes"] = c.gap_witness_classes;
            return d;
        },
        py::arg("network"), "Structural classification flags");

    m.def(
        "analyze_json",
        [](const ReactionNetwork& net, int max_cycle_len, int n_rate_trials, int n_states,
           std::uint64_t seed) {
            AnalysisReport report =
                analyze(net, make_options(max_cycle_len, n_rate_trials, n_states, seed));
            return report_to_json(net, report).dump(2);
        },
        py::arg("network"), py::arg("max_cycle_len") = 6, py::arg("n_rate_trials") = 5,
        py::arg("n_states") = 20, py::arg("seed") = 20240101ull,
        "Full analysis rendered as a JSON string");
    m.def(
        "analyze_text",
        [](const ReactionNetwork& net, int max_cycle_len, int n_rate_trials, int n_states,
           std::uint64_t seed) {
            AnalysisReport report =
                analyze(net, make_options(max_cycle_len, n_rate_trials, n_states, seed));
            return report_to_text(net, report);
        },
        py::arg("network"), py::arg("max_cycle_len") = 6, py::arg("n_rate_trials") = 5,
        py::arg("n_states") = 20, py::arg("seed") = 20240101ull,
        "Full analysis rendered as readable text");

    m.def(
        "stationary_rndb",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates, const State& init,
           std::int64_t cap) { return stationary_rndb(net, to_rates(rates), init, cap); },
        py::arg("network"), py::arg("rates"), py::arg("init"), py::arg("cap"),
        "Exact stationary law on the compatibility class of init, truncated at cap");
    m.def(
        "stationary_anderson",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates,
           const std::vector<Rat>& x_star, const State& init, std::int64_t cap) {
            return stationary_anderson(net, to_rates(rates), x_star, init, cap);
        },
        py::arg("network"), py::arg("rates"), py::arg("x_star"), py::arg("init"), py::arg("cap"),
        "Product-form law x*^a / a! under complex balance at x*");
    m.def(
        "stationary_birth_death",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates, std::int64_t cap) {
            return stationary_birth_death(net, to_rates(rates), cap);
        },
        py::arg("network"), py::arg("rates"), py::arg("cap"),
        "Closed form for one-species networks with reaction vector (1)");

    m.def(
        "gillespie",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates, const State& init,
           double t_end, std::uint64_t seed) {
            return gillespie(net, to_rates(rates), init, t_end, seed);
        },
        py::arg("network"), py::arg("rates"), py::arg("init"), py::arg("t_end"), py::arg("seed"),
        "Exact stochastic simulation recording every jump");
    m.def(
        "gillespie_occupation",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates, const State& init,
           double t_end, double burn_in, std::uint64_t seed) {
            return gillespie_occupation(net, to_rates(rates), init, t_end, burn_in, seed);
        },
        py::arg("network"), py::arg("rates"), py::arg("init"), py::arg("t_end"),
        py::arg("burn_in") = -1.0, py::arg("seed") = 20240101ull,
        "Occupation-time distribution of the simulated chain");
    m.def("empirical_distribution", &empirical_distribution, py::arg("trajectory"),
          py::arg("burn_in") = -1.0);
    m.def("total_variation", &total_variation, py::arg("a"), py::arg("b"));

    m.def(
        "deterministic_rhs",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates,
           const std::vector<double>& x) { return deterministic_rhs(net, to_rates(rates), x); },
        py::arg("network"), py::arg("rates"), py::arg("x"),
        "Mass-action ODE right-hand side at concentration vector x");
    m.def(
        "find_positive_steady_state",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates,
           const std::vector<double>& x0, double tol, int max_iter) {
            return find_positive_steady_state(net, to_rates(rates), x0, tol, max_iter);
        },
        py::arg("network"), py::arg("rates"), py::arg("x0"), py::arg("tol") = 1e-9,
        py::arg("max_iter") = 500);

    m.def(
        "cycle_types",
        [](const ReactionNetwork& net, int max_len) {
            py::list out;
            for (const auto& cycle : enumerate_cycle_types(net, max_len)) {
                py::list steps;
                for (const auto& step : cycle.steps)
                    steps.append(py::make_tuple(step.class_index, step.sign));
                out.append(steps);
            }
            return out;
        },
        py::arg("network"), py::arg("max_len") = 6,
        "Irreducible nontrivial cycle types as lists of (class_index, sign) steps");
    m.def(
        "find_base_state",
        [](const ReactionNetwork& net, const std::vector<std::pair<int, int>>& cycle) {
            return state_tuple(find_base_state(net, to_cycle(cycle)));
        },
        py::arg("network"), py::arg("cycle"));
    m.def(
        "cycle_functional",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates,
           const std::vector<std::pair<int, int>>& cycle, const State& base) {
            return cycle_functional(net, to_rates(rates), to_cycle(cycle), base);
        },
        py::arg("network"), py::arg("rates"), py::arg("cycle"), py::arg("base"),
        "Kolmogorov quotient of the cycle based at the given state");
    m.def(
        "transition_rate",
        [](const ReactionNetwork& net, const std::map<std::string, Rat>& rates, const State& a,
           int class_index, int sign) {
            return transition_rate(net, to_rates(rates), a, class_index, sign);
        },
        py::arg("network"), py::arg("rates"), py::arg("state"), py::arg("class_index"),
        py::arg("sign"), "Exact Markov rate out of state along the signed class");
}
