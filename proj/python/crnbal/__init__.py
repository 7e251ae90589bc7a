"""Exact detailed-balance analysis of reversible chemical reaction networks.

Thin wrapper over the compiled extension. Exact rationals cross the boundary
as fractions.Fraction; states are tuples of ints.
"""

import json as _json

from ._crnbal import (
    Distribution,
    Error,
    Network,
    Trajectory,
    __version__,
    analyze_json,
    analyze_text,
    check_complex_balance,
    check_complex_balance_exact,
    check_mcdb,
    check_rndb,
    check_wsdb,
    classify,
    cycle_functional,
    cycle_types,
    deterministic_rhs,
    empirical_distribution,
    find_base_state,
    find_positive_steady_state,
    gillespie,
    gillespie_occupation,
    mcdb_constraints,
    parse,
    parse_rate_file,
    rndb_constraints,
    rndb_equilibrium,
    serialize,
    stationary_anderson,
    stationary_birth_death,
    stationary_rndb,
    total_variation,
    transition_rate,
)


def analyze(network, **options):
    """Full analysis of a network as a plain dict.

    Keyword options are forwarded to the analyzer (max_cycle_len,
    n_rate_trials, n_states, seed). See analyze_text for the readable form.
    """
    return _json.loads(analyze_json(network, **options))


__all__ = [
    "Distribution",
    "Error",
    "Network",
    "Trajectory",
    "__version__",
    "analyze",
    "analyze_json",
    "analyze_text",
    "check_complex_balance",
    "check_complex_balance_exact",
    "check_mcdb",
    "check_rndb",
    "check_wsdb",
    "classify",
    "cycle_functional",
    "cycle_types",
    "deterministic_rhs",
    "empirical_distribution",
    "find_base_state",
    "find_positive_steady_state",
    "gillespie",
    "gillespie_occupation",
    "mcdb_constraints",
    "parse",
    "parse_rate_file",
    "rndb_constraints",
    "rndb_equilibrium",
    "serialize",
    "stationary_anderson",
    "stationary_birth_death",
    "stationary_rndb",
    "total_variation",
    "transition_rate",
]
