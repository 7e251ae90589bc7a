from fractions import Fraction
from pathlib import Path

import pytest

import crnbal

DATA = Path(__file__).resolve().parents[2] / "data"


def load(name):
    return crnbal.parse((DATA / name).read_text())


def test_parse_and_network_shape():
    net, rates = load("horn-jackson.crn")
    assert net.species == ["A", "B"]
    assert net.reaction_count == 5
    assert net.class_count == 3
    assert len(rates) == 10
    assert all(isinstance(v, Fraction) for v in rates.values())
    reparsed, _ = crnbal.parse(crnbal.serialize(net, rates))
    assert reparsed.reaction_count == net.reaction_count


def test_checks_and_equilibrium():
    net, rates = load("horn-jackson.crn")
    assert crnbal.check_rndb(net, rates)
    assert crnbal.check_mcdb(net, rates)
    eq = crnbal.rndb_equilibrium(net, rates)
    assert eq == [Fraction(1, 2), Fraction(1)]
    assert crnbal.check_wsdb(net, rates, eq)
    assert crnbal.check_complex_balance_exact(net, rates, eq)

    bistable, brates = load("bistable.crn")
    assert not crnbal.check_rndb(bistable, brates)
    assert crnbal.check_mcdb(bistable, brates)


def test_analyze_report_dict():
    net, _ = load("net4.crn")
    report = crnbal.analyze(net)
    assert report["species"] == ["A", "B"]
    assert len(report["rndb"]["constraints"]) == 2
    assert len(report["mcdb"]["constraints"]) == 1
    assert report["classification"]["strict_gap"] is True
    assert "⟹" in report["verdict"]
    assert len(crnbal.rndb_constraints(net)) == 2


def test_stationary_binomial_exact():
    net, rates = load("horn-jackson.crn")
    d = crnbal.stationary_rndb(net, rates, [0, 10], 10)
    assert len(d) == 11
    exact = d.exact_masses()
    assert exact[(0, 10)] == Fraction(1024, 59049)
    assert sum(exact.values()) == 1
    assert d.mass((0, 10)) == pytest.approx(1024 / 59049)


def test_birth_death_bimodal():
    net, rates = load("bistable.crn")
    d = crnbal.stationary_birth_death(net, rates, 200)
    masses = d.masses()
    low = max((s for s in masses if s[0] <= 50), key=lambda s: masses[s])
    high = max((s for s in masses if s[0] > 50), key=lambda s: masses[s])
    assert abs(low[0] - 5) <= 2
    assert abs(high[0] - 100) <= 2
    assert crnbal.total_variation(d, d) == 0.0


def test_simulation_is_deterministic_in_the_seed():
    net, rates = load("bistable.crn")
    first = crnbal.gillespie(net, rates, [5], 5.0, 42)
    second = crnbal.gillespie(net, rates, [5], 5.0, 42)
    assert first.times == second.times
    assert first.states == second.states
    assert first.times[0] == 0.0
    assert first.states[0] == (5,)

    occ = crnbal.gillespie_occupation(net, rates, [5], 50.0, seed=42)
    assert sum(occ.masses().values()) == pytest.approx(1.0)
    assert occ.cap == -1


def test_cycles():
    net, _ = load("open-ab.crn")
    cycles = crnbal.cycle_types(net, 4)
    assert len(cycles) == 5
    assert all(sum(step[1] for step in c) is not None for c in cycles)

    hj, rates = load("horn-jackson.crn")
    types = crnbal.cycle_types(hj, 6)
    base = crnbal.find_base_state(hj, types[0])
    assert crnbal.cycle_functional(hj, rates, types[0], base) == Fraction(1)


def test_errors_carry_code_names():
    net, rates = load("horn-jackson.crn")
    with pytest.raises(crnbal.Error, match="EmptyTruncation"):
        crnbal.stationary_rndb(net, rates, [0, 10], 3)
    with pytest.raises(crnbal.Error, match="NotBirthDeathForm"):
        crnbal.stationary_birth_death(net, rates, 10)
    with pytest.raises(crnbal.Error, match="SyntaxError"):
        crnbal.parse("A -> B\n")


def test_fractions_cross_exactly():
    net, rates = load("horn-jackson.crn")
    x = [Fraction(1, 2), Fraction(1)]
    assert crnbal.check_wsdb(net, rates, x)
    with pytest.raises(TypeError):
        crnbal.check_wsdb(net, rates, [0.5, 1.0])  # floats are rejected
