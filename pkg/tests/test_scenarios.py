import dataclasses

import pytest

from gentlekit.errors import ConfigurationError
from gentlekit.fields import Field
from gentlekit.scenarios import (DEFAULT_BOUNDS, OPERATIONS, Fact, builtin_scenarios,
                                 scenario_by_name, verify)

QUICK = {"L": 3, "W": 2, "depth": 4}


def test_builtins_named_and_unique():
    names = [s.name for s in builtin_scenarios()]
    assert names == ["Q-standard", "Q-nonstandard", "Q'-standard", "Q'-allzero", "genus-2"]
    assert DEFAULT_BOUNDS == {"L": 8, "W": 3, "depth": 4}


def test_every_fact_has_provenance_and_known_op():
    for s in builtin_scenarios():
        for f in s.facts:
            assert f.op in OPERATIONS
            assert f.provenance in {"PAPER", "DERIVED", "TRIVIAL"}


@pytest.mark.parametrize("name", ["Q-standard", "Q-nonstandard", "genus-2"])
def test_quick_scenarios_pass(name):
    rep = verify(scenario_by_name(name), bounds=QUICK)
    assert rep.ok, "\n".join(r.line() for r in rep.results if not r.ok)


@pytest.mark.parametrize("name", ["Q'-standard", "Q'-allzero"])
def test_q_prime_scenarios_pass_at_small_bounds(name):
    rep = verify(scenario_by_name(name), bounds=QUICK)
    assert rep.ok, "\n".join(r.line() for r in rep.results if not r.ok)


def test_prime_field_gives_same_verdicts():
    rep = verify(scenario_by_name("Q-standard"), Field(101), bounds=QUICK)
    assert rep.ok


def test_wrong_expectation_is_reported():
    s = scenario_by_name("Q-standard")
    bad = Fact("hom", {"x": "X_P", "y": "X_P"}, {0: 2}, "DERIVED", "deliberately wrong")
    rep = verify(dataclasses.replace(s, facts=[bad]))
    assert not rep.ok
    line = rep.results[0].line()
    assert line.startswith("FAIL hom(x=X_P,y=X_P)")
    assert "computed={0: 1}" in line and "expected={0: 2}" in line
    assert rep.summary == "Q-standard: 0/1 facts pass"


def test_unknown_operation_is_a_configuration_error():
    s = scenario_by_name("genus-2")
    with pytest.raises(ConfigurationError, match="frobnicate"):
        verify(dataclasses.replace(s, facts=[Fact("frobnicate", {}, 0, "DERIVED")]))


def test_unknown_object_and_missing_parts():
    s = scenario_by_name("Q-standard")
    with pytest.raises(ConfigurationError):
        verify(dataclasses.replace(s, facts=[Fact("exceptional", {"x": "Z"}, True, "DERIVED")]))
    g = scenario_by_name("genus-2")
    with pytest.raises(ConfigurationError):
        verify(dataclasses.replace(g, facts=[Fact("path_dimension", {"on": "perp_model"}, 0,
                                                  "DERIVED")]))
    with pytest.raises(ConfigurationError):
        scenario_by_name("Q-imaginary")


def test_pass_lines_show_provenance():
    rep = verify(scenario_by_name("genus-2"))
    assert all(r.line().startswith("PASS ") for r in rep.results)
    assert any("[DERIVED]" in r.line() for r in rep.results)
