import itertools

import pytest

from conftest import DESK_TRIPLES
from freeinv.fiber import BC, Involution, build_fiber_algebra, enumerate_involutions
from freeinv.pages import build_e2
from freeinv.patterns import (STATUSES, DifferentialPattern, _search, admissible_set,
                              check_admissible, enumerate_patterns, verdict_for)
from freeinv.results import poincare

SWAP = Involution.from_descriptor("a=a,b=c,c=b")


def euler(t):
    out = 1
    for d in t:
        out *= 1 + (-1) ** d
    return out


def test_pattern_text_roundtrip():
    text = "d2(c)=t^2*ab;d3(a)=t^3*1"
    P = DifferentialPattern.parse(text)
    assert P.descriptor() == text
    assert P.generator_summary() == {"a": (3, "1"), "b": "survives", "c": (2, "ab")}
    assert DifferentialPattern(()).is_zero()


def test_s1_cubed_trivial_action_has_one_pattern_per_functional():
    # d_2 on H^1 is a linear functional; freeness needs it nonzero and
    # everything else is forced by the Leibniz rule
    F = build_fiber_algebra((1, 1, 1))
    pats = admissible_set(F, Involution.identity())
    assert len(pats) == 7
    values = set()
    for pat, E in pats:
        summ = pat.generator_summary()
        values.add(tuple(int(summ[x] != "survives") for x in "abc"))
        assert poincare(E).as_list() == [1, 3, 3, 1]
    assert values == set(itertools.product((0, 1), repeat=3)) - {(0, 0, 0)}


@pytest.mark.parametrize("t", DESK_TRIPLES)
def test_admissible_outcomes_are_finite_with_half_euler(t):
    F = build_fiber_algebra(t)
    for g in enumerate_involutions(F):
        for pat, E in admissible_set(F, g):
            P = poincare(E)
            assert P.degree <= F.top
            assert sum((-1) ** k * d for k, d in enumerate(P.as_list())) * 2 == euler(t)


@pytest.mark.parametrize("t", [(1, 1, 2), (1, 2, 2), (1, 2, 3), (2, 2, 2)])
def test_pruning_keeps_every_admissible_pattern(t):
    F = build_fiber_algebra(t)
    for g in enumerate_involutions(F):
        E2 = build_e2(F, g)
        full = sorted(pat.descriptor() for pat, E in _search(E2, prune=False)
                      if verdict_for(E, F, g).admissible)
        assert full == sorted(pat.descriptor() for pat, _ in admissible_set(F, g))


def test_admissible_set_is_deterministic():
    F = build_fiber_algebra((1, 2, 2))
    one = [p.descriptor() for p, _ in admissible_set(F, Involution.identity())]
    two = [p.descriptor() for p, _ in admissible_set(F, Involution.identity())]
    assert one == two


def test_enumerated_patterns_replay_consistently():
    F = build_fiber_algebra((1, 2, 2))
    g = Involution.identity()
    for pat in enumerate_patterns(F, g):
        v, _ = check_admissible(pat, F, g)
        assert v.status in STATUSES
        assert v.status != "violates_leibniz"


def test_permanent_class_survives_every_admissible_pattern():
    F = build_fiber_algebra((1, 2, 2))
    pats = admissible_set(F, SWAP)
    assert pats
    for _, E in pats:
        assert E.page.dim(0, 4) == 1
        assert BC in E.page.cycles(0)


def test_killing_permanent_class_is_rejected():
    F = build_fiber_algebra((1, 2, 2))
    v, E = check_admissible(DifferentialPattern.parse("d5(bc)=t^5*1"), F, SWAP)
    assert E is None
    assert v.status == "violates_permanent_cocycle"
    assert v.witness["class"] == [0, "bc"]


def test_all_survive_violates_freeness():
    F = build_fiber_algebra((1, 2, 2))
    v, _ = check_admissible(DifferentialPattern(()), F, SWAP)
    assert v.status == "violates_freeness"


def test_leibniz_witness_from_replay():
    F = build_fiber_algebra((2, 2, 5))
    v, E = check_admissible(DifferentialPattern.parse("d2(c)=t^2*ab;d3(a)=t^3*1;d3(b)=t^3*1"),
                            F, Involution.identity())
    assert E is None and v.status == "violates_leibniz"
    assert v.witness["class"] == [4, "a+b"]
    assert "forced" in v.message


def test_d_squared_verdict_from_replay():
    F = build_fiber_algebra((1, 1, 1))
    g = Involution.from_descriptor("a=a,b=b,c=a+c")
    # d_2(b) = t^2 together with d_2(ac) = t^2*b gives d_2 d_2 (ac) = t^4
    v, E = check_admissible(DifferentialPattern.parse("d2(b)=t^2*1;d2(ac)=t^2*b"), F, g)
    assert E is None and v.status == "violates_d_squared"
    assert v.witness["source"] == [0, "ac"] and v.witness["class"] == [4, "1"]
