import random

import pytest

from gdl.diagram import parse_gauss_code, random_diagram
from gdl.pattern import (
    ALL_INJECTIVE,
    ORDERED,
    ArrowPattern,
    PatternError,
    enumerate_matchings,
    evaluate_bracket,
    parse_pattern,
    serialize_pattern,
)
from oracle import brute_force_matchings

SINGLE_PLUS = parse_pattern("O1 U1 ; 1:+")


def test_pattern_parse_round_trip():
    p = parse_pattern("O1 U2 U1 O3 / O2 U3 ; 1:+")
    assert p.num_circles == 2 and p.num_arrows == 3
    assert p.constraint_map == {1: 1, 2: 0, 3: 0}
    assert serialize_pattern(p) == "O1 U2 U1 O3 / O2 U3 ; 1:+ 2:? 3:?"


@pytest.mark.parametrize("bad", ["O1+ U1+", "O1 U2", "O1 U1 ; 2:+", "O1 U1 ; 1:x", ""])
def test_pattern_parse_rejects(bad):
    with pytest.raises(PatternError):
        parse_pattern(bad)


def test_no_matchings_in_empty_diagram():
    d = parse_gauss_code("() / ()")
    assert enumerate_matchings(SINGLE_PLUS, d) == []
    assert evaluate_bracket(SINGLE_PLUS, d) == 0


def test_single_arrow_pattern_on_one_crossing():
    # expected values frozen from the brute-force oracle
    d = parse_gauss_code("O1+ U1+ / ()")
    ms = enumerate_matchings(SINGLE_PLUS, d)
    found, total = brute_force_matchings(SINGLE_PLUS, d)
    assert len(ms) == len(found) == 1
    assert ms[0].weight == 1 and total == 1


def test_single_arrow_pattern_on_three_crossings():
    d = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+ / ()")
    ms = enumerate_matchings(SINGLE_PLUS, d)
    found, total = brute_force_matchings(SINGLE_PLUS, d)
    assert len(ms) == len(found) == 3
    assert [m.weight for m in ms] == [1, 1, 1] and total == 3
    assert evaluate_bracket(SINGLE_PLUS, d) == 3


def test_empty_pattern_counts_injective_circle_maps():
    p = parse_pattern("() / ()")
    d = parse_gauss_code("O1+ U1+ / ()")
    assert evaluate_bracket(p, d) == 2  # the two injective maps, weight +1 each
    p_ordered = parse_pattern("() / ()", ORDERED)
    assert evaluate_bracket(p_ordered, d) == 1


def test_ordered_mode_errors_when_wider_than_diagram():
    p = parse_pattern("O1 U1 / ()", ORDERED)
    with pytest.raises(PatternError):
        evaluate_bracket(p, parse_gauss_code("O1+ U1+"))
    p_inj = parse_pattern("O1 U1 / ()", ALL_INJECTIVE)
    assert evaluate_bracket(p_inj, parse_gauss_code("O1+ U1+")) == 0


def _random_pattern(rng):
    num_circles = rng.choice((1, 1, 2))
    num_arrows = rng.randint(1, 3)
    slots = []
    for label in range(1, num_arrows + 1):
        slots.append((label, True))
        slots.append((label, False))
    rng.shuffle(slots)
    circles = [[] for _ in range(num_circles)]
    for tok in slots:
        circles[rng.randrange(num_circles)].append(tok)
    constraints = {l: rng.choice((1, -1, 0, 0)) for l in range(1, num_arrows + 1)}
    mode = rng.choice((ORDERED, ALL_INJECTIVE))
    return ArrowPattern.make(circles, constraints, mode)


def test_matcher_agrees_with_oracle_on_random_instances():
    rng = random.Random(20240917)
    checked = 0
    for trial in range(200):
        p = _random_pattern(rng)
        d = random_diagram(rng.randint(1, 3), rng.randint(0, 6), rng.randint(0, 10**6))
        if p.assignment_mode == ORDERED and p.num_circles > d.num_components:
            continue
        ms = enumerate_matchings(p, d)
        found, total = brute_force_matchings(p, d)
        assert {(m.circle_map, m.arrow_map) for m in ms} == found
        assert len(ms) == len(found)
        assert evaluate_bracket(p, d) == total
        checked += 1
    assert checked >= 150


def test_weights_recompute_independently():
    rng = random.Random(5)
    for _ in range(50):
        p = _random_pattern(rng)
        d = random_diagram(2, 5, rng.randint(0, 10**6))
        if p.assignment_mode == ORDERED and p.num_circles > d.num_components:
            continue
        for m in enumerate_matchings(p, d):
            w = 1
            for _, dl in m.arrow_map:
                w *= d.sign_of(dl)
            assert w == m.weight


def test_removing_an_arrow_never_creates_matchings():
    from gdl.diagram import GaussDiagram

    rng = random.Random(99)
    for _ in range(60):
        p = _random_pattern(rng)
        d = random_diagram(2, rng.randint(1, 5), rng.randint(0, 10**6))
        if p.assignment_mode == ORDERED and p.num_circles > d.num_components:
            continue
        victim = rng.choice(d.labels)
        comps = [[t for t in comp if t[0] != victim] for comp in d.components]
        signs = {l: s for l, s in d.signs if l != victim}
        sub = GaussDiagram.make(comps, signs)
        before = {(m.circle_map, m.arrow_map) for m in enumerate_matchings(p, d)}
        after = {(m.circle_map, m.arrow_map) for m in enumerate_matchings(p, sub)}
        assert after <= before
