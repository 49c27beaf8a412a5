import random

import pytest

from gdl.diagram import canonical_form, parse_gauss_code, random_diagram, serialize
from gdl.moves import (
    OMEGA3_DECOMPOSITION,
    MoveError,
    MoveKind,
    SINGLE_COMPONENT,
    TWO_COMPONENT,
    all_kinds,
    apply_move,
    apply_sequence,
    classify_locality,
    count_sites,
    decompose_omega3,
    decompose_omega3_at,
    enumerate_sites,
    expand_to_omega3a,
    parse_kind,
    plant_omega3_site,
    site_at,
    site_from_json,
    site_to_json,
)


def canon(d):
    return serialize(canonical_form(d))


def test_kind_names_round_trip():
    ks = all_kinds()
    assert len(ks) == 24
    for k in ks:
        assert parse_kind(k.name) == k
    assert parse_kind("O2c+") == MoveKind(2, "c", True)
    assert parse_kind("O3h") == MoveKind(3, "h")
    for bad in ("O3a+", "O1e+", "O2a", "O4a", "xyz"):
        with pytest.raises(MoveError):
            parse_kind(bad)


def test_no_decreasing_sites_in_empty_diagram():
    d = parse_gauss_code("() / ()")
    for k in all_kinds():
        if k.family == 3 or not k.increasing:
            assert enumerate_sites(d, k) == []


def test_single_kink_has_one_site_per_matching_variant():
    d = parse_gauss_code("O1+ U1+ / ()")
    # a 2-slot circle exposes both cyclic adjacencies, so the positive kink
    # matches the tail-first and the head-first positive variant once each
    assert len(enumerate_sites(d, parse_kind("O1a-"))) == 1
    assert len(enumerate_sites(d, parse_kind("O1c-"))) == 1
    assert enumerate_sites(d, parse_kind("O1b-")) == []
    assert enumerate_sites(d, parse_kind("O1d-")) == []
    out = apply_move(d, parse_kind("O1a-"), enumerate_sites(d, parse_kind("O1a-"))[0])
    assert canon(out) == "() / ()"


def test_increasing_then_decreasing_curl_is_identity():
    rng = random.Random(1)
    for seed in range(40):
        d = random_diagram(2, seed % 5, seed)
        for v in "abcd":
            inc = MoveKind(1, v, True)
            sites = enumerate_sites(d, inc)
            s = sites[rng.randrange(len(sites))]
            bigger = apply_move(d, inc, s)
            assert bigger.num_arrows == d.num_arrows + 1
            dec = MoveKind(1, v, False)
            back = [t for t in enumerate_sites(bigger, dec)
                    if canon(apply_move(bigger, dec, t)) == canon(d)]
            assert back, f"no inverse site for {inc.name} on {serialize(d)}"


def test_increasing_then_decreasing_bigon_is_identity():
    rng = random.Random(2)
    for seed in range(40):
        d = random_diagram(2, seed % 4, seed * 7)
        for v in "abcd":
            inc = MoveKind(2, v, True)
            n = count_sites(d, inc)
            s = site_at(d, inc, rng.randrange(n))
            bigger = apply_move(d, inc, s)
            assert bigger.num_arrows == d.num_arrows + 2
            dec = MoveKind(2, v, False)
            back = [t for t in enumerate_sites(bigger, dec)
                    if canon(apply_move(bigger, dec, t)) == canon(d)]
            assert back, f"no inverse site for {inc.name} on {serialize(d)}"


def test_site_indexing_matches_enumeration():
    d = random_diagram(2, 4, 11)
    for k in all_kinds():
        sites = enumerate_sites(d, k)
        assert count_sites(d, k) == len(sites)
        for i in (0, len(sites) // 2, len(sites) - 1):
            if sites:
                assert site_at(d, k, i) == sites[i]


def test_omega3_preserves_arrows_and_reverses():
    rng = random.Random(3)
    for letter in "abcdefgh":
        kind = MoveKind(3, letter)
        for _ in range(12):
            host = random_diagram(rng.randint(1, 3), rng.randint(0, 4), rng.randint(0, 10**6))
            d, site = plant_omega3_site(host, kind, rng)
            out = apply_move(d, kind, site)
            assert out.signs == d.signs  # labels and signs untouched
            back = [s for s in enumerate_sites(out, kind)
                    if canon(apply_move(out, kind, s)) == canon(d)]
            assert back, f"O3{letter} is not reversible at its image"


def test_site_soundness_every_enumerated_site_applies():
    rng = random.Random(4)
    for seed in range(25):
        d = random_diagram(2, 4 + seed % 3, seed * 13)
        for k in all_kinds():
            sites = enumerate_sites(d, k)
            for s in sites[:6]:
                out = apply_move(d, k, s)
                delta = {1: 1, 2: 2, 3: 0}[k.family]
                if k.family != 3 and not k.increasing:
                    delta = -delta
                assert out.num_arrows == d.num_arrows + delta


def test_locality_classification():
    d = parse_gauss_code("O1+ U1+ / O2- U2-")
    k = parse_kind("O1a-")
    s = enumerate_sites(d, k)[0]
    assert classify_locality(d, s) == SINGLE_COMPONENT
    inc = parse_kind("O2a+")
    from gdl.moves import Omega2IncSite

    assert classify_locality(d, Omega2IncSite((0, 0), (1, 0))) == TWO_COMPONENT
    assert classify_locality(d, Omega2IncSite((0, 0), (0, 1))) == SINGLE_COMPONENT


def test_decomposition_rows_and_expansion_counts():
    assert decompose_omega3("b") == (parse_kind("O2c+"), parse_kind("O3a"), parse_kind("O2d-"))
    assert decompose_omega3("f") == (parse_kind("O2d+"), parse_kind("O3a"), parse_kind("O2c-"))
    with pytest.raises(MoveError):
        decompose_omega3("a")
    assert expand_to_omega3a("a") == [parse_kind("O3a")]
    expansion_d = [k.name for k in expand_to_omega3a("d")]
    assert expansion_d == ["O2a+", "O2c+", "O3a", "O2d-", "O2b-"]
    ks = {}
    for v in "abcdefgh":
        seq = expand_to_omega3a(v)
        assert sum(1 for k in seq if k.family == 3) == 1
        assert [k for k in seq if k.family == 3][0].variant == "a"
        inc = sum(1 for k in seq if k.family == 2 and k.increasing)
        dec = sum(1 for k in seq if k.family == 2 and not k.increasing)
        assert inc == dec
        ks[v] = inc
    assert ks == {"a": 0, "b": 1, "c": 1, "d": 2, "e": 2, "f": 1, "g": 2, "h": 3}


def test_decomposition_coherence_on_planted_sites():
    rng = random.Random(6)
    cases = 0
    side_seen = {(v, s): 0 for v in "bcdefgh" for s in (0, 1)}
    while cases < 120:
        letter = "bcdefgh"[rng.randrange(7)]
        kind = MoveKind(3, letter)
        host = random_diagram(rng.randint(1, 3), rng.randint(0, 5), rng.randint(0, 10**6))
        d, site = plant_omega3_site(host, kind, rng)
        direct = apply_move(d, kind, site)
        steps = decompose_omega3_at(d, kind, site)
        assert canon(apply_sequence(d, steps)) == canon(direct)
        row = decompose_omega3(letter)
        kinds = tuple(k for k, _ in steps)
        if site.side == 1:
            assert kinds == row
        else:
            assert kinds == (MoveKind(2, row[2].variant, True), row[1],
                             MoveKind(2, row[0].variant, False))
        # the bigon pair shares locality
        loc1 = classify_locality(d, steps[0][1])
        d2 = apply_move(apply_move(d, *steps[0]), *steps[1])
        assert classify_locality(d2, steps[2][1]) == loc1
        side_seen[(letter, site.side)] += 1
        cases += 1
    assert all(side_seen[(v, 1)] > 0 for v in "bcdefgh")


def test_decomposition_coherence_on_natural_sites():
    # triangle sites that arise in random diagrams, not planted
    rng = random.Random(7)
    found = 0
    for seed in range(400):
        d = random_diagram(2, 6, seed)
        for letter in "bcdefgh":
            kind = MoveKind(3, letter)
            for site in enumerate_sites(d, kind):
                direct = apply_move(d, kind, site)
                steps = decompose_omega3_at(d, kind, site)
                assert canon(apply_sequence(d, steps)) == canon(direct)
                found += 1
        if found > 25:
            break
    assert found > 10


def test_site_json_round_trip():
    rng = random.Random(8)
    d = random_diagram(2, 5, 99)
    for k in all_kinds():
        sites = enumerate_sites(d, k)
        for s in sites[:3]:
            assert site_from_json(site_to_json(s)) == s


def test_apply_move_rejects_stale_sites():
    d = parse_gauss_code("O1+ U1+ / ()")
    k = parse_kind("O1a-")
    s = enumerate_sites(d, k)[0]
    d2 = apply_move(d, k, s)
    with pytest.raises(MoveError):
        apply_move(d2, k, s)
