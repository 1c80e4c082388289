from itertools import combinations

import pytest

from pointplane.errors import UsageError
from pointplane.pg3 import build_pg3
from pointplane.polarity import ElementSet, all_lines, collinear, dual_space, line_from_pair
from pointplane.projectivity import (
    Hexagon, IncidentLinePair, check_axiom_p, check_axiom_p_dual, cross_joins,
    cross_meets, dual_hexagon_from_planes, dual_hexagons, dual_pappus_holds, hexagon_count,
    hexagons, incident_line_pairs, make_incident_pair, pappus_holds, replay_section_trace,
    sample_section_configs,
)
from pointplane.sampling import sample


def test_make_incident_pair(pg2, pg3):
    lines = all_lines(pg3)
    l1 = lines[0]
    l2 = next(ln for ln in lines[1:] if ln.points.mask & l1.points.mask)
    pair = make_incident_pair(pg3, l1, l2)
    assert pair.o in l1.points and pair.o in l2.points
    assert pair.w in l1.planes and pair.w in l2.planes
    with pytest.raises(UsageError):
        make_incident_pair(pg3, l1, l1)
    lines2 = all_lines(pg2)
    skew = next((m, n) for m, n in combinations(lines2, 2) if not m.points.mask & n.points.mask)
    with pytest.raises(UsageError):
        make_incident_pair(pg2, *skew)


def test_incident_pair_count(pg3):
    # each line meets (q+1) * (q^2 + q) others
    assert len(incident_line_pairs(pg3)) == 130 * 4 * 12 // 2


@pytest.mark.parametrize("q", [2, 3, 5])
def test_hexagons_exist_iff_q_at_least_3(q):
    S = build_pg3(q)
    pair = incident_line_pairs(S)[0]
    assert (hexagon_count(pair) > 0) == (q >= 3)
    assert (hexagon_count(pair, "planes") > 0) == (q >= 3)


def test_cross_joins_match_oracle(pg3, brute3):
    pairs = incident_line_pairs(pg3)
    for pair in pairs[::60]:
        for h in hexagons(pg3, pair):
            a1, b1, c1, a2, b2, c2 = h.vertices
            expected = (brute3.meet(b1, c2, b2, c1), brute3.meet(c1, a2, c2, a1),
                        brute3.meet(a1, b2, a2, b1))
            got = cross_joins(pg3, h)
            assert got == expected
            assert brute3.collinear(got) and pappus_holds(pg3, h)


def test_hexagon_enumeration(pg3):
    pair = incident_line_pairs(pg3)[10]
    reps = list(hexagons(pg3, pair))
    raw = list(hexagons(pg3, pair, ordered=True))
    assert len(reps) == hexagon_count(pair) == 6
    assert len(raw) == hexagon_count(pair, ordered=True) == 72
    for h in raw:
        assert h.a1 in h.pair.l1.points and h.a2 in h.pair.l2.points
        assert h.pair.o not in h.vertices


def test_swapping_a1_b1_keeps_collinearity(pg3):
    pair = incident_line_pairs(pg3)[123]
    h = next(iter(hexagons(pg3, pair)))
    g = Hexagon(h.pair, h.b1, h.a1, h.c1, h.a2, h.b2, h.c2)
    assert cross_joins(pg3, g)[2] != cross_joins(pg3, h)[2]
    assert pappus_holds(pg3, g) and pappus_holds(pg3, h)


def test_swapping_lines_permutes_cross_joins(pg3):
    for pair in incident_line_pairs(pg3)[:50]:
        for h in hexagons(pg3, pair):
            flipped = IncidentLinePair(pair.l2, pair.l1, pair.o, pair.w)
            g = Hexagon(flipped, h.a2, h.b2, h.c2, h.a1, h.b1, h.c1)
            assert set(cross_joins(pg3, g)) == set(cross_joins(pg3, h))
            assert pappus_holds(pg3, g) == pappus_holds(pg3, h)


def test_cross_joins_rejects_bad_hexagon(pg3):
    pair = incident_line_pairs(pg3)[0]
    h = next(iter(hexagons(pg3, pair)))
    with pytest.raises(UsageError):
        cross_joins(pg3, Hexagon(h.pair, h.pair.o, h.b1, h.c1, h.a2, h.b2, h.c2))
    with pytest.raises(UsageError):
        cross_joins(pg3, Hexagon(h.pair, h.a2, h.b1, h.c1, h.a1, h.b2, h.c2))


def test_axiom_p(pg2, pg3, pg5):
    r = check_axiom_p(pg2)
    assert r.status == "vacuous" and r.checked == 0
    r = check_axiom_p(pg3)
    assert r.status == "holds" and r.checked == 3120 * 6
    r = check_axiom_p(pg3, ordered=True)
    assert r.status == "holds" and r.checked == 3120 * 72
    r = check_axiom_p(pg5, sample(5000, 0))
    assert r.status == "holds" and r.checked == 5000


def test_axiom_p_dual(pg2, pg3, pg5):
    assert check_axiom_p_dual(pg2).status == "vacuous"
    assert check_axiom_p_dual(pg3).status == "holds"
    assert check_axiom_p_dual(pg5, sample(5000, 0)).status == "holds"
    for S in (pg2, pg3):
        assert check_axiom_p_dual(S).status == check_axiom_p(dual_space(S)).status


def test_cross_meets_equal_cross_joins_on_dual(pg3):
    D = dual_space(pg3)
    for pair in incident_line_pairs(pg3)[::200]:
        for dh in dual_hexagons(pg3, pair):
            got = cross_meets(pg3, dh)
            assert collinear(pg3, ElementSet.of("planes", got))
            f = dh.faces
            dpair = make_incident_pair(D, line_from_pair(D, f[0], f[1]),
                                       line_from_pair(D, f[3], f[4]))
            assert cross_joins(D, Hexagon(dpair, *f)) == got


def test_dual_hexagon_from_planes(pg3):
    pair = incident_line_pairs(pg3)[5]
    dh = next(iter(dual_hexagons(pg3, pair)))
    again = dual_hexagon_from_planes(pg3, dh.faces)
    assert again.faces == dh.faces and again.pair.o == pair.o
    with pytest.raises(UsageError):
        dual_hexagon_from_planes(pg3, dh.faces[:5])
    with pytest.raises(UsageError):
        dual_hexagon_from_planes(pg3, (dh.alpha1, dh.beta1, pair.w) + dh.faces[3:])


def test_section_trace_pg3(pg3):
    configs = sample_section_configs(pg3, 100, seed=7)
    assert len(configs) == 100
    for six, pi in configs:
        dh = dual_hexagon_from_planes(pg3, six)
        tr = replay_section_trace(pg3, dh, pi)
        assert tr.passed, tr.failed_claims()
        assert tr.verdict is True
        assert tr.verdict == dual_pappus_holds(pg3, dh)
        assert tr.derived["S"] != dh.pair.o
        assert len(tr.derived["meets"]) == 6


def test_section_trace_pg5_sample(pg5):
    for six, pi in sample_section_configs(pg5, 20, seed=2):
        dh = dual_hexagon_from_planes(pg5, six)
        tr = replay_section_trace(pg5, dh, pi)
        assert tr.passed and tr.verdict == dual_pappus_holds(pg5, dh)


def test_section_trace_errors_and_default(pg3):
    dh = next(iter(dual_hexagons(pg3, incident_line_pairs(pg3)[0])))
    on = next(f for f in range(40) if pg3.point_rows[dh.pair.o] >> f & 1)
    with pytest.raises(UsageError):
        replay_section_trace(pg3, dh, on)
    tr = replay_section_trace(pg3, dh)
    off = [f for f in range(40) if not pg3.point_rows[dh.pair.o] >> f & 1]
    assert tr.config["pi"] == off[0] and tr.passed
