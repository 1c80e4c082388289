import json

import pytest

from pointplane.errors import DomainError, UsageError
from pointplane.field import GF
from pointplane.pg3 import IncidenceSpace, build_pg3, canon, from_json, incident, to_json

from brute import Brute


def vec(q, *xs):
    F = GF(q)
    return tuple(F(x) for x in xs)


def test_canon_examples():
    assert canon(vec(3, 0, 2, 0, 2)).values == (0, 1, 0, 1)
    assert canon(vec(3, 1, 0, 0, 0)).values == (1, 0, 0, 0)
    with pytest.raises(DomainError):
        canon(vec(3, 0, 0, 0, 0))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_canon_is_scale_invariant(q):
    F = GF(q)
    for v in Brute(q).vecs:
        for lam in range(1, q):
            scaled = tuple(F(x * lam) for x in v)
            assert canon(scaled).values == v


@pytest.mark.parametrize("q,n", [(2, 15), (3, 40), (5, 156)])
def test_counts(q, n):
    S = build_pg3(q)
    assert S.num_points == S.num_planes == n == q**3 + q**2 + q + 1
    assert all(r.bit_count() == q * q + q + 1 for r in S.point_rows)
    assert all(r.bit_count() == q * q + q + 1 for r in S.plane_rows)


@pytest.mark.parametrize("q", [2, 3])
def test_matches_coordinate_oracle(q):
    S = build_pg3(q)
    B = Brute(q)
    assert [h.values for h in S.point_labels] == B.vecs
    for p in range(S.num_points):
        for f in range(S.num_planes):
            assert incident(S, p, f) == B.inc(p, f)


def test_incident_examples(pg2, pg3):
    def pid(S, *xs):
        return [h.values for h in S.point_labels].index(xs)

    assert incident(pg2, pid(pg2, 1, 0, 0, 0), pid(pg2, 0, 1, 0, 0))
    assert not incident(pg2, pid(pg2, 1, 0, 0, 0), pid(pg2, 1, 0, 0, 0))
    assert incident(pg3, pid(pg3, 1, 1, 1, 1), pid(pg3, 1, 1, 1, 0))
    with pytest.raises(UsageError):
        incident(pg2, 15, 0)


def test_build_rejects_bad_q():
    with pytest.raises(UsageError):
        build_pg3(4)
    with pytest.raises(UsageError):
        build_pg3(11)
    assert build_pg3(11, max_q=11).num_points == 1464


def test_rebuild_is_identical():
    assert build_pg3(3).same_matrix(build_pg3(3))
    assert to_json(build_pg3(3)) == to_json(build_pg3(3))


def test_json_roundtrip(pg2):
    text = to_json(pg2)
    doc = json.loads(text)
    assert doc["format"] == "incidence-v1"
    assert doc["num_points"] == 15 and len(doc["incident_pairs"]) == 105
    assert doc["incident_pairs"] == sorted(doc["incident_pairs"])
    assert doc["point_coords"][0] == [0, 0, 0, 1]
    back = from_json(text)
    assert back.same_matrix(pg2) and back.provenance == "pg3"


def test_json_imported_roundtrip():
    S = IncidenceSpace.from_pairs(3, 2, [(0, 0), (2, 1), (1, 0)])
    text = to_json(S)
    assert json.loads(text)["incident_pairs"] == [[0, 0], [1, 0], [2, 1]]
    back = from_json(text)
    assert back.same_matrix(S) and back.provenance == "imported" and back.q is None


@pytest.mark.parametrize("doc", [
    {"format": "other"},
    {"format": "incidence-v1", "num_points": 2, "num_planes": 2, "incident_pairs": [[0, 5]]},
    {"format": "incidence-v1", "num_points": 2, "num_planes": 2,
     "incident_pairs": [[0, 0], [0, 0]]},
    {"format": "incidence-v1", "provenance": "pg3", "q": 2, "num_points": 15,
     "num_planes": 15, "incident_pairs": []},
])
def test_json_rejects(doc):
    with pytest.raises(UsageError):
        from_json(json.dumps(doc))
