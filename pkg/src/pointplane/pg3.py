"""Concrete models PG(3, q) and the generic incidence-structure container.

Points and planes of PG(3, q) are canonical 4-vectors over GF(q); a point is
incident with a plane when their dot product vanishes. Incidence is stored
twice as int bitsets: ``point_rows[p]`` holds the planes on ``p`` and
``plane_rows[pi]`` holds the points on ``pi``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal

from .bits import iter_bits
from .errors import DomainError, UsageError
from .field import FieldElement, GF, is_prime

MAX_Q = 7
FORMAT = "incidence-v1"

Role = Literal["point", "plane"]


@dataclass(frozen=True)
class HVector:
    """Canonical homogeneous coordinates of a point or a plane."""

    coords: tuple[FieldElement, FieldElement, FieldElement, FieldElement]
    role: Role = "point"

    def __post_init__(self):
        if len(self.coords) != 4:
            raise UsageError("homogeneous vectors have four coordinates")
        if all(c.value == 0 for c in self.coords):
            raise DomainError("the zero vector has no projective class")
        first = next(c for c in self.coords if c.value != 0)
        if first.value != 1:
            raise UsageError(f"{self.values} is not canonical")

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.coords)

    @property
    def q(self) -> int:
        return self.coords[0].modulus

    def dot(self, other: HVector) -> int:
        return sum(a * b for a, b in zip(self.values, other.values)) % self.q


def canon(raw: Iterable[FieldElement], role: Role = "point") -> HVector:
    """Scale ``raw`` so that its first nonzero coordinate is 1."""
    raw = tuple(raw)
    if len(raw) != 4:
        raise UsageError("homogeneous vectors have four coordinates")
    pivot = next((c for c in raw if c.value != 0), None)
    if pivot is None:
        raise DomainError("the zero vector has no projective class")
    inv = pivot.inverse()
    return HVector(tuple(c * inv for c in raw), role)


def canonical_tuples(q: int) -> list[tuple[int, ...]]:
    """All canonical residue 4-tuples in lexicographic order."""
    return [
        t for t in itertools.product(range(q), repeat=4)
        if any(t) and next(v for v in t if v) == 1
    ]


@dataclass(frozen=True, eq=False)
class IncidenceSpace:
    """Points, planes and an incidence bit-matrix. Immutable once built."""

    num_points: int
    num_planes: int
    point_rows: tuple[int, ...]
    plane_rows: tuple[int, ...]
    provenance: str = "imported"
    q: int | None = None
    point_labels: tuple[HVector, ...] | None = None
    plane_labels: tuple[HVector, ...] | None = None
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_pairs(
        cls,
        num_points: int,
        num_planes: int,
        pairs: Iterable[tuple[int, int]],
        **kwargs,
    ) -> IncidenceSpace:
        prow = [0] * num_points
        frow = [0] * num_planes
        for p, f in pairs:
            if not (0 <= p < num_points and 0 <= f < num_planes):
                raise UsageError(f"incident pair ({p}, {f}) out of range")
            prow[p] |= 1 << f
            frow[f] |= 1 << p
        return cls(num_points, num_planes, tuple(prow), tuple(frow), **kwargs)

    @classmethod
    def from_matrix(cls, matrix: Iterable[Iterable[bool]], **kwargs) -> IncidenceSpace:
        rows = [list(map(bool, r)) for r in matrix]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        pairs = [(p, f) for p in range(n) for f in range(m) if rows[p][f]]
        return cls.from_pairs(n, m, pairs, **kwargs)

    @property
    def all_points(self) -> int:
        return (1 << self.num_points) - 1

    @property
    def all_planes(self) -> int:
        return (1 << self.num_planes) - 1

    def incident_pairs(self) -> Iterator[tuple[int, int]]:
        for p, row in enumerate(self.point_rows):
            for f in iter_bits(row):
                yield p, f

    def same_matrix(self, other: IncidenceSpace) -> bool:
        return (
            self.num_points == other.num_points
            and self.num_planes == other.num_planes
            and self.point_rows == other.point_rows
        )

    def describe(self) -> dict:
        if self.provenance == "pg3":
            return {"provenance": "pg3", "q": self.q}
        return {"provenance": self.provenance, "q": self.q,
                "num_points": self.num_points, "num_planes": self.num_planes}

    def __repr__(self) -> str:
        tag = f"pg3({self.q})" if self.provenance == "pg3" else self.provenance
        return f"IncidenceSpace({tag}, points={self.num_points}, planes={self.num_planes})"


def build_pg3(q: int, max_q: int = MAX_Q) -> IncidenceSpace:
    """Build PG(3, q) with ids in lexicographic order of canonical coordinates."""
    if not isinstance(q, int) or not is_prime(q):
        raise UsageError(f"q must be prime, got {q!r}")
    if q > max_q:
        raise UsageError(f"q = {q} exceeds the configured maximum {max_q}")
    F = GF(q)
    tuples = canonical_tuples(q)
    n = len(tuples)
    prow = [0] * n
    frow = [0] * n
    for p, u in enumerate(tuples):
        for f, v in enumerate(tuples):
            if (u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]) % q == 0:
                prow[p] |= 1 << f
                frow[f] |= 1 << p
    points = tuple(HVector(tuple(F(x) for x in t), "point") for t in tuples)
    planes = tuple(HVector(tuple(F(x) for x in t), "plane") for t in tuples)
    return IncidenceSpace(n, n, tuple(prow), tuple(frow), provenance="pg3", q=q,
                          point_labels=points, plane_labels=planes)


def incident(S: IncidenceSpace, point: int, plane: int) -> bool:
    if not 0 <= point < S.num_points:
        raise UsageError(f"point id {point} out of range")
    if not 0 <= plane < S.num_planes:
        raise UsageError(f"plane id {plane} out of range")
    return bool(S.point_rows[point] >> plane & 1)


def to_json(S: IncidenceSpace) -> str:
    """Serialize to the incidence-v1 format (deterministic bytes)."""
    doc = {
        "format": FORMAT,
        "provenance": "pg3" if S.provenance == "pg3" else "imported",
        "q": S.q,
        "num_points": S.num_points,
        "num_planes": S.num_planes,
        "incident_pairs": [list(pr) for pr in S.incident_pairs()],
    }
    if S.point_labels is not None:
        doc["point_coords"] = [list(h.values) for h in S.point_labels]
    if S.plane_labels is not None:
        doc["plane_coords"] = [list(h.values) for h in S.plane_labels]
    return json.dumps(doc, separators=(",", ":")) + "\n"


def from_json(text: str) -> IncidenceSpace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise UsageError(f"expected format {FORMAT!r}")
    try:
        n = int(doc["num_points"])
        m = int(doc["num_planes"])
        pairs = [(int(p), int(f)) for p, f in doc["incident_pairs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed incidence document: {exc}") from exc
    if len(set(pairs)) != len(pairs):
        raise UsageError("duplicate incident pairs")
    provenance = doc.get("provenance", "imported")
    q = doc.get("q")
    if provenance == "pg3":
        reference = build_pg3(q)
        loaded = IncidenceSpace.from_pairs(n, m, pairs)
        if not reference.same_matrix(loaded):
            raise UsageError(f"file claims pg3({q}) but its incidence differs")
        return reference
    if provenance != "imported":
        raise UsageError(f"unknown provenance {provenance!r}")
    labels = {}
    for key, role, count in (("point_coords", "point", n), ("plane_coords", "plane", m)):
        if key in doc:
            if q is None:
                raise UsageError(f"{key} given without q")
            F = GF(q)
            vecs = tuple(HVector(tuple(F(x) for x in c), role) for c in doc[key])
            if len(vecs) != count:
                raise UsageError(f"{key} has {len(vecs)} entries, expected {count}")
            labels[f"{role}_labels"] = vecs
    return IncidenceSpace.from_pairs(n, m, pairs, provenance="imported", q=q, **labels)
