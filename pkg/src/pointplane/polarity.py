"""The polar operator and everything derived from it: lines, collinearity,
meets and joins of lines, flat pencils, and the point/plane duality.

Sets of elements are int bitsets wrapped in :class:`ElementSet`; the
``*_mask`` helpers are the hot-path versions used by the enumerators.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal

from .bits import bits, iter_bits, lowest, mask_of
from .errors import NotALineError, StructuralError, UsageError
from .pg3 import HVector, IncidenceSpace, incident

Side = Literal["points", "planes"]
SIDES: tuple[Side, Side] = ("points", "planes")


def other(side: Side) -> Side:
    return "planes" if side == "points" else "points"


def _check_side(side: str) -> None:
    if side not in SIDES:
        raise UsageError(f"side must be 'points' or 'planes', got {side!r}")


def rows(S: IncidenceSpace, side: Side) -> tuple[int, ...]:
    """For each element of ``side``, the bitset of incident opposite elements."""
    return S.point_rows if side == "points" else S.plane_rows


def size(S: IncidenceSpace, side: Side) -> int:
    return S.num_points if side == "points" else S.num_planes


def polar_mask(S: IncidenceSpace, side: Side, mask: int) -> int:
    r = rows(S, side)
    acc = (1 << size(S, other(side))) - 1
    for i in iter_bits(mask):
        acc &= r[i]
        if not acc:
            break
    return acc


def pair_polar(S: IncidenceSpace, side: Side, a: int, b: int) -> int:
    r = rows(S, side)
    return r[a] & r[b]


def span_mask(S: IncidenceSpace, side: Side, a: int, b: int) -> int:
    """``{a, b}`` closed twice under the polar: the same-side part of line ab."""
    if a > b:
        a, b = b, a
    key = ("span", side, a, b)
    memo = S._memo
    got = memo.get(key)
    if got is None:
        got = polar_mask(S, other(side), pair_polar(S, side, a, b))
        memo[key] = got
    return got


@dataclass(frozen=True)
class ElementSet:
    """A set of point-ids or plane-ids, stored as a bitset."""

    side: Side
    mask: int = 0

    def __post_init__(self):
        _check_side(self.side)
        if self.mask < 0:
            raise UsageError("negative mask")

    @classmethod
    def of(cls, side: Side, ids: Iterable[int]) -> ElementSet:
        ids = list(ids)
        if any(i < 0 for i in ids):
            raise UsageError("element ids must be non-negative")
        return cls(side, mask_of(ids))

    @property
    def ids(self) -> tuple[int, ...]:
        return bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return iter_bits(self.mask)

    def __contains__(self, i: int) -> bool:
        return i >= 0 and bool(self.mask >> i & 1)

    def __le__(self, other: ElementSet) -> bool:
        return self.side == other.side and self.mask & ~other.mask == 0

    def __or__(self, other: ElementSet) -> ElementSet:
        if self.side != other.side:
            raise UsageError("cannot combine sets from different sides")
        return ElementSet(self.side, self.mask | other.mask)

    def __and__(self, other: ElementSet) -> ElementSet:
        if self.side != other.side:
            raise UsageError("cannot combine sets from different sides")
        return ElementSet(self.side, self.mask & other.mask)

    def check(self, S: IncidenceSpace) -> None:
        if self.mask >> size(S, self.side):
            raise UsageError(f"{self.side} id out of range for {S!r}")

    def __repr__(self) -> str:
        return f"ElementSet({self.side}, {list(self.ids)})"


def points(*ids: int) -> ElementSet:
    return ElementSet.of("points", ids)


def planes(*ids: int) -> ElementSet:
    return ElementSet.of("planes", ids)


def polar(S: IncidenceSpace, X: ElementSet) -> ElementSet:
    """All elements of the other side incident with every member of ``X``.

    The polar of the empty set is the whole other side.
    """
    X.check(S)
    return ElementSet(other(X.side), polar_mask(S, X.side, X.mask))


@dataclass(frozen=True)
class Line:
    points: ElementSet
    planes: ElementSet

    @property
    def key(self) -> tuple[int, ...]:
        return self.points.ids

    def part(self, side: Side) -> ElementSet:
        return self.points if side == "points" else self.planes

    def __repr__(self) -> str:
        return f"Line(points={list(self.points.ids)}, planes={list(self.planes.ids)})"


def _verify_line(S: IncidenceSpace, side: Side, same: int, opp: int) -> None:
    if opp.bit_count() < 2:
        raise NotALineError(
            f"generating pair has {opp.bit_count()} common {other(side)}; need two",
            "polar-size",
        )
    for u, v in combinations(bits(opp), 2):
        if pair_polar(S, other(side), u, v) != same:
            raise NotALineError(
                f"{other(side)} {u}, {v} of the line have a different polar",
                f"{other(side)}-pair-closure",
            )
    for u, v in combinations(bits(same), 2):
        if pair_polar(S, side, u, v) != opp:
            raise NotALineError(
                f"{side} {u}, {v} of the line have a different polar",
                f"{side}-pair-closure",
            )


def line_from_pair(S: IncidenceSpace, a: int, b: int, side: Side = "points") -> Line:
    """The line generated by two distinct points (or two distinct planes)."""
    _check_side(side)
    n = size(S, side)
    if not (0 <= a < n and 0 <= b < n):
        raise UsageError(f"{side} id out of range")
    if a == b:
        raise UsageError("a line needs two distinct generators")
    opp = pair_polar(S, side, a, b)
    same = span_mask(S, side, a, b)
    if S.provenance != "pg3":
        _verify_line(S, side, same, opp)
    if side == "points":
        return Line(ElementSet("points", same), ElementSet("planes", opp))
    return Line(ElementSet("points", opp), ElementSet("planes", same))


def collinear(S: IncidenceSpace, X: ElementSet) -> bool:
    """True iff the members of ``X`` all lie on one line.

    Sets with at most two members count as collinear.
    """
    X.check(S)
    if len(X) <= 2:
        return True
    if S.provenance == "pg3":
        return polar_mask(S, X.side, X.mask).bit_count() >= 2
    a, b = X.ids[:2]
    try:
        line = line_from_pair(S, a, b, X.side)
    except NotALineError:
        return False
    return X <= line.part(X.side)


def _common(m: Line, n: Line, side: Side) -> int | None:
    if m == n:
        raise UsageError("meet and join need two distinct lines")
    common = m.part(side).mask & n.part(side).mask
    if not common:
        return None
    if common.bit_count() > 1:
        raise StructuralError(f"distinct lines share {common.bit_count()} {side}")
    return lowest(common)


def meet(S: IncidenceSpace, m: Line, n: Line) -> int | None:
    """The common point of two distinct lines, or None if they are skew."""
    return _common(m, n, "points")


def join_plane(S: IncidenceSpace, m: Line, n: Line) -> int | None:
    """The common plane of two distinct lines, or None if they are skew."""
    return _common(m, n, "planes")


def flat_pencil(S: IncidenceSpace, point: int, plane: int) -> list[Line]:
    """All lines through ``point`` that lie in ``plane``."""
    if not incident(S, point, plane):
        raise UsageError(f"point {point} is not incident with plane {plane}")
    found = {}
    for x in iter_bits(S.plane_rows[plane]):
        if x == point:
            continue
        line = line_from_pair(S, point, x)
        if plane in line.planes:
            found.setdefault(line.points.mask, line)
    return sorted(found.values(), key=lambda ln: (ln.points.ids[0], ln.key))


def all_lines(S: IncidenceSpace) -> list[Line]:
    """Every line of a model, sorted by point-set."""
    key = ("lines",)
    if key in S._memo:
        return list(S._memo[key])
    lines = []
    for a in range(S.num_points):
        covered = 0
        for b in range(a + 1, S.num_points):
            if covered >> b & 1:
                continue
            line = line_from_pair(S, a, b)
            covered |= line.points.mask
            if lowest(line.points.mask) == a:
                lines.append(line)
    lines.sort(key=lambda ln: ln.key)
    S._memo[key] = tuple(lines)
    return lines


def _relabel(labels: tuple[HVector, ...] | None, role) -> tuple[HVector, ...] | None:
    if labels is None:
        return None
    return tuple(HVector(h.coords, role) for h in labels)


def dual_space(S: IncidenceSpace) -> IncidenceSpace:
    """Swap points and planes: the transposed incidence structure."""
    return IncidenceSpace(
        S.num_planes,
        S.num_points,
        S.plane_rows,
        S.point_rows,
        provenance="imported",
        q=S.q,
        point_labels=_relabel(S.plane_labels, "point"),
        plane_labels=_relabel(S.point_labels, "plane"),
    )
