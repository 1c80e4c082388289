"""Complete quadrangles, their diagonal points, the harmonicity (Fano) axiom,
its point/plane dual, and a replay of the proof that the axiom implies its dual.

Quadrangle code is written once for a ``side``: on the ``points`` side a host
is a plane and the members are points on it; on the ``planes`` side a host
is a point and the members are planes through it.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .axioms import AxiomReport, report_from_tally
from .bits import bits, iter_bits, lowest
from .errors import StructuralError, UsageError
from .parallel import search
from .pg3 import IncidenceSpace
from .polarity import Side, other, polar_mask, rows, size, span_mask
from .sampling import EXHAUSTIVE, Mode
from .trace import ClaimTrace, TraceBuilder


@dataclass(frozen=True)
class Quadrangle:
    plane: int
    vertices: tuple[int, int, int, int]


@dataclass(frozen=True)
class DualQuadrangle:
    point: int
    faces: tuple[int, int, int, int]


@dataclass(frozen=True)
class DiagonalTriple:
    d1: int
    d2: int
    d3: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.d1, self.d2, self.d3)


# -- side-generic core ------------------------------------------------------

def members(S: IncidenceSpace, side: Side, host: int) -> int:
    """Elements of ``side`` incident with ``host`` (an element of the other side)."""
    return rows(S, other(side))[host]


def _mask(*ids: int) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def in_general_position(S: IncidenceSpace, side: Side, host: int, verts) -> bool:
    """Four distinct members of ``host``, every three of which have polar {host}."""
    if len(set(verts)) != 4:
        return False
    on = members(S, side, host)
    if any(not on >> v & 1 for v in verts):
        return False
    target = 1 << host
    return all(polar_mask(S, side, _mask(*t)) == target for t in combinations(verts, 3))


def _third_point_masks(S: IncidenceSpace, side: Side, host: int) -> dict[tuple[int, int], int]:
    """For each member pair a < b, the members c with polar {a, b, c} = {host}."""
    key = ("gp", side, host)
    got = S._memo.get(key)
    if got is not None:
        return got
    r = rows(S, side)
    target = 1 << host
    ids = bits(members(S, side, host))
    got = {}
    for a, b in combinations(ids, 2):
        ab = r[a] & r[b]
        m = 0
        for c in ids:
            if ab & r[c] == target:
                m |= 1 << c
        got[(a, b)] = m
    S._memo[key] = got
    return got


def quadrangles_on(S: IncidenceSpace, side: Side, host: int):
    """Yield quadrangles on ``host`` as ascending 4-tuples, lexicographically."""
    M = _third_point_masks(S, side, host)
    ids = bits(members(S, side, host))
    for a, b in combinations(ids, 2):
        mab = M[(a, b)] >> (b + 1) << (b + 1)
        for c in iter_bits(mab):
            fourth = M[(a, b)] & M[(a, c)] & M[(b, c)]
            fourth = fourth >> (c + 1) << (c + 1)
            for d in iter_bits(fourth):
                yield (a, b, c, d)


def count_quadrangles(S: IncidenceSpace, side: Side, host: int) -> int:
    M = _third_point_masks(S, side, host)
    ids = bits(members(S, side, host))
    total = 0
    for a, b in combinations(ids, 2):
        for c in iter_bits(M[(a, b)] >> (b + 1) << (b + 1)):
            total += ((M[(a, b)] & M[(a, c)] & M[(b, c)]) >> (c + 1)).bit_count()
    return total


def diagonals(S: IncidenceSpace, side: Side, verts) -> tuple[int, int, int]:
    """Meets of the three pairs of opposite sides: (01|23, 02|31, 03|12)."""
    v0, v1, v2, v3 = verts
    out = []
    for (a, b), (c, d) in (((v0, v1), (v2, v3)), ((v0, v2), (v3, v1)), ((v0, v3), (v1, v2))):
        common = span_mask(S, side, a, b) & span_mask(S, side, c, d)
        if common.bit_count() != 1:
            raise StructuralError(
                f"lines {a}{b} and {c}{d} share {common.bit_count()} {side}, expected one")
        out.append(lowest(common))
    return tuple(out)


# -- public API -------------------------------------------------------------

def find_quadrangles(S: IncidenceSpace, plane: int, mode: Mode = EXHAUSTIVE) -> list[Quadrangle]:
    """Complete quadrangles in ``plane``, one per vertex set, ascending."""
    if not 0 <= plane < S.num_planes:
        raise UsageError(f"plane id {plane} out of range")
    found = list(quadrangles_on(S, "points", plane))
    if not mode.exhaustive and mode.samples < len(found):
        found = sorted(mode.rng().sample(found, mode.samples))
    return [Quadrangle(plane, v) for v in found]


def find_dual_quadrangles(S: IncidenceSpace, point: int, mode: Mode = EXHAUSTIVE
                          ) -> list[DualQuadrangle]:
    if not 0 <= point < S.num_points:
        raise UsageError(f"point id {point} out of range")
    found = list(quadrangles_on(S, "planes", point))
    if not mode.exhaustive and mode.samples < len(found):
        found = sorted(mode.rng().sample(found, mode.samples))
    return [DualQuadrangle(point, v) for v in found]


def diagonal_points(S: IncidenceSpace, quad: Quadrangle) -> DiagonalTriple:
    if not in_general_position(S, "points", quad.plane, quad.vertices):
        raise UsageError(f"{quad} is not a complete quadrangle")
    return DiagonalTriple(*diagonals(S, "points", quad.vertices))


def diagonal_planes(S: IncidenceSpace, dq: DualQuadrangle) -> tuple[int, int, int]:
    if not in_general_position(S, "planes", dq.point, dq.faces):
        raise UsageError(f"{dq} is not a complete dual quadrangle")
    return diagonals(S, "planes", dq.faces)


_KEYS = {
    "points": ("plane", "vertices", "diagonals"),
    "planes": ("point", "faces", "diagonal_planes"),
}


def _enum_quads(S, side, start, stop):
    for host in range(start, stop):
        for v in quadrangles_on(S, side, host):
            yield (host,) + v


def _eval_harmonic(S, side, cfg):
    host, verts = cfg[0], cfg[1:]
    host_key, verts_key, diag_key = _KEYS[side]
    try:
        d = diagonals(S, side, verts)
    except StructuralError:
        if S.provenance == "pg3":
            raise
        return {host_key: host, verts_key: list(verts), "reason": "diagonal-not-singleton"}
    if polar_mask(S, side, _mask(*d)) != 1 << host:
        return {host_key: host, verts_key: list(verts), diag_key: sorted(d)}
    return None


def _draw_quad(S, side, rng):
    n_hosts = size(S, other(side))
    if n_hosts == 0:
        return None
    host = rng.below(n_hosts)
    on = bits(members(S, side, host))
    if len(on) < 4:
        return None
    verts = tuple(sorted(rng.sample(on, 4)))
    if not in_general_position(S, side, host, verts):
        return None
    return (host,) + verts


def _check(S, side, label, mode, workers) -> AxiomReport:
    n_hosts = size(S, other(side))
    t = search(S, side, _enum_quads, _eval_harmonic, n_hosts, mode, _draw_quad, workers)
    return report_from_tally(label, t, mode)


def check_axiom_h(S: IncidenceSpace, mode: Mode = EXHAUSTIVE, workers: int = 1) -> AxiomReport:
    """Every complete quadrangle has non-collinear diagonal points."""
    return _check(S, "points", "H", mode, workers)


def check_axiom_h_dual(S: IncidenceSpace, mode: Mode = EXHAUSTIVE, workers: int = 1
                       ) -> AxiomReport:
    """Every complete dual quadrangle has non-collinear diagonal planes."""
    return _check(S, "planes", "Hdual", mode, workers)


# -- proof replay -----------------------------------------------------------

CLAIM_DEPENDS = {
    2: (1,), 3: (1,), 4: (1,),
    5: (1, 2, 3, 4), 6: (1, 2, 3, 4, 5), 7: (1, 2, 3, 4), 8: (1, 2, 3, 4),
    9: (6, 7, 8),
}


def default_section_plane(S: IncidenceSpace, point: int) -> int:
    off = S.all_planes & ~S.point_rows[point]
    if not off:
        raise UsageError(f"every plane passes through point {point}")
    return lowest(off)


def replay_harmonicity_claims(
    S: IncidenceSpace, point: int, faces, omega: int | None = None
) -> ClaimTrace:
    """Recompute every set identity of the nine-claim argument for one figure.

    ``faces`` are four planes through ``point``, no three collinear; ``omega``
    is a plane missing ``point`` (default: the least such plane). Names in
    the trace: P the point, f0..f3 the faces, w = omega, X_ij the point where
    w meets f_i and f_j, d1..d3 the diagonal planes, D_ij the meets of Claim 7.
    """
    faces = tuple(faces)
    if len(faces) != 4 or not in_general_position(S, "planes", point, faces):
        raise UsageError(f"faces {faces} do not form a dual quadrangle at point {point}")
    if omega is None:
        omega = default_section_plane(S, point)
    if not 0 <= omega < S.num_planes:
        raise UsageError(f"plane id {omega} out of range")
    if S.point_rows[point] >> omega & 1:
        raise UsageError(f"plane {omega} passes through point {point}")

    trace = ClaimTrace(
        "harmonicity", {"point": point, "faces": list(faces), "omega": omega})
    tb = TraceBuilder(trace, CLAIM_DEPENDS)
    f = faces
    w = omega
    P = point
    X: dict[tuple[int, int], int] = {}
    delta: list[int] = []
    D: dict[tuple[int, int], int] = {}

    def pl_polar(*ids):  # planes -> points
        return polar_mask(S, "planes", _mask(*ids))

    def pt_polar(*ids):  # points -> planes
        return polar_mask(S, "points", _mask(*ids))

    def pl_span(a, b):
        return span_mask(S, "planes", a, b)

    def pt_span(a, b):
        return span_mask(S, "points", a, b)

    def x(i, j):
        return X[(min(i, j), max(i, j))]

    def claim1():
        for i, j in combinations(range(4), 2):
            got = tb.singleton(1, f"{{w, f{i}, f{j}}}^h is a singleton {{X{i}{j}}}",
                               "points", pl_polar(w, f[i], f[j]))
            if got is not None:
                X[(i, j)] = got

    def claim2():
        for i, j in combinations(range(4), 2):
            tb.equal(2, f"{{w, f{i}}}^hh & {{w, f{j}}}^hh = {{w}}", "planes",
                     pl_span(w, f[i]) & pl_span(w, f[j]), 1 << w)

    def claim3():
        for i, j in combinations(range(4), 2):
            tb.equal(3, f"{{P, X{i}{j}}}^hh = {{f{i}, f{j}}}^h", "points",
                     polar_mask(S, "planes", pt_polar(P, x(i, j))), pl_polar(f[i], f[j]))

    def claim4():
        for k in range(4):
            rest = [t for t in range(4) if t != k]
            for i, j in combinations(rest, 2):
                tb.equal(4, f"{{X{k}{i}, X{k}{j}}}^hh = {{w, f{k}}}^h", "points",
                         polar_mask(S, "planes", pt_polar(x(k, i), x(k, j))),
                         pl_polar(w, f[k]))

    def claim5():
        try:
            delta.extend(diagonals(S, "planes", f))
        except StructuralError as exc:
            tb.fact(5, f"diagonal planes are well defined ({exc})", False)
            return
        for k in (1, 2, 3):
            i, j = [t for t in (1, 2, 3) if t != k]
            tb.equal(5, f"{{P, X{i}{j}, X{k}0}}^h = {{d{k}}}", "planes",
                     pt_polar(P, x(i, j), x(k, 0)), 1 << delta[k - 1])

    def claim6():
        for k in (1, 2, 3):
            i, j = [t for t in (1, 2, 3) if t != k]
            tb.equal(6, f"{{X{i}{j}, X{k}0}}^hh = {{w, d{k}}}^h", "points",
                     polar_mask(S, "planes", pt_polar(x(i, j), x(k, 0))),
                     pl_polar(w, delta[k - 1]))

    def claim7():
        for i, j, k in ((1, 2, 3), (1, 3, 2), (2, 3, 1)):
            got = tb.singleton(
                7, f"{{X0{i}, X{j}{k}}}^hh & {{X0{j}, X{k}{i}}}^hh is a singleton {{D{i}{j}}}",
                "points", pt_span(x(0, i), x(j, k)) & pt_span(x(0, j), x(k, i)))
            if got is not None:
                D[(i, j)] = got

    quad = None

    def claim8():
        nonlocal quad
        quad = (x(0, 1), x(0, 2), x(2, 3), x(3, 1))
        names = ("X01", "X02", "X23", "X31")
        tb.fact(8, "X01, X02, X23, X31 are distinct", len(set(quad)) == 4)
        for t in combinations(range(4), 3):
            label = ", ".join(names[s] for s in t)
            tb.equal(8, f"{{{label}}}^h = {{w}}", "planes",
                     pt_polar(*(quad[s] for s in t)), 1 << w)

    def claim9():
        d12 = D[(1, 2)]
        tb.equal(9, "w^h & {d1, d2, d3}^h = {D12} & {X03, X12}^hh", "points",
                 S.plane_rows[w] & pl_polar(*delta),
                 (1 << d12) & pt_span(x(0, 3), x(1, 2)))
        try:
            quad_diags = diagonals(S, "points", quad)
        except StructuralError as exc:
            tb.fact(9, f"diagonal points of X01 X02 X23 X31 are defined ({exc})", False)
            quad_diags = None
        if quad_diags is not None:
            tb.equal(9, "diagonal points of X01 X02 X23 X31 = {D12, X12, X03}", "points",
                     _mask(*quad_diags), _mask(d12, x(1, 2), x(0, 3)))
        tb.equal(9, "{D12, X12, X03}^h = {w}", "planes",
                 pt_polar(d12, x(1, 2), x(0, 3)), 1 << w)
        tb.equal(9, "{d1, d2, d3}^h = {P}", "points", pl_polar(*delta), 1 << P)

    for n, body in enumerate(
            (claim1, claim2, claim3, claim4, claim5, claim6, claim7, claim8, claim9), start=1):
        tb.run(n, body, f"claim {n}")

    trace.derived = {
        "omega": w,
        "face_points": {f"{i}{j}": v for (i, j), v in sorted(X.items())},
        "diagonal_planes": list(delta),
        "diagonal_meets": {f"{i}{j}": v for (i, j), v in sorted(D.items())},
    }
    return trace


def sample_harmonicity_configs(S: IncidenceSpace, n: int, seed: int = 0):
    """Up to ``n`` distinct (point, faces, omega) figures drawn with SplitMix64."""
    from .sampling import SplitMix64, draw_unique

    def draw(rng):
        if S.num_points == 0:
            return None
        P = rng.below(S.num_points)
        through = bits(S.point_rows[P])
        off = bits(S.all_planes & ~S.point_rows[P])
        if len(through) < 4 or not off:
            return None
        faces = tuple(sorted(rng.sample(through, 4)))
        if not in_general_position(S, "planes", P, faces):
            return None
        return (P, faces, rng.choice(off))

    return list(draw_unique(SplitMix64(seed), n, draw))
