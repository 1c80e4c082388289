"""Pappus configurations: hexagons alternately inscribed in two meeting lines,
their cross-joins, the projectivity axiom, its plane dual, and the replay of
the plane-section argument.

As in :mod:`pointplane.harmonicity`, the core is written for a ``side``:
``points`` gives hexagons and cross-joins, ``planes`` gives dual hexagons
and cross-meets.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .axioms import AxiomReport, report_from_tally
from .bits import bits, lowest
from .errors import StructuralError, UsageError
from .parallel import search
from .pg3 import IncidenceSpace
from .polarity import (ElementSet, Line, Side, all_lines, collinear, join_plane,
                       line_from_pair, meet, polar_mask, span_mask)
from .sampling import EXHAUSTIVE, Mode, SplitMix64, draw_unique
from .trace import ClaimTrace, TraceBuilder


@dataclass(frozen=True)
class IncidentLinePair:
    l1: Line
    l2: Line
    o: int
    w: int

    def common(self, side: Side) -> int:
        return self.o if side == "points" else self.w


@dataclass(frozen=True)
class Hexagon:
    pair: IncidentLinePair
    a1: int
    b1: int
    c1: int
    a2: int
    b2: int
    c2: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.a1, self.b1, self.c1, self.a2, self.b2, self.c2)


@dataclass(frozen=True)
class DualHexagon:
    pair: IncidentLinePair
    alpha1: int
    beta1: int
    gamma1: int
    alpha2: int
    beta2: int
    gamma2: int

    @property
    def faces(self) -> tuple[int, ...]:
        return (self.alpha1, self.beta1, self.gamma1, self.alpha2, self.beta2, self.gamma2)


def make_incident_pair(S: IncidenceSpace, l1: Line, l2: Line) -> IncidentLinePair:
    if l1 == l2:
        raise UsageError("an incident line pair needs two distinct lines")
    o = meet(S, l1, l2)
    w = join_plane(S, l1, l2)
    if o is None or w is None:
        raise UsageError("the lines are skew")
    return IncidentLinePair(l1, l2, o, w)


def incident_line_pairs(S: IncidenceSpace) -> tuple[IncidentLinePair, ...]:
    """All unordered pairs of meeting lines, ordered by (l1, l2) point-sets."""
    key = ("incident_pairs",)
    got = S._memo.get(key)
    if got is None:
        lines = all_lines(S)
        got = []
        for i, l1 in enumerate(lines):
            for l2 in lines[i + 1:]:
                if l1.points.mask & l2.points.mask:
                    got.append(make_incident_pair(S, l1, l2))
        got = tuple(got)
        S._memo[key] = got
    return got


# -- side-generic core ------------------------------------------------------

def _off_common(pair: IncidentLinePair, side: Side) -> tuple[tuple[int, ...], tuple[int, ...]]:
    c = pair.common(side)
    return (tuple(i for i in pair.l1.part(side).ids if i != c),
            tuple(i for i in pair.l2.part(side).ids if i != c))


def valid_hexagon(pair: IncidentLinePair, side: Side, six) -> bool:
    first, second = six[:3], six[3:]
    c = pair.common(side)
    on1, on2 = pair.l1.part(side), pair.l2.part(side)
    return (
        len(set(six)) == 6
        and c not in six
        and all(v in on1 for v in first)
        and all(v in on2 for v in second)
    )


def cross_points(S: IncidenceSpace, side: Side, six) -> tuple[int, int, int]:
    """Meets of opposite sides: (b1c2|b2c1, c1a2|c2a1, a1b2|a2b1)."""
    a1, b1, c1, a2, b2, c2 = six
    out = []
    for (p, q), (r, s) in (((b1, c2), (b2, c1)), ((c1, a2), (c2, a1)), ((a1, b2), (a2, b1))):
        common = span_mask(S, side, p, q) & span_mask(S, side, r, s)
        if common.bit_count() != 1:
            raise StructuralError(
                f"opposite sides {p}{q} and {r}{s} share {common.bit_count()} {side}")
        out.append(lowest(common))
    return tuple(out)


def _collinear_ids(S: IncidenceSpace, side: Side, ids) -> bool:
    return collinear(S, ElementSet.of(side, ids))


def hexagon_count(pair: IncidentLinePair, side: Side = "points", ordered: bool = False) -> int:
    k1, k2 = (len(x) for x in _off_common(pair, side))

    def falling(k):
        return k * (k - 1) * (k - 2) if k >= 3 else 0

    if ordered:
        return 2 * falling(k1) * falling(k2)
    return falling(k1) // 6 * falling(k2)


def _six_on(pair: IncidentLinePair, side: Side, ordered: bool):
    first, second = _off_common(pair, side)
    if ordered:
        for x, y in ((first, second), (second, first)):
            for t1 in permutations(x, 3):
                for t2 in permutations(y, 3):
                    yield t1 + t2
    else:
        for t1 in combinations(first, 3):
            for t2 in permutations(second, 3):
                yield t1 + t2


def _enum(S, side, start, stop, ordered):
    pairs = incident_line_pairs(S)
    for idx in range(start, stop):
        for six in _six_on(pairs[idx], side, ordered):
            yield (idx,) + six


def _enum_reps(S, side, start, stop):
    return _enum(S, side, start, stop, False)


def _enum_ordered(S, side, start, stop):
    return _enum(S, side, start, stop, True)


def _witness(S, side, idx, six, extra):
    pair = incident_line_pairs(S)[idx]
    names = ("a1", "b1", "c1", "a2", "b2", "c2")
    return {
        "o": pair.o,
        "w": pair.w,
        "l1": list(pair.l1.part(side).ids),
        "l2": list(pair.l2.part(side).ids),
        "side": side,
        "vertices": dict(zip(names, six)),
        **extra,
    }


def _eval_pappus(S, side, cfg):
    idx, six = cfg[0], cfg[1:]
    try:
        cross = cross_points(S, side, six)
    except StructuralError:
        if S.provenance == "pg3":
            raise
        return _witness(S, side, idx, six, {"reason": "cross-point-not-singleton"})
    if not _collinear_ids(S, side, cross):
        return _witness(S, side, idx, six, {"cross": list(cross)})
    return None


def _draw_six(S, side, rng):
    pairs = incident_line_pairs(S)
    if not pairs:
        return None
    idx = rng.below(len(pairs))
    first, second = _off_common(pairs[idx], side)
    if len(first) < 3 or len(second) < 3:
        return None
    return (idx,) + tuple(sorted(rng.sample(first, 3))) + tuple(rng.sample(second, 3))


def _check(S, side, label, mode, workers, ordered) -> AxiomReport:
    enum = _enum_ordered if ordered else _enum_reps
    t = search(S, side, enum, _eval_pappus, len(incident_line_pairs(S)), mode, _draw_six,
               workers)
    return report_from_tally(label, t, mode)


# -- public API -------------------------------------------------------------

def hexagons(S: IncidenceSpace, pair: IncidentLinePair, ordered: bool = False):
    """Hexagons inscribed in ``pair``.

    By default one representative per figure: relabelling the letters a, b, c
    on both lines at once, or swapping the two lines, permutes the cross-joins
    without changing them, so a1 < b1 < c1 is fixed. ``ordered`` yields every
    labelling on both line orders.
    """
    for six in _six_on(pair, "points", ordered):
        first_on_l1 = six[0] in pair.l1.points
        p = pair if first_on_l1 else IncidentLinePair(pair.l2, pair.l1, pair.o, pair.w)
        yield Hexagon(p, *six)


def dual_hexagons(S: IncidenceSpace, pair: IncidentLinePair, ordered: bool = False):
    for six in _six_on(pair, "planes", ordered):
        first_on_l1 = six[0] in pair.l1.planes
        p = pair if first_on_l1 else IncidentLinePair(pair.l2, pair.l1, pair.o, pair.w)
        yield DualHexagon(p, *six)


def cross_joins(S: IncidenceSpace, h: Hexagon) -> tuple[int, int, int]:
    if not valid_hexagon(h.pair, "points", h.vertices):
        raise UsageError(f"not an inscribed hexagon: {h.vertices}")
    return cross_points(S, "points", h.vertices)


def cross_meets(S: IncidenceSpace, dh: DualHexagon) -> tuple[int, int, int]:
    if not valid_hexagon(dh.pair, "planes", dh.faces):
        raise UsageError(f"not an inscribed dual hexagon: {dh.faces}")
    return cross_points(S, "planes", dh.faces)


def pappus_holds(S: IncidenceSpace, h: Hexagon) -> bool:
    return _collinear_ids(S, "points", cross_joins(S, h))


def dual_pappus_holds(S: IncidenceSpace, dh: DualHexagon) -> bool:
    return _collinear_ids(S, "planes", cross_meets(S, dh))


def check_axiom_p(S: IncidenceSpace, mode: Mode = EXHAUSTIVE, workers: int = 1,
                  ordered: bool = False) -> AxiomReport:
    """Cross-joins of every inscribed hexagon are collinear."""
    return _check(S, "points", "P", mode, workers, ordered)


def check_axiom_p_dual(S: IncidenceSpace, mode: Mode = EXHAUSTIVE, workers: int = 1,
                       ordered: bool = False) -> AxiomReport:
    """Cross-meets of every inscribed dual hexagon are collinear."""
    return _check(S, "planes", "Pdual", mode, workers, ordered)


def dual_hexagon_from_planes(S: IncidenceSpace, six) -> DualHexagon:
    """Build a dual hexagon from (alpha1, beta1, gamma1, alpha2, beta2, gamma2)."""
    six = tuple(six)
    if len(six) != 6:
        raise UsageError("a dual hexagon has six planes")
    l1 = line_from_pair(S, six[0], six[1], "planes")
    l2 = line_from_pair(S, six[3], six[4], "planes")
    pair = make_incident_pair(S, l1, l2)
    if not valid_hexagon(pair, "planes", six):
        raise UsageError(f"planes {six} are not alternately inscribed in an incident pair")
    return DualHexagon(pair, *six)


# -- plane-section replay ---------------------------------------------------

SECTION_DEPENDS = {2: (1,), 3: (2,), 4: (2, 3), 5: (3, 4), 6: (4, 5)}


def _mask(*ids: int) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def replay_section_trace(S: IncidenceSpace, dh: DualHexagon, pi: int | None = None
                         ) -> ClaimTrace:
    """Cut the dual figure by a plane ``pi`` missing O and recheck every step.

    Steps: (1) the trace points of the two lines, (2) the six meets of the
    trace lines, (3) the lines through those meets are cut out by pi and the
    cross-meet planes, (4) the Pappus point S of the sectioned figure,
    (5) S lies in all three cross-meet planes, (6) the cross-meet planes all
    contain O and S. ``trace.verdict`` is the outcome of step 6.
    """
    if not valid_hexagon(dh.pair, "planes", dh.faces):
        raise UsageError(f"not an inscribed dual hexagon: {dh.faces}")
    O = dh.pair.o
    if pi is None:
        off = S.all_planes & ~S.point_rows[O]
        if not off:
            raise UsageError(f"every plane passes through point {O}")
        pi = lowest(off)
    if not 0 <= pi < S.num_planes:
        raise UsageError(f"plane id {pi} out of range")
    if S.point_rows[O] >> pi & 1:
        raise UsageError(f"section plane {pi} passes through O = {O}")

    al = {1: dh.alpha1, 2: dh.alpha2}
    be = {1: dh.beta1, 2: dh.beta2}
    ga = {1: dh.gamma1, 2: dh.gamma2}
    fam = {"alpha": al, "beta": be, "gamma": ga}
    lines = {1: dh.pair.l1, 2: dh.pair.l2}
    trace = ClaimTrace("projectivity", {
        "planes": list(dh.faces), "o": O, "w": dh.pair.w, "pi": pi})
    tb = TraceBuilder(trace, SECTION_DEPENDS)

    def pl_polar(*ids):
        return polar_mask(S, "planes", _mask(*ids))

    def pt_polar(*ids):
        return polar_mask(S, "points", _mask(*ids))

    def pt_span(a, b):
        return span_mask(S, "points", a, b)

    foot: dict[int, int] = {}
    cut: dict[tuple[str, str, int, int], int] = {}
    cross: dict[str, int] = {}
    pappus: dict[str, int] = {}
    verdict = None

    def step1():
        for k in (1, 2):
            lp = lines[k].points.mask
            tb.equal(1, f"(l{k})_P = {{alpha{k}, beta{k}, gamma{k}}}^h", "points",
                     pl_polar(al[k], be[k], ga[k]), lp)
            for x, y in (("beta", "gamma"), ("gamma", "alpha"), ("alpha", "beta")):
                tb.equal(1, f"(l{k})_P = {{{x}{k}, {y}{k}}}^h", "points",
                         pl_polar(fam[x][k], fam[y][k]), lp)
            got = tb.singleton(1, f"{{pi, beta{k}, gamma{k}}}^h is a singleton {{P{k}}}",
                               "points", pl_polar(pi, be[k], ga[k]))
            if got is not None:
                foot[k] = got
                for x, y in (("gamma", "alpha"), ("alpha", "beta")):
                    tb.equal(1, f"{{pi, {x}{k}, {y}{k}}}^h = {{P{k}}}", "points",
                             pl_polar(pi, fam[x][k], fam[y][k]), 1 << got)

    def step2():
        letters = (("a", "alpha"), ("b", "beta"), ("c", "gamma"))
        for (x, X), (y, Y) in ((letters[0], letters[1]), (letters[1], letters[2]),
                               (letters[2], letters[0])):
            for i, j in ((1, 2), (2, 1)):
                both = pl_polar(pi, fam[X][i], fam[Y][j])
                tb.equal(2, f"{{pi, {X}{i}, {Y}{j}}}^h = ({x}{i})_P & ({y}{j})_P", "points",
                         both, pl_polar(pi, fam[X][i]) & pl_polar(pi, fam[Y][j]))
                got = tb.singleton(2, f"{{pi, {X}{i}, {Y}{j}}}^h is a singleton {{{x}{i}.{y}{j}}}",
                                   "points", both)
                if got is not None:
                    cut[(x, y, i, j)] = got
                    cut[(y, x, j, i)] = got

    def step3():
        try:
            a0, b0, c0 = cross_points(S, "planes", dh.faces)
        except StructuralError as exc:
            tb.fact(3, f"cross-meets are defined ({exc})", False)
            return
        cross.update(alpha0=a0, beta0=b0, gamma0=c0)
        for (x, y), name in ((("a", "b"), "gamma0"), (("b", "c"), "alpha0"),
                             (("c", "a"), "beta0")):
            p, q = cut[(x, y, 1, 2)], cut[(x, y, 2, 1)]
            tb.fact(3, f"{{{x}1.{y}2, {x}2.{y}1}} lie on pi and {name}",
                    (S.point_rows[p] & S.point_rows[q]) >> pi & 1 == 1
                    and (S.point_rows[p] & S.point_rows[q]) >> cross[name] & 1 == 1)
            tb.equal(3, f"{{{x}1.{y}2, {x}2.{y}1}}^hh = {{pi, {name}}}^h", "points",
                     pt_span(p, q), pl_polar(pi, cross[name]))

    def step4():
        c1, c2 = pl_polar(pi, ga[1]), pl_polar(pi, ga[2])
        on_c1 = (foot[1], cut[("b", "c", 2, 1)], cut[("c", "a", 1, 2)])
        on_c2 = (foot[2], cut[("c", "a", 2, 1)], cut[("b", "c", 1, 2)])
        tb.fact(4, "P1, b2.c1, c1.a2 lie on (c1)_P", all(c1 >> v & 1 for v in on_c1))
        tb.fact(4, "P2, c2.a1, b1.c2 lie on (c2)_P", all(c2 >> v & 1 for v in on_c2))
        first = pt_span(cut[("b", "c", 1, 2)], cut[("b", "c", 2, 1)])
        second = pt_span(cut[("c", "a", 1, 2)], cut[("c", "a", 2, 1)])
        got = tb.singleton(4, "(b1.c2)(b2.c1) . (c1.a2)(c2.a1) is a singleton {S}",
                           "points", first & second)
        if got is None:
            return
        pappus["S"] = got
        tb.fact(4, "S != O", got != O)
        tb.fact(4, "S lies on (a1.b2)(a2.b1)",
                pt_span(cut[("a", "b", 1, 2)], cut[("a", "b", 2, 1)]) >> got & 1 == 1)

    def step5():
        s = pappus["S"]
        for name in ("alpha0", "beta0", "gamma0"):
            tb.fact(5, f"S in {{pi, {name}}}^h", pl_polar(pi, cross[name]) >> s & 1 == 1)

    def step6():
        nonlocal verdict
        through = pt_polar(O, pappus["S"])
        tb.equal(6, "{alpha0, beta0, gamma0} & {O, S}^h = {alpha0, beta0, gamma0}", "planes",
                 _mask(*cross.values()) & through, _mask(*cross.values()))
        verdict = trace.claim_status(6) == "pass"

    for n, body in enumerate((step1, step2, step3, step4, step5, step6), start=1):
        tb.run(n, body, f"step {n}")

    trace.verdict = verdict
    trace.derived = {
        "trace_points": {f"P{k}": v for k, v in sorted(foot.items())},
        "meets": {f"{x}{i}.{y}{j}": cut[(x, y, i, j)]
                  for x, y in (("a", "b"), ("b", "c"), ("c", "a")) for i, j in ((1, 2), (2, 1))
                  if (x, y, i, j) in cut},
        "cross_meets": [cross.get(k) for k in ("alpha0", "beta0", "gamma0")] if cross else [],
        "S": pappus.get("S"),
    }
    return trace


def sample_section_configs(S: IncidenceSpace, n: int, seed: int = 0):
    """Up to ``n`` distinct (six planes, pi) figures drawn with SplitMix64."""
    pairs = incident_line_pairs(S)

    def draw(rng):
        cfg = _draw_six(S, "planes", rng)
        if cfg is None:
            return None
        pair = pairs[cfg[0]]
        off = bits(S.all_planes & ~S.point_rows[pair.o])
        return (cfg[1:], rng.choice(off))

    return list(draw_unique(SplitMix64(seed), n, draw))
