"""Model checking of the four foundation axioms by exhaustive search.

Each checker returns :class:`AxiomReport` objects. Axioms 1-3 come in a
point form and a plane form and are reported separately (``1p``/``1π`` ...);
axiom 4 is a single statement about both sides.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any

from .bits import bits
from .parallel import Tally, search
from .pg3 import IncidenceSpace
from .polarity import Side, other, pair_polar, polar_mask, rows, size, span_mask
from .sampling import EXHAUSTIVE, Mode

LABELS = ("1p", "1π", "2p", "2π", "3p", "3π", "4", "H", "Hdual", "P", "Pdual")

_SUFFIX = {"points": "p", "planes": "π"}


def label_key(report: AxiomReport) -> tuple:
    return (LABELS.index(report.axiom), report.variant or "")


@dataclass
class AxiomReport:
    axiom: str
    status: str
    checked: int
    violations: int = 0
    counterexample: dict[str, Any] | None = None
    exhaustive: bool = True
    sample_seed: int | None = None
    variant: str | None = None

    def __post_init__(self):
        if self.axiom not in LABELS:
            raise ValueError(f"unknown axiom label {self.axiom!r}")
        if (self.status == "fails") != (self.counterexample is not None):
            raise ValueError("a report fails exactly when it carries a counterexample")

    @property
    def ok(self) -> bool:
        return self.status != "fails"

    def to_dict(self) -> dict[str, Any]:
        d = {
            "axiom": self.axiom,
            "status": self.status,
            "checked": self.checked,
            "violations": self.violations,
            "counterexample": self.counterexample,
            "exhaustive": self.exhaustive,
        }
        if self.variant is not None:
            d["variant"] = self.variant
        if self.sample_seed is not None:
            d["sample_seed"] = self.sample_seed
        return d


def report_from_tally(axiom: str, t: Tally, mode: Mode, variant: str | None = None) -> AxiomReport:
    if t.violations:
        status = "fails"
    elif t.checked == 0:
        status = "vacuous"
    else:
        status = "holds"
    return AxiomReport(
        axiom=axiom,
        status=status,
        checked=t.checked,
        violations=t.violations,
        counterexample=t.first,
        exhaustive=mode.exhaustive,
        sample_seed=None if mode.exhaustive else mode.seed,
        variant=variant,
    )


# -- AXIOM 1: no element is incident with everything on the other side -----

def _enum_singletons(S, side, start, stop):
    return ((i,) for i in range(start, stop))


def _eval_axiom1(S, side, cfg):
    (i,) = cfg
    full = (1 << size(S, other(side))) - 1
    if rows(S, side)[i] == full:
        return {side: [i]}
    return None


def check_axiom1(S: IncidenceSpace, workers: int = 1) -> tuple[AxiomReport, AxiomReport]:
    """Always exhaustive: one configuration per element."""
    out = []
    for side in ("points", "planes"):
        t = search(S, side, _enum_singletons, _eval_axiom1, size(S, side), EXHAUSTIVE,
                   workers=workers)
        out.append(report_from_tally("1" + _SUFFIX[side], t, EXHAUSTIVE))
    return tuple(out)


# -- AXIOM 2: any two elements share more than two opposite elements -------

def _enum_pairs(S, side, start, stop, distinct):
    n = size(S, side)
    for a in range(start, stop):
        for b in range(a + 1 if distinct else a, n):
            yield (a, b)


def _enum_pairs_literal(S, side, start, stop):
    return _enum_pairs(S, side, start, stop, False)


def _enum_pairs_distinct(S, side, start, stop):
    return _enum_pairs(S, side, start, stop, True)


def _eval_axiom2(S, side, cfg):
    a, b = cfg
    common = pair_polar(S, side, a, b).bit_count()
    if common <= 2:
        return {side: sorted({a, b}), "pair": [a, b], "polar_size": common}
    return None


def _draw_pair(distinct):
    def draw(S, side, rng):
        n = size(S, side)
        if n == 0:
            return None
        a, b = rng.below(n), rng.below(n)
        if distinct and a == b:
            return None
        return (min(a, b), max(a, b))
    return draw


def _draw_pair_literal(S, side, rng):
    return _draw_pair(False)(S, side, rng)


def _draw_pair_distinct(S, side, rng):
    return _draw_pair(True)(S, side, rng)


def check_axiom2(
    S: IncidenceSpace, distinct_only: bool = False, mode: Mode = EXHAUSTIVE, workers: int = 1
) -> tuple[AxiomReport, AxiomReport]:
    """``distinct_only=False`` also tests A = B, the literal reading."""
    enum = _enum_pairs_distinct if distinct_only else _enum_pairs_literal
    draw = _draw_pair_distinct if distinct_only else _draw_pair_literal
    variant = "distinct" if distinct_only else "literal"
    out = []
    for side in ("points", "planes"):
        t = search(S, side, enum, _eval_axiom2, size(S, side), mode, draw, workers)
        out.append(report_from_tally("2" + _SUFFIX[side], t, mode, variant))
    return tuple(out)


# -- AXIOM 3: any three elements share an opposite element -----------------

def _enum_triples(S, side, start, stop):
    n = size(S, side)
    if n < 3:
        # Repeated elements are allowed, so the worst triple is the whole side.
        if start == 0 and stop > 0:
            yield tuple(range(n))
        return
    for a in range(start, stop):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                yield (a, b, c)


def _eval_axiom3(S, side, cfg):
    if polar_mask(S, side, sum(1 << i for i in cfg)) == 0:
        return {side: list(cfg)}
    return None


def _draw_triple(S, side, rng):
    n = size(S, side)
    if n < 3:
        return None
    return tuple(sorted(rng.sample(range(n), 3)))


def check_axiom3(S: IncidenceSpace, mode: Mode = EXHAUSTIVE, workers: int = 1
                 ) -> tuple[AxiomReport, AxiomReport]:
    out = []
    for side in ("points", "planes"):
        n = size(S, side)
        leading = n if n >= 3 else min(n, 1)
        t = search(S, side, _enum_triples, _eval_axiom3, leading, mode, _draw_triple, workers)
        out.append(report_from_tally("3" + _SUFFIX[side], t, mode))
    return tuple(out)


# -- AXIOM 4: two points and two planes, mutually incident, span one line --

def _enum_quads(S, side, start, stop):
    n = S.num_points
    r = S.point_rows
    for a in range(start, stop):
        for b in range(a + 1, n):
            common = r[a] & r[b]
            if common.bit_count() < 2:
                continue
            for alpha, beta in combinations(bits(common), 2):
                yield (a, b, alpha, beta)


def _eval_axiom4(S, side, cfg):
    a, b, alpha, beta = cfg
    planes_of_points = pair_polar(S, "points", a, b)
    points_of_planes = pair_polar(S, "planes", alpha, beta)
    failed = []
    if planes_of_points != span_mask(S, "planes", alpha, beta):
        failed.append("planes")
    if points_of_planes != span_mask(S, "points", a, b):
        failed.append("points")
    if failed:
        return {"points": [a, b], "planes": [alpha, beta], "failed": failed}
    return None


def _draw_quad(S, side, rng):
    n = S.num_points
    if n < 2:
        return None
    a, b = sorted(rng.sample(range(n), 2))
    common = bits(S.point_rows[a] & S.point_rows[b])
    if len(common) < 2:
        return None
    alpha, beta = sorted(rng.sample(common, 2))
    return (a, b, alpha, beta)


def check_axiom4(S: IncidenceSpace, mode: Mode = EXHAUSTIVE, workers: int = 1) -> AxiomReport:
    """Configurations are (A < B, alpha < beta) with both planes on both points.

    ``failed`` in a witness lists which equality broke: ``planes`` for
    {A,B}^h = {alpha,beta}^hh, ``points`` for {alpha,beta}^h = {A,B}^hh.
    """
    t = search(S, "points", _enum_quads, _eval_axiom4, S.num_points, mode, _draw_quad, workers)
    return report_from_tally("4", t, mode)


def check_foundations(S: IncidenceSpace, mode: Mode = EXHAUSTIVE, workers: int = 1
                      ) -> list[AxiomReport]:
    """Axioms 1-4, with both readings of axiom 2."""
    reports = list(check_axiom1(S, workers))
    reports += check_axiom2(S, False, mode, workers)
    reports += check_axiom2(S, True, mode, workers)
    reports += check_axiom3(S, mode, workers)
    reports.append(check_axiom4(S, mode, workers))
    return sorted(reports, key=label_key)
