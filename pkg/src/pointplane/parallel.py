"""Deterministic partitioned search.

A search is split into ordered chunks; each chunk returns a :class:`Tally`
and the reducer keeps the first violation in chunk order. Because chunks are
contiguous ranges of the enumeration order, the merged witness is the same
whatever the worker count.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import Any, Callable, Sequence


@dataclass
class Tally:
    checked: int = 0
    violations: int = 0
    first: Any = None

    def record(self, witness) -> None:
        self.violations += 1
        if self.first is None:
            self.first = witness


def merge(tallies: Sequence[Tally]) -> Tally:
    out = Tally()
    for t in tallies:
        out.checked += t.checked
        out.violations += t.violations
        if out.first is None:
            out.first = t.first
    return out


def split(n: int, parts: int) -> list[tuple[int, int]]:
    """Cut ``range(n)`` into at most ``parts`` contiguous (start, stop) pieces."""
    parts = max(1, min(parts, n))
    step, extra = divmod(n, parts)
    out, start = [], 0
    for k in range(parts):
        stop = start + step + (1 if k < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def run_chunks(fn: Callable[..., Tally], space, chunks: Sequence, workers: int = 1) -> Tally:
    if workers <= 1 or len(chunks) <= 1:
        return merge([fn(space, c) for c in chunks])
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return merge(list(pool.map(fn, repeat(space), chunks)))


def chunk_count(workers: int) -> int:
    return 1 if workers <= 1 else 4 * workers


def _scan(space, job) -> Tally:
    enumerate_fn, evaluate_fn, side, payload = job
    configs = payload if isinstance(payload, list) else enumerate_fn(space, side, *payload)
    t = Tally()
    for cfg in configs:
        t.checked += 1
        witness = evaluate_fn(space, side, cfg)
        if witness is not None:
            t.record(witness)
    return t


def search(space, side, enumerate_fn, evaluate_fn, leading: int, mode, draw_fn=None,
           workers: int = 1) -> Tally:
    """Evaluate every configuration (or a seeded sample of them).

    ``enumerate_fn(space, side, start, stop)`` yields configurations whose
    leading index lies in ``[start, stop)``, in lexicographic order.
    ``evaluate_fn`` returns a witness for a violation, else None.
    ``draw_fn(space, side, rng)`` proposes one random configuration (or None).
    Sampled configurations are sorted before evaluation, so the reported
    witness is the least violating sample.
    """
    from .sampling import draw_unique

    if mode.exhaustive:
        jobs = [(enumerate_fn, evaluate_fn, side, rng_)
                for rng_ in split(leading, chunk_count(workers))]
    else:
        rng = mode.rng()
        configs = sorted(draw_unique(rng, mode.samples, lambda r: draw_fn(space, side, r)))
        pieces = split(len(configs), chunk_count(workers))
        jobs = [(enumerate_fn, evaluate_fn, side, configs[a:b]) for a, b in pieces]
    return run_chunks(_scan, space, jobs, workers)
