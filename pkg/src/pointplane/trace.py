"""Step-by-step records of replayed proofs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .bits import bits


@dataclass
class ClaimStep:
    claim: int
    identity: str
    status: str  # "pass" | "fail" | "skipped"
    side: str | None = None
    lhs: tuple[int, ...] | None = None
    rhs: tuple[int, ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "identity": self.identity,
            "side": self.side,
            "lhs": None if self.lhs is None else list(self.lhs),
            "rhs": None if self.rhs is None else list(self.rhs),
            "status": self.status,
        }


@dataclass
class ClaimTrace:
    kind: str
    config: dict[str, Any]
    steps: list[ClaimStep] = field(default_factory=list)
    derived: dict[str, Any] = field(default_factory=dict)
    verdict: bool | None = None

    def claims(self) -> list[int]:
        return sorted({s.claim for s in self.steps})

    def claim_status(self, claim: int) -> str:
        got = [s.status for s in self.steps if s.claim == claim]
        if not got:
            return "missing"
        if "fail" in got:
            return "fail"
        if "skipped" in got:
            return "skipped"
        return "pass"

    def failed_claims(self) -> list[int]:
        return [c for c in self.claims() if self.claim_status(c) != "pass"]

    @property
    def passed(self) -> bool:
        return bool(self.steps) and all(s.status == "pass" for s in self.steps)

    def to_dict(self) -> dict[str, Any]:
        d = {
            "kind": self.kind,
            "config": self.config,
            "claims": [s.to_dict() for s in self.steps],
            "derived": self.derived,
            "passed": self.passed,
        }
        if self.verdict is not None:
            d["verdict"] = self.verdict
        return d


class TraceBuilder:
    """Runs claims in order, skipping any claim whose prerequisites did not pass."""

    def __init__(self, trace: ClaimTrace, depends: dict[int, Iterable[int]]):
        self.trace = trace
        self.depends = {k: tuple(v) for k, v in depends.items()}

    def run(self, claim: int, body: Callable[[], None], label: str = "") -> bool:
        blocked = [d for d in self.depends.get(claim, ()) if self.trace.claim_status(d) != "pass"]
        if blocked:
            self.trace.steps.append(
                ClaimStep(claim, f"{label} (skipped: needs {blocked})".strip(), "skipped"))
            return False
        body()
        return self.trace.claim_status(claim) == "pass"

    def equal(self, claim: int, identity: str, side: str, lhs: int, rhs: int) -> bool:
        ok = lhs == rhs
        self.trace.steps.append(
            ClaimStep(claim, identity, "pass" if ok else "fail", side, bits(lhs), bits(rhs)))
        return ok

    def singleton(self, claim: int, identity: str, side: str, lhs: int) -> int | None:
        ok = lhs.bit_count() == 1
        self.trace.steps.append(
            ClaimStep(claim, identity, "pass" if ok else "fail", side, bits(lhs), None))
        return bits(lhs)[0] if ok else None

    def fact(self, claim: int, identity: str, ok: bool) -> bool:
        self.trace.steps.append(ClaimStep(claim, identity, "pass" if ok else "fail"))
        return ok
