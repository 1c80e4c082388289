"""Prime-field arithmetic GF(q) for small q."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, UsageError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, order=True)
class FieldElement:
    """A residue ``value`` modulo the prime ``modulus``."""

    value: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise UsageError(f"modulus {self.modulus} is not prime")
        if not 0 <= self.value < self.modulus:
            raise UsageError(f"value {self.value} out of range for GF({self.modulus})")

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise UsageError(f"expected FieldElement, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise UsageError(f"mismatched moduli {self.modulus} and {other.modulus}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement((self.value + other.value) % self.modulus, self.modulus)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement((self.value * other.value) % self.modulus, self.modulus)

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value % self.modulus, self.modulus)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self + (-other)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise DomainError("zero has no multiplicative inverse")
        return FieldElement(pow(self.value, self.modulus - 2, self.modulus), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


class GF:
    """Factory for elements of the prime field of order ``q``."""

    def __init__(self, q: int):
        if not isinstance(q, int) or not is_prime(q):
            raise UsageError(f"GF(q) needs a prime q, got {q!r}")
        self.q = q

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.q, self.q)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(v, self.q) for v in range(self.q)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self.q)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self.q)

    def __repr__(self) -> str:
        return f"GF({self.q})"


def ff_arith(kind: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    """Apply one of ``add``, ``mul``, ``neg``, ``inv`` to field elements."""
    binary = kind in ("add", "mul")
    if kind not in ("add", "mul", "neg", "inv"):
        raise UsageError(f"unknown field operation {kind!r}")
    if binary != (b is not None):
        raise UsageError(f"{kind} takes {'two' if binary else 'one'} operand(s)")
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "neg":
        return -a
    return a.inverse()
