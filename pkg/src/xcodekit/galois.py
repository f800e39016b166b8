"""Arithmetic in prime fields F_p for odd primes p.

Only prime moduli are supported; moduli are capped below 2**31 so every
product fits comfortably in 64-bit intermediates.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_MODULUS = 1 << 31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n below 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo an odd prime ``p`` (3 <= p < 2**31)."""

    p: int

    def __post_init__(self) -> None:
        if self.p >= MAX_MODULUS:
            raise ValueError(f"modulus {self.p} too large; must be below 2**31")
        if self.p < 3 or self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not an odd prime")

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)


@dataclass(frozen=True)
class FieldElement:
    """A residue in [0, p) tied to its field; mixing fields is an error."""

    value: int
    field: PrimeField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"value {self.value} outside [0, {self.field.p})")

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"mixed fields F_{self.field.p} and F_{other.field.p}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement((self.value + other.value) % self.field.p, self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement((self.value - other.value) % self.field.p, self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.value * other.value % self.field.p, self.field)

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.value % self.field.p, self.field)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"{self.value} (mod {self.field.p})"
