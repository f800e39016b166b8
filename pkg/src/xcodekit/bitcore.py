"""Packed binary codewords and the three vector operations everything else uses.

Bits live in a single Python integer (bit ``i`` of ``mask`` is position ``i``),
so OR / XOR / cover tests run word-parallel in C no matter the length.  The
verifier executes these operations billions of times, which is why nothing
here ever materialises per-bit lists.  Codeword values are immutable and
hashable by bit content.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True)
class Codeword:
    """Fixed-length binary vector with a cached population count.

    ``mask`` holds the bits, ``length`` the dimension.  ``weight`` is derived
    from ``mask`` at construction and excluded from equality, so two codewords
    compare equal exactly when their bit content and length agree.
    """

    mask: int
    length: int
    weight: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"codeword length must be positive, got {self.length}")
        if not 0 <= self.mask < (1 << self.length):
            raise ValueError(f"mask {self.mask:#x} does not fit in {self.length} bits")
        object.__setattr__(self, "weight", self.mask.bit_count())

    @classmethod
    def zero(cls, length: int) -> "Codeword":
        return cls(0, length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Codeword":
        mask = 0
        n = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit values must be 0 or 1, got {b!r}")
            mask |= b << n
            n += 1
        return cls(mask, n)

    @classmethod
    def from_string(cls, text: str) -> "Codeword":
        """Parse a 0/1 string; the leftmost character is position 0."""
        return cls.from_bits(int(c) if c in "01" else -1 for c in text)

    @classmethod
    def from_support(cls, support: Iterable[int], length: int) -> "Codeword":
        mask = 0
        for i in support:
            if not 0 <= i < length:
                raise ValueError(f"support index {i} out of range for length {length}")
            mask |= 1 << i
        return cls(mask, length)

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise ValueError(f"bit index {i} out of range for length {self.length}")
        return (self.mask >> i) & 1

    def support(self) -> tuple[int, ...]:
        """Indices of the 1-bits, ascending."""
        m = self.mask
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def to01(self) -> str:
        """Render as a 0/1 string, position 0 leftmost."""
        return "".join("1" if (self.mask >> i) & 1 else "0" for i in range(self.length))

    def __or__(self, other: "Codeword") -> "Codeword":
        return superimpose(self, other)

    def __xor__(self, other: "Codeword") -> "Codeword":
        return add(self, other)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Codeword({self.to01()!r})"


def _require_same_length(a: Codeword, b: Codeword) -> None:
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} vs {b.length}")


def superimpose(a: Codeword, b: Codeword) -> Codeword:
    """Bitwise OR of two codewords of equal length."""
    _require_same_length(a, b)
    return Codeword(a.mask | b.mask, a.length)


def add(a: Codeword, b: Codeword) -> Codeword:
    """Bit-by-bit GF(2) sum (XOR) of two codewords of equal length."""
    _require_same_length(a, b)
    return Codeword(a.mask ^ b.mask, a.length)


def covers(a: Codeword, b: Codeword) -> bool:
    """True when ``a`` OR ``b`` equals ``a``, i.e. supp(b) is inside supp(a)."""
    _require_same_length(a, b)
    return b.mask & ~a.mask == 0


def fold_or(words: Iterable[Codeword], length: int | None = None) -> Codeword:
    """OR over a collection; the empty collection needs an explicit length."""
    mask = 0
    n = None
    for w in words:
        if n is None:
            n = w.length
        elif w.length != n:
            raise ValueError(f"length mismatch: {n} vs {w.length}")
        mask |= w.mask
    if n is None:
        if length is None:
            raise ValueError("empty collection needs a target length")
        return Codeword(0, length)
    if length is not None and length != n:
        raise ValueError(f"length mismatch: {n} vs requested {length}")
    return Codeword(mask, n)


def fold_xor(words: Iterable[Codeword], length: int | None = None) -> Codeword:
    """XOR over a collection; the empty collection needs an explicit length."""
    mask = 0
    n = None
    for w in words:
        if n is None:
            n = w.length
        elif w.length != n:
            raise ValueError(f"length mismatch: {n} vs {w.length}")
        mask ^= w.mask
    if n is None:
        if length is None:
            raise ValueError("empty collection needs a target length")
        return Codeword(0, length)
    if length is not None and length != n:
        raise ValueError(f"length mismatch: {n} vs requested {length}")
    return Codeword(mask, n)
