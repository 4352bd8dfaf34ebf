"""Compositions (ordered partitions), their bit encoding, and weak majorization."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterator

import numpy as np

from ..errors import DomainError, ResourceLimitError
from .paths import Path

MAJORIZATION_CAP = 12


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(isinstance(p, bool) or not isinstance(p, int) or p < 1 for p in parts):
            raise DomainError(f"composition parts must be positive integers, got {parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def partial_sums(self) -> tuple[int, ...]:
        return tuple(accumulate(self.parts))


def encode_composition(c: Composition) -> str:
    """Bit string of length n-1: each part p becomes p-1 zeros, each comma a 1."""
    return "1".join("0" * (p - 1) for p in c.parts)


def decode_composition(bits: str) -> Composition:
    if set(bits) - {"0", "1"}:
        raise DomainError(f"not a bit string: {bits!r}")
    return Composition(tuple(len(run) + 1 for run in bits.split("1")))


def compositions(n: int) -> Iterator[Composition]:
    """All 2**(n-1) compositions of n, in order of their encodings read as binary."""
    if n < 1:
        raise DomainError("n must be >= 1")
    for code in range(2 ** (n - 1)):
        yield decode_composition(format(code, f"0{n - 1}b") if n > 1 else "")


def motzkin_from_bitpair(s: str, t: str) -> Path:
    """Motzkin path with U where s_i < t_i, H where equal, D where s_i > t_i."""
    if len(s) != len(t):
        raise DomainError(f"bit strings differ in length: {len(s)} vs {len(t)}")
    if set(s + t) - {"0", "1"}:
        raise DomainError("inputs must be bit strings")
    return Path("".join("U" if a < b else "H" if a == b else "D" for a, b in zip(s, t)), "UHD")


def majorizes_weak(u: Composition, v: Composition) -> bool:
    """Prefix sums of u are >= those of v up to the shorter length."""
    if u.total != v.total:
        raise DomainError(f"compositions of different totals: {u.total} vs {v.total}")
    return all(a >= b for a, b in zip(u.partial_sums(), v.partial_sums()))


def majorization_probability_exact(n: int, *, max_n: int = MAJORIZATION_CAP) -> Fraction:
    """Fraction of ordered pairs of compositions of n in which the first majorizes the second.

    Counts all 4**(n-1) pairs by vectorized prefix-sum comparison.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > max_n:
        raise ResourceLimitError(f"majorization enumeration capped at n={max_n}, got n={n}")
    comps = list(compositions(n))
    width = n
    # pad so that comparisons beyond the shorter length always pass
    as_u = np.full((len(comps), width), n, dtype=np.int64)
    as_v = np.zeros((len(comps), width), dtype=np.int64)
    for row, c in enumerate(comps):
        ps = c.partial_sums()
        as_u[row, : len(ps)] = ps
        as_v[row, : len(ps)] = ps
    count = 0
    chunk = max(1, 2**22 // (len(comps) * width))
    for lo in range(0, len(comps), chunk):
        block = as_u[lo : lo + chunk, None, :] >= as_v[None, :, :]
        count += int(block.all(axis=2).sum())
    return Fraction(count, len(comps) ** 2)
