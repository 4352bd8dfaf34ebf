"""Generic sets, signed permutations with the ballot property, and collisions.

A set of positive reals is *generic* when no nontrivial rational combination
of its elements vanishes.  That cannot be decided for arbitrary reals, so
genericity is certified here by a bounded-coefficient test: no vanishing
combination with coefficients in {-2, ..., 2}.  A weaker certificate,
*collision-free*, uses coefficients in {-1, 0, 1}; it says exactly that no two
distinct disjoint index sets have equal weight, which is all that ballot
counting needs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial, lcm
from typing import Iterable, Iterator, Sequence

from ..errors import DomainError, ResourceLimitError, VerificationError

GENERICITY_CAP = 12
BALLOT_CAP = 10

LEVEL_BOUNDS = {"generic": 2, "collision_free": 1}


def to_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction, decimal/fraction string or float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a rational: {value!r}")
    if isinstance(value, (int, float, str)):
        try:
            return Fraction(value.strip() if isinstance(value, str) else value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {value!r}") from exc
    raise DomainError(f"not a rational: {value!r}")


def _scaled_integers(values: Sequence[Fraction]) -> list[int]:
    den = lcm(*(v.denominator for v in values))
    return [int(v * den) for v in values]


def _check_positive_distinct(values: Sequence[Fraction]) -> None:
    if not values:
        raise DomainError("empty value list")
    if any(v <= 0 for v in values):
        raise DomainError("values must be positive")
    if len(set(values)) != len(values):
        raise DomainError("values must be distinct")


def _has_vanishing_combination(ints: Sequence[int], bound: int) -> bool:
    """Meet-in-the-middle search for a nonzero coefficient vector with zero sum."""
    coeffs = range(-bound, bound + 1)

    def half_sums(part: Sequence[int]) -> dict[int, bool]:
        # sum -> reachable by some nonzero coefficient vector
        sums = {0: False}
        for a in part:
            nxt: dict[int, bool] = {}
            for s, nonzero in sums.items():
                for c in coeffs:
                    key = s + c * a
                    nxt[key] = nxt.get(key, False) or nonzero or c != 0
            sums = nxt
        return sums

    mid = len(ints) // 2
    left, right = half_sums(ints[:mid]), half_sums(ints[mid:])
    if left[0] or right[0]:
        return True
    # both halves nonzero with opposite sums
    return any(nz and left.get(-s, False) for s, nz in right.items())


def is_generic(values: Iterable, *, bound: int = 2, max_n: int = GENERICITY_CAP) -> bool:
    """True iff no nonzero integer vector in {-bound..bound}^n annihilates ``values``."""
    vals = [to_fraction(v) for v in values]
    _check_positive_distinct(vals)
    if len(vals) > max_n:
        raise ResourceLimitError(f"genericity test capped at n={max_n}, got n={len(vals)}")
    return not _has_vanishing_combination(_scaled_integers(vals), bound)


def is_collision_free(values: Iterable, *, max_n: int = GENERICITY_CAP) -> bool:
    return is_generic(values, bound=1, max_n=max_n)


@dataclass(frozen=True)
class GenericSet:
    """Ordered, certified set of distinct positive rationals a_1..a_n.

    ``level`` records which certificate was checked at construction:
    ``"generic"`` (coefficients up to 2) or ``"collision_free"`` (up to 1).
    """

    values: tuple[Fraction, ...]
    level: str = "generic"

    def __post_init__(self):
        vals = tuple(to_fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.level not in LEVEL_BOUNDS:
            raise DomainError(f"unknown genericity level {self.level!r}")
        if not is_generic(vals, bound=LEVEL_BOUNDS[self.level]):
            raise DomainError(f"values {[str(v) for v in vals]} fail the {self.level} certificate")

    @property
    def n(self) -> int:
        return len(self.values)

    def weight(self, indices: Iterable[int]) -> Fraction:
        return sum((self.values[i] for i in indices), Fraction(0))

    def replace(self, index: int, value, level: str | None = None) -> GenericSet:
        vals = list(self.values)
        vals[index] = to_fraction(value)
        return GenericSet(tuple(vals), level or self.level)

    def __len__(self) -> int:
        return len(self.values)


def random_generic_set(n: int, rng: random.Random, *, bits: int = 32) -> GenericSet:
    """Rejection-sample a generic n-set with numerators and denominators in [1, 2**bits)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    hi = 2**bits - 1
    while True:
        vals = [Fraction(rng.randint(1, hi), rng.randint(1, hi)) for _ in range(n)]
        if len(set(vals)) == n and is_generic(vals):
            return GenericSet(tuple(vals))


def has_ballot_property(seq: Iterable) -> bool:
    """True iff every prefix sum is strictly positive (vacuously true when empty)."""
    total = 0
    for s in seq:
        total += s
        if total <= 0:
            return False
    return True


@dataclass(frozen=True)
class SignedPermutation:
    """A permutation ``order`` of range(n) with a sign per position.

    The resolved sequence against a set A is ``signs[i] * A[order[i]]``.
    Indices are 0-based.
    """

    order: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "signs", tuple(self.signs))
        if sorted(self.order) != list(range(len(self.order))):
            raise DomainError(f"order {self.order} is not a permutation")
        if len(self.signs) != len(self.order) or any(e not in (1, -1) for e in self.signs):
            raise DomainError(f"signs {self.signs} must be +-1, one per position")

    def resolve(self, A: GenericSet) -> tuple[Fraction, ...]:
        if A.n != len(self.order):
            raise DomainError("signed permutation and set differ in size")
        return tuple(e * A.values[i] for e, i in zip(self.signs, self.order))

    def has_ballot_property(self, A: GenericSet) -> bool:
        return has_ballot_property(self.resolve(A))

    @classmethod
    def from_sequence(cls, seq: Sequence, A: GenericSet) -> SignedPermutation:
        index = {v: i for i, v in enumerate(A.values)}
        order, signs = [], []
        for s in map(to_fraction, seq):
            if abs(s) not in index:
                raise DomainError(f"{s} is not a signed element of the set")
            order.append(index[abs(s)])
            signs.append(1 if s > 0 else -1)
        return cls(tuple(order), tuple(signs))


def _ballot_dfs(ints: Sequence[int], emit: bool, stats: dict | None):
    n = len(ints)
    full = (1 << n) - 1
    # completions of a prefix whose sum exceeds everything left are all valid
    free = [factorial(r) * 2**r for r in range(n + 1)]
    order: list[int] = []
    signs: list[int] = []
    nodes = 0
    found: list[SignedPermutation] = []

    def rec(mask: int, total: int, left: int, depth: int) -> int:
        nonlocal nodes
        nodes += 1
        if mask == full:
            if emit:
                found.append(SignedPermutation(tuple(order), tuple(signs)))
            return 1
        if not emit and total > left:
            return free[n - depth]
        count = 0
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                continue
            for e in (1, -1):
                t = total + e * ints[i]
                if t > 0:
                    order.append(i)
                    signs.append(e)
                    count += rec(mask | bit, t, left - ints[i], depth + 1)
                    order.pop()
                    signs.pop()
        return count

    count = rec(0, 0, sum(ints), 0)
    if stats is not None:
        stats["nodes"] = nodes
    return count, found


def _check_ballot_input(A: GenericSet, max_n: int) -> None:
    if not isinstance(A, GenericSet):
        raise DomainError("expected a certified GenericSet")
    if A.n > max_n:
        raise ResourceLimitError(f"ballot enumeration capped at n={max_n}, got n={A.n}")


def count_ballot_signed_perms(A: GenericSet, *, max_n: int = BALLOT_CAP, stats: dict | None = None) -> int:
    """Number of signed permutations of A whose prefix sums are all positive.

    Depth-first search that abandons a prefix as soon as its sum is not
    positive.  Pass ``stats={}`` to receive the number of search nodes.
    """
    _check_ballot_input(A, max_n)
    count, _ = _ballot_dfs(_scaled_integers(A.values), False, stats)
    return count


def ballot_signed_perms(A: GenericSet, *, max_n: int = BALLOT_CAP) -> list[SignedPermutation]:
    """All signed permutations of A with the ballot property, in DFS order."""
    _check_ballot_input(A, max_n)
    return _ballot_dfs(_scaled_integers(A.values), True, None)[1]


def count_ballot_signed_perms_naive(values: Sequence) -> int:
    """Scan all 2**n * n! signed permutations; oracle for small n."""
    vals = [to_fraction(v) for v in values]
    n = len(vals)
    return sum(
        has_ballot_property(e * vals[i] for e, i in zip(signs, perm))
        for perm in permutations(range(n))
        for signs in product((1, -1), repeat=n)
    )


# ---------------------------------------------------------------------------
# collisions


def _disjoint_pairs(m: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Ordered pairs (I, J) of disjoint subsets of range(m)."""
    for labels in product((0, 1, 2), repeat=m):
        yield (
            tuple(i for i, l in enumerate(labels) if l == 1),
            tuple(i for i, l in enumerate(labels) if l == 2),
        )


def _collision_table(A: GenericSet, index: int, lo: Fraction, hi: Fraction) -> dict[Fraction, list]:
    """Values v in (lo, hi) at which setting A[index] = v creates a collision.

    Returns v -> list of (I, J) with I, J disjoint subsets of the other indices,
    I nonempty, and v = w(I) - w(J).  Such a pair plus ``index`` in J's side is
    the colliding pair of disjoint equal-weight sets.
    """
    others = [i for i in range(A.n) if i != index]
    table: dict[Fraction, list] = {}
    for I, J in _disjoint_pairs(len(others)):
        if not I:
            continue
        Ig = tuple(others[i] for i in I)
        Jg = tuple(others[j] for j in J)
        v = A.weight(Ig) - A.weight(Jg)
        if lo < v < hi:
            table.setdefault(v, []).append((Ig, Jg))
    return table


def _unique_or_raise(table: dict, A: GenericSet) -> None:
    for v, pairs in table.items():
        if len(pairs) > 1:
            msg = f"value {v} produces {len(pairs)} simultaneous collisions"
            if A.level == "generic":
                raise VerificationError(msg)
            raise DomainError(msg + "; the set is only collision-free, not generic")


def collision_deltas(A: GenericSet, target, *, index: int = 0) -> tuple[Fraction, ...]:
    """Collision values strictly between ``target`` and ``A[index]``, descending.

    Lowering ``A[index]`` continuously to ``target`` passes through exactly these
    values, each creating a single collision between two disjoint index sets.
    """
    target = to_fraction(target)
    current = A.values[index]
    if not 0 < target < current:
        raise DomainError(f"need 0 < target < {current}, got {target}")
    try:
        A.replace(index, target, level="collision_free")
    except DomainError as exc:
        raise DomainError(f"target {target} is degenerate: {exc}") from exc
    table = _collision_table(A, index, target, current)
    _unique_or_raise(table, A)
    return tuple(sorted(table, reverse=True))


def collision_hops(A: GenericSet, target, *, index: int = 0) -> list[GenericSet]:
    """Single-collision hop sequence from A down to ``A[index] = target``.

    Intermediate stops are midpoints between consecutive collision values, so
    each consecutive pair of sets in ``[A] + result`` straddles at most one
    collision.  All returned sets carry the collision-free certificate.
    """
    deltas = collision_deltas(A, target, index=index)
    points = [A.values[index], *deltas, to_fraction(target)]
    stops = [(points[i] + points[i + 1]) / 2 for i in range(1, len(points) - 2)]
    stops.append(points[-1])
    return [A.replace(index, v, level="collision_free") for v in stops]


def _differing_index(A: GenericSet, B: GenericSet) -> int | None:
    if A.n != B.n:
        raise DomainError("sets differ in size")
    diff = [i for i, (a, b) in enumerate(zip(A.values, B.values)) if a != b]
    if len(diff) > 1:
        raise DomainError(f"sets differ in {len(diff)} positions, expected one")
    return diff[0] if diff else None


def collision_step_map(S: SignedPermutation, A: GenericSet, B: GenericSet) -> SignedPermutation:
    """Carry a ballot signed permutation of A to one of B across one collision.

    A and B differ in a single element.  If the same sign/order pattern still
    has positive prefix sums under B it is returned unchanged.  Otherwise the
    unique prefix k whose sum went negative is reversed and negated:
    ``(-s_k, ..., -s_1, s_{k+1}, ..., s_n)``.  The same rule applied from B back
    to A inverts the map.
    """
    index = _differing_index(A, B)
    if not S.has_ballot_property(A):
        raise DomainError("input signed permutation lacks the ballot property")
    if index is None:
        return S
    lo, hi = sorted((A.values[index], B.values[index]))
    table = _collision_table(A, index, lo, hi)
    if len(table) > 1:
        raise DomainError(
            f"{len(table)} collisions between {lo} and {hi}; split into single-collision hops"
        )
    _unique_or_raise(table, A)

    seq = S.resolve(B)
    prefix, negative = Fraction(0), []
    for k, s in enumerate(seq, start=1):
        prefix += s
        if prefix == 0:
            raise DomainError("target set has a zero prefix sum; it is not collision-free")
        if prefix < 0:
            negative.append(k)
    if not negative:
        return S
    if len(negative) != 1:
        raise VerificationError(f"expected a unique negative prefix, found k in {negative}")
    k = negative[0]
    out = SignedPermutation(
        S.order[:k][::-1] + S.order[k:],
        tuple(-e for e in S.signs[:k][::-1]) + S.signs[k:],
    )
    if not out.has_ballot_property(B):
        raise VerificationError(f"reflected sequence {out.resolve(B)} lacks the ballot property")
    return out

