"""Closed-form probabilities and counts, in exact rational arithmetic.

Every function here is the "formula side" of a cross-check: the
enumeration engines in :mod:`racelead.exact` and the Monte Carlo engine in
:mod:`racelead.simulate` are compared against these values.  No floating
point is used.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import DomainError

__all__ = [
    "lead_prob",
    "ballot_signed_perm_count",
    "tied_lead_prob",
    "srw_nonneg_prob",
    "ballot_never_behind_prob",
    "walk_nonneg_given_end_prob",
    "motzkin_nonneg_prob",
    "composition_majorization_prob",
    "alternation_exponential_prob",
    "comparable_vectors_prob",
    "central_binomial",
    "catalan",
]


def _require_int(name: str, value: int, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


def central_binomial(n: int) -> int:
    """C(2n, n)."""
    _require_int("n", n, 0)
    return comb(2 * n, n)


def catalan(m: int) -> int:
    _require_int("m", m, 0)
    return comb(2 * m, m) // (m + 1)


def lead_prob(n: int) -> Fraction:
    """Probability that one racer leads after each of ``n`` i.i.d. steps.

    Equal to C(2n, n) / 4**n for every continuous step distribution.
    """
    _require_int("n", n, 1)
    return Fraction(central_binomial(n), 4**n)


def ballot_signed_perm_count(n: int) -> int:
    """Number of signed permutations of a generic n-set with positive prefix sums.

    This is ``lead_prob(n) * 2**n * n!`` which simplifies to
    ``n! * C(2n, n) / 2**n``.
    """
    _require_int("n", n, 1)
    count, rem = divmod(factorial(n) * central_binomial(n), 2**n)
    assert rem == 0
    return count


def tied_lead_prob(m: int) -> Fraction:
    """Probability of leading strictly before the final step of an m-step tied race.

    The cycle lemma over the m step differences gives 1/m.
    """
    _require_int("m", m, 2)
    return Fraction(1, m)


def srw_nonneg_prob(steps: int) -> Fraction:
    """Probability that a simple random walk of ``steps`` steps never goes negative.

    A walk of 2n - 1 steps and one of 2n steps share the value C(2n, n) / 4**n.
    """
    _require_int("steps", steps, 1)
    n = (steps + 1) // 2
    return Fraction(central_binomial(n), 4**n)


def ballot_never_behind_prob(a: int, b: int) -> Fraction:
    """Probability that a random count of ``a`` vs ``b`` votes never puts b ahead."""
    _require_int("a", a, 0)
    _require_int("b", b, 0)
    if a < b:
        raise DomainError(f"need a >= b, got a={a}, b={b}")
    return Fraction(a - b + 1, a + 1)


def walk_nonneg_given_end_prob(n: int, t: int) -> Fraction:
    """P(an n-step walk stays >= 0 | it ends at height t)."""
    _require_int("n", n, 1)
    _require_int("t", t, 0)
    if t > n or (n - t) % 2:
        raise DomainError(f"end height t={t} unreachable in n={n} steps")
    return Fraction(2 * (t + 1), n + t + 2)


def motzkin_nonneg_prob(length: int) -> Fraction:
    """P(a lazy Motzkin path of the given length never dips below 0).

    Steps are U, H, D with probabilities 1/4, 1/2, 1/4.  The value is
    C(2L+2, L+1) / 2**(2L+1) for path length L.
    """
    _require_int("L", length, 0)
    return Fraction(central_binomial(length + 1), 2 ** (2 * length + 1))


def composition_majorization_prob(n: int) -> Fraction:
    """P(a uniform composition of n weakly majorizes an independent one)."""
    _require_int("n", n, 1)
    return Fraction(central_binomial(n), 2 ** (2 * n - 1))


def alternation_exponential_prob(n: int) -> Fraction:
    """Alternating-lead probability over n steps for exponential steps: 4**-n."""
    _require_int("n", n, 1)
    return Fraction(1, 4**n)


def comparable_vectors_prob(n: int) -> Fraction:
    """P(two i.i.d. continuous vectors in R^n are coordinatewise comparable)."""
    _require_int("n", n, 1)
    return Fraction(2, 2**n)
