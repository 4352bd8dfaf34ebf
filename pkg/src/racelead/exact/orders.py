"""Order-statistic and scale-rank enumeration oracles."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial

from ..errors import DomainError, ResourceLimitError

DOMINANCE_CAP = 14
RANK_ORACLE_CAP = 4


def dominance_count(m: int, *, max_m: int = DOMINANCE_CAP) -> int:
    """Merges of m U-labels and m V-labels where the i-th V precedes the i-th U for all i.

    Enumerated by depth-first search over merges.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    if m > max_m:
        raise ResourceLimitError(f"dominance enumeration capped at m={max_m}, got m={m}")

    def rec(vs: int, us: int) -> int:
        if vs == us == m:
            return 1
        total = 0
        if vs < m:
            total += rec(vs + 1, us)
        if us < vs:
            total += rec(vs, us + 1)
        return total

    return rec(0, 0)


def alternation_rank_oracle(n: int, *, max_n: int = RANK_ORACLE_CAP) -> Fraction:
    """Exact alternation probability when every step lives on its own scale.

    Steps X_1..X_n, Y_1..Y_n receive distinct ranks; a sum of steps on
    widely separated scales is dominated by its largest one, so at time k the
    racer owning the largest rank among the first k steps of both is ahead.
    Returns the fraction of the (2n)! rank assignments in which X is ahead at
    every odd k and Y at every even k.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > max_n:
        raise ResourceLimitError(f"rank oracle capped at n={max_n}, got n={n}")
    hits = 0
    for ranks in permutations(range(2 * n)):
        x, y = ranks[:n], ranks[n:]
        best_x = best_y = -1
        for k in range(n):
            best_x = max(best_x, x[k])
            best_y = max(best_y, y[k])
            x_ahead = best_x > best_y
            if x_ahead != (k % 2 == 0):
                break
        else:
            hits += 1
    return Fraction(hits, factorial(2 * n))


def ownership_event_probability(n: int, event: str = "alternation", *, max_n: int = 8) -> Fraction:
    """Exact probability of a race event under exponential steps.

    With memoryless steps the owners of the first 2n stop points of the two
    (unbounded) racers are independent fair signs.  The k-th stops of X and Y
    for k <= n cannot both lie beyond the first 2n points, so each required
    comparison is decided inside those 4**n equally likely sign sequences.
    ``event`` is ``"alternation"`` or ``"lead_all_the_way"``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > max_n:
        raise ResourceLimitError(f"ownership enumeration capped at n={max_n}, got n={n}")
    if event not in ("alternation", "lead_all_the_way"):
        raise DomainError(f"unsupported event {event!r}")
    hits = 0
    for owners in product("XY", repeat=2 * n):
        first: dict[int, str] = {}
        seen = {"X": 0, "Y": 0}
        for who in owners:
            seen[who] += 1
            first.setdefault(seen[who], who)
        # the racer whose k-th stop comes first is behind after k steps
        x_ahead = [first[k] == "Y" for k in range(1, n + 1)]
        if event == "lead_all_the_way":
            hits += all(x_ahead)
        else:
            hits += all(a == (k % 2 == 0) for k, a in enumerate(x_ahead))
    return Fraction(hits, 4**n)
