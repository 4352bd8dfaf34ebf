"""Counter-based sampling of races, per-trial traces and their events.

Trial ``t`` under seed ``s`` always reads the same Philox words: the key is
``s`` and the counter starts at ``t`` times the number of 4-word blocks a trial
needs.  Any split of the trial range therefore sees identical draws.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import accumulate

import numpy as np

from ..errors import DomainError, TieError
from .distributions import DistributionSpec

SEED_BITS = 64


class Outcome(enum.Enum):
    SUCCESS = "success"
    FAILURE = "failure"
    TIE = "tie"

    @classmethod
    def of(cls, success: bool, tie: bool) -> Outcome:
        if tie:
            return cls.TIE
        return cls.SUCCESS if success else cls.FAILURE


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    if not 0 <= seed < 2**SEED_BITS:
        raise DomainError(f"seed must fit in {SEED_BITS} unsigned bits")
    return int(seed)


def raw_words(seed: int, start: int, count: int, words: int) -> np.ndarray:
    """uint64 array (count, words) for trials start..start+count-1."""
    seed = check_seed(seed)
    if start < 0 or count < 0:
        raise DomainError("trial indices must be nonnegative")
    blocks = -(-words // 4)
    gen = np.random.Philox(key=seed, counter=start * blocks)
    return gen.random_raw(count * blocks * 4).reshape(count, blocks * 4)[:, :words]


def sample_block(dist: DistributionSpec, n: int, seed: int, start: int, count: int):
    """Step arrays ``x, y`` of shape (count, n) for a contiguous range of trials."""
    if n < 1:
        raise DomainError("n must be >= 1")
    w = dist.words_per_draw
    raw = raw_words(seed, start, count, 2 * n * w).reshape(count, 2 * n, w)
    draws = dist.transform(raw)
    return draws[:, :n], draws[:, n:]


@dataclass(frozen=True)
class RaceTrace:
    """Both racers' steps and positions over one race.

    ``stops`` lists every position either racer stops at, sorted, with its
    owner ("X" or "Y").
    """

    x_steps: tuple[float, ...]
    y_steps: tuple[float, ...]
    x_prefix: tuple[float, ...] = field(init=False)
    y_prefix: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        xs, ys = tuple(map(float, self.x_steps)), tuple(map(float, self.y_steps))
        if len(xs) != len(ys) or not xs:
            raise DomainError("racers need the same positive number of steps")
        object.__setattr__(self, "x_steps", xs)
        object.__setattr__(self, "y_steps", ys)
        object.__setattr__(self, "x_prefix", tuple(accumulate(xs)))
        object.__setattr__(self, "y_prefix", tuple(accumulate(ys)))

    @property
    def n(self) -> int:
        return len(self.x_steps)

    @property
    def z_steps(self) -> tuple[float, ...]:
        return tuple(a - b for a, b in zip(self.x_steps, self.y_steps))

    @property
    def stops(self) -> list[tuple[float, str]]:
        tagged = [(c, "X") for c in self.x_prefix] + [(c, "Y") for c in self.y_prefix]
        return sorted(tagged)

    @property
    def has_duplicate_draws(self) -> bool:
        draws = self.x_steps + self.y_steps
        return len(set(draws)) != len(draws)

    def truncate(self, n: int) -> RaceTrace:
        return RaceTrace(self.x_steps[:n], self.y_steps[:n])


def sample_race(dist: DistributionSpec, n: int, seed: int, trial_index: int) -> RaceTrace:
    x, y = sample_block(dist, n, seed, trial_index, 1)
    return RaceTrace(tuple(x[0]), tuple(y[0]))


# ---------------------------------------------------------------------------
# per-trace events; scalar counterparts of the batch kernels in ``estimate``


def _strict(pairs) -> tuple[bool, bool]:
    """(all a > b, any a == b) over (a, b) pairs."""
    pairs = list(pairs)
    return all(a > b for a, b in pairs), any(a == b for a, b in pairs)


def evaluate_event(trace: RaceTrace, kind: str, *, duplicates_tie: bool = False) -> Outcome:
    """Success, failure, or tie for the named event on one trace.

    Equality in a comparison the event requires to be strict is a tie.  With
    ``duplicates_tie`` (used for laws with atoms) so is any repeated draw.
    """
    X, Y = trace.x_prefix, trace.y_prefix
    dup = duplicates_tie and trace.has_duplicate_draws
    if kind == "lead_all_the_way":
        ok, tie = _strict(zip(X, Y))
    elif kind == "never_behind":
        ok, tie = all(a >= b for a, b in zip(X, Y)), False
    elif kind == "alternation":
        ok, tie = _strict((a, b) if k % 2 == 0 else (b, a) for k, (a, b) in enumerate(zip(X, Y)))
    elif kind == "comparable_vectors":
        above, tie = _strict(zip(trace.x_steps, trace.y_steps))
        below, _ = _strict(zip(trace.y_steps, trace.x_steps))
        ok = above or below
    elif kind == "tied_dominance":
        ok, tie = _strict(zip(sorted(trace.x_steps), sorted(trace.y_steps)))
    elif kind == "multiplicative_lead":
        ok, tie = _strict(
            zip(accumulate(trace.x_steps, lambda a, b: a * b), accumulate(trace.y_steps, lambda a, b: a * b))
        )
    else:
        raise DomainError(f"unknown event kind {kind!r}")
    return Outcome.of(ok, tie or dup)


def ownership_signs(trace: RaceTrace, count: int | None = None) -> tuple[int, ...]:
    """Owner signs of the first ``count`` stop points: -1 for X, +1 for Y.

    By default all 2n stops are used; X then leads all the way exactly when
    every prefix sum of the signs is >= 0.
    """
    if any(s <= 0 for s in trace.x_steps + trace.y_steps):
        raise DomainError("stop points need positive steps")
    stops = trace.stops
    count = len(stops) if count is None else count
    if not 0 <= count <= len(stops):
        raise DomainError(f"count must be in 0..{len(stops)}")
    positions = [c for c, _ in stops]
    if len(set(positions)) != len(positions):
        raise TieError("two stop points coincide")
    return tuple(-1 if owner == "X" else 1 for _, owner in stops[:count])


def tied_dominance_trial(m: int, dist: DistributionSpec, seed: int, trial_index: int) -> Outcome:
    """Sort m draws per racer; success iff X's i-th smallest beats Y's for every i."""
    return evaluate_event(sample_race(dist, m, seed, trial_index), "tied_dominance", duplicates_tie=dist.has_atoms)


def multiplicative_race_trial(dist: DistributionSpec, n: int, seed: int, trial_index: int) -> Outcome:
    """Race of running products of lognormal growth factors."""
    if dist.kind != "lognormal":
        raise DomainError("multiplicative races take a lognormal factor distribution")
    return evaluate_event(sample_race(dist, n, seed, trial_index), "multiplicative_lead", duplicates_tie=dist.has_atoms)
