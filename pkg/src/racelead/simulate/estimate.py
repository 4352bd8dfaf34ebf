"""Vectorized event kernels and Wilson-interval estimates over many trials."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import ndtri

from ..errors import DomainError
from .distributions import DistributionSpec
from .trace import check_seed, sample_block

log = logging.getLogger(__name__)

EVENT_KINDS = (
    "lead_all_the_way",
    "never_behind",
    "alternation",
    "comparable_vectors",
    "tied_dominance",
    "multiplicative_lead",
)
TIE_RATE_LIMIT = 1e-6
CHUNK = 1 << 16


@dataclass(frozen=True)
class EventSpec:
    """Which race event to score; ``tied_dominance`` reads its size m from n."""

    kind: str

    def __post_init__(self):
        kind = self.kind.replace("-", "_")
        object.__setattr__(self, "kind", kind)
        if kind not in EVENT_KINDS:
            raise DomainError(f"unknown event {self.kind!r}; choose from {EVENT_KINDS}")

    def check(self, dist: DistributionSpec) -> None:
        if self.kind == "multiplicative_lead" and dist.kind != "lognormal":
            raise DomainError("multiplicative_lead needs lognormal factors")


def _all_strict(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return (a > b).all(axis=1), (a == b).any(axis=1)


def _duplicate_draws(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    both = np.sort(np.concatenate([x, y], axis=1), axis=1)
    return (np.diff(both, axis=1) == 0).any(axis=1)


def batch_outcomes(
    kind: str, x: np.ndarray, y: np.ndarray, duplicates_tie: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Boolean ``(success, tie)`` arrays for rows of step arrays; ties win over success."""
    if kind == "lead_all_the_way":
        ok, tie = _all_strict(np.cumsum(x, axis=1), np.cumsum(y, axis=1))
    elif kind == "never_behind":
        ok = (np.cumsum(x, axis=1) >= np.cumsum(y, axis=1)).all(axis=1)
        tie = np.zeros_like(ok)
    elif kind == "alternation":
        X, Y = np.cumsum(x, axis=1), np.cumsum(y, axis=1)
        odd = np.arange(x.shape[1]) % 2 == 0  # 1-based odd times
        ok, tie = _all_strict(np.where(odd, X, Y), np.where(odd, Y, X))
    elif kind == "comparable_vectors":
        ok = (x > y).all(axis=1) | (x < y).all(axis=1)
        tie = (x == y).any(axis=1)
    elif kind == "tied_dominance":
        ok, tie = _all_strict(np.sort(x, axis=1), np.sort(y, axis=1))
    elif kind == "multiplicative_lead":
        ok, tie = _all_strict(np.cumprod(x, axis=1), np.cumprod(y, axis=1))
    else:
        raise DomainError(f"unknown event kind {kind!r}")
    if duplicates_tie:
        tie = tie | _duplicate_draws(x, y)
    return ok & ~tie, tie


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials <= 0:
        return 0.0, 1.0
    if not 0 < confidence < 1:
        raise DomainError("confidence must be in (0, 1)")
    z = float(ndtri(0.5 + confidence / 2))
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo tally for one (event, distribution, n) cell.

    ``point`` and the interval are over decided trials, i.e. ``trials - ties``.
    """

    event: str
    dist: str
    n: int
    seed: int
    trials: int
    successes: int
    ties: int
    point: float
    ci_low: float
    ci_high: float
    confidence: float

    @property
    def tie_rate(self) -> float:
        return self.ties / self.trials

    @property
    def status(self) -> str:
        return "warning" if self.tie_rate >= TIE_RATE_LIMIT else "ok"

    def contains(self, value) -> bool:
        return self.ci_low <= float(value) <= self.ci_high

    def as_dict(self) -> dict:
        return {**asdict(self), "status": self.status}


def _tally(event: str, dist: DistributionSpec, n: int, seed: int, start: int, stop: int) -> tuple[int, int]:
    x, y = sample_block(dist, n, seed, start, stop - start)
    ok, tie = batch_outcomes(event, x, y, dist.has_atoms)
    return int(ok.sum()), int(tie.sum())


def estimate_probability(
    event: EventSpec | str,
    dist: DistributionSpec,
    n: int,
    trials: int,
    seed: int = 0,
    *,
    confidence: float = 0.95,
    workers: int = 1,
) -> Estimate:
    """Estimate P(event) from trials 0..trials-1 under ``seed``.

    The result does not depend on ``workers``: every trial reads its own
    counter-addressed random words and the per-chunk tallies are summed.
    """
    event = event if isinstance(event, EventSpec) else EventSpec(event)
    event.check(dist)
    seed = check_seed(seed)
    if n < 1:
        raise DomainError("n must be >= 1")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    bounds = [(lo, min(lo + CHUNK, trials)) for lo in range(0, trials, CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _tally(event.kind, dist, n, seed, *b), bounds))
    else:
        parts = [_tally(event.kind, dist, n, seed, *b) for b in bounds]
    successes = sum(p[0] for p in parts)
    ties = sum(p[1] for p in parts)
    decided = trials - ties
    point = successes / decided if decided else 0.0
    lo, hi = wilson_interval(successes, decided, confidence)
    est = Estimate(event.kind, dist.label(), n, seed, trials, successes, ties, point, lo, hi, confidence)
    if est.status != "ok":
        log.warning("tie rate %.3g for %s on %s; run flagged", est.tie_rate, event.kind, est.dist)
    return est


def ownership_pattern_counts(dist: DistributionSpec, n: int, trials: int, seed: int = 0) -> np.ndarray:
    """Frequencies of the owner-sign pattern of the first 2n stop points.

    Each racer runs 2n steps so that the first 2n merged stops never run out
    of either racer.  Pattern index is the binary number with bit ``2n-1-i``
    set when stop i belongs to Y.  Returns an array of 4**n counts.
    """
    if not dist.positive_support:
        raise DomainError("stop points need a positive step distribution")
    counts = np.zeros(4**n, dtype=np.int64)
    weights = 1 << np.arange(2 * n - 1, -1, -1)
    for lo in range(0, trials, CHUNK):
        hi = min(lo + CHUNK, trials)
        x, y = sample_block(dist, 2 * n, check_seed(seed), lo, hi - lo)
        pos = np.concatenate([np.cumsum(x, axis=1), np.cumsum(y, axis=1)], axis=1)
        owner_y = np.argsort(pos, axis=1, kind="stable")[:, : 2 * n] >= 2 * n
        counts += np.bincount(owner_y.astype(np.int64) @ weights, minlength=4**n)
    return counts
