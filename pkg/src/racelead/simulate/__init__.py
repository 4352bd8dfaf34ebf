"""Reproducible Monte Carlo engine for random races."""
from .distributions import DistributionSpec
from .estimate import (
    EVENT_KINDS,
    TIE_RATE_LIMIT,
    Estimate,
    EventSpec,
    batch_outcomes,
    estimate_probability,
    ownership_pattern_counts,
    wilson_interval,
)
from .trace import (
    Outcome,
    RaceTrace,
    evaluate_event,
    multiplicative_race_trial,
    ownership_signs,
    raw_words,
    sample_block,
    sample_race,
    tied_dominance_trial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
