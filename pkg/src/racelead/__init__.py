"""Exact, enumerative and Monte Carlo checks for leading-all-the-way races."""
from . import exact, reference, simulate
from .errors import DomainError, RaceLeadError, ResourceLimitError, TieError, VerificationError

__version__ = "0.1.0"

__all__ = [
    "exact",
    "reference",
    "simulate",
    "DomainError",
    "RaceLeadError",
    "ResourceLimitError",
    "TieError",
    "VerificationError",
]
