"""Step distributions, sampled from raw 64-bit counter-based words."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from ..errors import DomainError

_KINDS = ("uniform", "exponential", "normal", "lognormal", "powers_of_three")
_ALIASES = {"exp": "exponential", "pow3": "powers_of_three", "gauss": "normal"}
_DEFAULTS = {
    "uniform": (0.0, 1.0),
    "exponential": (1.0,),
    "normal": (0.0, 1.0),
    "lognormal": (0.0, 1.0),
    "powers_of_three": (40, 0.0),
}


def to_unit_interval(raw: np.ndarray) -> np.ndarray:
    """Map uint64 words to doubles strictly inside (0, 1) using the top 53 bits."""
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


@dataclass(frozen=True)
class DistributionSpec:
    """A continuous step law ``kind`` with positional ``params``.

    uniform(lo, hi), exponential(rate), normal(mean, sd), lognormal(log_mean,
    log_sd), powers_of_three(max_exponent, noise).  The last draws
    ``3**K * (1 + noise * xi)`` with K uniform on 1..max_exponent and xi
    uniform on (-1, 1); with zero noise it is a pure scale design.
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        if kind not in _KINDS:
            raise DomainError(f"unknown distribution {self.kind!r}; choose from {_KINDS}")
        params = tuple(self.params) or _DEFAULTS[kind]
        if len(params) != len(_DEFAULTS[kind]):
            raise DomainError(f"{kind} takes {len(_DEFAULTS[kind])} parameters, got {len(params)}")
        try:
            params = tuple(float(p) for p in params)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"non-numeric parameters {params!r}") from exc
        if not all(math.isfinite(p) for p in params):
            raise DomainError("parameters must be finite")
        if kind == "uniform" and not params[0] < params[1]:
            raise DomainError("uniform needs lo < hi")
        if kind == "exponential" and params[0] <= 0:
            raise DomainError("exponential rate must be > 0")
        if kind in ("normal", "lognormal") and params[1] <= 0:
            raise DomainError(f"{kind} scale must be > 0")
        if kind == "powers_of_three":
            top, noise = params
            if top != int(top) or top < 1 or top > 600:
                raise DomainError("max_exponent must be an integer in 1..600")
            if not 0 <= noise < 1:
                raise DomainError("noise must be in [0, 1)")
            params = (int(top), noise)
        object.__setattr__(self, "params", params)

    @classmethod
    def uniform(cls, lo: float = 0.0, hi: float = 1.0) -> DistributionSpec:
        return cls("uniform", (lo, hi))

    @classmethod
    def exponential(cls, rate: float = 1.0) -> DistributionSpec:
        return cls("exponential", (rate,))

    @classmethod
    def normal(cls, mean: float = 0.0, sd: float = 1.0) -> DistributionSpec:
        return cls("normal", (mean, sd))

    @classmethod
    def lognormal(cls, log_mean: float = 0.0, log_sd: float = 1.0) -> DistributionSpec:
        return cls("lognormal", (log_mean, log_sd))

    @classmethod
    def powers_of_three(cls, max_exponent: int = 40, noise: float = 0.0) -> DistributionSpec:
        return cls("powers_of_three", (max_exponent, noise))

    @property
    def words_per_draw(self) -> int:
        return 2 if self.kind == "powers_of_three" else 1

    @property
    def has_atoms(self) -> bool:
        """True for the zero-noise scale design, whose draws repeat with positive probability."""
        return self.kind == "powers_of_three" and self.params[1] == 0

    @property
    def positive_support(self) -> bool:
        if self.kind == "uniform":
            return self.params[0] >= 0
        return self.kind in ("exponential", "lognormal", "powers_of_three")

    def transform(self, raw: np.ndarray) -> np.ndarray:
        """Draws from raw words of shape (..., words_per_draw); one draw per row."""
        u = to_unit_interval(raw)
        p = self.params
        if self.kind == "uniform":
            return p[0] + (p[1] - p[0]) * u[..., 0]
        if self.kind == "exponential":
            return -np.log(u[..., 0]) / p[0]
        if self.kind == "normal":
            return p[0] + p[1] * ndtri(u[..., 0])
        if self.kind == "lognormal":
            return np.exp(p[0] + p[1] * ndtri(u[..., 0]))
        top, noise = p
        k = 1 + np.minimum(np.floor(u[..., 0] * top), top - 1)
        return 3.0**k * (1.0 + noise * (2.0 * u[..., 1] - 1.0))

    def label(self) -> str:
        return f"{self.kind}({', '.join(format(x, 'g') for x in self.params)})"
