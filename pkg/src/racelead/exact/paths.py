"""Lattice paths over {U, D} and {U, H, D}, their bijections, and exact DP counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Mapping, Sequence

from ..errors import DomainError, VerificationError
from .signed import to_fraction

STEP = {"U": 1, "H": 0, "D": -1}


@dataclass(frozen=True)
class Path:
    """Step sequence over ``alphabet``; heights are recomputed on demand."""

    steps: str
    alphabet: str = "UD"

    def __post_init__(self):
        if self.alphabet not in ("UD", "UHD"):
            raise DomainError(f"alphabet must be 'UD' or 'UHD', got {self.alphabet!r}")
        bad = set(self.steps) - set(self.alphabet)
        if bad:
            raise DomainError(f"steps {sorted(bad)} not in alphabet {self.alphabet}")

    @classmethod
    def parse(cls, text: str) -> Path:
        """Path from a step string; the alphabet is UHD iff an H is present."""
        text = text.strip().upper()
        return cls(text, "UHD" if "H" in text else "UD")

    def heights(self) -> tuple[int, ...]:
        return tuple(accumulate(STEP[s] for s in self.steps))

    @property
    def end(self) -> int:
        return sum(STEP[s] for s in self.steps)

    def stays_nonneg(self) -> bool:
        return all(h >= 0 for h in self.heights())

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.steps


def _flip(steps: str) -> str:
    return steps.translate(str.maketrans("UD", "DU"))


def _require_updown(p: Path) -> None:
    if p.alphabet != "UD":
        raise DomainError("expected an up-down path")


def updown_bijection_to_nonneg(p: Path) -> Path:
    """Map a balanced up-down path to a path of the same length that stays >= 0.

    The path is cut at its returns to 0.  Excursions starting with U are kept;
    those starting with D are flipped and their final step is forced to U.
    """
    _require_updown(p)
    if p.end != 0:
        raise DomainError(f"path {p} ends at height {p.end}, expected 0")
    out, start, height = [], 0, 0
    for i, s in enumerate(p.steps):
        height += STEP[s]
        if height == 0:
            seg = p.steps[start : i + 1]
            if seg[0] == "D":
                seg = _flip(seg)[:-1] + "U"
            out.append(seg)
            start = i + 1
    return Path("".join(out))


def updown_bijection_to_endzero(p: Path) -> Path:
    """Inverse of :func:`updown_bijection_to_nonneg`."""
    _require_updown(p)
    if len(p) % 2:
        raise DomainError("nonnegative preimages exist only for even lengths")
    h = (0,) + p.heights()
    if min(h) < 0:
        raise DomainError(f"path {p} dips below 0")
    out, i, n = [], 0, len(p)
    while i < n:
        base = h[i]
        returns = [j for j in range(i + 1, n + 1) if h[j] == base]
        if returns:
            j = returns[0]
            out.append(p.steps[i:j])
        else:
            # flipped excursion: ends with the up-step leaving base + 1 for the last time
            j = max(k for k in range(i, n + 1) if h[k] == base + 1) + 1
            seg = p.steps[i:j]
            if seg[-1] != "U":
                raise VerificationError(f"malformed flipped segment {seg}")
            out.append(_flip(seg[:-1] + "D"))
        i = j
    return Path("".join(out))


def contract_to_motzkin(p: Path) -> Path:
    """Contract a U-initial up-down path of length 2n to a Motzkin path of length n-1.

    Drop the first and last steps, then read the rest in pairs:
    UU -> U, DD -> D, UD/DU -> H.
    """
    _require_updown(p)
    if len(p) < 2 or len(p) % 2:
        raise DomainError(f"length must be even and >= 2, got {len(p)}")
    if p.steps[0] != "U":
        raise DomainError("path must start with U")
    middle = p.steps[1:-1]
    pairs = (middle[i : i + 2] for i in range(0, len(middle), 2))
    table = {"UU": "U", "DD": "D", "UD": "H", "DU": "H"}
    return Path("".join(table[q] for q in pairs), "UHD")


def count_paths_dp(
    length: int,
    step_weights: Mapping[str, object],
    nonneg: bool = True,
    end: int | None = None,
) -> Fraction:
    """Weighted count of paths of ``length`` steps, by height-indexed DP.

    With weights summing to 1 the result is a probability; with unit weights
    it is a path count.  ``nonneg`` discards paths that dip below 0 and
    ``end`` restricts the final height.
    """
    if length < 0:
        raise DomainError("length must be >= 0")
    weights = {s: to_fraction(w) for s, w in step_weights.items() if to_fraction(w) != 0}
    if set(weights) - set(STEP):
        raise DomainError(f"unknown steps in {sorted(step_weights)}")
    if any(w < 0 for w in weights.values()):
        raise DomainError("step weights must be nonnegative")
    if sum(weights.values()) != 1 and any(w != 1 for w in weights.values()):
        raise DomainError("weights must sum to 1 or all equal 1")
    layer = {0: Fraction(1)}
    for _ in range(length):
        nxt: dict[int, Fraction] = {}
        for h, mass in layer.items():
            for s, w in weights.items():
                g = h + STEP[s]
                if nonneg and g < 0:
                    continue
                nxt[g] = nxt.get(g, Fraction(0)) + mass * w
        layer = nxt
    if end is not None:
        return layer.get(end, Fraction(0))
    return sum(layer.values(), Fraction(0))


# ---------------------------------------------------------------------------
# cycle lemma


@dataclass(frozen=True)
class CycleSequence:
    """Zero-sum rationals with no proper cyclic substring summing to zero."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        z = tuple(to_fraction(v) for v in self.entries)
        object.__setattr__(self, "entries", z)
        if not z:
            raise DomainError("empty cycle sequence")
        if sum(z) != 0:
            raise DomainError(f"entries sum to {sum(z)}, expected 0")
        m = len(z)
        for start in range(m):
            total = Fraction(0)
            for length in range(1, m):
                total += z[(start + length - 1) % m]
                if total == 0:
                    raise DomainError(
                        f"cyclic substring of length {length} at position {start + 1} sums to 0"
                    )

    def rotation(self, k: int) -> tuple[Fraction, ...]:
        """The rotation starting at 1-based position k."""
        return self.entries[k - 1 :] + self.entries[: k - 1]


def spitzer_rotation(z: CycleSequence | Sequence) -> int:
    """1-based start of the unique rotation whose partial sums are all >= 0.

    Found as the argmin of the partial sums z_1 + ... + z_{j-1} and confirmed
    by checking every rotation.
    """
    if not isinstance(z, CycleSequence):
        z = CycleSequence(tuple(z))
    m = len(z.entries)
    before = [Fraction(0), *accumulate(z.entries[:-1])]
    k = min(range(m), key=before.__getitem__) + 1
    good = [j for j in range(1, m + 1) if all(s >= 0 for s in accumulate(z.rotation(j)))]
    if good != [k]:
        raise VerificationError(f"rotations with nonnegative partial sums: {good}, argmin gave {k}")
    return k
