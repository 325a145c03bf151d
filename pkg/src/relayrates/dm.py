"""Entropy and conditional mutual information over finite joint pmfs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Probabilities at or below this are treated as exact zeros (0*log 0 = 0).
ZERO_MASS = 1e-15


class UnknownVariableError(KeyError):
    """A query referenced a variable the joint does not carry."""


class InvalidDistributionError(ValueError):
    """A pmf violates nonnegativity or normalization."""


@dataclass(frozen=True)
class DmJoint:
    """A joint pmf over named finite-alphabet variables.

    `probs` has one axis per name, in order.  Entries must be nonnegative
    and sum to 1 within 1e-9.
    """

    names: tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != len(self.names):
            raise ValueError("probability tensor must have one axis per variable")
        if np.any(p < 0):
            raise InvalidDistributionError("joint pmf has negative entries")
        total = float(p.sum())
        if abs(total - 1.0) > 1e-9:
            raise InvalidDistributionError(f"joint pmf sums to {total!r}, expected 1")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.probs.shape

    def axis(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def marginal(self, names: Sequence[str]) -> np.ndarray:
        """Marginal pmf over `names` (axis order follows the joint)."""
        keep = {self.axis(n) for n in names}
        drop = tuple(i for i in range(self.probs.ndim) if i not in keep)
        return self.probs.sum(axis=drop) if drop else self.probs


def entropy_bits(p: np.ndarray) -> float:
    """Shannon entropy of a pmf array, in bits."""
    m = np.asarray(p, dtype=float).ravel()
    m = m[m > ZERO_MASS]
    if m.size == 0:
        return 0.0
    return float(-(m * np.log2(m)).sum())


def dm_cmi(
    joint: DmJoint,
    a: Sequence[str],
    b: Sequence[str],
    c: Sequence[str] = (),
) -> float:
    """I(A;B|C) in bits; A, B, C must name disjoint variables of the joint."""
    a, b, c = list(a), list(b), list(c)
    for name in (*a, *b, *c):
        joint.axis(name)
    groups = set(a) | set(b) | set(c)
    if len(groups) != len(a) + len(b) + len(c):
        raise ValueError("A, B, C must be disjoint variable sets")
    if not a or not b:
        return 0.0

    def h(names: list[str]) -> float:
        return entropy_bits(joint.marginal(names))

    val = h(a + c) + h(b + c) - h(c) - h(a + b + c)
    return max(val, 0.0)
