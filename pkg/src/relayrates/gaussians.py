"""Exact conditional mutual information for jointly Gaussian linear systems.

Every random variable is a linear combination of independent zero-mean
Gaussian sources, so covariances are exact (Sigma = A diag(v) A^T) and
conditional mutual information reduces to a log-determinant ratio:

    I(A;B|C) = 1/2 log2( pdet S_AC * pdet S_BC / (pdet S_C * pdet S_ABC) )

`pdet` is the pseudo-determinant: the product of eigenvalues above a
relative floor.  Degenerate systems (e.g. a compressed observation with
zero compression noise) stay finite because the zero directions appear in
matching numerator and denominator blocks and cancel, which reproduces the
analytic limit of the mutual information.

All logarithms are base 2; every returned value is in bits per channel use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

# Eigenvalues at or below EIG_FLOOR * (largest eigenvalue) are treated as
# exact zeros and dropped from pseudo-determinants.
EIG_FLOOR = 1e-12


class BasisMismatchError(ValueError):
    """Variables built over different source bases were combined."""


@dataclass(frozen=True)
class SourceBasis:
    """Ordered independent Gaussian sources and their variances."""

    names: tuple[str, ...]
    variances: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("source names must be unique")
        if len(self.variances) != len(self.names):
            raise ValueError("need exactly one variance per source")
        if any(not np.isfinite(v) or v < 0 for v in self.variances):
            raise ValueError("source variances must be finite and >= 0")

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class LinearVariable:
    """A scalar variable given by one coefficient per basis source."""

    basis: SourceBasis
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.basis.size:
            raise ValueError("coefficient vector must match basis size")

    @classmethod
    def from_map(cls, basis: SourceBasis, weights: Mapping[str, float]) -> "LinearVariable":
        unknown = set(weights) - set(basis.names)
        if unknown:
            raise ValueError(f"unknown sources: {sorted(unknown)}")
        return cls(basis, tuple(float(weights.get(n, 0.0)) for n in basis.names))

    def __add__(self, other: "LinearVariable") -> "LinearVariable":
        if other.basis != self.basis:
            raise BasisMismatchError("cannot add variables over different bases")
        return LinearVariable(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def variance(self) -> float:
        return float(np.dot(np.square(self.coeffs), self.basis.variances))


@dataclass(frozen=True)
class GaussianVarSet:
    """Named variables sharing one source basis."""

    variables: Mapping[str, LinearVariable]

    def __post_init__(self) -> None:
        _shared_basis(self.variables.values())

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.variables)

    def __getitem__(self, name: str) -> LinearVariable:
        return self.variables[name]

    def subset(self, names: Iterable[str]) -> list[LinearVariable]:
        return [self.variables[n] for n in names]


def _shared_basis(variables: Iterable[LinearVariable]) -> SourceBasis | None:
    basis = None
    for v in variables:
        if basis is None:
            basis = v.basis
        elif v.basis != basis:
            raise BasisMismatchError("variables do not share a source basis")
    return basis


def covariance(variables: Sequence[LinearVariable]) -> np.ndarray:
    """Covariance matrix of the given variables (power units)."""
    basis = _shared_basis(variables)
    if basis is None:
        return np.zeros((0, 0))
    a = np.array([v.coeffs for v in variables], dtype=float)
    return (a * np.asarray(basis.variances, dtype=float)) @ a.T


def pdet_log2(sigma: np.ndarray) -> float:
    """log2 of the pseudo-determinant (empty and all-zero matrices give 0)."""
    if sigma.size == 0:
        return 0.0
    eig = np.linalg.eigvalsh(sigma)
    cut = max(eig[-1], 0.0) * EIG_FLOOR
    kept = eig[eig > cut]
    if kept.size == 0:
        return 0.0
    return float(np.log2(kept).sum())


def _group_pdet_log2(variables: list[LinearVariable]) -> float:
    # Canonical (coefficient-sorted) ordering makes each block depend only on
    # the variable multiset, so cmi(A,B,C) == cmi(B,A,C) bit for bit.
    ordered = sorted(variables, key=lambda v: v.coeffs)
    return pdet_log2(covariance(ordered))


def cmi(
    a: Sequence[LinearVariable],
    b: Sequence[LinearVariable],
    c: Sequence[LinearVariable] = (),
) -> float:
    """I(A;B|C) in bits.  A, B, C must not share variables; C may be empty."""
    a, b, c = list(a), list(b), list(c)
    if not a or not b:
        return 0.0
    _shared_basis(a + b + c)
    val = 0.5 * (
        _group_pdet_log2(a + c)
        + _group_pdet_log2(b + c)
        - _group_pdet_log2(c)
        - _group_pdet_log2(a + b + c)
    )
    return max(val, 0.0)
