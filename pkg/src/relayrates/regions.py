"""Rate regions as unions of per-sigma2 rectangles.

Each feasible scheme evaluation contributes the rectangle
[0, r1] x [0, r2]; a region is the union of those rectangles over the
admissible sigma2 grid and its boundary is a Pareto staircase.  This
module builds staircases, compares regions by staircase containment, and
runs the sigma2 / power / relay-position sweeps behind the CLI.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .channels import GaussianTwrcConfig
from .schemes import (
    SCHEMES,
    SchemePoint,
    points_from_arrays,
    thresholds,
    twrc_bound_arrays,
)

# Corners equal in both coordinates within this are treated as one point.
TIE_EPS = 1e-12


@dataclass(frozen=True)
class RatePoint:
    """An achievable rate pair, bits per channel use."""

    r1: float
    r2: float

    def __post_init__(self) -> None:
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError("rates must be >= 0")


@dataclass(frozen=True)
class Frontier:
    """Pareto staircase corners, r1 strictly increasing, r2 strictly decreasing.

    `sigma2` carries the auxiliary value that produced each corner (None for
    points without one).
    """

    corners: tuple[RatePoint, ...]
    sigma2: tuple[float | None, ...] = ()

    def __post_init__(self) -> None:
        if self.sigma2 and len(self.sigma2) != len(self.corners):
            raise ValueError("provenance length must match corners")
        for prev, cur in zip(self.corners, self.corners[1:]):
            if not (cur.r1 > prev.r1 and cur.r2 < prev.r2):
                raise ValueError("corners must be a strictly decreasing staircase")

    @property
    def empty(self) -> bool:
        return not self.corners


@dataclass(frozen=True)
class SumRate:
    """Best feasible r1 + r2 and the sigma2 achieving it."""

    value: float
    sigma2: float | None


def _usable(p: SchemePoint) -> bool:
    return p.feasible and p.r1_bound is not None and p.r2_bound is not None


def region_from_sweep(points: Sequence[SchemePoint]) -> Frontier:
    """Pareto frontier of the union of feasible rectangles.

    Ties within TIE_EPS in both coordinates keep the smaller sigma2.
    """
    usable = [p for p in points if _usable(p)]
    if not usable:
        return Frontier(())

    def key(p: SchemePoint):
        s = p.sigma2 if p.sigma2 is not None else -math.inf
        return (-p.r1_bound, -p.r2_bound, s)

    corners: list[SchemePoint] = []
    best_r2 = -math.inf
    for p in sorted(usable, key=key):
        if p.r2_bound <= best_r2:
            continue
        if corners:
            last = corners[-1]
            near = (
                abs(last.r1_bound - p.r1_bound) <= TIE_EPS
                and abs(p.r2_bound - last.r2_bound) <= TIE_EPS
            )
            if near:
                # Same corner up to fuzz; prefer the smaller sigma2.
                if p.sigma2 is not None and last.sigma2 is not None and p.sigma2 < last.sigma2:
                    corners[-1] = p
                best_r2 = max(best_r2, p.r2_bound)
                continue
        corners.append(p)
        best_r2 = p.r2_bound
    corners.reverse()
    return Frontier(
        corners=tuple(RatePoint(p.r1_bound, p.r2_bound) for p in corners),
        sigma2=tuple(p.sigma2 for p in corners),
    )


def contains(outer: Frontier, inner: Frontier, tol: float = 0.0) -> bool:
    """True iff every inner corner lies under the outer staircase within tol."""
    if inner.empty:
        return True
    if outer.empty:
        return False
    r1s = [c.r1 for c in outer.corners]
    r2s = [c.r2 for c in outer.corners]
    for c in inner.corners:
        # r2 decreases along r1, so the best witness is the smallest
        # outer r1 still covering this corner's r1.
        i = bisect.bisect_left(r1s, c.r1 - tol)
        if i == len(r1s) or r2s[i] < c.r2 - tol:
            return False
    return True


def region_equal(a: Frontier, b: Frontier, tol: float = 1e-6) -> bool:
    """Plot-level region equality: mutual containment at tol."""
    return contains(a, b, tol) and contains(b, a, tol)


def max_sum_rate(points: Sequence[SchemePoint]) -> SumRate | None:
    """Max r1 + r2 over feasible points; None when nothing is feasible.

    Exact ties keep the smaller sigma2.
    """
    best: SumRate | None = None
    for p in points:
        if not _usable(p):
            continue
        s = p.r1_bound + p.r2_bound
        if best is None or s > best.value:
            best = SumRate(s, p.sigma2)
        elif (
            s == best.value
            and p.sigma2 is not None
            and best.sigma2 is not None
            and p.sigma2 < best.sigma2
        ):
            best = SumRate(s, p.sigma2)
    return best


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaGridSpec:
    """Log-spaced sigma2 grid; the config's thresholds get inserted exactly."""

    lo: float = 1e-4
    hi: float = 1e4
    points: int = 2000

    def __post_init__(self) -> None:
        if not (0 < self.lo < self.hi):
            raise ValueError("need 0 < lo < hi")
        if self.points < 2:
            raise ValueError("need at least 2 grid points")


def sigma_grid(cfg: GaussianTwrcConfig, spec: SigmaGridSpec = SigmaGridSpec()) -> np.ndarray:
    """Strictly increasing sigma2 grid with the four thresholds inserted."""
    base = np.geomspace(spec.lo, spec.hi, spec.points)
    t = thresholds(cfg)
    extra = [
        v
        for v in (t.sigma_c1, t.sigma_c2, t.sigma_e1, t.sigma_e2)
        if math.isfinite(v) and v > 0
    ]
    return np.unique(np.concatenate([base, np.asarray(extra)]))


@dataclass(frozen=True)
class SweepResult:
    """Grid of a swept parameter with per-scheme evaluations and sum rates."""

    param: str
    grid: tuple[float, ...]
    points: dict[str, tuple[SchemePoint, ...]]
    sums: dict[str, tuple[float | None, ...]]

    def frontier(self, scheme: str) -> Frontier:
        return region_from_sweep(self.points[scheme])

    def best_sum(self, scheme: str) -> SumRate | None:
        return max_sum_rate(self.points[scheme])


def _as_schemes(schemes: str | Sequence[str]) -> tuple[str, ...]:
    names = (schemes,) if isinstance(schemes, str) else tuple(schemes)
    for s in names:
        if s not in SCHEMES:
            raise ValueError(f"unknown scheme {s!r}")
    return names


def sweep_sigma(
    cfg: GaussianTwrcConfig,
    schemes: str | Sequence[str] = SCHEMES,
    spec: SigmaGridSpec = SigmaGridSpec(),
) -> SweepResult:
    """Evaluate the requested schemes at every sigma2 of the grid."""
    names = _as_schemes(schemes)
    grid = sigma_grid(cfg, spec)
    arrays = twrc_bound_arrays(cfg, grid)
    points = {s: points_from_arrays(arrays, grid, s) for s in names}
    sums = {
        s: tuple(
            p.r1_bound + p.r2_bound if _usable(p) else None for p in points[s]
        )
        for s in names
    }
    return SweepResult("sigma2", tuple(float(g) for g in grid), points, sums)


_EMPTY_POINT = SchemePoint(None, None, None, False, "empty")


def _best_points(
    cfg: GaussianTwrcConfig, schemes: tuple[str, ...], spec: SigmaGridSpec
) -> dict[str, SchemePoint]:
    """Best-sum SchemePoint per scheme for one channel configuration."""
    sweep = sweep_sigma(cfg, schemes, spec)
    out: dict[str, SchemePoint] = {}
    for s in schemes:
        best = sweep.best_sum(s)
        if best is None:
            out[s] = _EMPTY_POINT
        else:
            idx = sweep.grid.index(best.sigma2)
            out[s] = sweep.points[s][idx]
    return out


def sweep_power(
    cfg: GaussianTwrcConfig,
    powers: Sequence[float],
    schemes: str | Sequence[str] = SCHEMES,
    spec: SigmaGridSpec = SigmaGridSpec(),
) -> SweepResult:
    """Best sum rate per input power, holding the gains fixed."""
    names = _as_schemes(schemes)
    grid = tuple(float(p) for p in powers)
    if any(b <= a for a, b in zip(grid, grid[1:])) or not grid:
        raise ValueError("power grid must be nonempty and strictly increasing")
    per_scheme: dict[str, list[SchemePoint]] = {s: [] for s in names}
    for p in grid:
        best = _best_points(replace(cfg, power=p), names, spec)
        for s in names:
            per_scheme[s].append(best[s])
    points = {s: tuple(v) for s, v in per_scheme.items()}
    sums = {
        s: tuple(p.r1_bound + p.r2_bound if _usable(p) else None for p in points[s])
        for s in names
    }
    return SweepResult("power", grid, points, sums)


def distance_config(power: float, gamma: float, d: float) -> GaussianTwrcConfig:
    """Relay on the unit segment: path-loss gains for relay position d."""
    if not 0 < d < 1:
        raise ValueError(f"relay position d={d!r} must lie strictly inside (0, 1)")
    near = d ** (-gamma / 2.0)
    far = (1.0 - d) ** (-gamma / 2.0)
    return GaussianTwrcConfig(
        g12=1.0, g21=1.0, g1r=near, gr1=near, g2r=far, gr2=far, power=power
    )


def sweep_distance(
    power: float,
    gamma: float,
    ds: Sequence[float],
    schemes: str | Sequence[str] = SCHEMES,
    spec: SigmaGridSpec = SigmaGridSpec(),
) -> SweepResult:
    """Best sum rate per relay position d in (0, 1)."""
    names = _as_schemes(schemes)
    grid = tuple(float(d) for d in ds)
    if any(b <= a for a, b in zip(grid, grid[1:])) or not grid:
        raise ValueError("distance grid must be nonempty and strictly increasing")
    per_scheme: dict[str, list[SchemePoint]] = {s: [] for s in names}
    for d in grid:
        best = _best_points(distance_config(power, gamma, d), names, spec)
        for s in names:
            per_scheme[s].append(best[s])
    points = {s: tuple(v) for s, v in per_scheme.items()}
    sums = {
        s: tuple(p.r1_bound + p.r2_bound if _usable(p) else None for p in points[s])
        for s in names
    }
    return SweepResult("d", grid, points, sums)


def hull_frontier(frontier: Frontier) -> tuple[RatePoint, ...]:
    """Upper-concave hull of a staircase (time-sharing boundary vertices)."""
    if frontier.empty:
        return ()
    pts = [(0.0, frontier.corners[0].r2)]
    pts += [(c.r1, c.r2) for c in frontier.corners]
    pts.append((frontier.corners[-1].r1, 0.0))
    hull: list[tuple[float, float]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross >= 0:  # middle point is under or on the chord
                hull.pop()
            else:
                break
        hull.append(p)
    return tuple(RatePoint(x, y) for x, y in hull)
