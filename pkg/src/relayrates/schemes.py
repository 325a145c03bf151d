"""Rate bounds and feasibility for the three relaying schemes.

Three strategies are evaluated against a mutual-information provider (an
exact Gaussian backend or a finite-pmf backend):

* ``cf_binning``  -- the relay hashes its compression index and each
  destination decodes link, index, and message successively.
* ``cf_nobin``    -- the relay forwards the raw compression index and each
  destination decodes message and index jointly.
* ``nnc``         -- noisy network coding; identical per-user rate bounds
  to ``cf_nobin`` but no admissibility constraint on the compression rate.

Per user the two candidate bounds are named

* ``obs``: what the combined observation supports,
  e.g. I(X1; Y2,Yh | X2,Xr) for user 1's message, and
* ``net``: what the channels deliver net of the compression residual,
  e.g. I(X1,Xr; Y2 | X2) - I(Yh; Yr | X1,X2,Xr,Y2).

For the Gaussian model the module also carries the closed forms of the
four bounds, the variance thresholds where feasibility starts (sigma_c*)
and where the obs/net bounds cross (sigma_e*), and the gain condition
under which ``cf_nobin`` and ``nnc`` trace the same region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Protocol, Sequence

import math

import numpy as np

from . import gaussians
from .channels import TWRC_SYMBOLS, CompressionNoise, GaussianTwrcConfig, gaussian_variables
from .dm import DmJoint, dm_cmi
from .gaussians import EIG_FLOOR, GaussianVarSet

SCHEMES = ("cf_binning", "cf_nobin", "nnc")

# Slack (bits) for feasibility inequalities so that grid points sitting
# exactly on a threshold evaluate as feasible despite rounding.
FEAS_SLACK = 1e-9


class DivergenceError(ValueError):
    """A closed form was requested where it diverges (sigma2 = 0)."""


class MiProvider(Protocol):
    """Answers conditional mutual-information queries over symbol names."""

    def cmi(self, a: Sequence[str], b: Sequence[str], c: Sequence[str] = ()) -> float:
        ...


class GaussianMi:
    """MiProvider over a Gaussian variable set."""

    def __init__(self, varset: GaussianVarSet):
        self._vars = varset

    def cmi(self, a: Sequence[str], b: Sequence[str], c: Sequence[str] = ()) -> float:
        return gaussians.cmi(self._vars.subset(a), self._vars.subset(b), self._vars.subset(c))


class DmMi:
    """MiProvider over a finite joint pmf."""

    def __init__(self, joint: DmJoint):
        self._joint = joint

    def cmi(self, a: Sequence[str], b: Sequence[str], c: Sequence[str] = ()) -> float:
        return dm_cmi(self._joint, a, b, c)


def gaussian_mi(cfg: GaussianTwrcConfig, sigma2: float) -> GaussianMi:
    """Gaussian provider for one compression-noise choice."""
    return GaussianMi(gaussian_variables(cfg, CompressionNoise(sigma2)))


# ---------------------------------------------------------------------------
# One-way relay channel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OneWayPoint:
    """One evaluation of a one-way scheme.

    `obs_bound` and `net_bound` are the raw candidate bounds; `rate` is the
    scheme's achievable rate (clamped at 0).  `min_form` is only set by the
    binning scheme and carries min(obs, net) for cross-checking.
    """

    rate: float
    feasible: bool
    binding: str
    obs_bound: float
    net_bound: float
    min_form: float | None = None


def oneway_cf_nobin(mi: MiProvider) -> OneWayPoint:
    """Joint decoding of message and raw compression index."""
    obs = mi.cmi(("X",), ("Y", "Yh"), ("Xr",))
    net = mi.cmi(("X", "Xr"), ("Y",)) - mi.cmi(("Yh",), ("Yr",), ("X", "Xr", "Y"))
    cover = mi.cmi(("Yh",), ("Yr",), ("Xr",))
    budget = mi.cmi(("Xr",), ("Y",)) + mi.cmi(("Yh",), ("X", "Y"), ("Xr",))
    feasible = budget >= cover - FEAS_SLACK
    binding = "net" if net <= obs else "obs"
    return OneWayPoint(
        rate=max(0.0, min(obs, net)) if feasible else 0.0,
        feasible=feasible,
        binding=binding if feasible else "constraint",
        obs_bound=obs,
        net_bound=net,
    )


def oneway_cf_binning(mi: MiProvider) -> OneWayPoint:
    """Binned compression index with successive decoding."""
    obs = mi.cmi(("X",), ("Y", "Yh"), ("Xr",))
    net = mi.cmi(("X", "Xr"), ("Y",)) - mi.cmi(("Yh",), ("Yr",), ("X", "Xr", "Y"))
    link = mi.cmi(("Xr",), ("Y",))
    cover_given_y = mi.cmi(("Yh",), ("Yr",), ("Xr", "Y"))
    feasible = link >= cover_given_y - FEAS_SLACK
    return OneWayPoint(
        rate=max(0.0, obs) if feasible else 0.0,
        feasible=feasible,
        binding="obs" if feasible else "constraint",
        obs_bound=obs,
        net_bound=net,
        min_form=min(obs, net),
    )


# ---------------------------------------------------------------------------
# Two-way relay channel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchemePoint:
    """One scheme evaluation; infeasible points carry no rates."""

    sigma2: float | None
    r1_bound: float | None
    r2_bound: float | None
    feasible: bool
    binding: str


#: The per-point quantities every scheme draws from, keyed by short name.
#: Side 1 bounds user 1's rate (decoded at user 2 from Y2); side 2 mirrors.
_TWRC_QUERIES: dict[str, tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]] = {
    "obs1": (("X1",), ("Y2", "Yh"), ("X2", "Xr")),
    "tot1": (("X1", "Xr"), ("Y2",), ("X2",)),
    "res1": (("Yh",), ("Yr",), ("X1", "X2", "Xr", "Y2")),
    "link1": (("Xr",), ("Y2",), ("X2",)),
    "part1": (("Yh",), ("Yr",), ("X2", "Xr", "Y2")),
    "obs2": (("X2",), ("Y1", "Yh"), ("X1", "Xr")),
    "tot2": (("X2", "Xr"), ("Y1",), ("X1",)),
    "res2": (("Yh",), ("Yr",), ("X1", "X2", "Xr", "Y1")),
    "link2": (("Xr",), ("Y1",), ("X1",)),
    "part2": (("Yh",), ("Yr",), ("X1", "Xr", "Y1")),
}

_NEEDED: dict[str, tuple[str, ...]] = {
    "cf_binning": ("obs1", "obs2", "part1", "part2", "link1", "link2"),
    "cf_nobin": ("obs1", "tot1", "res1", "obs2", "tot2", "res2", "link1", "link2"),
    "nnc": ("obs1", "tot1", "res1", "obs2", "tot2", "res2"),
}


def twrc_terms(mi: MiProvider, names: Sequence[str] | None = None) -> dict[str, float]:
    """Evaluate the named per-point quantities (all of them by default)."""
    names = tuple(_TWRC_QUERIES) if names is None else tuple(names)
    return {n: mi.cmi(*_TWRC_QUERIES[n]) for n in names}


def _assemble_point(scheme: str, t: Mapping[str, float], sigma2: float | None) -> SchemePoint:
    if scheme == "cf_binning":
        r1, r2 = t["obs1"], t["obs2"]
        b1, b2 = "obs", "obs"
        ok = max(t["part1"], t["part2"]) <= min(t["link1"], t["link2"]) + FEAS_SLACK
    elif scheme in ("cf_nobin", "nnc"):
        net1 = t["tot1"] - t["res1"]
        net2 = t["tot2"] - t["res2"]
        r1, b1 = (net1, "net") if net1 <= t["obs1"] else (t["obs1"], "obs")
        r2, b2 = (net2, "net") if net2 <= t["obs2"] else (t["obs2"], "obs")
        if scheme == "cf_nobin":
            ok = t["res1"] <= t["link1"] + FEAS_SLACK and t["res2"] <= t["link2"] + FEAS_SLACK
        else:
            ok = True
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    if not ok:
        return SchemePoint(sigma2, None, None, False, "constraint")
    if r1 < -FEAS_SLACK or r2 < -FEAS_SLACK:
        # A negative bound means the rectangle is empty at this point.
        return SchemePoint(sigma2, None, None, False, "empty")
    return SchemePoint(sigma2, max(r1, 0.0), max(r2, 0.0), True, f"r1={b1};r2={b2}")


def twrc_rates(mi: MiProvider, scheme: str, sigma2: float | None = None) -> SchemePoint:
    """Evaluate one scheme at one auxiliary choice."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    return _assemble_point(scheme, twrc_terms(mi, _NEEDED[scheme]), sigma2)


# ---------------------------------------------------------------------------
# Gaussian closed forms and thresholds
# ---------------------------------------------------------------------------

def capacity(snr: float) -> float:
    """C(x) = 1/2 log2(1 + x), bits per channel use."""
    if snr < 0:
        raise ValueError("snr must be >= 0")
    return 0.5 * math.log2(1.0 + snr)


@dataclass(frozen=True)
class GaussianBounds:
    """Closed-form obs/net bounds for both users at one sigma2."""

    r1_obs: float
    r1_net: float
    r2_obs: float
    r2_net: float


def gaussian_closed_forms(cfg: GaussianTwrcConfig, sigma2: float) -> GaussianBounds:
    """The four closed-form bounds; the net bounds diverge at sigma2 = 0."""
    if sigma2 <= 0:
        raise DivergenceError("net bounds diverge to -inf as sigma2 -> 0")
    p = cfg.power
    return GaussianBounds(
        r1_obs=capacity(cfg.g21 ** 2 * p + cfg.gr1 ** 2 * p / (1.0 + sigma2)),
        r1_net=capacity(cfg.g21 ** 2 * p + cfg.g2r ** 2 * p) - capacity(1.0 / sigma2),
        r2_obs=capacity(cfg.g12 ** 2 * p + cfg.gr2 ** 2 * p / (1.0 + sigma2)),
        r2_net=capacity(cfg.g12 ** 2 * p + cfg.g1r ** 2 * p) - capacity(1.0 / sigma2),
    )


@dataclass(frozen=True)
class SigmaThresholds:
    """Compression-noise variances where feasibility and bound crossings sit.

    sigma_c1/sigma_c2 are the joint-decoding feasibility floors; sigma_e1 and
    sigma_e2 are where each user's obs and net bounds meet.  sigma_c1 <=
    sigma_e1 and sigma_c2 <= sigma_e2 always.  Zero relay-to-user gains make
    the affected thresholds infinite.
    """

    sigma_c1: float
    sigma_c2: float
    sigma_e1: float
    sigma_e2: float

    @property
    def all_finite(self) -> bool:
        return all(
            math.isfinite(v)
            for v in (self.sigma_c1, self.sigma_c2, self.sigma_e1, self.sigma_e2)
        )


def thresholds(cfg: GaussianTwrcConfig) -> SigmaThresholds:
    p = cfg.power
    den1 = cfg.g2r ** 2 * p
    den2 = cfg.g1r ** 2 * p
    num_c1 = 1.0 + cfg.g21 ** 2 * p
    num_c2 = 1.0 + cfg.g12 ** 2 * p
    return SigmaThresholds(
        sigma_c1=num_c1 / den1 if den1 > 0 else math.inf,
        sigma_c2=num_c2 / den2 if den2 > 0 else math.inf,
        sigma_e1=(num_c1 + cfg.gr1 ** 2 * p) / den1 if den1 > 0 else math.inf,
        sigma_e2=(num_c2 + cfg.gr2 ** 2 * p) / den2 if den2 > 0 else math.inf,
    )


def nnc_equivalence_holds(cfg: GaussianTwrcConfig) -> bool:
    """True iff cf_nobin traces the same Gaussian region as nnc."""
    t = thresholds(cfg)
    return t.sigma_c1 <= t.sigma_e2 and t.sigma_c2 <= t.sigma_e1


def binning_equality_holds(mi: MiProvider, tol: float = 1e-9) -> bool:
    """True iff cf_binning gives up nothing against cf_nobin at this point."""
    t = twrc_terms(mi, ("link1", "link2", "part1", "part2"))
    return abs(t["link1"] - t["link2"]) <= tol and abs(t["part1"] - t["part2"]) <= tol


# ---------------------------------------------------------------------------
# Vectorized Gaussian evaluation across a sigma2 grid
# ---------------------------------------------------------------------------

_SYMBOL_INDEX = {s: i for i, s in enumerate(TWRC_SYMBOLS)}
_YH = _SYMBOL_INDEX["Yh"]


def _batched_pdet_log2(sig: np.ndarray, idx: tuple[int, ...]) -> np.ndarray:
    if not idx:
        return np.zeros(sig.shape[0])
    ix = np.asarray(idx)
    sub = sig[:, ix[:, None], ix[None, :]]
    eig = np.linalg.eigvalsh(sub)
    cut = np.maximum(eig[:, -1:], 0.0) * EIG_FLOOR
    mask = eig > cut
    return np.where(mask, np.log2(np.where(mask, eig, 1.0)), 0.0).sum(axis=-1)


def twrc_bound_arrays(cfg: GaussianTwrcConfig, sigma2s: np.ndarray) -> dict[str, np.ndarray]:
    """All per-point quantities over a sigma2 grid in one batched pass.

    Only the (Yh, Yh) covariance entry depends on sigma2, so one base matrix
    plus a diagonal bump describes the whole grid.  Agrees with the scalar
    engine to floating-point accuracy.
    """
    sigma2s = np.asarray(sigma2s, dtype=float)
    varset = gaussian_variables(cfg, CompressionNoise(0.0))
    base = gaussians.covariance(varset.subset(TWRC_SYMBOLS))
    sig = np.broadcast_to(base, (sigma2s.size, 7, 7)).copy()
    sig[:, _YH, _YH] += sigma2s

    def ival(a: tuple[str, ...], b: tuple[str, ...], c: tuple[str, ...]) -> np.ndarray:
        ai = tuple(_SYMBOL_INDEX[s] for s in a)
        bi = tuple(_SYMBOL_INDEX[s] for s in b)
        ci = tuple(_SYMBOL_INDEX[s] for s in c)
        val = 0.5 * (
            _batched_pdet_log2(sig, ai + ci)
            + _batched_pdet_log2(sig, bi + ci)
            - _batched_pdet_log2(sig, ci)
            - _batched_pdet_log2(sig, ai + bi + ci)
        )
        return np.maximum(val, 0.0)

    return {name: ival(*query) for name, query in _TWRC_QUERIES.items()}


def twrc_sweep_points(
    cfg: GaussianTwrcConfig, sigma2s: np.ndarray, scheme: str
) -> tuple[SchemePoint, ...]:
    """SchemePoint per grid value, via the batched evaluator."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    arrays = twrc_bound_arrays(cfg, sigma2s)
    return points_from_arrays(arrays, np.asarray(sigma2s, dtype=float), scheme)


def points_from_arrays(
    arrays: Mapping[str, np.ndarray], sigma2s: np.ndarray, scheme: str
) -> tuple[SchemePoint, ...]:
    """Assemble SchemePoints from precomputed quantity arrays."""
    names = tuple(arrays)
    return tuple(
        _assemble_point(
            scheme, {n: float(arrays[n][i]) for n in names}, float(sigma2s[i])
        )
        for i in range(len(sigma2s))
    )
