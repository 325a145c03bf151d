"""Relay-channel instances: linear-Gaussian models and finite pmf models.

The Gaussian two-way relay channel has users 1 and 2 exchanging messages
through a relay, all under the same input power P:

    Y1 = g12*X2 + g1r*Xr + Z1
    Y2 = g21*X1 + g2r*Xr + Z2
    Yr = gr1*X1 + gr2*X2 + Zr

with unit-variance noises.  The relay's compressed observation is always
Yh = Yr + Zh with Zh of variance sigma2 (independent additive compression
noise); other test channels are not modeled.

Discrete-memoryless models carry explicit pmf tensors and a test channel
p(yh | yr, xr); `dm_joint` multiplies the factors into one joint pmf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .dm import DmJoint, InvalidDistributionError
from .gaussians import GaussianVarSet, LinearVariable, SourceBasis

# Largest allowed number of entries in an expanded joint pmf.
MAX_JOINT_ENTRIES = 10_000_000

ONEWAY_SYMBOLS = ("X", "Xr", "Y", "Yr", "Yh")
TWRC_SYMBOLS = ("X1", "X2", "Xr", "Y1", "Y2", "Yr", "Yh")

# Per-slice normalization tolerance for user-supplied pmfs.
PMF_TOL = 1e-12


class AlphabetTooLargeError(ValueError):
    """The expanded joint pmf would exceed MAX_JOINT_ENTRIES."""


@dataclass(frozen=True)
class GaussianTwrcConfig:
    """Channel gains and the common input power of the Gaussian model."""

    g12: float
    g1r: float
    g21: float
    g2r: float
    gr1: float
    gr2: float
    power: float

    def __post_init__(self) -> None:
        gains = (self.g12, self.g1r, self.g21, self.g2r, self.gr1, self.gr2)
        if not all(math.isfinite(g) for g in gains):
            raise ValueError("channel gains must be finite")
        if not (math.isfinite(self.power) and self.power > 0):
            raise ValueError("power must be positive and finite")


@dataclass(frozen=True)
class CompressionNoise:
    """Variance of the additive compression noise Zh."""

    sigma2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma2) and self.sigma2 >= 0):
            raise ValueError("sigma2 must be finite and >= 0")


def gaussian_variables(cfg: GaussianTwrcConfig, noise: CompressionNoise) -> GaussianVarSet:
    """Build {X1, X2, Xr, Y1, Y2, Yr, Yh} over sources {X1, X2, Xr, Z1, Z2, Zr, Zh}."""
    p = cfg.power
    basis = SourceBasis(
        names=("X1", "X2", "Xr", "Z1", "Z2", "Zr", "Zh"),
        variances=(p, p, p, 1.0, 1.0, 1.0, noise.sigma2),
    )

    def var(weights: dict[str, float]) -> LinearVariable:
        return LinearVariable.from_map(basis, weights)

    return GaussianVarSet(
        {
            "X1": var({"X1": 1.0}),
            "X2": var({"X2": 1.0}),
            "Xr": var({"Xr": 1.0}),
            "Y1": var({"X2": cfg.g12, "Xr": cfg.g1r, "Z1": 1.0}),
            "Y2": var({"X1": cfg.g21, "Xr": cfg.g2r, "Z2": 1.0}),
            "Yr": var({"X1": cfg.gr1, "X2": cfg.gr2, "Zr": 1.0}),
            "Yh": var({"X1": cfg.gr1, "X2": cfg.gr2, "Zr": 1.0, "Zh": 1.0}),
        }
    )


def _check_pmf(name: str, arr: np.ndarray, cond_axes: int) -> None:
    """Validate a (conditional) pmf: last `cond_axes` axes are the outcome."""
    if np.any(arr < 0):
        raise InvalidDistributionError(f"{name} has negative entries")
    axes = tuple(range(arr.ndim - cond_axes, arr.ndim))
    sums = arr.sum(axis=axes)
    if np.any(np.abs(sums - 1.0) > PMF_TOL):
        worst = float(np.abs(sums - 1.0).max())
        raise InvalidDistributionError(f"{name} slices deviate from 1 by {worst:.3g}")


@dataclass(frozen=True)
class DmOneWay:
    """One-way relay instance: sender X, relay (Xr, Yr), receiver Y.

    `channel[x, xr, y, yr]` is p(y, yr | x, xr) and
    `test_channel[yr, xr, yh]` is p(yh | yr, xr).
    """

    px: np.ndarray
    pxr: np.ndarray
    channel: np.ndarray
    test_channel: np.ndarray

    def __post_init__(self) -> None:
        px = np.asarray(self.px, dtype=float)
        pxr = np.asarray(self.pxr, dtype=float)
        ch = np.asarray(self.channel, dtype=float)
        tc = np.asarray(self.test_channel, dtype=float)
        if px.ndim != 1 or pxr.ndim != 1:
            raise ValueError("input pmfs must be one-dimensional")
        if ch.ndim != 4:
            raise ValueError("channel tensor must be indexed by (x, xr, y, yr)")
        if tc.ndim != 3:
            raise ValueError("test channel tensor must be indexed by (yr, xr, yh)")
        nx, nxr, ny, nyr = ch.shape
        if px.shape != (nx,) or pxr.shape != (nxr,):
            raise ValueError("input pmf lengths must match channel alphabet sizes")
        if tc.shape[:2] != (nyr, nxr):
            raise ValueError("test channel must condition on (yr, xr)")
        nyh = tc.shape[2]
        if nx * nxr * ny * nyr * nyh > MAX_JOINT_ENTRIES:
            raise AlphabetTooLargeError("joint pmf would exceed the entry cap")
        _check_pmf("p(x)", px, 1)
        _check_pmf("p(xr)", pxr, 1)
        _check_pmf("p(y,yr|x,xr)", ch, 2)
        _check_pmf("p(yh|yr,xr)", tc, 1)
        for field, arr in (("px", px), ("pxr", pxr), ("channel", ch), ("test_channel", tc)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, field, arr)

    @property
    def sizes(self) -> tuple[int, ...]:
        nx, nxr, ny, nyr = self.channel.shape
        return (nx, nxr, ny, nyr, self.test_channel.shape[2])


@dataclass(frozen=True)
class DmTwrc:
    """Two-way relay instance.

    `channel[x1, x2, xr, y1, y2, yr]` is p(y1, y2, yr | x1, x2, xr) and
    `test_channel[xr, yr, yh]` is p(yh | xr, yr).
    """

    px1: np.ndarray
    px2: np.ndarray
    pxr: np.ndarray
    channel: np.ndarray
    test_channel: np.ndarray

    def __post_init__(self) -> None:
        p1 = np.asarray(self.px1, dtype=float)
        p2 = np.asarray(self.px2, dtype=float)
        pr = np.asarray(self.pxr, dtype=float)
        ch = np.asarray(self.channel, dtype=float)
        tc = np.asarray(self.test_channel, dtype=float)
        if p1.ndim != 1 or p2.ndim != 1 or pr.ndim != 1:
            raise ValueError("input pmfs must be one-dimensional")
        if ch.ndim != 6:
            raise ValueError("channel tensor must be indexed by (x1, x2, xr, y1, y2, yr)")
        if tc.ndim != 3:
            raise ValueError("test channel tensor must be indexed by (xr, yr, yh)")
        n1, n2, nr, ny1, ny2, nyr = ch.shape
        if p1.shape != (n1,) or p2.shape != (n2,) or pr.shape != (nr,):
            raise ValueError("input pmf lengths must match channel alphabet sizes")
        if tc.shape[:2] != (nr, nyr):
            raise ValueError("test channel must condition on (xr, yr)")
        nyh = tc.shape[2]
        if n1 * n2 * nr * ny1 * ny2 * nyr * nyh > MAX_JOINT_ENTRIES:
            raise AlphabetTooLargeError("joint pmf would exceed the entry cap")
        _check_pmf("p(x1)", p1, 1)
        _check_pmf("p(x2)", p2, 1)
        _check_pmf("p(xr)", pr, 1)
        _check_pmf("p(y1,y2,yr|x1,x2,xr)", ch, 3)
        _check_pmf("p(yh|xr,yr)", tc, 1)
        for field, arr in (
            ("px1", p1), ("px2", p2), ("pxr", pr), ("channel", ch), ("test_channel", tc)
        ):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, field, arr)

    @property
    def sizes(self) -> tuple[int, ...]:
        n1, n2, nr, ny1, ny2, nyr = self.channel.shape
        return (n1, n2, nr, ny1, ny2, nyr, self.test_channel.shape[2])


def dm_joint(model: DmOneWay | DmTwrc) -> DmJoint:
    """Multiply the model factors into the full joint pmf (incl. Yh)."""
    if isinstance(model, DmOneWay):
        probs = np.einsum(
            "a,b,abcd,dbe->abcde", model.px, model.pxr, model.channel, model.test_channel
        )
        return DmJoint(ONEWAY_SYMBOLS, probs)
    if isinstance(model, DmTwrc):
        probs = np.einsum(
            "a,b,c,abcdef,cfg->abcdefg",
            model.px1, model.px2, model.pxr, model.channel, model.test_channel,
        )
        return DmJoint(TWRC_SYMBOLS, probs)
    raise TypeError(f"unsupported model type: {type(model).__name__}")


def _dirichlet_slices(rng: np.random.Generator, shape: tuple[int, ...], outcome_axes: int) -> np.ndarray:
    """Dirichlet(1) pmf over the trailing `outcome_axes` axes, per leading index."""
    lead = shape[: len(shape) - outcome_axes]
    tail = shape[len(shape) - outcome_axes:]
    k = int(np.prod(tail))
    flat = rng.dirichlet(np.ones(k), size=int(np.prod(lead)) if lead else 1)
    return flat.reshape(*lead, *tail) if lead else flat.reshape(tail)


def random_oneway(rng: np.random.Generator, sizes: tuple[int, ...] | None = None) -> DmOneWay:
    """Random one-way instance; alphabet sizes default to 2 or 3 per variable."""
    if sizes is None:
        sizes = tuple(int(rng.integers(2, 4)) for _ in range(5))
    nx, nxr, ny, nyr, nyh = sizes
    return DmOneWay(
        px=rng.dirichlet(np.ones(nx)),
        pxr=rng.dirichlet(np.ones(nxr)),
        channel=_dirichlet_slices(rng, (nx, nxr, ny, nyr), 2),
        test_channel=_dirichlet_slices(rng, (nyr, nxr, nyh), 1),
    )


def random_twrc(rng: np.random.Generator, sizes: tuple[int, ...] | None = None) -> DmTwrc:
    """Random two-way instance; alphabet sizes default to 2 or 3 per variable."""
    if sizes is None:
        sizes = tuple(int(rng.integers(2, 4)) for _ in range(7))
    n1, n2, nr, ny1, ny2, nyr, nyh = sizes
    return DmTwrc(
        px1=rng.dirichlet(np.ones(n1)),
        px2=rng.dirichlet(np.ones(n2)),
        pxr=rng.dirichlet(np.ones(nr)),
        channel=_dirichlet_slices(rng, (n1, n2, nr, ny1, ny2, nyr), 3),
        test_channel=_dirichlet_slices(rng, (nr, nyr, nyh), 1),
    )


_ONEWAY_SIZE_KEYS = ("x", "xr", "y", "yr", "yh")
_TWRC_SIZE_KEYS = ("x1", "x2", "xr", "y1", "y2", "yr", "yh")


def _reshape_field(doc: dict[str, Any], key: str, shape: tuple[int, ...]) -> np.ndarray:
    if key not in doc:
        raise ValueError(f"dm model missing field {key!r}")
    arr = np.asarray(doc[key], dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"field {key!r} must be a flat row-major array")
    expect = int(np.prod(shape))
    if arr.size != expect:
        raise ValueError(f"field {key!r} has {arr.size} entries, expected {expect}")
    return arr.reshape(shape)


def dm_model_from_dict(doc: dict[str, Any]) -> DmOneWay | DmTwrc:
    """Build a DM model from a JSON-style document; strict about fields."""
    if not isinstance(doc, dict):
        raise ValueError("dm model must be an object")
    kind = doc.get("kind")
    if kind == "oneway":
        allowed = {"kind", "sizes", "px", "pxr", "channel", "test_channel"}
        size_keys = _ONEWAY_SIZE_KEYS
    elif kind == "twrc":
        allowed = {"kind", "sizes", "px1", "px2", "pxr", "channel", "test_channel"}
        size_keys = _TWRC_SIZE_KEYS
    else:
        raise ValueError(f"dm model kind must be 'oneway' or 'twrc', got {kind!r}")
    unknown = set(doc) - allowed
    if unknown:
        raise ValueError(f"unknown dm model field {sorted(unknown)[0]!r}")
    sizes_doc = doc.get("sizes")
    if not isinstance(sizes_doc, dict) or set(sizes_doc) != set(size_keys):
        raise ValueError(f"dm model 'sizes' must carry exactly the keys {list(size_keys)}")
    sizes = tuple(int(sizes_doc[k]) for k in size_keys)
    if any(s < 1 for s in sizes):
        raise ValueError("alphabet sizes must be >= 1")

    if kind == "oneway":
        nx, nxr, ny, nyr, nyh = sizes
        return DmOneWay(
            px=_reshape_field(doc, "px", (nx,)),
            pxr=_reshape_field(doc, "pxr", (nxr,)),
            channel=_reshape_field(doc, "channel", (nx, nxr, ny, nyr)),
            test_channel=_reshape_field(doc, "test_channel", (nyr, nxr, nyh)),
        )
    n1, n2, nr, ny1, ny2, nyr, nyh = sizes
    return DmTwrc(
        px1=_reshape_field(doc, "px1", (n1,)),
        px2=_reshape_field(doc, "px2", (n2,)),
        pxr=_reshape_field(doc, "pxr", (nr,)),
        channel=_reshape_field(doc, "channel", (n1, n2, nr, ny1, ny2, nyr)),
        test_channel=_reshape_field(doc, "test_channel", (nr, nyr, nyh)),
    )
