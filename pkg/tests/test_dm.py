"""Finite-pmf entropy/CMI tests, including the Gaussian cross-check."""

import math

import numpy as np
import pytest
from scipy.stats import norm

from relayrates.dm import (
    DmJoint,
    InvalidDistributionError,
    UnknownVariableError,
    dm_cmi,
    entropy_bits,
)
from relayrates.channels import dm_joint, random_oneway
from relayrates.gaussians import LinearVariable, SourceBasis, cmi

TOL = 1e-9


def test_identity_channel_one_bit():
    probs = np.array([[0.5, 0.0], [0.0, 0.5]])
    j = DmJoint(("X", "Y"), probs)
    assert dm_cmi(j, ("X",), ("Y",)) == pytest.approx(1.0, abs=TOL)


def test_independent_variables_zero():
    probs = np.full((2, 3), 1.0 / 6.0)
    j = DmJoint(("X", "Y"), probs)
    assert dm_cmi(j, ("X",), ("Y",)) == pytest.approx(0.0, abs=TOL)


def test_bsc_uniform_input():
    eps = 0.11
    probs = 0.5 * np.array([[1 - eps, eps], [eps, 1 - eps]])
    j = DmJoint(("X", "Y"), probs)
    h2 = -(eps * math.log2(eps) + (1 - eps) * math.log2(1 - eps))
    assert dm_cmi(j, ("X",), ("Y",)) == pytest.approx(1.0 - h2, abs=TOL)


def test_entropy_conventions():
    assert entropy_bits(np.array([1.0, 0.0])) == 0.0
    assert entropy_bits(np.array([0.5, 0.5])) == pytest.approx(1.0, abs=TOL)
    # entries below the zero-mass floor are ignored
    assert entropy_bits(np.array([1.0, 1e-18])) == 0.0


def test_unknown_name_and_overlap_rejected():
    j = DmJoint(("X", "Y"), np.full((2, 2), 0.25))
    with pytest.raises(UnknownVariableError):
        dm_cmi(j, ("X",), ("Z",))
    with pytest.raises(ValueError):
        dm_cmi(j, ("X",), ("X",))


def test_joint_validation():
    with pytest.raises(InvalidDistributionError):
        DmJoint(("X",), np.array([0.5, 0.6]))
    with pytest.raises(InvalidDistributionError):
        DmJoint(("X",), np.array([1.1, -0.1]))
    with pytest.raises(ValueError):
        DmJoint(("X", "X"), np.full((2, 2), 0.25))


def test_nonnegative_and_symmetric_on_random_joints():
    rng = np.random.default_rng(8)
    for _ in range(30):
        probs = rng.dirichlet(np.ones(2 * 3 * 2)).reshape(2, 3, 2)
        j = DmJoint(("A", "B", "C"), probs)
        ab = dm_cmi(j, ("A",), ("B",), ("C",))
        ba = dm_cmi(j, ("B",), ("A",), ("C",))
        assert ab >= 0.0
        assert ab == pytest.approx(ba, abs=TOL)


def test_redundancy_inequality_on_random_oneway_instances():
    # I(Yh;Yr|Xr,Y) >= I(Yh;Yr|Xr) - I(Yh;X,Y|Xr) under the one-way factorization.
    rng = np.random.default_rng(9)
    for _ in range(60):
        j = dm_joint(random_oneway(rng))
        lhs = dm_cmi(j, ("Yh",), ("Yr",), ("Xr", "Y"))
        rhs = dm_cmi(j, ("Yh",), ("Yr",), ("Xr",)) - dm_cmi(j, ("Yh",), ("X", "Y"), ("Xr",))
        assert lhs >= rhs - TOL


def _discretized_awgn(power: float, levels: int) -> DmJoint:
    """Quantized X ~ N(0, power), Y = X + Z, both truncated at +/- 6 std."""
    sx = math.sqrt(power)
    sy = math.sqrt(power + 1.0)
    x_edges = np.linspace(-6 * sx, 6 * sx, levels + 1)
    y_edges = np.linspace(-6 * sy, 6 * sy, levels + 1)
    px = np.diff(norm.cdf(x_edges, scale=sx))
    px /= px.sum()
    x_mid = 0.5 * (x_edges[:-1] + x_edges[1:])
    cond = np.diff(norm.cdf(y_edges[None, :], loc=x_mid[:, None]), axis=1)
    cond /= cond.sum(axis=1, keepdims=True)
    return DmJoint(("X", "Y"), px[:, None] * cond)


def test_backend_agreement_on_discretized_gaussian():
    power = 1.0
    j = _discretized_awgn(power, levels=128)
    discrete = dm_cmi(j, ("X",), ("Y",))

    basis = SourceBasis(("X", "Z"), (power, 1.0))
    x = LinearVariable.from_map(basis, {"X": 1.0})
    y = LinearVariable.from_map(basis, {"X": 1.0, "Z": 1.0})
    exact = cmi([x], [y])

    assert exact == pytest.approx(0.5, abs=1e-12)
    assert abs(discrete - exact) < 0.02
