"""Channel construction and DM model loading tests."""

import numpy as np
import pytest

from relayrates.channels import (
    AlphabetTooLargeError,
    CompressionNoise,
    DmOneWay,
    DmTwrc,
    GaussianTwrcConfig,
    dm_joint,
    dm_model_from_dict,
    gaussian_variables,
    random_oneway,
    random_twrc,
)
from relayrates.dm import InvalidDistributionError

FIG4 = GaussianTwrcConfig(g12=0.1, g1r=2.0, g21=0.1, g2r=0.5, gr1=2.0, gr2=0.5, power=20.0)


def test_zero_gains_leave_pure_noise():
    cfg = GaussianTwrcConfig(g12=0, g1r=0, g21=0, g2r=0, gr1=0, gr2=0, power=5.0)
    vs = gaussian_variables(cfg, CompressionNoise(1.0))
    y1 = vs["Y1"]
    z1 = {name: c for name, c in zip(y1.basis.names, y1.coeffs)}
    assert z1 == {"X1": 0, "X2": 0, "Xr": 0, "Z1": 1.0, "Z2": 0, "Zr": 0, "Zh": 0}


def test_relay_observation_variance():
    vs = gaussian_variables(FIG4, CompressionNoise(0.5))
    assert vs["Yr"].variance() == pytest.approx(86.0, abs=1e-12)


def test_zero_sigma_matches_relay_observation():
    vs = gaussian_variables(FIG4, CompressionNoise(0.0))
    yr, yh = vs["Yr"], vs["Yh"]
    # Yh differs from Yr only through the zero-variance compression source.
    for name, cr, ch in zip(yr.basis.names, yr.coeffs, yh.coeffs):
        if name != "Zh":
            assert cr == ch
    assert yh.variance() == pytest.approx(yr.variance(), abs=1e-12)
    diff = [a - b for a, b in zip(yh.coeffs, yr.coeffs)]
    assert float(np.dot(np.square(diff), yr.basis.variances)) == 0.0


def test_every_finite_config_builds():
    rng = np.random.default_rng(10)
    for _ in range(50):
        cfg = GaussianTwrcConfig(*rng.normal(scale=3.0, size=6), power=float(rng.uniform(0.1, 100)))
        vs = gaussian_variables(cfg, CompressionNoise(float(rng.uniform(0, 10))))
        assert set(vs.names) == {"X1", "X2", "Xr", "Y1", "Y2", "Yr", "Yh"}


def test_config_validation():
    with pytest.raises(ValueError):
        GaussianTwrcConfig(g12=0.1, g1r=1, g21=0.1, g2r=1, gr1=1, gr2=1, power=0.0)
    with pytest.raises(ValueError):
        GaussianTwrcConfig(g12=float("nan"), g1r=1, g21=0.1, g2r=1, gr1=1, gr2=1, power=1.0)
    with pytest.raises(ValueError):
        CompressionNoise(-0.5)


def _bsc_oneway(eps=0.11):
    # p(y,yr|x,xr) = BSC(eps)(y|x) * uniform(yr): the relay sees nothing useful.
    bsc = np.array([[1 - eps, eps], [eps, 1 - eps]])
    channel = np.zeros((2, 2, 2, 2))
    for x in range(2):
        for xr in range(2):
            channel[x, xr] = bsc[x][:, None] * 0.5
    return DmOneWay(
        px=[0.5, 0.5],
        pxr=[0.5, 0.5],
        channel=channel,
        test_channel=np.full((2, 2, 2), 0.5),
    )


def test_dm_joint_diagonal_support():
    # Deterministic Y = X, constant Yh: mass sits on the diagonal only.
    channel = np.zeros((2, 1, 2, 1))
    channel[0, 0, 0, 0] = 1.0
    channel[1, 0, 1, 0] = 1.0
    m = DmOneWay(
        px=[0.5, 0.5], pxr=[1.0], channel=channel, test_channel=np.ones((1, 1, 1))
    )
    j = dm_joint(m)
    pxy = j.marginal(("X", "Y"))
    assert pxy == pytest.approx(np.diag([0.5, 0.5]))


def test_dm_joint_uniform_coins():
    m = DmOneWay(
        px=[0.5, 0.5],
        pxr=[0.5, 0.5],
        channel=np.full((2, 2, 2, 2), 0.25),
        test_channel=np.full((2, 2, 2), 0.5),
    )
    j = dm_joint(m)
    assert j.probs == pytest.approx(np.full((2, 2, 2, 2, 2), 1 / 32))


def test_dm_joint_bsc_marginal():
    j = dm_joint(_bsc_oneway())
    pxy = j.marginal(("X", "Y"))
    assert sorted(pxy.ravel()) == pytest.approx([0.055, 0.055, 0.445, 0.445])


def test_dm_joint_recovers_channel():
    rng = np.random.default_rng(11)
    for _ in range(10):
        m = random_oneway(rng)
        j = dm_joint(m)
        back = j.probs.sum(axis=4) / (m.px[:, None, None, None] * m.pxr[None, :, None, None])
        assert np.abs(back - m.channel).max() < 1e-12
    for _ in range(5):
        m = random_twrc(rng)
        j = dm_joint(m)
        denom = (
            m.px1[:, None, None, None, None, None]
            * m.px2[None, :, None, None, None, None]
            * m.pxr[None, None, :, None, None, None]
        )
        back = j.probs.sum(axis=6) / denom
        assert np.abs(back - m.channel).max() < 1e-12


def test_joint_mass_one():
    rng = np.random.default_rng(12)
    for _ in range(10):
        assert dm_joint(random_twrc(rng)).probs.sum() == pytest.approx(1.0, abs=1e-9)


def test_slice_normalization_enforced():
    bad = np.full((2, 2, 2, 2), 0.25)
    bad[0, 0, 0, 0] = 0.3
    with pytest.raises(InvalidDistributionError):
        DmOneWay(px=[0.5, 0.5], pxr=[0.5, 0.5], channel=bad, test_channel=np.full((2, 2, 2), 0.5))


def test_alphabet_cap():
    # 100*100*10*10*11 = 1.1e7 entries crosses the cap.
    with pytest.raises(AlphabetTooLargeError):
        DmOneWay(
            px=np.full(100, 0.01),
            pxr=np.full(100, 0.01),
            channel=np.full((100, 100, 10, 10), 0.01),
            test_channel=np.full((10, 100, 11), 1 / 11),
        )


def _oneway_doc():
    return {
        "kind": "oneway",
        "sizes": {"x": 2, "xr": 2, "y": 2, "yr": 2, "yh": 2},
        "px": [0.5, 0.5],
        "pxr": [0.5, 0.5],
        "channel": np.full(16, 0.25).tolist(),
        "test_channel": np.full(8, 0.5).tolist(),
    }


def test_model_from_dict_roundtrip():
    m = dm_model_from_dict(_oneway_doc())
    assert isinstance(m, DmOneWay)
    assert m.sizes == (2, 2, 2, 2, 2)

    doc = {
        "kind": "twrc",
        "sizes": {"x1": 2, "x2": 2, "xr": 2, "y1": 2, "y2": 2, "yr": 2, "yh": 2},
        "px1": [0.5, 0.5],
        "px2": [0.5, 0.5],
        "pxr": [0.5, 0.5],
        "channel": np.full(2 ** 6, 0.125).tolist(),
        "test_channel": np.full(8, 0.5).tolist(),
    }
    m = dm_model_from_dict(doc)
    assert isinstance(m, DmTwrc)


def test_model_from_dict_strictness():
    doc = _oneway_doc()
    doc["extra"] = 1
    with pytest.raises(ValueError, match="extra"):
        dm_model_from_dict(doc)

    doc = _oneway_doc()
    del doc["px"]
    with pytest.raises(ValueError, match="px"):
        dm_model_from_dict(doc)

    doc = _oneway_doc()
    doc["channel"] = doc["channel"][:-1]
    with pytest.raises(ValueError, match="channel"):
        dm_model_from_dict(doc)

    with pytest.raises(ValueError, match="kind"):
        dm_model_from_dict({"kind": "bogus"})
