"""Frontier construction, containment, sum rates, and sweeps."""

import math

import numpy as np
import pytest

from relayrates.channels import GaussianTwrcConfig
from relayrates.regions import (
    Frontier,
    RatePoint,
    SigmaGridSpec,
    contains,
    distance_config,
    hull_frontier,
    max_sum_rate,
    region_equal,
    region_from_sweep,
    sigma_grid,
    sweep_distance,
    sweep_sigma,
)
from relayrates.schemes import SCHEMES, SchemePoint, thresholds

FIG4 = GaussianTwrcConfig(g12=0.1, g1r=2.0, g21=0.1, g2r=0.5, gr1=2.0, gr2=0.5, power=20.0)
FIG6 = GaussianTwrcConfig(g12=0.1, g1r=2.0, g21=0.1, g2r=2.0, gr1=2.0, gr2=2.0, power=20.0)


def pt(r1, r2, sigma2=None, feasible=True):
    if not feasible:
        return SchemePoint(sigma2, None, None, False, "constraint")
    return SchemePoint(sigma2, r1, r2, True, "r1=obs;r2=obs")


def test_staircase_keeps_incomparable_pair():
    f = region_from_sweep([pt(1, 2, 0.1), pt(2, 1, 0.2)])
    assert [(c.r1, c.r2) for c in f.corners] == [(1, 2), (2, 1)]


def test_staircase_drops_dominated_point():
    f = region_from_sweep([pt(1, 1, 0.1), pt(2, 2, 0.2)])
    assert [(c.r1, c.r2) for c in f.corners] == [(2, 2)]


def test_staircase_empty_when_all_infeasible():
    f = region_from_sweep([pt(0, 0, 0.1, feasible=False)] * 3)
    assert f.empty


def test_staircase_tie_prefers_smaller_sigma():
    f = region_from_sweep([pt(1.0, 1.0, 0.9), pt(1.0, 1.0, 0.2)])
    assert f.sigma2 == (0.2,)


def test_frontier_validation():
    with pytest.raises(ValueError):
        Frontier((RatePoint(1, 1), RatePoint(2, 2)))
    with pytest.raises(ValueError):
        RatePoint(-1.0, 0.0)


def test_contains_reflexive_and_basic():
    f = region_from_sweep([pt(1, 2, 0.1), pt(2, 1, 0.2)])
    assert contains(f, f, 0.0)
    outer = region_from_sweep([pt(2, 2, 0.1)])
    assert contains(outer, f, 0.0)
    assert not contains(f, outer, 0.0)
    assert contains(f, Frontier(()), 0.0)
    assert not contains(Frontier(()), f, 0.0)
    assert contains(Frontier(()), Frontier(()), 0.0)


def test_contains_tolerance():
    inner = region_from_sweep([pt(1.0005, 2.0, 0.1)])
    outer = region_from_sweep([pt(1.0, 2.0, 0.1)])
    assert not contains(outer, inner, 1e-6)
    assert contains(outer, inner, 1e-3)


def test_max_sum_rate():
    best = max_sum_rate([pt(1, 2, 0.5), pt(2, 1, 0.1)])
    assert best.value == pytest.approx(3.0)
    assert best.sigma2 == 0.1  # tie on value -> smaller sigma2
    assert max_sum_rate([pt(0, 0, 0.1, feasible=False)]) is None


def test_brute_force_dominance_agreement():
    rng = np.random.default_rng(31)
    for _ in range(40):
        pts = [
            pt(float(a), float(b), float(i))
            for i, (a, b) in enumerate(rng.uniform(0, 3, size=(int(rng.integers(1, 30)), 2)))
        ]
        frontier = region_from_sweep(pts)
        usable = [(p.r1_bound, p.r2_bound) for p in pts]
        want = {
            a for a in usable
            if not any(b[0] >= a[0] and b[1] >= a[1] and b != a for b in usable)
        }
        assert {(c.r1, c.r2) for c in frontier.corners} == want


def test_contains_transitive_on_random_triples():
    rng = np.random.default_rng(32)
    for _ in range(60):
        fs = [
            region_from_sweep(
                [pt(float(a), float(b), float(i)) for i, (a, b) in
                 enumerate(rng.uniform(0, 3, size=(10, 2)))]
            )
            for _ in range(3)
        ]
        if contains(fs[0], fs[1]) and contains(fs[1], fs[2]):
            assert contains(fs[0], fs[2], 1e-12)


def test_grid_refinement_only_grows_frontier():
    coarse = SigmaGridSpec(lo=1e-3, hi=1e3, points=60)
    fine = SigmaGridSpec(lo=1e-3, hi=1e3, points=237)
    f_coarse = sweep_sigma(FIG4, "cf_nobin", coarse).frontier("cf_nobin")
    f_fine = sweep_sigma(FIG4, "cf_nobin", fine).frontier("cf_nobin")
    # Not literally nested grids, so compare against the union grid instead.
    both = np.unique(np.concatenate([sigma_grid(FIG4, coarse), sigma_grid(FIG4, fine)]))
    from relayrates.schemes import twrc_sweep_points

    f_union = region_from_sweep(twrc_sweep_points(FIG4, both, "cf_nobin"))
    assert contains(f_union, f_coarse, 1e-12)
    assert contains(f_union, f_fine, 1e-12)


def test_nested_scheme_frontiers_on_random_configs():
    rng = np.random.default_rng(33)
    spec = SigmaGridSpec(lo=1e-4, hi=1e4, points=300)
    for _ in range(8):
        g = 10.0 ** rng.uniform(-0.7, 0.4, size=6)
        cfg = GaussianTwrcConfig(*g, power=float(10.0 ** rng.uniform(0.3, 1.5)))
        sweep = sweep_sigma(cfg, SCHEMES, spec)
        f = {s: sweep.frontier(s) for s in SCHEMES}
        assert contains(f["nnc"], f["cf_nobin"], 1e-9)
        assert contains(f["cf_nobin"], f["cf_binning"], 1e-9)


def test_sigma_grid_contains_thresholds_and_increases():
    grid = sigma_grid(FIG4, SigmaGridSpec(points=50))
    t = thresholds(FIG4)
    for v in (t.sigma_c1, t.sigma_c2, t.sigma_e1, t.sigma_e2):
        assert v in grid
    assert np.all(np.diff(grid) > 0)


def test_feasibility_transition_at_threshold():
    sweep = sweep_sigma(FIG4, "cf_nobin", SigmaGridSpec(points=200))
    t = thresholds(FIG4)
    floor = max(t.sigma_c1, t.sigma_c2)
    flags = {s2: p.feasible for s2, p in zip(sweep.grid, sweep.points["cf_nobin"])}
    assert flags[floor]
    below = max(s2 for s2 in sweep.grid if s2 < floor)
    assert not flags[below]


def test_binning_transition_sits_at_crossing_for_symmetric_gains():
    # With equal relay gains the binning floor coincides with the obs/net
    # crossing (not with the joint-decoding floor, which is lower).
    sweep = sweep_sigma(FIG6, ("cf_binning", "cf_nobin"), SigmaGridSpec(points=200))
    t = thresholds(FIG6)
    first_bin = next(s2 for s2, p in zip(sweep.grid, sweep.points["cf_binning"]) if p.feasible)
    first_nobin = next(s2 for s2, p in zip(sweep.grid, sweep.points["cf_nobin"]) if p.feasible)
    assert first_bin == pytest.approx(t.sigma_e1, abs=1e-12)
    assert first_nobin == pytest.approx(max(t.sigma_c1, t.sigma_c2), abs=1e-12)


def test_sweep_distance_gains_and_symmetry():
    cfg = distance_config(10.0, 3.0, 0.5)
    assert cfg.gr1 == pytest.approx(0.5 ** -1.5, abs=1e-12)
    assert cfg.gr1 == pytest.approx(2.8284271247461903, abs=1e-9)
    assert cfg.g12 == 1.0 and cfg.g21 == 1.0
    flat = distance_config(10.0, 0.0, 0.3)
    assert flat.gr1 == flat.gr2 == flat.g1r == flat.g2r == 1.0
    with pytest.raises(ValueError):
        distance_config(10.0, 3.0, 1.0)
    with pytest.raises(ValueError):
        distance_config(10.0, 3.0, 0.0)

    spec = SigmaGridSpec(points=120)
    sweep = sweep_distance(10.0, 3.0, [0.3, 0.5, 0.7], SCHEMES, spec)
    sums = {s: sweep.sums[s] for s in SCHEMES}
    mid = 1  # d = 0.5 is symmetric: all three schemes coincide
    assert sums["cf_nobin"][mid] == pytest.approx(sums["nnc"][mid], abs=1e-9)
    assert sums["cf_binning"][mid] == pytest.approx(sums["nnc"][mid], abs=1e-9)


def test_region_equal_both_ways():
    a = region_from_sweep([pt(1, 2, 0.1), pt(2, 1, 0.2)])
    b = region_from_sweep([pt(1, 2, 0.3), pt(2, 1, 0.4)])
    assert region_equal(a, b, 1e-9)
    c = region_from_sweep([pt(2.5, 1, 0.4)])
    assert not region_equal(a, c, 1e-6)


def test_hull_frontier_vertices():
    f = region_from_sweep([pt(1, 2, 0.1), pt(2, 1, 0.2)])
    hull = hull_frontier(f)
    xs = [(p.r1, p.r2) for p in hull]
    assert xs[0] == (0.0, 2.0)
    assert xs[-1] == (2.0, 0.0)
    assert (1.0, 2.0) in xs and (2.0, 1.0) in xs
    assert hull_frontier(Frontier(())) == ()
