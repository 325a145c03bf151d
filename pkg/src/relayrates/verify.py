"""Randomized property suites.

Each suite draws seeded random instances, checks an identity or an
inequality the implementation must satisfy, and reports case/failure
counts plus the worst observed violation.  The CLI `verify` mode runs all
of them; the test suite reuses them with larger case counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gaussians
from .channels import (
    CompressionNoise,
    GaussianTwrcConfig,
    dm_joint,
    gaussian_variables,
    random_oneway,
    random_twrc,
)
from .gaussians import LinearVariable, SourceBasis
from .regions import contains, region_from_sweep
from .schemes import (
    DmMi,
    GaussianMi,
    SchemePoint,
    gaussian_closed_forms,
    oneway_cf_binning,
    oneway_cf_nobin,
    thresholds,
    twrc_rates,
    twrc_terms,
)

TOL = 1e-9


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    failures: int
    worst: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


def random_config(rng: np.random.Generator) -> GaussianTwrcConfig:
    """Gains log-uniform in about [0.1, 2.5]; power log-uniform in [1, 50]."""
    g = 10.0 ** rng.uniform(-1.0, 0.4, size=6)
    return GaussianTwrcConfig(*g, power=float(10.0 ** rng.uniform(0.0, 1.7)))


def suite_closed_forms(cases: int = 40, sigmas: int = 10, seed: int = 101) -> SuiteResult:
    """Engine-evaluated obs/net bounds match the Gaussian closed forms."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(cases):
        cfg = random_config(rng)
        for s2 in 10.0 ** rng.uniform(-3.0, 3.0, size=sigmas):
            mi = GaussianMi(gaussian_variables(cfg, CompressionNoise(float(s2))))
            t = twrc_terms(mi, ("obs1", "tot1", "res1", "obs2", "tot2", "res2"))
            cf = gaussian_closed_forms(cfg, float(s2))
            errs = (
                abs(t["obs1"] - cf.r1_obs),
                abs(t["tot1"] - t["res1"] - cf.r1_net),
                abs(t["obs2"] - cf.r2_obs),
                abs(t["tot2"] - t["res2"] - cf.r2_net),
            )
            worst = max(worst, *errs)
            if max(errs) > TOL:
                failures += 1
    return SuiteResult("gaussian_closed_forms", cases * sigmas, failures, worst)


def _random_linear_system(rng: np.random.Generator):
    """A random basis plus named variables X, Xr, Y, Yr and Yh = Yr + Zh."""
    n_src = int(rng.integers(3, 6))
    names = tuple(f"S{i}" for i in range(n_src)) + ("Zh",)
    variances = tuple(float(v) for v in rng.uniform(0.1, 5.0, size=n_src)) + (
        float(rng.uniform(0.0, 3.0)),
    )
    basis = SourceBasis(names, variances)

    def rand_var(use_zh: bool = False) -> LinearVariable:
        coeffs = list(rng.uniform(-2.0, 2.0, size=n_src)) + [0.0]
        if use_zh:
            coeffs[-1] = 1.0
        return LinearVariable(basis, tuple(coeffs))

    x, xr, y, yr = (rand_var() for _ in range(4))
    zh = LinearVariable.from_map(basis, {"Zh": 1.0})
    yh = yr + zh
    return basis, x, xr, y, yr, yh


def suite_gaussian_identities(cases: int = 60, seed: int = 202) -> SuiteResult:
    """Chain rule, data processing, and the compression-identity chain."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(cases):
        _, x, xr, y, yr, yh = _random_linear_system(rng)
        errs = []
        # Chain rule: I(X,Xr;Y) = I(X;Y) + I(Xr;Y|X).
        errs.append(
            abs(
                gaussians.cmi([x, xr], [y])
                - gaussians.cmi([x], [y])
                - gaussians.cmi([xr], [y], [x])
            )
        )
        # Data processing through the compression step.
        errs.append(
            max(0.0, gaussians.cmi([x], [yh]) - gaussians.cmi([x], [yr]))
        )
        # Independent conditioning leaves the value unchanged.
        fresh = LinearVariable.from_map(x.basis, {})
        errs.append(
            abs(gaussians.cmi([x], [y], [xr]) - gaussians.cmi([x], [y], [xr, fresh]))
        )
        # Identity behind the redundancy argument:
        # I(Yh;Yr|Xr,Y) - I(Yh;Yr|Xr) + I(Yh;X,Y|Xr) = I(X;Yh|Xr,Y) >= 0.
        lhs = (
            gaussians.cmi([yh], [yr], [xr, y])
            - gaussians.cmi([yh], [yr], [xr])
            + gaussians.cmi([yh], [x, y], [xr])
        )
        rhs = gaussians.cmi([x], [yh], [xr, y])
        errs.append(abs(lhs - rhs))
        errs.append(max(0.0, -rhs))
        worst = max(worst, *errs)
        if max(errs) > TOL:
            failures += 1
    return SuiteResult("gaussian_identities", cases, failures, worst)


def suite_oneway_equivalence(cases: int = 100, seed: int = 303) -> SuiteResult:
    """Binning and no-binning agree on the binning-feasible set; redundancy holds."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(cases):
        mi = DmMi(dm_joint(random_oneway(rng)))
        errs = []
        # Redundancy: I(Yh;Yr|Xr,Y) >= I(Yh;Yr|Xr) - I(Yh;X,Y|Xr).
        slack = (
            mi.cmi(("Yh",), ("Yr",), ("Xr", "Y"))
            - mi.cmi(("Yh",), ("Yr",), ("Xr",))
            + mi.cmi(("Yh",), ("X", "Y"), ("Xr",))
        )
        errs.append(max(0.0, -slack))
        binning = oneway_cf_binning(mi)
        nobin = oneway_cf_nobin(mi)
        if binning.feasible:
            if not nobin.feasible:
                errs.append(1.0)
            errs.append(abs(binning.rate - nobin.rate))
            # Under the binning constraint the min-form collapses to obs.
            errs.append(abs(binning.min_form - binning.obs_bound))
        worst = max(worst, *errs)
        if max(errs) > TOL:
            failures += 1
    return SuiteResult("oneway_equivalence", cases, failures, worst)


def suite_twrc_implication(cases: int = 100, seed: int = 404) -> SuiteResult:
    """Binning feasibility implies no-binning feasibility and smaller bounds."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(cases):
        mi = DmMi(dm_joint(random_twrc(rng)))
        t = twrc_terms(mi)
        errs = []
        binning_ok = max(t["part1"], t["part2"]) <= min(t["link1"], t["link2"])
        if binning_ok:
            # The tighter constraint implies the joint-decoding one.
            errs.append(max(0.0, t["res1"] - t["link1"]))
            errs.append(max(0.0, t["res2"] - t["link2"]))
            binning = twrc_rates(mi, "cf_binning")
            nobin = twrc_rates(mi, "cf_nobin")
            if not (binning.feasible and nobin.feasible):
                errs.append(1.0)
            else:
                errs.append(max(0.0, binning.r1_bound - nobin.r1_bound))
                errs.append(max(0.0, binning.r2_bound - nobin.r2_bound))
        worst = max(worst, *errs) if errs else worst
        if errs and max(errs) > TOL:
            failures += 1
    return SuiteResult("twrc_implication", cases, failures, worst)


def _brute_force_frontier(points: list[SchemePoint]) -> set[tuple[float, float]]:
    usable = [
        (p.r1_bound, p.r2_bound) for p in points if p.feasible and p.r1_bound is not None
    ]
    keep = set()
    for a in usable:
        dominated = any(
            (b[0] >= a[0] and b[1] >= a[1] and b != a) for b in usable
        )
        if not dominated:
            keep.add(a)
    return keep


def suite_frontier_properties(cases: int = 60, seed: int = 505) -> SuiteResult:
    """Staircase equals brute-force dominance; contains is reflexive/transitive."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0

    def random_points(n: int) -> list[SchemePoint]:
        return [
            SchemePoint(float(i), float(r1), float(r2), True, "r1=obs;r2=obs")
            for i, (r1, r2) in enumerate(rng.uniform(0.0, 4.0, size=(n, 2)))
        ]

    for _ in range(cases):
        pts = random_points(int(rng.integers(1, 40)))
        frontier = region_from_sweep(pts)
        got = {(c.r1, c.r2) for c in frontier.corners}
        want = _brute_force_frontier(pts)
        bad = 0.0 if got == want else 1.0
        if not contains(frontier, frontier, 0.0):
            bad = 1.0
        fa, fb, fc = (region_from_sweep(random_points(12)) for _ in range(3))
        if contains(fa, fb) and contains(fb, fc) and not contains(fa, fc, TOL):
            bad = 1.0
        worst = max(worst, bad)
        if bad:
            failures += 1
    return SuiteResult("frontier_properties", cases, failures, worst)


def suite_thresholds(cases: int = 200, seed: int = 606) -> SuiteResult:
    """Threshold ordering and the bound crossings they mark."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(cases):
        cfg = random_config(rng)
        t = thresholds(cfg)
        errs = [
            max(0.0, t.sigma_c1 - t.sigma_e1),
            max(0.0, t.sigma_c2 - t.sigma_e2),
        ]
        cf1 = gaussian_closed_forms(cfg, t.sigma_e1)
        cf2 = gaussian_closed_forms(cfg, t.sigma_e2)
        errs.append(abs(cf1.r1_obs - cf1.r1_net))
        errs.append(abs(cf2.r2_obs - cf2.r2_net))
        worst = max(worst, *errs)
        if max(errs) > TOL:
            failures += 1
    return SuiteResult("threshold_arithmetic", cases, failures, worst)


def run_all(scale: float = 1.0, seed: int = 7) -> list[SuiteResult]:
    """Run every suite; `scale` multiplies the case counts."""
    k = max(1, int(round(scale * 10)))
    return [
        suite_closed_forms(cases=4 * k, sigmas=5, seed=seed + 1),
        suite_gaussian_identities(cases=6 * k, seed=seed + 2),
        suite_oneway_equivalence(cases=10 * k, seed=seed + 3),
        suite_twrc_implication(cases=10 * k, seed=seed + 4),
        suite_frontier_properties(cases=6 * k, seed=seed + 5),
        suite_thresholds(cases=20 * k, seed=seed + 6),
    ]
