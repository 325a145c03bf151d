"""Config-driven command line: run scenarios, emit deterministic CSV.

A scenario is a strict JSON document (unknown fields are rejected) whose
`mode` selects what gets computed:

* ``region``           -- per-sigma2 scheme evaluations, Pareto frontiers,
                          and the threshold/flag summary for the config
* ``sumrate-power``    -- best sum rate per input power
* ``sumrate-distance`` -- best sum rate per relay position
* ``conditions``       -- thresholds and equivalence flags only
* ``dm-eval``          -- scheme evaluation of an inline finite-pmf model
* ``verify``           -- pass/fail table of the randomized property suites

All numbers are written with 12 significant digits, so repeated runs of
the same scenario produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .channels import (
    DmOneWay,
    DmTwrc,
    GaussianTwrcConfig,
    dm_joint,
    dm_model_from_dict,
)
from .dm import InvalidDistributionError
from .regions import (
    SigmaGridSpec,
    SweepResult,
    hull_frontier,
    sweep_distance,
    sweep_power,
    sweep_sigma,
)
from .schemes import (
    SCHEMES,
    DmMi,
    binning_equality_holds,
    gaussian_mi,
    nnc_equivalence_holds,
    oneway_cf_binning,
    oneway_cf_nobin,
    thresholds,
    twrc_rates,
)
from .verify import run_all

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

MODES = ("region", "sumrate-power", "sumrate-distance", "conditions", "dm-eval", "verify")

_CHANNEL_FIELDS = ("g12", "g1r", "g21", "g2r", "gr1", "gr2", "power")


class ScenarioError(ValueError):
    """The scenario document is malformed; the message names the field."""


@dataclass(frozen=True)
class LinearGrid:
    start: float
    stop: float
    step: float

    def values(self) -> tuple[float, ...]:
        if self.step <= 0 or self.stop < self.start:
            raise ScenarioError("grid needs step > 0 and stop >= start")
        n = int((self.stop - self.start) / self.step + 1e-9) + 1
        return tuple(self.start + i * self.step for i in range(n))


@dataclass(frozen=True)
class Scenario:
    """A parsed scenario document."""

    name: str
    mode: str
    channel: GaussianTwrcConfig | None = None
    schemes: tuple[str, ...] = SCHEMES
    sigma2_grid: SigmaGridSpec = SigmaGridSpec()
    power_grid: LinearGrid | None = None
    distance_grid: LinearGrid | None = None
    power: float | None = None
    gamma: float | None = None
    dm_model: DmOneWay | DmTwrc | None = None
    eq_sigma2: float = 1.0
    verify_scale: float = 1.0
    verify_seed: int = 7


def _require(doc: dict[str, Any], key: str) -> Any:
    if key not in doc:
        raise ScenarioError(f"scenario missing required field {key!r}")
    return doc[key]


def _parse_channel(doc: Any) -> GaussianTwrcConfig:
    if not isinstance(doc, dict):
        raise ScenarioError("field 'channel' must be an object")
    unknown = set(doc) - set(_CHANNEL_FIELDS)
    if unknown:
        raise ScenarioError(f"unknown channel field {sorted(unknown)[0]!r}")
    missing = set(_CHANNEL_FIELDS) - set(doc)
    if missing:
        raise ScenarioError(f"channel missing field {sorted(missing)[0]!r}")
    try:
        return GaussianTwrcConfig(**{k: float(doc[k]) for k in _CHANNEL_FIELDS})
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"invalid channel: {exc}") from exc


def _parse_linear_grid(doc: Any, name: str) -> LinearGrid:
    if not isinstance(doc, dict) or set(doc) != {"start", "stop", "step"}:
        raise ScenarioError(f"field {name!r} must carry exactly start/stop/step")
    return LinearGrid(float(doc["start"]), float(doc["stop"]), float(doc["step"]))


def _parse_sigma_grid(doc: Any) -> SigmaGridSpec:
    if not isinstance(doc, dict) or set(doc) - {"lo", "hi", "points"}:
        raise ScenarioError("field 'sigma2_grid' accepts only lo/hi/points")
    try:
        return SigmaGridSpec(
            lo=float(doc.get("lo", 1e-4)),
            hi=float(doc.get("hi", 1e4)),
            points=int(doc.get("points", 2000)),
        )
    except ValueError as exc:
        raise ScenarioError(f"invalid sigma2_grid: {exc}") from exc


_MODE_FIELDS = {
    "region": {"name", "mode", "channel", "schemes", "sigma2_grid", "eq_sigma2"},
    "sumrate-power": {"name", "mode", "channel", "schemes", "sigma2_grid", "power_grid"},
    "sumrate-distance": {
        "name", "mode", "schemes", "sigma2_grid", "power", "gamma", "distance_grid"
    },
    "conditions": {"name", "mode", "channel", "eq_sigma2"},
    "dm-eval": {"name", "mode", "dm_model"},
    "verify": {"name", "mode", "scale", "seed"},
}


def parse_scenario(doc: dict[str, Any]) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be a JSON object")
    mode = _require(doc, "mode")
    if mode not in MODES:
        raise ScenarioError(f"unknown mode {mode!r}")
    name = _require(doc, "name")
    if not isinstance(name, str) or not name:
        raise ScenarioError("field 'name' must be a nonempty string")
    unknown = set(doc) - _MODE_FIELDS[mode]
    if unknown:
        raise ScenarioError(f"unknown field {sorted(unknown)[0]!r} for mode {mode!r}")

    schemes: tuple[str, ...] = SCHEMES
    if "schemes" in doc:
        if not isinstance(doc["schemes"], list) or not doc["schemes"]:
            raise ScenarioError("field 'schemes' must be a nonempty list")
        for s in doc["schemes"]:
            if s not in SCHEMES:
                raise ScenarioError(f"unknown scheme {s!r}")
        schemes = tuple(doc["schemes"])

    sc = Scenario(
        name=name,
        mode=mode,
        channel=_parse_channel(doc["channel"]) if "channel" in doc else None,
        schemes=schemes,
        sigma2_grid=_parse_sigma_grid(doc.get("sigma2_grid", {})),
        power_grid=(
            _parse_linear_grid(doc["power_grid"], "power_grid")
            if "power_grid" in doc else None
        ),
        distance_grid=(
            _parse_linear_grid(doc["distance_grid"], "distance_grid")
            if "distance_grid" in doc else None
        ),
        power=float(doc["power"]) if "power" in doc else None,
        gamma=float(doc["gamma"]) if "gamma" in doc else None,
        dm_model=(
            _parse_dm_model(doc["dm_model"]) if "dm_model" in doc else None
        ),
        eq_sigma2=float(doc.get("eq_sigma2", 1.0)),
        verify_scale=float(doc.get("scale", 1.0)),
        verify_seed=int(doc.get("seed", 7)),
    )
    if mode in ("region", "sumrate-power", "conditions") and sc.channel is None:
        raise ScenarioError(f"mode {mode!r} requires field 'channel'")
    if mode == "sumrate-power" and sc.power_grid is None:
        raise ScenarioError("mode 'sumrate-power' requires field 'power_grid'")
    if mode == "sumrate-distance":
        for key in ("power", "gamma"):
            if getattr(sc, key) is None:
                raise ScenarioError(f"mode 'sumrate-distance' requires field {key!r}")
        if sc.distance_grid is None:
            raise ScenarioError("mode 'sumrate-distance' requires field 'distance_grid'")
    if mode == "dm-eval" and sc.dm_model is None:
        raise ScenarioError("mode 'dm-eval' requires field 'dm_model'")
    if sc.eq_sigma2 <= 0:
        raise ScenarioError("field 'eq_sigma2' must be > 0")
    return sc


def _parse_dm_model(doc: Any) -> DmOneWay | DmTwrc:
    try:
        return dm_model_from_dict(doc)
    except (ValueError, InvalidDistributionError) as exc:
        raise ScenarioError(f"invalid dm_model: {exc}") from exc


def load_scenario(spec: str | Path) -> Scenario:
    """Load a scenario from a path, or from the bundled set by name."""
    path = Path(spec)
    if path.exists():
        text = path.read_text()
    else:
        name = path.name if path.name.endswith(".json") else f"{path.name}.json"
        res = resources.files("relayrates").joinpath("scenarios", name)
        if not res.is_file():
            raise ScenarioError(f"scenario {str(spec)!r} is neither a file nor bundled")
        text = res.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc
    return parse_scenario(doc)


def bundled_scenarios() -> tuple[str, ...]:
    folder = resources.files("relayrates").joinpath("scenarios")
    return tuple(sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json")))


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def _conditions_rows(cfg: GaussianTwrcConfig, eq_sigma2: float, tol: float):
    t = thresholds(cfg)
    eq = binning_equality_holds(gaussian_mi(cfg, eq_sigma2), tol=tol)
    return [
        [
            t.sigma_c1,
            t.sigma_c2,
            t.sigma_e1,
            t.sigma_e2,
            nnc_equivalence_holds(cfg),
            eq,
            eq_sigma2,
        ]
    ]


_CONDITIONS_HEADER = (
    "sigma_c1", "sigma_c2", "sigma_e1", "sigma_e2",
    "nnc_equivalence", "binning_equality", "binning_equality_sigma2",
)


def _run_region(sc: Scenario, out: Path, hull: bool, tol: float) -> list[Path]:
    sweep = sweep_sigma(sc.channel, sc.schemes, sc.sigma2_grid)
    point_rows = []
    frontier_rows = []
    hull_rows = []
    for scheme in sc.schemes:
        for sigma2, p in zip(sweep.grid, sweep.points[scheme]):
            point_rows.append([scheme, sigma2, p.r1_bound, p.r2_bound, p.feasible])
        frontier = sweep.frontier(scheme)
        for corner in frontier.corners:
            frontier_rows.append([scheme, corner.r1, corner.r2])
        if hull:
            for corner in hull_frontier(frontier):
                hull_rows.append([scheme, corner.r1, corner.r2])
    written = [
        _write_csv(
            out / f"{sc.name}_region.csv",
            ("scheme", "sigma2", "r1", "r2", "feasible"),
            point_rows,
        ),
        _write_csv(
            out / f"{sc.name}_frontier.csv",
            ("scheme", "corner_r1", "corner_r2"),
            frontier_rows,
        ),
        _write_csv(
            out / f"{sc.name}_conditions.csv",
            _CONDITIONS_HEADER,
            _conditions_rows(sc.channel, sc.eq_sigma2, tol),
        ),
    ]
    if hull:
        written.append(
            _write_csv(
                out / f"{sc.name}_hull.csv",
                ("scheme", "corner_r1", "corner_r2"),
                hull_rows,
            )
        )
    return written


def _sumrate_rows(sweep: SweepResult, schemes: Sequence[str]):
    rows = []
    for i, value in enumerate(sweep.grid):
        for scheme in schemes:
            p = sweep.points[scheme][i]
            s = sweep.sums[scheme][i]
            rows.append([value, scheme, s, p.sigma2 if s is not None else None])
    return rows


def _run_sumrate_power(sc: Scenario, out: Path) -> list[Path]:
    sweep = sweep_power(sc.channel, sc.power_grid.values(), sc.schemes, sc.sigma2_grid)
    return [
        _write_csv(
            out / f"{sc.name}_sumrate.csv",
            ("param", "scheme", "sum_rate", "best_sigma2"),
            _sumrate_rows(sweep, sc.schemes),
        )
    ]


def _run_sumrate_distance(sc: Scenario, out: Path) -> list[Path]:
    sweep = sweep_distance(
        sc.power, sc.gamma, sc.distance_grid.values(), sc.schemes, sc.sigma2_grid
    )
    return [
        _write_csv(
            out / f"{sc.name}_sumrate.csv",
            ("param", "scheme", "sum_rate", "best_sigma2"),
            _sumrate_rows(sweep, sc.schemes),
        )
    ]


def _run_dm_eval(sc: Scenario, out: Path) -> list[Path]:
    mi = DmMi(dm_joint(sc.dm_model))
    rows = []
    if isinstance(sc.dm_model, DmOneWay):
        header = ("scheme", "rate", "feasible", "binding")
        for scheme, point in (
            ("cf_binning", oneway_cf_binning(mi)),
            ("cf_nobin", oneway_cf_nobin(mi)),
        ):
            rows.append([scheme, point.rate, point.feasible, point.binding])
    else:
        header = ("scheme", "r1", "r2", "feasible", "binding")
        for scheme in SCHEMES:
            p = twrc_rates(mi, scheme)
            rows.append([scheme, p.r1_bound, p.r2_bound, p.feasible, p.binding])
    return [_write_csv(out / f"{sc.name}_dm.csv", header, rows)]


def _run_verify(sc: Scenario, out: Path) -> tuple[list[Path], bool]:
    results = run_all(scale=sc.verify_scale, seed=sc.verify_seed)
    rows = [[r.name, r.cases, r.failures, r.passed] for r in results]
    path = _write_csv(
        out / f"{sc.name}_verify.csv", ("suite", "cases", "failures", "passed"), rows
    )
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: {r.cases} cases, {r.failures} failures")
    return [path], all(r.passed for r in results)


def run(
    scenario: Scenario,
    out_dir: str | Path,
    grid_points: int | None = None,
    hull: bool = False,
    tol: float = 1e-9,
) -> list[Path]:
    """Execute a scenario; returns the written CSV paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sc = scenario
    if grid_points is not None:
        spec = sc.sigma2_grid
        sc = replace(sc, sigma2_grid=SigmaGridSpec(spec.lo, spec.hi, grid_points))
    if sc.mode == "region":
        return _run_region(sc, out, hull, tol)
    if sc.mode == "sumrate-power":
        return _run_sumrate_power(sc, out)
    if sc.mode == "sumrate-distance":
        return _run_sumrate_distance(sc, out)
    if sc.mode == "conditions":
        return [
            _write_csv(
                out / f"{sc.name}_conditions.csv",
                _CONDITIONS_HEADER,
                _conditions_rows(sc.channel, sc.eq_sigma2, tol),
            )
        ]
    if sc.mode == "dm-eval":
        return _run_dm_eval(sc, out)
    if sc.mode == "verify":
        paths, ok = _run_verify(sc, out)
        if not ok:
            raise ArithmeticError("one or more property suites failed")
        return paths
    raise ScenarioError(f"unknown mode {sc.mode!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="relayrates",
        description="Compute relay-channel rate regions and sum-rate sweeps to CSV.",
    )
    parser.add_argument("--scenario", required=True, help="scenario file or bundled name")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument(
        "--grid-points", type=int, default=None, help="override sigma2 grid size"
    )
    parser.add_argument(
        "--hull", action="store_true", help="also emit time-sharing hull corners"
    )
    parser.add_argument(
        "--tol", type=float, default=1e-9, help="tolerance for equality flags (bits)"
    )
    args = parser.parse_args(argv)

    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        written = run(
            scenario, args.out, grid_points=args.grid_points, hull=args.hull, tol=args.tol
        )
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
