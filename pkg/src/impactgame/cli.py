"""Command-line front end.

Subcommands: solve, costs, cumulative, sweep.  Scenario files are JSON
(schema below); outputs are CSV with 17-significant-digit floats plus
JSON summaries, written deterministically so identical inputs produce
byte-identical files.

Scenario schema::

    {
      "firms": [[{"kappa": 1.0, "target": 3.0},
                 {"kappa": 3.0, "target": 5.0, "nonstrategic_size": 0.0}],
                [... type list for firm 2 ...]],
      "prior": [[0.40, 0.20], [0.15, 0.25]],
      "labels": ["firm 1", "firm 2"]          # optional
    }

Unknown fields anywhere are rejected.  Exit codes: 0 success, 2 input
error, 3 numerical failure.
"""

import argparse
import csv
import dataclasses
import json
import os
import re
import sys

import numpy as np

from . import costs, equilibrium, oracle
from .errors import InputError, NumericalError
from .scenario import FirmTypeSpec, Scenario, validate, conditionals

__all__ = [
    "RunConfig",
    "scenario_from_dict",
    "scenario_to_dict",
    "load_scenario",
    "cmd_solve",
    "cmd_costs",
    "cmd_cumulative",
    "cmd_sweep",
    "main",
]

OUTPUT_DIR_ENV = "IMPACTGAME_OUT"


@dataclasses.dataclass
class RunConfig:
    grid_points: int = 201
    eval_kappas: tuple = (1.0,)
    mode: str = "normal_form"
    normalized: bool = False
    output_dir: str = "."
    seed: int = 0

    def __post_init__(self):
        if self.grid_points < 2:
            raise InputError(f"grid_points must be >= 2, got {self.grid_points}")
        if not self.eval_kappas:
            raise InputError("eval_kappas must be nonempty")


# ---------------------------------------------------------------- scenario IO

_TYPE_KEYS = {"kappa", "target", "nonstrategic_size"}


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number, got {value!r}")
    return float(value)


def scenario_from_dict(data):
    if not isinstance(data, dict):
        raise InputError("scenario file must hold a JSON object")
    unknown = set(data) - {"firms", "prior", "labels"}
    if unknown:
        raise InputError(f"unknown scenario fields: {sorted(unknown)}")
    firms = data.get("firms")
    if not isinstance(firms, list) or len(firms) != 2:
        raise InputError("'firms' must be a list of exactly two type lists")
    parsed = []
    for fi, types in enumerate(firms, start=1):
        if not isinstance(types, list) or not types:
            raise InputError(f"firm {fi}: type list must be a nonempty list")
        out = []
        for ti, spec in enumerate(types):
            if not isinstance(spec, dict):
                raise InputError(f"firm {fi} type {ti}: expected an object")
            bad = set(spec) - _TYPE_KEYS
            if bad:
                raise InputError(f"firm {fi} type {ti}: unknown fields {sorted(bad)}")
            if "kappa" not in spec or "target" not in spec:
                raise InputError(f"firm {fi} type {ti}: 'kappa' and 'target' required")
            out.append(FirmTypeSpec(
                kappa=_number(spec["kappa"], f"firm {fi} type {ti} kappa"),
                target=_number(spec["target"], f"firm {fi} type {ti} target"),
                nonstrategic_size=_number(spec.get("nonstrategic_size", 0.0),
                                          f"firm {fi} type {ti} nonstrategic_size"),
            ))
        parsed.append(out)
    prior = data.get("prior")
    if not isinstance(prior, list):
        raise InputError("'prior' must be a 2-D array")
    labels = data.get("labels")
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != 2
                or not all(isinstance(x, str) for x in labels)):
            raise InputError("'labels' must be a list of two strings")
        labels = tuple(labels)
    try:
        prior_arr = np.array(prior, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"'prior' is not a numeric matrix: {exc}") from exc
    return Scenario(firm1_types=parsed[0], firm2_types=parsed[1],
                    prior=prior_arr, labels=labels)


def scenario_to_dict(scenario):
    def spec_dict(t):
        d = {"kappa": t.kappa, "target": t.target}
        if t.nonstrategic_size:
            d["nonstrategic_size"] = t.nonstrategic_size
        return d

    out = {
        "firms": [[spec_dict(t) for t in scenario.firm1_types],
                  [spec_dict(t) for t in scenario.firm2_types]],
        "prior": scenario.prior.tolist(),
    }
    if scenario.labels:
        out["labels"] = list(scenario.labels)
    return out


def load_scenario(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"scenario file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"scenario file is not valid JSON: {exc}") from exc
    scen = scenario_from_dict(data)
    report = validate(scen)
    if not report.ok:
        raise InputError("invalid scenario: " + "; ".join(report.violations))
    return scen


# ---------------------------------------------------------------- file output

def _fmt(x):
    return format(float(x), ".17g")


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _strategy_rows(traj):
    return np.column_stack([traj.grid, traj.positions, traj.rates])


def _strategy_header(kk, mm):
    return (["t"]
            + [f"s1_{k + 1}" for k in range(kk)]
            + [f"s2_{m + 1}" for m in range(mm)]
            + [f"v1_{k + 1}" for k in range(kk)]
            + [f"v2_{m + 1}" for m in range(mm)])


def _run_grid(config):
    return np.linspace(0.0, 1.0, config.grid_points)


# ------------------------------------------------------------------- commands

def cmd_solve(scenario_path, config):
    """Solve a scenario; write strategies.csv and solution.json."""
    scen = load_scenario(scenario_path)
    sol = equilibrium.solve(scen, mode=config.mode)
    grid = _run_grid(config)
    traj = equilibrium.sample(sol, grid)
    residual = oracle.el_residual(sol, scen, grid)
    os.makedirs(config.output_dir, exist_ok=True)
    csv_path = os.path.join(config.output_dir, "strategies.csv")
    json_path = os.path.join(config.output_dir, "solution.json")
    _write_csv(csv_path, _strategy_header(scen.k, scen.m), _strategy_rows(traj))
    _write_json(json_path, {
        "mode": config.mode,
        "grid_points": config.grid_points,
        "m": sol.m.tolist(),
        "v0": sol.v0.tolist(),
        "c": sol.c.tolist(),
        "targets": sol.targets.tolist(),
        "residual": residual,
    })
    return [csv_path, json_path]


def cmd_costs(scenario_path, config):
    """Write the per-type-pair cost table as costs.csv."""
    scen = load_scenario(scenario_path)
    sol = equilibrium.solve(scen, mode=config.mode)
    rows = costs.cost_report(scen, sol, config.eval_kappas, config.normalized)
    os.makedirs(config.output_dir, exist_ok=True)
    path = os.path.join(config.output_dir, "costs.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["firm1_type", "firm2_type", "eval_kappa",
                         "cost1", "exp1", "cost2", "exp2", "normalized"])
        for r in rows:
            writer.writerow([r.firm1_type + 1, r.firm2_type + 1, _fmt(r.eval_kappa),
                             _fmt(r.cost1), _fmt(r.exp1), _fmt(r.cost2), _fmt(r.exp2),
                             int(r.normalized)])
    return [path]


def cmd_cumulative(scenario_path, config):
    """Write one cost-to-date CSV per active-type pair."""
    scen = load_scenario(scenario_path)
    sol = equilibrium.solve(scen, mode=config.mode)
    grid = _run_grid(config)
    traj = costs.cumulative_sample(sol, grid)
    os.makedirs(config.output_dir, exist_ok=True)
    paths = []
    for k in range(scen.k):
        comp1 = traj.component(1, k)
        for m in range(scen.m):
            comp2 = traj.component(2, m)
            header = ["t"]
            cols = [grid]
            for ke in config.eval_kappas:
                header += [f"cost1_ke{ke:g}", f"cost2_ke{ke:g}"]
                cols.append(costs.cumulative_curve(comp1, comp2, ke, grid).values)
                cols.append(costs.cumulative_curve(comp2, comp1, ke, grid).values)
            path = os.path.join(config.output_dir,
                                f"cumulative_k{k + 1}_m{m + 1}.csv")
            _write_csv(path, header, np.column_stack(cols))
            paths.append(path)
    return paths


_PRIOR_RE = re.compile(r"^prior\[(\d+)\]\[(\d+)\]$")
_TYPE_RE = re.compile(r"^(firm1|firm2)\[(\d+)\]\.(kappa|target|nonstrategic_size)$")


def _apply_sweep_value(scenario, param, value):
    """Return a scenario with one swept parameter set to `value`.

    Prior sweeps pin the addressed joint entry and rescale the rest of
    the matrix proportionally so total mass stays 1.
    """
    pm = _PRIOR_RE.match(param)
    if pm:
        i, j = int(pm.group(1)), int(pm.group(2))
        p = scenario.prior.copy()
        if not (0 <= i < p.shape[0] and 0 <= j < p.shape[1]):
            raise InputError(f"prior index out of range in {param!r}")
        if not 0.0 <= value <= 1.0:
            raise InputError(f"prior entry must lie in [0, 1], got {value}")
        rest = p.sum() - p[i, j]
        if rest <= 0:
            if abs(value - 1.0) > 1e-12:
                raise InputError("cannot rescale: no probability mass outside "
                                 f"{param}")
            p[i, j] = 1.0
        else:
            p *= (1.0 - value) / rest
            p[i, j] = value
        return Scenario(firm1_types=list(scenario.firm1_types),
                        firm2_types=list(scenario.firm2_types),
                        prior=p, labels=scenario.labels)
    tm = _TYPE_RE.match(param)
    if tm:
        firm, idx, field = tm.group(1), int(tm.group(2)), tm.group(3)
        types1 = list(scenario.firm1_types)
        types2 = list(scenario.firm2_types)
        types = types1 if firm == "firm1" else types2
        if not 0 <= idx < len(types):
            raise InputError(f"type index out of range in {param!r}")
        types[idx] = dataclasses.replace(types[idx], **{field: value})
        return Scenario(firm1_types=types1, firm2_types=types2,
                        prior=scenario.prior.copy(), labels=scenario.labels)
    raise InputError(
        f"cannot parse parameter path {param!r}; expected prior[i][j] or "
        "firm1[k].kappa|target|nonstrategic_size (likewise firm2)")


def cmd_sweep(scenario_path, sweep_spec, config):
    """Solve the scenario once per swept value; write per-value strategy
    CSVs plus an index JSON (with resulting conditionals for prior sweeps)."""
    param = sweep_spec["parameter"]
    values = list(sweep_spec["values"])
    if not values:
        raise InputError("sweep needs at least one value")
    base = load_scenario(scenario_path)
    grid = _run_grid(config)
    os.makedirs(config.output_dir, exist_ok=True)
    paths, entries = [], []
    for i, value in enumerate(values):
        scen = _apply_sweep_value(base, param, value)
        report = validate(scen)
        if not report.ok:
            raise InputError(f"sweep value {value} makes the scenario invalid: "
                             + "; ".join(report.violations))
        sol = equilibrium.solve(scen, mode=config.mode)
        traj = equilibrium.sample(sol, grid)
        name = f"strategies_{i:03d}.csv"
        path = os.path.join(config.output_dir, name)
        _write_csv(path, _strategy_header(scen.k, scen.m), _strategy_rows(traj))
        paths.append(path)
        entry = {"value": value, "file": name}
        if _PRIOR_RE.match(param):
            bel = conditionals(scen.prior)
            entry["conditionals"] = {"p1": bel.p1.tolist(), "p2": bel.p2.tolist()}
        entries.append(entry)
    index_path = os.path.join(config.output_dir, "sweep_index.json")
    _write_json(index_path, {
        "parameter": param,
        "mode": config.mode,
        "grid_points": config.grid_points,
        "runs": entries,
    })
    return paths + [index_path]


# ----------------------------------------------------------------- entrypoint

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="impact-game",
        description="Equilibrium trading strategies for two competing firms "
                    "with typed beliefs; cost tables and parameter sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "solve": "solve a scenario and emit strategy samples",
        "costs": "emit the realized/expected cost table",
        "cumulative": "emit cost-to-date curves per active-type pair",
        "sweep": "re-solve while sweeping one scenario parameter",
    }
    for name, help_text in specs.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--scenario", required=True, help="scenario JSON file")
        sp.add_argument("--grid-points", type=int, default=201)
        sp.add_argument("--eval-kappa", type=float, action="append",
                        help="evaluation impact parameter (repeatable; default 1.0)")
        sp.add_argument("--mode", choices=["direct", "normal_form"],
                        default="normal_form")
        sp.add_argument("--normalized", action="store_true",
                        help="divide costs by the active type's target")
        sp.add_argument("--out", default=None,
                        help=f"output directory (default ${OUTPUT_DIR_ENV} or '.')")
        sp.add_argument("--seed", type=int, default=0)
        if name == "sweep":
            sp.add_argument("--param", required=True,
                            help="parameter path, e.g. prior[0][0] or "
                                 "firm2[1].target")
            sp.add_argument("--values", required=True,
                            help="comma-separated values to sweep")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        config = RunConfig(
            grid_points=args.grid_points,
            eval_kappas=tuple(args.eval_kappa) if args.eval_kappa else (1.0,),
            mode=args.mode,
            normalized=args.normalized,
            output_dir=args.out or os.environ.get(OUTPUT_DIR_ENV, "."),
            seed=args.seed,
        )
        if args.command == "solve":
            written = cmd_solve(args.scenario, config)
        elif args.command == "costs":
            written = cmd_costs(args.scenario, config)
        elif args.command == "cumulative":
            written = cmd_cumulative(args.scenario, config)
        else:
            try:
                values = [float(v) for v in args.values.split(",") if v.strip()]
            except ValueError as exc:
                raise InputError(f"--values must be comma-separated numbers: "
                                 f"{args.values!r}") from exc
            written = cmd_sweep(args.scenario,
                                {"parameter": args.param, "values": values},
                                config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # keep the exit-code contract: nothing but 0/2/3
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
