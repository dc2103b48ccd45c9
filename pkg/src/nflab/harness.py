"""Seeded, reproducible experiment harness.

Validates experiment configurations against a per-experiment key schema,
dispatches to the owning analysis module, and emits CSV/JSON artifacts plus
a manifest with content digests.  Identical config and seed produce
byte-identical artifacts; the experiment seed is handed unchanged to the
experiment's single stochastic component (a multi-component experiment
would spawn numpy SeedSequence children in declaration order instead).
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import function_space as fs
from . import markov as mk
from . import swarm_dynamics as sd
from .optimizers import (FaConfig, GaConfig, PsoConfig, fa_run, ga_run,
                         objective_catalog, pso_run, sa_run)

CAP_ENV_VAR = "NFLAB_CAP"

STATUS_OK = "ok"  # exit 0
STATUS_NEGATIVE = "negative"  # analysis-level negative result, exit 2


class ConfigError(ValueError):
    """Configuration rejected; `keys` names the offending keys."""

    def __init__(self, message: str, keys=()):
        super().__init__(message)
        self.keys = tuple(keys)


def default_cap() -> int:
    """Enumeration cap, overridable through the NFLAB_CAP environment variable."""
    raw = os.environ.get(CAP_ENV_VAR)
    return int(raw) if raw else fs.DEFAULT_CAP


# Required keys and defaulted optional keys per experiment; a callable
# default is resolved at validation time (the cap picks up NFLAB_CAP).
# Conditional requirements (e.g. geo-check needing zeta) are enforced by
# the runners.
_SCHEMAS = {
    "nfl-verify": (("nx", "ny", "k", "policy_a", "policy_b"), {"cap": default_cap}),
    "nfl-freelunch": (("subset", "ny", "k", "policy_a", "policy_b"), {}),
    "revisit-demo": (("nx", "ny", "k"), {"pin": 0, "cap": default_cap}),
    "dyn-orbit": (("map", "param", "steps"),
                  {"u0": 0.5, "transient": 0, "gamma_scale": 1.0}),
    "dyn-scan": (("map", "lo", "hi", "samples"),
                 {"u0": 0.5, "steps": 2000, "transient": 1000, "keep": 64,
                  "gamma_scale": 1.0}),
    "dyn-density": (("lambda", "n", "bins"), {"u0": 0.3, "transient": 100}),
    "opt-run": (("algo", "objective", "iters"), {"params": {}}),
    "markov-check": (("mode", "matrix"), {"zeta": None, "K": None, "max_power": None}),
    "bounds-calc": (("calc",), {"n": None, "n1": None, "L": None, "mu1": None,
                                "mu2": None, "zeta": None, "mu": None, "A": None,
                                "k": None}),
}

EXPERIMENTS = tuple(sorted(_SCHEMAS))


def validate_parameters(experiment: str, parameters: dict) -> dict:
    """Check keys against the experiment's schema and fill defaults."""
    if experiment not in _SCHEMAS:
        raise ConfigError(
            f"unknown experiment {experiment!r}; expected one of {', '.join(EXPERIMENTS)}",
            keys=(experiment,),
        )
    required, defaults = _SCHEMAS[experiment]
    unknown = sorted(set(parameters) - set(required) - set(defaults))
    if unknown:
        raise ConfigError(f"unknown parameter keys for {experiment}: {', '.join(unknown)}",
                          keys=unknown)
    missing = sorted(set(required) - set(parameters))
    if missing:
        raise ConfigError(f"missing required keys for {experiment}: {', '.join(missing)}",
                          keys=missing)
    filled = {k: (v() if callable(v) else v) for k, v in defaults.items()}
    filled.update(parameters)
    return filled


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated experiment description; construction fills defaults."""

    experiment: str
    parameters: dict
    seed: int = 0
    output_dir: str = "."

    def __post_init__(self):
        object.__setattr__(self, "parameters",
                           validate_parameters(self.experiment, dict(self.parameters)))

    def to_dict(self) -> dict:
        return {"experiment": self.experiment, "parameters": dict(self.parameters),
                "seed": self.seed, "output_dir": str(self.output_dir)}

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        unknown = sorted(set(d) - {"experiment", "parameters", "seed", "output_dir"})
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}", keys=unknown)
        if "experiment" not in d:
            raise ConfigError("config needs an 'experiment' key", keys=("experiment",))
        return cls(d["experiment"], dict(d.get("parameters", {})),
                   int(d.get("seed", 0)), str(d.get("output_dir", ".")))


def load_config(path) -> ExperimentConfig:
    """Read and validate a JSON experiment config file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config parse error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    return ExperimentConfig.from_dict(raw)


# ---------------------------------------------------------------------------
# Artifact writing
# ---------------------------------------------------------------------------

def _fmt_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        raise ValueError("booleans are not a CSV cell type here")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        # 17 significant digits round-trips every double exactly.
        return format(float(value), ".17g")
    if isinstance(value, str):
        return value
    raise ValueError(f"unsupported CSV cell type {type(value).__name__}")


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def emit_csv(rows, schema, path) -> Path:
    """Write rows under a header, UTF-8, LF line endings, 17-digit reals.

    `schema` is the ordered column-name sequence; every row must have the
    same arity or the write is rejected.
    """
    path = Path(path)
    cols = list(schema)
    lines = [",".join(cols)]
    for i, row in enumerate(rows):
        cells = list(row)
        if len(cells) != len(cols):
            raise ValueError(f"row {i} has {len(cells)} cells, schema has {len(cols)}")
        lines.append(",".join(_fmt_cell(c) for c in cells))
    _atomic_write(path, "\n".join(lines) + "\n")
    return path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def emit_json(obj, path) -> Path:
    path = Path(path)
    _atomic_write(path, json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")
    return path


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


@dataclass(frozen=True)
class ResultManifest:
    """Echo of the config plus digests of everything the experiment wrote."""

    config: dict
    artifacts: list  # [{"path": name, "sha256": hex}]
    duration_s: float
    version: str
    status: str  # STATUS_OK or STATUS_NEGATIVE
    report: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"config": self.config, "artifacts": self.artifacts,
                "duration_s": self.duration_s, "version": self.version,
                "status": self.status}


# ---------------------------------------------------------------------------
# Experiment runners: each returns (report dict, artifact paths, status)
# ---------------------------------------------------------------------------

def _cap_of(params) -> int:
    cap = params.get("cap")
    return int(cap) if cap else default_cap()


def _run_nfl_verify(params, seed, outdir):
    domain = fs.FiniteDomain(int(params["nx"]), int(params["ny"]))
    report_obj = fs.nfl_equality(fs.parse_policy(params["policy_a"]),
                                 fs.parse_policy(params["policy_b"]),
                                 domain, int(params["k"]), cap=_cap_of(params))
    report = {
        "equal": report_obj.equal,
        "first_divergence": list(report_obj.first_divergence) if report_obj.first_divergence else None,
        "nx": report_obj.nx, "ny": report_obj.ny, "k": report_obj.k,
        "policy_a": report_obj.policy_a, "policy_b": report_obj.policy_b,
        "function_count": domain.function_count,
        "note": report_obj.note,
    }
    path = emit_json(report, outdir / "report.json")
    return report, [path], STATUS_OK if report_obj.equal else STATUS_NEGATIVE


def _run_nfl_freelunch(params, seed, outdir):
    rows = params["subset"]
    if not rows:
        raise ConfigError("subset must be a nonempty array of value arrays", keys=("subset",))
    domain = fs.FiniteDomain(len(rows[0]), int(params["ny"]))
    subset = fs.FunctionSubset.from_values(domain, rows)
    rep = fs.free_lunch_report(fs.parse_policy(params["policy_a"]),
                               fs.parse_policy(params["policy_b"]),
                               subset, int(params["k"]))
    report = {
        "mean_best_a": rep.mean_best_a, "mean_best_b": rep.mean_best_b,
        "winner_at": rep.winner_at, "subset_is_cup": rep.subset_is_cup,
        "k": rep.k, "policy_a": rep.policy_a, "policy_b": rep.policy_b,
        "subset_size": len(subset.members),
    }
    path = emit_json(report, outdir / "report.json")
    return report, [path], STATUS_OK


def _run_revisit_demo(params, seed, outdir):
    domain = fs.FiniteDomain(int(params["nx"]), int(params["ny"]))
    rep = fs.revisiting_demo(domain, int(params["k"]), pin=int(params["pin"]),
                             cap=_cap_of(params))
    report = {"sweep_mean": rep.sweep_mean, "stuck_mean": rep.stuck_mean,
              "gap": rep.gap, "nx": rep.nx, "ny": rep.ny, "k": rep.k}
    path = emit_json(report, outdir / "report.json")
    return report, [path], STATUS_OK


def _run_dyn_orbit(params, seed, outdir):
    o = sd.orbit(params["map"], float(params["param"]), float(params["u0"]),
                 int(params["steps"]), int(params["transient"]),
                 gamma_scale=float(params["gamma_scale"]))
    csv_path = emit_csv(((i, v) for i, v in enumerate(o.iterates)),
                        ("iterate_index", "value"), outdir / "orbit.csv")
    report = {"map": o.map_id, "param": o.param, "gamma_scale": o.gamma_scale,
              "u0": o.u0, "transient": o.transient, "classification": o.label(),
              "kind": o.kind, "period": o.period}
    json_path = emit_json(report, outdir / "report.json")
    return report, [csv_path, json_path], STATUS_OK


def _run_dyn_scan(params, seed, outdir):
    points = sd.bifurcation_scan(params["map"], float(params["lo"]), float(params["hi"]),
                                 int(params["samples"]), u0=float(params["u0"]),
                                 steps=int(params["steps"]), transient=int(params["transient"]),
                                 keep=int(params["keep"]), gamma_scale=float(params["gamma_scale"]))
    rows = ((pt.param, i, v) for pt in points for i, v in enumerate(pt.attractor))
    csv_path = emit_csv(rows, ("param", "iterate_index", "value"), outdir / "scan.csv")
    report = {"map": params["map"],
              "classifications": [{"param": pt.param, "kind": pt.kind, "period": pt.period}
                                  for pt in points]}
    json_path = emit_json(report, outdir / "report.json")
    return report, [csv_path, json_path], STATUS_OK


def _run_dyn_density(params, seed, outdir):
    lam = float(params["lambda"])
    hist = sd.invariant_density(lam, float(params["u0"]), int(params["n"]),
                                int(params["bins"]), transient=int(params["transient"]))
    rows = ((hist.edges[i], hist.edges[i + 1], hist.counts[i]) for i in range(hist.bins))
    csv_path = emit_csv(rows, ("bin_lo", "bin_hi", "count"), outdir / "density.csv")
    report = {"lambda": lam, "bins": hist.bins, "total": hist.total,
              "degenerate": hist.degenerate}
    json_path = emit_json(report, outdir / "report.json")
    return report, [csv_path, json_path], STATUS_OK


def _pop_typed(overrides, spec, algo):
    """Pop known override keys with conversion; reject anything left over."""
    out = {}
    for key, conv in spec:
        if key in overrides:
            out[key] = conv(overrides.pop(key))
    if overrides:
        raise ConfigError(f"unknown {algo} params: {', '.join(sorted(overrides))}",
                          keys=sorted(overrides))
    return out


def _opt_dispatch(algo, objective_name, iters, seed, overrides):
    obj = objective_catalog(objective_name)
    if algo == "pso":
        dims = obj.dimensions or 2
        kw = _pop_typed(overrides, (("alpha", float), ("beta", float),
                                    ("swarm_size", int), ("theta", float),
                                    ("theta_hi", float), ("theta_lo", float),
                                    ("inertia_mode", str)), algo)
        cfg = PsoConfig(dimensions=dims, bounds=obj.bounds or ((-5.0, 5.0),) * dims, **kw)
        return pso_run(obj.fn, cfg, iters, seed)
    if algo == "fa":
        dims = obj.dimensions or 2
        kw = _pop_typed(overrides, (("beta0", float), ("gamma", float),
                                    ("alpha", float), ("population", int),
                                    ("noise", str), ("beta0_final", float)), algo)
        cfg = FaConfig(dimensions=dims, bounds=obj.bounds or ((-5.0, 5.0),) * dims, **kw)
        return fa_run(obj.fn, cfg, iters, seed)
    if algo == "sa":
        dims = obj.dimensions or 2
        bounds = np.asarray(obj.bounds or ((-5.0, 5.0),) * dims, dtype=float)
        kw = _pop_typed(overrides, (("step", float), ("A", float)), algo)
        step = kw.get("step", 0.5)
        a = kw.get("A", 1.0)

        def neighbor(x, rng):
            return np.clip(x + step * rng.standard_normal(dims), bounds[:, 0], bounds[:, 1])

        x0 = np.zeros(dims) if obj.bounds is None else bounds.mean(axis=1)
        return sa_run(obj.fn, neighbor, x0, a, iters, seed=seed)
    if algo == "ga":
        if obj.length is None:
            raise ConfigError(f"objective {objective_name} is not a bitstring problem",
                              keys=("objective",))
        kw = _pop_typed(overrides, (("population", int), ("mutation_rate", float),
                                    ("elitism", bool), ("tournament", int),
                                    ("crossover", bool)), algo)
        kw.setdefault("population", 20)
        kw.setdefault("mutation_rate", 0.05)
        cfg = GaConfig(length=obj.length, **kw)
        return ga_run(obj.fn, cfg, iters, seed)
    raise ConfigError(f"unknown algo {algo!r}; expected pso, fa, sa, or ga", keys=("algo",))


def _run_opt_run(params, seed, outdir):
    record = _opt_dispatch(params["algo"], params["objective"], int(params["iters"]),
                           seed, dict(params["params"]))
    rows = ((i + 1, v) for i, v in enumerate(record.best_so_far))
    csv_path = emit_csv(rows, ("iteration", "best_so_far"), outdir / "series.csv")
    solution = record.best_solution
    if isinstance(solution, np.ndarray):
        solution = solution.tolist()
    report = {
        "final_best": {"solution": _jsonable(solution), "value": record.best_value},
        "evaluations": record.evaluations,
        "mode": record.mode,
        "config_echo": {"algo": params["algo"], "objective": params["objective"],
                        "iters": int(params["iters"]), "seed": seed,
                        "params": _jsonable(params["params"])},
    }
    json_path = emit_json(report, outdir / "report.json")
    return report, [csv_path, json_path], STATUS_OK


def _run_markov_check(params, seed, outdir):
    matrix = mk.TransitionMatrix(params["matrix"])
    mode = params["mode"]
    if mode == "stationary":
        pi = mk.stationary_distribution(matrix, params.get("max_power"))
        report = {"mode": mode, "pi": pi.tolist(), "size": matrix.size}
        status = STATUS_OK
    elif mode == "geo-check":
        missing = sorted(k for k in ("zeta", "K") if params.get(k) is None)
        if missing:
            raise ConfigError(f"geo-check needs: {', '.join(missing)}", keys=missing)
        rep = mk.geometric_bound_check(matrix, float(params["zeta"]), int(params["K"]))
        report = {"mode": mode, "holds": rep.holds,
                  "first_violation": list(rep.first_violation) if rep.first_violation else None,
                  "max_gap": rep.max_gap, "zeta": rep.zeta, "K": rep.K}
        status = STATUS_OK if rep.holds else STATUS_NEGATIVE
    else:
        raise ConfigError(f"unknown markov-check mode {mode!r}", keys=("mode",))
    path = emit_json(report, outdir / "report.json")
    return report, [path], status


def _require(params, keys):
    missing = sorted(k for k in keys if params.get(k) is None)
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}", keys=missing)


def _run_bounds_calc(params, seed, outdir):
    calc = params["calc"]
    if calc == "zeta":
        _require(params, ("n", "n1", "L"))
        value = mk.zeta_two_group(int(params["n"]), int(params["n1"]), int(params["L"]),
                                  params["mu1"] if params["mu1"] is None else float(params["mu1"]),
                                  params["mu2"] if params["mu2"] is None else float(params["mu2"]))
        report = {"calc": calc, "zeta": value, "degenerate": value >= 1.0}
    elif calc == "ga-t":
        _require(params, ("zeta", "mu", "L", "n"))
        value = mk.ga_iteration_bound(float(params["zeta"]), float(params["mu"]),
                                      int(params["L"]), int(params["n"]))
        report = {"calc": calc, "iterations": value}
    elif calc == "sa-temp":
        _require(params, ("A", "k"))
        value = mk.sa_temperature(float(params["A"]), int(params["k"]))
        report = {"calc": calc, "temperature": value}
    else:
        raise ConfigError(f"unknown calc {calc!r}; expected zeta, ga-t, or sa-temp",
                          keys=("calc",))
    path = emit_json(report, outdir / "report.json")
    return report, [path], STATUS_OK


_RUNNERS = {
    "nfl-verify": _run_nfl_verify,
    "nfl-freelunch": _run_nfl_freelunch,
    "revisit-demo": _run_revisit_demo,
    "dyn-orbit": _run_dyn_orbit,
    "dyn-scan": _run_dyn_scan,
    "dyn-density": _run_dyn_density,
    "opt-run": _run_opt_run,
    "markov-check": _run_markov_check,
    "bounds-calc": _run_bounds_calc,
}


def run_experiment(config: ExperimentConfig) -> ResultManifest:
    """Run one experiment, write its artifacts and manifest, return the manifest.

    Artifact bytes depend only on the config and seed; the manifest's
    duration field is the one run-to-run difference.
    """
    outdir = Path(config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    report, paths, status = _RUNNERS[config.experiment](config.parameters, config.seed, outdir)
    duration = time.perf_counter() - start
    manifest = ResultManifest(
        config=_jsonable(config.to_dict()),
        artifacts=[{"path": p.name, "sha256": _sha256(p)} for p in paths],
        duration_s=duration,
        version=__version__,
        status=status,
        report=_jsonable(report),
    )
    emit_json(manifest.to_dict(), outdir / "manifest.json")
    return manifest
