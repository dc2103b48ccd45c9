"""Command-line entry points.

`nflab` exposes one subcommand per experiment type; the narrower `nfl`,
`dyn`, `opt`, `bounds`, and `markov` commands map their subcommands onto
the same experiments.  Exit codes: 0 success, 2 negative analysis result
(trace distributions diverged, bound violated), 1 usage or validation
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import swarm_dynamics as sd
from .harness import ConfigError, ExperimentConfig, load_config, run_experiment, _jsonable


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits 1 on usage errors, keeping 2 for analysis."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _coerce(text: str):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def _parse_kv(pairs):
    out = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ConfigError(f"expected key=value, got {pair!r}", keys=(pair,))
        out[key] = _coerce(value)
    return out


def _load_json_file(path, what):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"{what} file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"{what} parse error at line {e.lineno}, column {e.colno}: {e.msg}")


def _add_common(sp):
    sp.add_argument("--seed", type=int, default=0, help="root seed for the run")
    sp.add_argument("--out", default=".", help="output directory for artifacts")
    sp.add_argument("--quiet", action="store_true", help="suppress the report JSON")
    sp.add_argument("--config", default=None, help="JSON config file instead of inline flags")


def _execute(experiment, params, args) -> int:
    if getattr(args, "config", None):
        config = load_config(args.config)
        if config.experiment != experiment:
            raise ConfigError(
                f"config file is for {config.experiment!r}, not {experiment!r}")
        config = ExperimentConfig(config.experiment, config.parameters,
                                  args.seed if args.seed else config.seed,
                                  args.out if args.out != "." else config.output_dir)
    else:
        config = ExperimentConfig(experiment, params, args.seed, args.out)
    manifest = run_experiment(config)
    if not args.quiet:
        print(json.dumps(_jsonable(manifest.report), indent=2, sort_keys=True))
    return 0 if manifest.status == "ok" else 2


def _given(**kwargs):
    return {k: v for k, v in kwargs.items() if v is not None}


# --------------------------------------------------------------------------
# Per-experiment flag builders, shared between `nflab` and the module CLIs
# --------------------------------------------------------------------------

def _args_nfl_verify(sp):
    sp.add_argument("--nx", type=int)
    sp.add_argument("--ny", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--policy-a")
    sp.add_argument("--policy-b")
    sp.add_argument("--cap", type=int)


def _params_nfl_verify(a):
    return _given(nx=a.nx, ny=a.ny, k=a.k, policy_a=a.policy_a, policy_b=a.policy_b, cap=a.cap)


def _args_nfl_freelunch(sp):
    sp.add_argument("--subset", help="JSON file holding an array of value arrays")
    sp.add_argument("--ny", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--policy-a")
    sp.add_argument("--policy-b")


def _params_nfl_freelunch(a):
    subset = _load_json_file(a.subset, "subset") if a.subset else None
    return _given(subset=subset, ny=a.ny, k=a.k, policy_a=a.policy_a, policy_b=a.policy_b)


def _args_revisit_demo(sp):
    sp.add_argument("--nx", type=int)
    sp.add_argument("--ny", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--pin", type=int)
    sp.add_argument("--cap", type=int)


def _params_revisit_demo(a):
    return _given(nx=a.nx, ny=a.ny, k=a.k, pin=a.pin, cap=a.cap)


def _args_dyn_orbit(sp):
    sp.add_argument("--map")
    sp.add_argument("--param", type=float)
    sp.add_argument("--u0", type=float)
    sp.add_argument("--steps", type=int)
    sp.add_argument("--transient", type=int)
    sp.add_argument("--gamma-scale", type=float)


def _params_dyn_orbit(a):
    return _given(map=a.map, param=a.param, u0=a.u0, steps=a.steps,
                  transient=a.transient, gamma_scale=a.gamma_scale)


def _args_dyn_scan(sp):
    sp.add_argument("--map")
    sp.add_argument("--lo", type=float)
    sp.add_argument("--hi", type=float)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--u0", type=float)
    sp.add_argument("--steps", type=int)
    sp.add_argument("--transient", type=int)
    sp.add_argument("--keep", type=int)
    sp.add_argument("--gamma-scale", type=float)


def _params_dyn_scan(a):
    return _given(map=a.map, lo=a.lo, hi=a.hi, samples=a.samples, u0=a.u0,
                  steps=a.steps, transient=a.transient, keep=a.keep,
                  gamma_scale=a.gamma_scale)


def _args_dyn_density(sp):
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("--n", type=int)
    sp.add_argument("--bins", type=int)
    sp.add_argument("--u0", type=float)
    sp.add_argument("--transient", type=int)


def _params_dyn_density(a):
    params = _given(n=a.n, bins=a.bins, u0=a.u0, transient=a.transient)
    if a.lam is not None:
        params["lambda"] = a.lam
    return params


def _args_opt_run(sp):
    sp.add_argument("--algo", choices=("pso", "fa", "sa", "ga"))
    sp.add_argument("--objective")
    sp.add_argument("--iters", type=int)
    sp.add_argument("--param", action="append", metavar="KEY=VALUE",
                    help="algorithm parameter override, repeatable")


def _params_opt_run(a):
    params = _given(algo=a.algo, objective=a.objective, iters=a.iters)
    if a.param:
        params["params"] = _parse_kv(a.param)
    return params


def _args_markov_check(sp):
    sp.add_argument("--mode", choices=("stationary", "geo-check"))
    sp.add_argument("--matrix", help="JSON file holding an array of rows")
    sp.add_argument("--zeta", type=float)
    sp.add_argument("--K", type=int)
    sp.add_argument("--max-power", type=int)


def _params_markov_check(a, mode=None):
    matrix = _load_json_file(a.matrix, "matrix") if a.matrix else None
    return _given(mode=mode or a.mode, matrix=matrix, zeta=a.zeta, K=a.K,
                  max_power=a.max_power)


def _args_bounds_calc(sp):
    sp.add_argument("--calc", choices=("zeta", "ga-t", "sa-temp"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--n1", type=int)
    sp.add_argument("--L", type=int)
    sp.add_argument("--mu1", type=float)
    sp.add_argument("--mu2", type=float)
    sp.add_argument("--zeta", type=float)
    sp.add_argument("--mu", type=float)
    sp.add_argument("--A", type=float)
    sp.add_argument("--k", type=int)


def _params_bounds_calc(a, calc=None):
    return _given(calc=calc or a.calc, n=a.n, n1=a.n1, L=a.L, mu1=a.mu1,
                  mu2=a.mu2, zeta=a.zeta, mu=a.mu, A=a.A, k=a.k)


_EXPERIMENT_CLI = {
    "nfl-verify": (_args_nfl_verify, _params_nfl_verify),
    "nfl-freelunch": (_args_nfl_freelunch, _params_nfl_freelunch),
    "revisit-demo": (_args_revisit_demo, _params_revisit_demo),
    "dyn-orbit": (_args_dyn_orbit, _params_dyn_orbit),
    "dyn-scan": (_args_dyn_scan, _params_dyn_scan),
    "dyn-density": (_args_dyn_density, _params_dyn_density),
    "opt-run": (_args_opt_run, _params_opt_run),
    "markov-check": (_args_markov_check, _params_markov_check),
    "bounds-calc": (_args_bounds_calc, _params_bounds_calc),
}


def _run_cli(parser, handler, argv) -> int:
    args = parser.parse_args(argv)
    if getattr(args, "cmd", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return handler(args)
    except (ConfigError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main_nflab(argv=None) -> int:
    parser = _Parser(prog="nflab", description="Seeded experiment runner")
    sub = parser.add_subparsers(dest="cmd")
    for name, (add_args, _) in _EXPERIMENT_CLI.items():
        sp = sub.add_parser(name)
        add_args(sp)
        _add_common(sp)

    def handler(args):
        _, params_of = _EXPERIMENT_CLI[args.cmd]
        return _execute(args.cmd, params_of(args), args)

    return _run_cli(parser, handler, argv)


def main_nfl(argv=None) -> int:
    parser = _Parser(prog="nfl", description="Finite-space equality and free-lunch checks")
    sub = parser.add_subparsers(dest="cmd")
    for cmd, experiment in (("verify", "nfl-verify"), ("freelunch", "nfl-freelunch")):
        sp = sub.add_parser(cmd)
        _EXPERIMENT_CLI[experiment][0](sp)
        _add_common(sp)

    def handler(args):
        experiment = {"verify": "nfl-verify", "freelunch": "nfl-freelunch"}[args.cmd]
        return _execute(experiment, _EXPERIMENT_CLI[experiment][1](args), args)

    return _run_cli(parser, handler, argv)


def main_dyn(argv=None) -> int:
    parser = _Parser(prog="dyn", description="Reduced swarm dynamics and 1-D maps")
    sub = parser.add_subparsers(dest="cmd")
    eig = sub.add_parser("pso-eig")
    eig.add_argument("--gamma", type=float, required=True)
    for cmd, experiment in (("orbit", "dyn-orbit"), ("scan", "dyn-scan"),
                            ("density", "dyn-density")):
        sp = sub.add_parser(cmd)
        _EXPERIMENT_CLI[experiment][0](sp)
        _add_common(sp)

    def handler(args):
        if args.cmd == "pso-eig":
            pair = sd.pso_eigenvalues(args.gamma)
            out = {
                "gamma": args.gamma,
                "lambda1": {"re": pair.lambda1.real, "im": pair.lambda1.imag},
                "lambda2": {"re": pair.lambda2.real, "im": pair.lambda2.imag},
                "modulus1": abs(pair.lambda1),
                "modulus2": abs(pair.lambda2),
                "regime": sd.classify_pso_regime(args.gamma),
            }
            print(json.dumps(out, indent=2, sort_keys=True))
            return 0
        experiment = {"orbit": "dyn-orbit", "scan": "dyn-scan",
                      "density": "dyn-density"}[args.cmd]
        return _execute(experiment, _EXPERIMENT_CLI[experiment][1](args), args)

    return _run_cli(parser, handler, argv)


def main_opt(argv=None) -> int:
    parser = _Parser(prog="opt", description="Seeded metaheuristic runs")
    sub = parser.add_subparsers(dest="cmd")
    sp = sub.add_parser("run")
    _args_opt_run(sp)
    _add_common(sp)

    def handler(args):
        return _execute("opt-run", _params_opt_run(args), args)

    return _run_cli(parser, handler, argv)


def main_bounds(argv=None) -> int:
    parser = _Parser(prog="bounds", description="Closed-form convergence bounds")
    sub = parser.add_subparsers(dest="cmd")
    for cmd in ("zeta", "ga-t", "sa-temp"):
        sp = sub.add_parser(cmd)
        _args_bounds_calc(sp)
        _add_common(sp)

    def handler(args):
        return _execute("bounds-calc", _params_bounds_calc(args, calc=args.cmd), args)

    return _run_cli(parser, handler, argv)


def main_markov(argv=None) -> int:
    parser = _Parser(prog="markov", description="Transition-matrix analysis")
    sub = parser.add_subparsers(dest="cmd")
    for cmd in ("stationary", "geo-check"):
        sp = sub.add_parser(cmd)
        _args_markov_check(sp)
        _add_common(sp)

    def handler(args):
        return _execute("markov-check", _params_markov_check(args, mode=args.cmd), args)

    return _run_cli(parser, handler, argv)


if __name__ == "__main__":
    sys.exit(main_nflab())
