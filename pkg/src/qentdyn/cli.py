"""Command-line front end: figure presets, parameter sweeps, stationary
tables/graphs, and oracle comparisons, emitted as CSV or JSON.

Exit codes: 0 success, 1 usage error, 2 numeric/contract failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from .core import (
    EnvironmentParams,
    NumericError,
    ParameterError,
    StateError,
    build_survival,
)
from .multi_qubit import (
    concurrence_jl,
    concurrence_jm,
    concurrence_km,
    stationary_graph,
    stationary_table,
    superposition_amplitudes,
    werner_pair_concurrence,
    werner_survival,
)
from .oracles import VolterraConfig, discrete_mode_simulate, lorentzian_model, volterra_survival
from .two_qubit import InitialStateTwoQubit, amplitude_series, closed_form_concurrence, stationary_concurrence
from .core import CouplingProfile

DEFAULT_OMEGA0_RATIO = 1.5e9
DEFAULT_BETAS = (0.0, 2e-9, 4e-9)
VOLTERRA_CONTRACT = 1e-4
DISCRETE_CONTRACT = 5e-2

_R1_MAX_STATIONARY = 0.87  # near sqrt(3)/2, the s=+1 stationary optimum
_R1_SYMMETRIC = 1.0 / math.sqrt(2.0)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _beta_label(beta: float) -> str:
    return f"beta={beta:g}"


def _two_qubit_preset(R, s, phi, tau_max, curves):
    return {
        "kind": "two-qubit",
        "R": R,
        "s": s,
        "phi": phi,
        "tau_max": tau_max,
        "curves": curves,
    }


def _multi_preset(kind, measure, R, s, phi, tau_max, curves):
    return {
        "kind": kind,
        "measure": measure,
        "R": R,
        "s": s,
        "phi": phi,
        "tau_max": tau_max,
        "curves": curves,
    }


def _build_presets():
    presets = {}
    presets["fig2a"] = {"kind": "stationary-surface", "phi": 0.0}
    presets["fig2b"] = {"kind": "stationary-surface", "phi": math.pi}

    r1_curves = [
        (f"r1={r1:g}", {"r1": r1, "beta": 0.0})
        for r1 in (_R1_MAX_STATIONARY, _R1_SYMMETRIC, 1.0)
    ]
    presets["fig3a"] = _two_qubit_preset(0.1, 1.0, 0.0, 600.0, r1_curves)
    presets["fig3b"] = _two_qubit_preset(0.1, 0.0, 0.0, 600.0, r1_curves)
    presets["fig3c"] = _two_qubit_preset(10.0, 1.0, 0.0, 20.0, r1_curves)
    presets["fig3d"] = _two_qubit_preset(10.0, 0.0, 0.0, 20.0, r1_curves)

    beta_curves = [
        (_beta_label(b), {"r1": _R1_MAX_STATIONARY, "beta": b}) for b in DEFAULT_BETAS
    ]
    presets["fig4a"] = _two_qubit_preset(0.1, 0.0, 0.0, 2000.0, beta_curves)
    presets["fig4b"] = _two_qubit_preset(0.1, 1.0, 0.0, 2000.0, beta_curves)
    presets["fig5a"] = _two_qubit_preset(10.0, 0.0, 0.0, 50.0, beta_curves)
    presets["fig5b"] = _two_qubit_preset(10.0, 1.0, 0.0, 50.0, beta_curves)

    werner_n = [(f"n={n}", {"n": n, "beta": 0.0}) for n in (2, 4, 8)]
    presets["fig6a"] = _multi_preset("werner", "pair", 0.1, None, None, 600.0, werner_n)
    presets["fig6b"] = _multi_preset("werner", "pair", 10.0, None, None, 20.0, werner_n)
    werner_b = [(_beta_label(b), {"n": 4, "beta": b}) for b in DEFAULT_BETAS]
    presets["fig7a"] = _multi_preset("werner", "pair", 0.1, None, None, 2000.0, werner_b)
    presets["fig7b"] = _multi_preset("werner", "pair", 10.0, None, None, 50.0, werner_b)

    sup_n = [(f"n={n}", {"n": n, "beta": 0.0}) for n in (2, 6, 12)]
    presets["fig8a"] = _multi_preset("superposition", "jl", 0.1, 0.0, 0.0, 600.0, sup_n)
    presets["fig8b"] = _multi_preset("superposition", "jl", 10.0, 0.0, 0.0, 20.0, sup_n)
    for fig, measure, n, s in (
        ("fig9", "jl", 6, 0.0),
        ("fig10", "jm", 6, 0.0),
        ("fig11", "km", 4, 0.0),
        ("fig12", "jl", 4, -1.0),
    ):
        curves = [(_beta_label(b), {"n": n, "beta": b}) for b in DEFAULT_BETAS]
        presets[fig + "a"] = _multi_preset("superposition", measure, 0.1, s, 0.0, 2000.0, curves)
        presets[fig + "b"] = _multi_preset("superposition", measure, 10.0, s, 0.0, 50.0, curves)

    presets["fig13a"] = {"kind": "graph", "scenario": "two-excitation", "n": 6}
    presets["fig13b"] = {"kind": "graph", "scenario": "one-excitation", "n": 5}
    return presets


PRESETS = _build_presets()


def write_csv(stream, meta: dict, header: list[str], rows) -> None:
    stream.write("# qentdyn-config: " + json.dumps(meta, sort_keys=True) + "\n")
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join("" if v is None else _fmt(v) for v in row) + "\n")


def parse_metadata(text: str) -> dict:
    for line in text.splitlines():
        if line.startswith("# qentdyn-config: "):
            return json.loads(line[len("# qentdyn-config: ") :])
    raise ValueError("no qentdyn-config metadata line found")


def _measure_series(measure, n, init, d_values):
    if measure == "pair":
        return werner_pair_concurrence(n, d_values)
    C1, C2, C3 = superposition_amplitudes(n, init, d_values)
    if measure == "jl":
        return concurrence_jl(C1, C2)
    if measure == "jm":
        return concurrence_jm(n, C1, C3)
    if measure == "km":
        return concurrence_km(n, C3)
    raise ParameterError(f"unknown measure {measure!r}")


def preset_rows(preset_id: str, tau_steps: int, tau_max: float | None, omega0_ratio: float):
    """Expand a figure preset into (meta, header, rows)."""
    if preset_id not in PRESETS:
        raise UsageError(
            f"unknown preset {preset_id!r}; valid ids: {', '.join(sorted(PRESETS))}"
        )
    spec = PRESETS[preset_id]
    meta = {"preset": preset_id, "omega0_ratio": omega0_ratio, **{
        k: v for k, v in spec.items() if k not in ("curves", "kind")
    }, "kind": spec["kind"]}

    if spec["kind"] == "stationary-surface":
        phi = spec["phi"]
        r1_grid = np.linspace(0.0, 1.0, 101)
        s_grid = np.linspace(-1.0, 1.0, 81)
        rows = []
        for r1 in r1_grid:
            for s in s_grid:
                rows.append(
                    [r1, s, phi, stationary_concurrence(r1, InitialStateTwoQubit(s, phi))]
                )
        return meta, ["r1", "s", "phi", "stationary_concurrence"], rows

    if spec["kind"] == "graph":
        graph = stationary_graph(spec["n"], spec["scenario"])
        rows = [[i, j, w] for (i, j), w in sorted(graph.edges.items())]
        return meta, ["node_i", "node_j", "weight"], rows

    if tau_steps < 2:
        raise UsageError("tau_steps must be at least 2")
    tmax = tau_max if tau_max is not None else spec["tau_max"]
    taus = np.linspace(0.0, tmax, tau_steps)
    meta["tau_max"] = tmax
    meta["tau_steps"] = tau_steps
    columns = []
    labels = []
    for label, params in spec["curves"]:
        env = EnvironmentParams.from_ratios(spec["R"], omega0_ratio)
        beta = params["beta"]
        if spec["kind"] == "two-qubit":
            surv = build_survival(env, beta, env.R**2)
            coupling = CouplingProfile.from_r1(params["r1"])
            init = InitialStateTwoQubit(spec["s"], spec["phi"])
            c1, c2 = amplitude_series(taus, coupling, init, surv)
            values = closed_form_concurrence(c1, c2)
        else:
            n = params["n"]
            d = werner_survival(n, env, beta)(taus)
            init = (
                InitialStateTwoQubit(spec["s"], spec["phi"])
                if spec["s"] is not None
                else None
            )
            values = _measure_series(spec["measure"], n, init, d)
        labels.append(label)
        columns.append(values)
    rows = [[t, *(col[i] for col in columns)] for i, t in enumerate(taus)]
    return meta, ["tau", *labels], rows


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _emit_csv(out, meta, header, rows):
    stream, close = _open_out(out)
    try:
        write_csv(stream, meta, header, rows)
    finally:
        if close:
            stream.close()


def cmd_preset(args) -> int:
    meta, header, rows = preset_rows(
        args.id, args.tau_steps, args.tau_max, args.omega0_ratio
    )
    _emit_csv(args.out, meta, header, rows)
    return 0


def cmd_sweep(args) -> int:
    if args.r1_steps < 1 or args.s_steps < 1:
        raise UsageError("grid steps must be at least 1")
    if args.r1_min > args.r1_max or args.s_min > args.s_max:
        raise UsageError("empty sweep range (min exceeds max)")
    r1_grid = np.linspace(args.r1_min, args.r1_max, args.r1_steps)
    s_grid = np.linspace(args.s_min, args.s_max, args.s_steps)
    meta = {
        "command": "sweep",
        "phi": args.phi,
        "r1": [args.r1_min, args.r1_max, args.r1_steps],
        "s": [args.s_min, args.s_max, args.s_steps],
    }
    dynamic = args.at_tau is not None
    if dynamic:
        meta.update(at_tau=args.at_tau, R=args.R, beta=args.beta,
                    omega0_ratio=args.omega0_ratio)
        env = EnvironmentParams.from_ratios(args.R, args.omega0_ratio)
        surv = build_survival(env, args.beta, env.R**2)
    rows = []
    for r1 in r1_grid:
        for s in s_grid:
            init = InitialStateTwoQubit(float(s), args.phi)
            if dynamic:
                c1, c2 = amplitude_series(
                    np.array([args.at_tau]), CouplingProfile.from_r1(float(r1)), init, surv
                )
                value = closed_form_concurrence(c1[0], c2[0])
            else:
                value = stationary_concurrence(float(r1), init)
            rows.append([r1, s, args.phi, value])
    header = ["r1", "s", "phi", "concurrence" if dynamic else "stationary_concurrence"]
    _emit_csv(args.out, meta, header, rows)
    return 0


def _n_list(args):
    if args.n_values:
        try:
            return [int(v) for v in args.n_values.split(",") if v.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --n-values: {exc}")
    return list(range(args.n_min, args.n_max + 1))


def cmd_stationary_table(args) -> int:
    n_values = _n_list(args)
    if not n_values:
        raise UsageError("empty n range")
    init = InitialStateTwoQubit(args.s, args.phi) if args.s is not None else None
    rows_dicts = stationary_table(n_values, args.scenario, init)
    keys = [k for k in rows_dicts[0] if k != "n"]
    meta = {"command": "stationary-table", "scenario": args.scenario,
            "n_values": n_values, "s": args.s, "phi": args.phi}
    rows = [[row["n"], *(row[k] for k in keys)] for row in rows_dicts]
    _emit_csv(args.out, meta, ["n", *keys], rows)
    return 0


def cmd_graph(args) -> int:
    init = InitialStateTwoQubit(args.s, args.phi) if args.s is not None else None
    graph = stationary_graph(args.n, args.scenario, init)
    meta = {"command": "graph", "scenario": args.scenario, "n": args.n,
            "s": args.s, "phi": args.phi}
    rows = [[i, j, w] for (i, j), w in sorted(graph.edges.items())]
    _emit_csv(args.out, meta, ["node_i", "node_j", "weight"], rows)
    return 0


def cmd_oracle_compare(args) -> int:
    env = EnvironmentParams.from_ratios(args.R, args.omega0_ratio)
    effective_R2 = args.n * args.R**2
    closed = build_survival(env, args.beta, effective_R2)
    start = time.perf_counter()
    if args.oracle == "volterra":
        cfg = VolterraConfig(dt=args.dt, t_max=args.tau_max)
        result = volterra_survival(env, args.beta, effective_R2, cfg)
        taus, values = result.taus, result.values
        reference = closed(taus)
        contract = VOLTERRA_CONTRACT
    else:
        n_qubits = 2
        amp = 1.0 / math.sqrt(n_qubits)
        # per-qubit couplings chosen so the superradiant state sees n R^2
        model = lorentzian_model(
            n_qubits, args.K, env, betas=(args.beta,) * n_qubits,
            alphas=(math.sqrt(args.n / n_qubits),) * n_qubits,
            half_width=args.half_width, t_max_hint=args.tau_max,
        )
        sim = discrete_mode_simulate(
            model, np.full(n_qubits, amp), args.tau_max, args.dt
        )
        taus = sim.taus
        values = amp * (sim.qubit_amps[0] + sim.qubit_amps[1])
        reference = np.abs(closed(taus))
        values = np.abs(values)
        contract = DISCRETE_CONTRACT
    runtime = time.perf_counter() - start
    errors = np.abs(np.asarray(values) - np.asarray(reference))
    report = {
        "oracle": args.oracle,
        "params": {
            "R": args.R, "beta": args.beta, "omega0_ratio": args.omega0_ratio,
            "n": args.n, "tau_max": args.tau_max, "dt": args.dt,
        },
        "max_abs_error": float(errors.max()),
        "rms_error": float(np.sqrt(np.mean(errors**2))),
        "runtime_seconds": runtime,
        "contract": contract,
        "passed": bool(errors.max() < contract),
    }
    if args.oracle == "discrete":
        report["params"].update(K=args.K, half_width=args.half_width)
    stream, close = _open_out(args.out)
    try:
        json.dump(report, stream, indent=2, sort_keys=True)
        stream.write("\n")
    finally:
        if close:
            stream.close()
    if not report["passed"]:
        print(
            f"oracle-compare FAILED: max_abs_error {report['max_abs_error']:.3e} "
            f"exceeds contract {contract:g} for params {report['params']}",
            file=sys.stderr,
        )
        return 2
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="qentdyn", description=__doc__)
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preset", help="emit the data behind one figure preset")
    p.add_argument("id", help=f"one of: {', '.join(sorted(PRESETS))}")
    p.add_argument("--tau-max", type=float, default=None)
    p.add_argument("--tau-steps", type=int, default=2001)
    p.add_argument("--omega0-ratio", type=float, default=DEFAULT_OMEGA0_RATIO)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("sweep", help="stationary (or fixed-time) concurrence sweep")
    p.add_argument("--r1-min", type=float, default=0.0)
    p.add_argument("--r1-max", type=float, default=1.0)
    p.add_argument("--r1-steps", type=int, default=101)
    p.add_argument("--s-min", type=float, default=-1.0)
    p.add_argument("--s-max", type=float, default=1.0)
    p.add_argument("--s-steps", type=int, default=81)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--at-tau", type=float, default=None,
                   help="evaluate the dynamic concurrence at this time instead")
    p.add_argument("--R", type=float, default=0.1)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--omega0-ratio", type=float, default=DEFAULT_OMEGA0_RATIO)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stationary-table", help="stationary concurrences vs system size")
    p.add_argument("--scenario", choices=("two-excitation", "one-excitation"),
                   required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--n-values", default=None, help="comma-separated n list")
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stationary_table)

    p = sub.add_parser("graph", help="stationary entanglement graph edge list")
    p.add_argument("--scenario", choices=("two-excitation", "one-excitation"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("oracle-compare", help="closed form vs a numerical oracle")
    p.add_argument("--oracle", choices=("volterra", "discrete"), required=True)
    p.add_argument("--R", type=float, default=0.1)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--n", type=int, default=1,
                   help="coupling multiplier: effective R^2 = n R^2")
    p.add_argument("--omega0-ratio", type=float, default=DEFAULT_OMEGA0_RATIO)
    p.add_argument("--tau-max", type=float, default=50.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--K", type=int, default=4096)
    p.add_argument("--half-width", type=float, default=200.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle_compare)
    return parser


def _apply_config(parser: _Parser, cfg: dict) -> None:
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    cfg = {str(k).replace("-", "_"): v for k, v in cfg.items()}
    parsers = [parser]
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            parsers.extend(action.choices.values())
    known = set()
    for p in parsers:
        dests = {a.dest for a in p._actions}
        known |= dests
        p.set_defaults(**{k: v for k, v in cfg.items() if k in dests})
    unknown = set(cfg) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        if argv is None:
            argv = sys.argv[1:]
        pre = _Parser(add_help=False)
        pre.add_argument("--config", default=None)
        known, _ = pre.parse_known_args(argv)
        if known.config:
            with open(known.config, encoding="utf-8") as fh:
                _apply_config(parser, json.load(fh))
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParameterError, StateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
