"""Command-line interface.

Subcommands: simulate, equilibria, shoot, cost, compare, phase.  Outputs
are CSV (RFC-4180-style quoting) or JSON, written to --out or stdout;
identical invocations produce byte-identical output.  Exit codes:
0 success, 2 argument error, 3 structural (equilibrium/bracket) error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .control_systems import (PREVENTION, TREATMENT, PhasePoint,
                              prevention_equilibria, prevention_field,
                              treatment_equilibria, treatment_field)
from .costs import (BENCHMARK_ROWS, TIE, TIE_THRESHOLD, compare,
                    social_cost_prevention, social_cost_treatment)
from .epidemic import ModelParams, baseline_planar_field, closed_form_infected
from .errors import BracketError, DomainBreach, DomainError, StructureError
from .integrator import IntegrationOptions, Trajectory, Termination, integrate
from .shooting import shoot_prevention, shoot_treatment, stable_manifold_backward

_EXIT_OK = 0
_EXIT_ARGS = 2
_EXIT_STRUCTURE = 3


def _fmt(x, places=None):
    if x is None:
        return ""
    if places is not None:
        return f"{x:.{places}f}"
    return repr(float(x))


def _load_config(path):
    """key = value lines, keys named like the long flags; # comments."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{line_no}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _resolve(args, config_keys_typed):
    """Fill argparse None values from --config, then fall back to the
    built-in default; rejects unknown config keys."""
    config = _load_config(args.config) if getattr(args, "config", None) else {}
    known = {name for name, _, _ in config_keys_typed}
    unknown = set(config) - known
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    for name, cast, default in config_keys_typed:
        if getattr(args, name, None) is None:
            if name in config:
                setattr(args, name, cast(config[name]))
            else:
                setattr(args, name, default)
    return args


def _write_output(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=2) + "\n"


def _integration_options(args, events=()):
    return IntegrationOptions(step=args.step, method=args.method,
                              t_max=args.tmax, events=tuple(events))


def _add_common(p, tmax_default=400.0):
    p.add_argument("--alpha", type=float, default=None, help="infection rate")
    p.add_argument("--delta", type=float, default=None, help="recovery rate")
    p.add_argument("--rho", type=float, default=None, help="discount rate")
    p.add_argument("--step", type=float, default=None, help="integration step")
    p.add_argument("--method", choices=["rk4", "rk45"], default=None)
    p.add_argument("--tmax", "--t", dest="tmax", type=float, default=None,
                   help="integration horizon")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--config", default=None,
                   help="key = value config file with the same keys as the flags")
    p.set_defaults(_tmax_default=tmax_default)


_COMMON_TYPED = [
    ("rho", float, 0.04),
    ("step", float, 0.01),
    ("method", str, "rk4"),
    ("format", str, "csv"),
    ("out", str, None),
]


def _common_typed(args, extra):
    return _COMMON_TYPED + [("tmax", float, args._tmax_default)] + extra


def cmd_simulate(args):
    args = _resolve(args, _common_typed(args, [
        ("alpha", float, 0.2), ("delta", float, 0.2),
        ("p", float, 0.0), ("v", float, 0.0), ("i0", float, 0.04),
    ]))
    params = ModelParams(args.alpha, args.delta, args.rho, p=args.p, v=args.v)
    i0 = args.i0
    if not 0.0 <= i0 <= 1.0:
        raise DomainError(f"i0 must be in [0, 1], got {i0}")
    opts = _integration_options(args)
    traj = integrate(baseline_planar_field(params), PhasePoint(1.0 - i0, i0),
                     opts, "baseline")
    closed = closed_form_infected(traj.times, i0, params)
    header = ["t", "s", "i", "i_closed_form"]
    rows = [[_fmt(t), _fmt(s), _fmt(i), _fmt(c)]
            for t, s, i, c in zip(traj.times, traj.s, traj.c, closed)]
    if args.format == "json":
        payload = [{"t": float(t), "s": float(s), "i": float(i),
                    "i_closed_form": float(c)}
                   for t, s, i, c in zip(traj.times, traj.s, traj.c, closed)]
        _write_output(args, _json_text(payload))
    else:
        _write_output(args, _csv_text(header, rows))
    return _EXIT_OK


def _report_record(rep):
    rec = {
        "name": rep.name, "system": rep.system, "exists": rep.exists,
        "violated": rep.violated,
        "s": rep.coords.s, "c": rep.coords.c,
        "tau": rep.coords_tau.c,
        "classification": rep.classification,
        "tau_feasible": rep.tau_feasible,
    }
    if rep.jacobian is not None:
        rec.update(j11=rep.jacobian[0, 0], j12=rep.jacobian[0, 1],
                   j21=rep.jacobian[1, 0], j22=rep.jacobian[1, 1])
        rec.update(eig1_re=rep.eigenvalues[0].real, eig1_im=rep.eigenvalues[0].imag,
                   eig2_re=rep.eigenvalues[1].real, eig2_im=rep.eigenvalues[1].imag)
    else:
        rec.update(j11=None, j12=None, j21=None, j22=None,
                   eig1_re=None, eig1_im=None, eig2_re=None, eig2_im=None)
    if rep.stable_eigenvector is not None:
        rec.update(evec_s=rep.stable_eigenvector[0],
                   evec_c=rep.stable_eigenvector[1])
    else:
        rec.update(evec_s=None, evec_c=None)
    return rec


def cmd_equilibria(args):
    args = _resolve(args, _common_typed(args, [
        ("alpha", float, 0.2), ("delta", float, 0.2),
    ]))
    params = ModelParams(args.alpha, args.delta, args.rho)
    if args.policy == PREVENTION:
        reports = prevention_equilibria(params)
    else:
        reports = treatment_equilibria(params)
    records = [_report_record(rep) for rep in reports]
    if args.format == "json":
        _write_output(args, _json_text(records))
    else:
        header = list(records[0].keys())
        rows = [[_fmt(rec[k]) if isinstance(rec[k], float) else
                 ("" if rec[k] is None else rec[k]) for k in header]
                for rec in records]
        _write_output(args, _csv_text(header, rows))
    return _EXIT_OK


def _trajectory_payload(traj, extra=None):
    payload = {
        "policy_kind": traj.policy_kind,
        "termination": {"reason": traj.termination.reason,
                        "event": traj.termination.event,
                        "time": traj.termination.time},
        "t": [float(x) for x in traj.times],
        "s": [float(x) for x in traj.s],
        "c": [float(x) for x in traj.c],
    }
    if extra:
        payload.update(extra)
    return payload


def _write_trajectory(args, traj, extra=None):
    if args.format == "json":
        _write_output(args, _json_text(_trajectory_payload(traj, extra)))
    else:
        rows = [[_fmt(t), _fmt(s), _fmt(c)]
                for t, s, c in zip(traj.times, traj.s, traj.c)]
        _write_output(args, _csv_text(["t", "s", "c"], rows))


def cmd_shoot(args):
    args = _resolve(args, _common_typed(args, [
        ("alpha", float, 0.2), ("delta", float, 0.2), ("s0", float, 0.96),
    ]))
    params = ModelParams(args.alpha, args.delta, args.rho)
    opts = _integration_options(args)
    if args.policy == PREVENTION:
        result = shoot_prevention(params, args.s0, opts)
    else:
        result = shoot_treatment(params, args.s0, opts)
    print(f"tau0={result.tau0!r} c0={result.c0!r} "
          f"bracket_width={result.bracket_width!r}")
    _write_trajectory(args, result.trajectory,
                      extra={"tau0": result.tau0, "c0": result.c0})
    return _EXIT_OK


def _read_trajectory(path, policy):
    if path.endswith(".json"):
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        term = payload.get("termination", {})
        return Trajectory(
            times=np.asarray(payload["t"], dtype=float),
            states=np.column_stack([np.asarray(payload["s"], dtype=float),
                                    np.asarray(payload["c"], dtype=float)]),
            termination=Termination(term.get("reason", "tmax"),
                                    term.get("event"), term.get("time", 0.0)),
            policy_kind=payload.get("policy_kind", policy))
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        ts, ss, cs = [], [], []
        for row in reader:
            ts.append(float(row["t"]))
            ss.append(float(row["s"]))
            cs.append(float(row["c"]))
    times = np.asarray(ts)
    return Trajectory(times=times,
                      states=np.column_stack([ss, cs]),
                      termination=Termination("tmax", None, float(times[-1])),
                      policy_kind=policy)


def cmd_cost(args):
    args = _resolve(args, _common_typed(args, [
        ("alpha", float, 0.2), ("delta", float, 0.2), ("s0", float, 0.96),
    ]))
    params = ModelParams(args.alpha, args.delta, args.rho)
    if args.traj:
        traj = _read_trajectory(args.traj, args.policy)
    else:
        opts = _integration_options(args)
        if args.policy == PREVENTION:
            traj = shoot_prevention(params, args.s0, opts).trajectory
        else:
            traj = shoot_treatment(params, args.s0, opts).trajectory
    if args.policy == PREVENTION:
        cost = social_cost_prevention(traj, params)
    else:
        cost = social_cost_treatment(traj, params)
    print(f"cost={cost!r}")
    return _EXIT_OK


def _parse_pairs(text):
    pairs = []
    for chunk in text.split(","):
        a, _, d = chunk.partition(":")
        pairs.append((float(a), float(d)))
    return pairs


def cmd_compare(args):
    args = _resolve(args, _common_typed(args, [("s0", float, 0.96)]))
    if args.paper:
        pairs = list(BENCHMARK_ROWS)
    elif args.pairs:
        pairs = _parse_pairs(args.pairs)
    else:
        raise DomainError("compare needs --paper or --pairs 'a:d,a:d,...'")
    opts = _integration_options(args)
    rows = compare(pairs, args.rho, args.s0, opts,
                   tie_threshold=args.tie_threshold)

    header = ["alpha", "delta", "prev_tau0", "prev_taubar", "prev_cost",
              "treat_tau0", "treat_taubar", "treat_cost", "verdict"]
    out_rows = []
    records = []
    for row in rows:
        if row.error is not None:
            print(f"warning: ({row.alpha}, {row.delta}): {row.error}",
                  file=sys.stderr)
            out_rows.append([_fmt(row.alpha, 4), _fmt(row.delta, 4),
                             "", "", "", "", "", "", "error"])
            records.append({"alpha": row.alpha, "delta": row.delta,
                            "verdict": "error", "error": row.error})
            continue
        # tie rows keep full cost precision: 4 decimals cannot show why
        cost_places = None if row.verdict == TIE else 4
        out_rows.append([
            _fmt(row.alpha, 4), _fmt(row.delta, 4),
            _fmt(row.prevention.tau0, 4), _fmt(row.prevention.tau_bar1, 4),
            _fmt(row.prevention.cost, cost_places),
            _fmt(row.treatment.tau0, 4), _fmt(row.treatment.tau_bar1, 4),
            _fmt(row.treatment.cost, cost_places),
            row.verdict,
        ])
        records.append({
            "alpha": row.alpha, "delta": row.delta,
            "prev_tau0": row.prevention.tau0,
            "prev_taubar": row.prevention.tau_bar1,
            "prev_cost": row.prevention.cost,
            "treat_tau0": row.treatment.tau0,
            "treat_taubar": row.treatment.tau_bar1,
            "treat_cost": row.treatment.cost,
            "verdict": row.verdict,
        })
    if args.format == "json":
        _write_output(args, _json_text(records))
    else:
        _write_output(args, _csv_text(header, out_rows))
    return _EXIT_OK


def _phase_records(args, params):
    records = []
    a, d, r = params.alpha, params.delta, params.rho
    s_grid = np.linspace(args.smin, args.smax, args.grid_n)
    c_grid = np.linspace(0.0, args.cmax, args.grid_n)
    field = (prevention_field(params) if args.policy == PREVENTION
             else treatment_field(params))
    for s in s_grid:
        if args.policy == PREVENTION and s <= 0.0:
            continue
        for c in c_grid:
            ds, dc = field(0.0, (s, c))
            records.append({"series": "arrow", "s": float(s), "c": float(c),
                            "ds": float(ds), "dc": float(dc)})

    dense = np.linspace(max(args.smin, 1e-3), args.smax, 40 * args.grid_n)
    if args.policy == PREVENTION:
        for c in c_grid:
            records.append({"series": "nullcline_sdot_boundary",
                            "s": 1.0, "c": float(c), "ds": None, "dc": None})
        for s in dense:
            records.append({"series": "nullcline_sdot_interior", "s": float(s),
                            "c": float(1.0 - d / (a * s)), "ds": None, "dc": None})
        for s in dense:
            records.append({"series": "nullcline_taudot", "s": float(s),
                            "c": float(3.0 - (r + d + d / s) / (a * s)),
                            "ds": None, "dc": None})
        reports = prevention_equilibria(params)
    else:
        for s in dense:
            records.append({"series": "nullcline_phidot_axis", "s": float(s),
                            "c": 0.0, "ds": None, "dc": None})
        s_star = (r + a) / (2.0 * a)
        for c in c_grid:
            records.append({"series": "nullcline_phidot_vertical",
                            "s": float(s_star), "c": float(c),
                            "ds": None, "dc": None})
        for s in dense:
            records.append({"series": "nullcline_sdot", "s": float(s),
                            "c": float(a * s * (1.0 - s) / d),
                            "ds": None, "dc": None})
        reports = treatment_equilibria(params)

    for rep in reports:
        if not rep.exists:
            print(f"warning: {rep.name} omitted (violated: {rep.violated})",
                  file=sys.stderr)
            continue
        records.append({"series": f"equilibrium_{rep.name}",
                        "s": rep.coords.s, "c": rep.coords.c,
                        "ds": None, "dc": None})

    try:
        manifold = stable_manifold_backward(params, args.policy, args.arc)
        for s, c in manifold.states:
            records.append({"series": "stable_manifold", "s": float(s),
                            "c": float(c), "ds": None, "dc": None})
    except StructureError as exc:
        print(f"warning: stable manifold omitted ({exc})", file=sys.stderr)
    return records


def cmd_phase(args):
    default_cmax = 1.0 if args.policy == PREVENTION else 0.5
    default_smin = 0.5 if args.policy == PREVENTION else 0.05
    args = _resolve(args, _common_typed(args, [
        ("alpha", float, 0.2), ("delta", float, 0.2),
        ("smin", float, default_smin), ("smax", float, 1.0),
        ("cmax", float, default_cmax),
        ("grid_n", int, 20), ("arc", float, 2.0),
    ]))
    params = ModelParams(args.alpha, args.delta, args.rho)
    records = _phase_records(args, params)
    if args.format == "json":
        _write_output(args, _json_text(records))
    else:
        header = ["series", "s", "c", "ds", "dc"]
        rows = [[rec["series"], _fmt(rec["s"]), _fmt(rec["c"]),
                 _fmt(rec["ds"]), _fmt(rec["dc"])] for rec in records]
        _write_output(args, _csv_text(header, rows))
    return _EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sispolicy",
        description="SIS epidemic model under optimal prevention/treatment "
                    "tax policies: simulation, equilibria, saddle-path "
                    "shooting, social costs, policy comparison.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="baseline SIS time series")
    _add_common(p)
    p.add_argument("--p", type=float, default=None, help="constant prevention rate")
    p.add_argument("--v", type=float, default=None, help="constant treatment rate")
    p.add_argument("--i0", type=float, default=None, help="initial infected share")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("equilibria", help="equilibrium reports with eigen-data")
    _add_common(p)
    p.add_argument("--policy", choices=[PREVENTION, TREATMENT], required=True)
    p.set_defaults(fn=cmd_equilibria)

    p = sub.add_parser("shoot", help="saddle-path shooting for tau0")
    _add_common(p)
    p.add_argument("--policy", choices=[PREVENTION, TREATMENT], required=True)
    p.add_argument("--s0", type=float, default=None, help="initial susceptible share")
    p.set_defaults(fn=cmd_shoot)

    p = sub.add_parser("cost", help="discounted social cost of a policy path")
    _add_common(p)
    p.add_argument("--policy", choices=[PREVENTION, TREATMENT], required=True)
    p.add_argument("--s0", type=float, default=None)
    p.add_argument("--traj", default=None,
                   help="evaluate a stored trajectory (.csv or .json) "
                        "instead of shooting")
    p.set_defaults(fn=cmd_cost)

    p = sub.add_parser("compare", help="prevention-vs-treatment cost table")
    _add_common(p)
    p.add_argument("--paper", action="store_true",
                   help="use the built-in 15-row benchmark parameter sweep")
    p.add_argument("--pairs", default=None,
                   help="explicit sweep as 'alpha:delta,alpha:delta,...'")
    p.add_argument("--s0", type=float, default=None)
    p.add_argument("--tie-threshold", dest="tie_threshold", type=float,
                   default=TIE_THRESHOLD)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("phase", help="phase-portrait data: vector field, "
                                     "nullclines, equilibria, stable manifold")
    _add_common(p)
    p.add_argument("--policy", choices=[PREVENTION, TREATMENT], required=True)
    p.add_argument("--smin", type=float, default=None)
    p.add_argument("--smax", type=float, default=None)
    p.add_argument("--cmax", type=float, default=None)
    p.add_argument("--grid-n", dest="grid_n", type=int, default=None)
    p.add_argument("--arc", type=float, default=None,
                   help="manifold arc length to trace")
    p.set_defaults(fn=cmd_phase)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, ZeroDivisionError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_ARGS
    except (StructureError, BracketError, DomainBreach) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_STRUCTURE


if __name__ == "__main__":
    sys.exit(main())
