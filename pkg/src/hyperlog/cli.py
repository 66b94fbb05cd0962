"""Command line front end.

Exit codes: 0 on success, 2 when the mathematics says no (a path that
is not liftable, a twisted loop), 1 for unusable input.  All output is
deterministic: floats are printed in full shortest round-trip form and
JSON keys are sorted.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import config
from .corpus import demo, demo_names
from .errors import HyperlogError, NotLiftable, TwistedLoop, UnknownDemo
from .lifting import FALLBACK_SAMPLES, lift_path, verify_lift
from .obstruction import find_obstructions, report_to_json
from .pathkit import (
    PathSpec,
    path_from_json,
    path_to_json,
    sample_adaptive,
    sample_uniform,
)
from .errors import RefinementBudgetExceeded
from .companion import canonical_form, unit_field
from .winding import analyze_loop


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_path(args) -> tuple[PathSpec, str]:
    if args.demo:
        case = demo(args.demo)
        stem = case.name.replace("(", "_").replace(")", "").replace(",", "_")
        return case.path, stem
    if args.input:
        with open(args.input) as f:
            return path_from_json(json.load(f)), Path(args.input).stem
    raise UnknownDemo("one of --demo or --input is required")


def _demo_directives(args):
    if args.demo and args.companion:
        case = demo(args.demo)
        if args.companion not in case.directives:
            raise UnknownDemo(
                f"demo {case.name} has no companion named {args.companion!r}"
            )
        return case.directives[args.companion]
    out = {}
    for d in args.directive or []:
        key, _, val = d.partition("=")
        if val not in ("flip", "bounce"):
            raise UnknownDemo(f"directive must be <index>=flip|bounce, got {d!r}")
        out[int(key)] = val
    if not out:
        return ()
    size = max(out) + 1
    return tuple(out.get(n) for n in range(size))


def _sample(spec, n0):
    try:
        return sample_adaptive(spec, n0), "adaptive"
    except RefinementBudgetExceeded:
        return sample_uniform(spec, FALLBACK_SAMPLES), "uniform_fallback"


def _write(out_dir, name, text) -> None:
    if out_dir is None:
        return
    p = Path(out_dir)
    p.mkdir(parents=True, exist_ok=True)
    (p / name).write_text(text)


def _cmd_analyze(args) -> int:
    spec, stem = _load_path(args)
    sampled, sampling = _sample(spec, args.n0)
    rep = find_obstructions(sampled, spec)
    doc = report_to_json(rep)
    doc["sampling"] = sampling
    doc["samples"] = len(sampled.params)
    text = _dumps(doc)
    sys.stdout.write(text)
    _write(args.out, f"{stem}_report.json", text)
    return 0


def _cmd_lift(args) -> int:
    spec, stem = _load_path(args)
    initial = None
    if args.initial_unit:
        initial = np.array([float(x) for x in args.initial_unit.split(",")])
        if len(initial) == spec.dim:
            initial = initial[1:]
    res = lift_path(
        spec,
        k0=args.k0,
        initial_unit=initial,
        directives=_demo_directives(args),
        n0=args.n0,
    )
    if res.status != "ok":
        doc = {
            "status": "fails_at",
            "t": res.t_fail,
            "reason": res.reason,
            "sampling": res.sampling,
        }
        sys.stdout.write(_dumps(doc))
        return 2
    try:
        resampled, _ = _sample(spec, args.n0)
    except HyperlogError:
        resampled = None
    doc = {
        "status": "ok",
        "k0": res.lift.k0,
        "branch_trace": [list(piece) for piece in res.lift.branch_trace],
        "closed_lift": res.closed_lift,
        "sampling": res.sampling,
        "start": [float(x) for x in res.lift.values[0]],
        "end": [float(x) for x in res.lift.values[-1]],
    }
    text = _dumps(doc)
    sys.stdout.write(text)
    _write(args.out, f"{stem}_lift.json", text)
    _write(args.out, f"{stem}_lift.csv", res.lift.to_csv())
    return 0


def _cmd_winding(args) -> int:
    spec, stem = _load_path(args)
    res = analyze_loop(spec, _demo_directives(args), args.n0)
    text = _dumps(res.to_json())
    sys.stdout.write(text)
    _write(args.out, f"{stem}_winding.json", text)
    if res.twisted is None or res.twisted:
        return 2
    return 0


def _cmd_shadow(args) -> int:
    spec, stem = _load_path(args)
    sampled, _sampling = _sample(spec, args.n0)
    from dataclasses import replace

    rep = find_obstructions(sampled, replace(spec, closed=False))
    units = unit_field(sampled, rep, _demo_directives(args))
    shadow = canonical_form(sampled, units)
    text = shadow.to_csv()
    sys.stdout.write(text)
    _write(args.out, f"{stem}_shadow.csv", text)
    return 0


def _cmd_demo(args) -> int:
    if args.list or not args.name:
        sys.stdout.write(_dumps({"demos": demo_names()}))
        return 0
    case = demo(args.name)
    if args.export:
        text = _dumps(path_to_json(case.path))
    else:
        text = _dumps(
            {
                "name": case.name,
                "domain": [case.path.a, case.path.b],
                "closed": case.path.closed,
                "expected": case.expected,
                "companions": sorted(case.directives),
                "basepoints": case.basepoints,
                "notes": case.notes,
            }
        )
    sys.stdout.write(text)
    return 0


def _add_common(p):
    p.add_argument("--demo", help="name of a built-in example path")
    p.add_argument("--input", help="path description as a JSON file")
    p.add_argument("--out", help="directory for output files")
    p.add_argument("--n0", type=int, default=64, help="initial sample count")
    p.add_argument(
        "--eps-real", type=float, default=None,
        help="override the realness threshold",
    )
    p.add_argument(
        "--directive", action="append", metavar="M=KIND",
        help="flip/bounce choice for axis interval M (repeatable)",
    )
    p.add_argument(
        "--companion", help="named companion choice of a demo path"
    )


def main(argv=None) -> int:
    parser = _Parser(prog="hyperlog")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="obstruction report for a path")
    _add_common(p)
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("lift", help="continuous logarithm along a path")
    _add_common(p)
    p.add_argument("--k0", type=int, default=0, help="starting branch index")
    p.add_argument(
        "--initial-unit",
        help="comma separated coefficients of the starting direction",
    )
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("winding", help="twistedness and winding of a loop")
    _add_common(p)
    p.set_defaults(fn=_cmd_winding)

    p = sub.add_parser("shadow", help="planar shadow of a path")
    _add_common(p)
    p.set_defaults(fn=_cmd_shadow)

    p = sub.add_parser("demo", help="list or inspect the example corpus")
    p.add_argument("name", nargs="?", help="demo name, optionally with args")
    p.add_argument("--list", action="store_true", help="list demo names")
    p.add_argument(
        "--export", action="store_true", help="print the path as JSON"
    )
    p.set_defaults(fn=_cmd_demo)

    args = parser.parse_args(argv)
    if getattr(args, "eps_real", None) is not None:
        try:
            config.set_eps_real(args.eps_real)
        except ValueError as e:
            sys.stderr.write(f"hyperlog: error: {e}\n")
            return 1
    try:
        return args.fn(args)
    except (NotLiftable, TwistedLoop) as e:
        sys.stderr.write(f"hyperlog: {e}\n")
        return 2
    except HyperlogError as e:
        sys.stderr.write(f"hyperlog: error: {e}\n")
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as e:
        sys.stderr.write(f"hyperlog: error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
