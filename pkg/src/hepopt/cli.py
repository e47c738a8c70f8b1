"""Command-line entry point: ``hepopt <command> [flags]``.

Exit status: 0 success, 1 oracle mismatch, 2 usage or invalid input,
3 infeasible workload, 4 file I/O failure, 5 enumeration limit exceeded.
Every output file is accompanied by ``<file>.manifest.json`` recording the
command, its flags and SHA-256 digests of inputs and outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import frontio, gen, metrics, oracle, stats
from .exceptions import HepoptError, Infeasible, LimitExceeded, ParseError, ValidationError
from .hepopta import ParetoFront, Solution, solve_hepopt
from .htpopta import solve_htpopt, to_total_front
from .profile import load_profiles, worked_example_path, save_profiles
from .timeopt import solve_time_optimal

EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_IO, EXIT_LIMIT = 1, 2, 3, 4, 5
BUILTIN_PROFILES = {"paper_ex4": worked_example_path}


class UsageError(Exception):
    pass


def _resolve(path):
    maker = BUILTIN_PROFILES.get(path)
    return maker() if maker else path


def _digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def write_manifest(output, command, flags, inputs):
    """Write ``<output>.manifest.json`` describing how ``output`` was produced.

    ``inputs`` are paths or built-in fixture names as given on the command
    line; the digest is always of the file actually read.
    """
    outputs = [output] + [f for f in flags.get("_extra_outputs", ())]
    doc = {
        "command": command,
        "flags": {k: v for k, v in sorted(flags.items()) if not k.startswith("_")},
        "inputs": {label: _digest(_resolve(label)) for label in inputs},
        "outputs": {p: _digest(p) for p in outputs},
    }
    with open(output + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _flags(args):
    return {k: v for k, v in vars(args).items() if k != "func" and v is not None}


PLOT_TEMPLATE = """\
# Pareto front produced by: hepopt {command}
set datafile separator ","
set key autotitle columnhead
set xlabel "execution time (s)"
set ylabel "{ylabel} (J)"
set grid
set terminal pngcairo size 800,600
set output "{png}"
plot "{table}" using 2:1 with linespoints pointtype 7 title "Pareto-optimal distributions"
"""


def write_plot(table_path, objective, command):
    script = table_path + ".gp"
    base = os.path.basename(table_path)
    ylabel = "total energy" if objective == "total" else "dynamic energy"
    with open(script, "w", encoding="utf-8") as fh:
        fh.write(PLOT_TEMPLATE.format(command=command, ylabel=ylabel, png=base + ".png", table=base))
    return script


# ---------------------------------------------------------------- commands


MAX_MEMO_CELLS = 10**7


def _front_for(args):
    profiles = load_profiles(_resolve(args.profiles), args.format)
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    cells = max(profiles.p - 2, 0) * (args.n + 1)
    if cells > args.max_cells:
        raise UsageError(f"memo would need {cells} cells, above --max-cells {args.max_cells}")
    if args.objective == "total":
        base_power = args.base_power
        if base_power is None:
            raise UsageError("--objective total requires --base-power")
        return profiles, solve_htpopt(profiles, args.n, base_power)
    return profiles, solve_hepopt(profiles, args.n)


def cmd_solve(args):
    _, front = _front_for(args)
    frontio.save_front(front, args.out)
    flags = _flags(args)
    if args.emit_plot:
        flags["_extra_outputs"] = [write_plot(args.out, args.objective, "solve")]
    write_manifest(args.out, "solve", flags, [args.profiles])
    print(f"{len(front)} Pareto-optimal solutions written to {args.out}")
    return 0


def cmd_timeopt(args):
    profiles = load_profiles(_resolve(args.profiles), args.format)
    res = solve_time_optimal(profiles, args.n)
    print("makespan", "%.17g" % res.makespan)
    print("distribution", ",".join(map(str, res.distribution)))
    return 0


def cmd_oracle(args):
    profiles, front = _front_for(args)
    if args.objective == "total":
        ref = oracle.brute_total_pareto(profiles, args.n, args.base_power, limit=args.limit)
    else:
        ref = oracle.brute_pareto(profiles, args.n, limit=args.limit)
    got = [(s.energy, s.time, s.distribution) for s in front]
    want = [(s.energy, s.time, s.distribution) for s in ref]
    if got == want:
        print(f"MATCH ({len(front)} solutions)")
        return 0
    print(f"MISMATCH: solver {len(got)} solutions, oracle {len(want)}")
    for row in sorted(set(got) ^ set(want)):
        print(("  solver only " if row in got else "  oracle only ") + repr(row))
    return EXIT_MISMATCH


def _floats(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _grid(text):
    """``a:b`` or ``a:b:step`` (inclusive) or a comma-separated list."""
    try:
        if ":" in text:
            parts = [int(v) for v in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError
            step = parts[2] if len(parts) == 3 else 1
            return list(range(parts[0], parts[1] + 1, step))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad grid {text!r}; use start:stop[:step] or a list") from None


def cmd_gen(args):
    if args.shape == "linear":
        if args.a is None or args.b is None:
            raise UsageError("gen linear needs --a and --b")
        a, b = _floats(args.a), _floats(args.b)
        if args.p is not None and args.p != len(a):
            raise UsageError(f"--p {args.p} disagrees with {len(a)} slopes")
        profiles = gen.gen_linear(gen.LinearSpec(tuple(a), tuple(b), tuple(_grid(args.grid or "1:10"))))
    else:
        if args.p is None or args.m is None:
            raise UsageError(f"gen {args.shape} needs --p and --m")
        profiles = gen.gen_synthetic(args.shape, args.p, args.m, args.seed, args.step)
    if args.base_power is not None:
        profiles = profiles.with_base_power(args.base_power)
    save_profiles(profiles, args.out, args.format)
    write_manifest(args.out, "gen", _flags(args), [])
    print(f"{profiles.p} profiles written to {args.out}")
    return 0


def cmd_metrics(args):
    kind = args.metric
    if kind == "tradeoff":
        front = frontio.load_front(args.front)
        res = metrics.tradeoff_within_band(front, args.band)
        print(f"band {res.band:g}: performance gain {res.perf_gain_percent:.6g}%, "
              f"energy saving {res.energy_saving_percent:.6g}%")
    elif kind == "improvement":
        front = frontio.load_front(args.front)
        base = frontio.load_front(args.baseline)
        if len(base) != 1:
            raise ValidationError("baseline file must hold exactly one solution")
        b = base[0]
        t_opt, e_opt = min(front.times), min(front.energies)
        print(f"performance improvement {metrics.perf_improvement(b.time, t_opt):.6g}%")
        print(f"energy saving {metrics.energy_saving(b.energy, e_opt):.6g}%")
    elif kind == "baseline":
        profiles = load_profiles(_resolve(args.profiles), args.format)
        sol = oracle.load_balanced(profiles, args.n, limit=args.limit)
        frontio.save_front(ParetoFront((Solution(sol.energy, sol.time, sol.distribution),)), args.out)
        write_manifest(args.out, "metrics", _flags(args), [args.profiles])
        print(f"load-balanced distribution {sol.distribution}: energy {sol.energy:g}, time {sol.time:g}")
    elif kind == "total-saving":
        ep = frontio.load_front(args.front)
        tp = to_total_front(ep, args.base_power)
        value = metrics.total_energy_saving_over_dynamic_optimal(ep, tp, args.base_power)
        print(f"total energy saving over the dynamic-energy optimum {value:.6g}%")
    elif kind == "additive":
        comps = load_profiles(args.components, args.format)
        par = load_profiles(args.parallel, args.format)
        if par.p != 1:
            raise ValidationError("parallel profile file must hold exactly one profile")
        rep = metrics.additive_check(list(comps), par[0])
        print(f"difference min {rep.minimum:.6g}%, max {rep.maximum:.6g}%, average {rep.average:.6g}%")
    return 0


def cmd_ttest_sim(args):
    sampler = stats.make_sampler(args.preset, args.seed)
    config = stats.TtestConfig(args.min_reps, args.max_reps, args.max_elapsed, args.confidence, args.precision)
    out = stats.mean_with_ttest(sampler, config)
    print(f"stop reason {out.stop_reason} after {out.reps_used} repetitions, elapsed {out.elapsed:.6g}")
    print("means " + ",".join("%.17g" % m for m in out.means))
    return 0


# ---------------------------------------------------------------- parser


def _add_instance(p):
    p.add_argument("--profiles", required=True, help="profile file, or 'paper_ex4' for the built-in example")
    p.add_argument("--format", choices=["delimited-table", "structured-text"], help="override the file format")
    p.add_argument("--n", type=int, required=True, help="workload size in units")


def _add_objective(p):
    p.add_argument("--objective", choices=["dynamic", "total"], default="dynamic")
    p.add_argument("--base-power", type=float, help="static power in watts (total objective)")
    p.add_argument("--max-cells", type=int, default=MAX_MEMO_CELLS, help="cap on memo table size")


def build_parser():
    parser = argparse.ArgumentParser(prog="hepopt", description="Bi-objective workload partitioning on discrete profiles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute the Pareto front")
    _add_instance(p)
    _add_objective(p)
    p.add_argument("--out", default="front.out")
    p.add_argument("--emit-plot", action="store_true", help="also write a gnuplot script")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("timeopt", help="makespan-optimal distribution")
    _add_instance(p)
    p.set_defaults(func=cmd_timeopt)

    p = sub.add_parser("oracle", help="check the solver against brute force")
    _add_instance(p)
    _add_objective(p)
    p.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate profiles")
    p.add_argument("shape", choices=["linear", "smooth", "jagged"])
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--a", help="time slopes, comma separated")
    p.add_argument("--b", help="energy slopes, comma separated")
    p.add_argument("--grid", help="sizes, start:stop[:step] or a list (linear only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--base-power", type=float)
    p.add_argument("--format", choices=["delimited-table", "structured-text"])
    p.add_argument("--out", default="profiles.csv")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("metrics", help="comparison formulas")
    p.add_argument("metric", choices=["tradeoff", "improvement", "baseline", "total-saving", "additive"])
    p.add_argument("--front")
    p.add_argument("--baseline")
    p.add_argument("--band", type=float, default=0.05)
    p.add_argument("--base-power", type=float)
    p.add_argument("--profiles")
    p.add_argument("--n", type=int)
    p.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)
    p.add_argument("--components")
    p.add_argument("--parallel")
    p.add_argument("--format", choices=["delimited-table", "structured-text"])
    p.add_argument("--out", default="baseline.out")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("ttest-sim", help="run the repeat-until-accurate procedure on a simulated sampler")
    p.add_argument("--preset", choices=sorted(stats.PRESETS), default="gaussian")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-reps", type=int, default=5)
    p.add_argument("--max-reps", type=int, default=1000)
    p.add_argument("--max-elapsed", type=float, default=3600.0)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--precision", type=float, default=0.1)
    p.set_defaults(func=cmd_ttest_sim)
    return parser


_REQUIRED = {
    "tradeoff": ("front",),
    "improvement": ("front", "baseline"),
    "baseline": ("profiles", "n"),
    "total-saving": ("front", "base_power"),
    "additive": ("components", "parallel"),
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "metrics":
            missing = [f"--{k.replace('_', '-')}" for k in _REQUIRED[args.metric] if getattr(args, k) is None]
            if missing:
                raise UsageError(f"metrics {args.metric} needs {' '.join(missing)}")
        return args.func(args)
    except UsageError as exc:
        print(f"hepopt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Infeasible as exc:
        print(f"hepopt: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except LimitExceeded as exc:
        print(f"hepopt: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"hepopt: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParseError, ValidationError, HepoptError, ValueError) as exc:
        print(f"hepopt: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
