"""Command line entry point.

Exit codes: 0 when everything ran and every check passed, 1 when a check
failed, 2 for usage or configuration errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from ..approx import UcbAdversary, ucb_adversary_switch_time
from ..bandit import RegretTrace
from ..verify import Check, adversary_checks, divergence_checks, shift_checks
from .config import ConfigError, load_config
from .export import ExportError, csv_kind, read_aggregate_csv, read_traces_csv, write_aggregate_csv, write_traces_csv
from .runner import AggregateResult, aggregate, run_experiment
from .svg import emit_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _report(checks: list[Check]) -> int:
    for c in checks:
        print(c.line())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_run(args) -> int:
    configs = load_config(args.config, seed=args.seed, out_dir=args.out_dir)
    out = Path(configs[0].out_dir)
    name = configs[0].name
    trace_rows, results, markers = [], [], []
    for cfg in configs:
        traces = run_experiment(cfg, jobs=args.jobs)
        trace_rows += [(cfg.agent_label, cfg.scheme_label, i, tr) for i, tr in enumerate(traces)]
        res = aggregate(traces, cfg.agent_label, cfg.scheme_label)
        results.append(res)
        print(f"RESULT {cfg.agent_label} {cfg.scheme_label} T={cfg.horizon} "
              f"mean={float(res.mean[-1])!r} stderr={float(res.stderr[-1])!r}")
        if isinstance(cfg.scheme, UcbAdversary):
            t0 = ucb_adversary_switch_time(cfg.schedule, cfg.scheme.r)
            if t0 is not None:
                markers.append((f"T0 {cfg.agent_label}", t0))
    write_traces_csv(trace_rows, out / f"{name}_traces.csv")
    write_aggregate_csv(results, out / f"{name}_aggregate.csv")
    emit_svg(results, out / f"{name}.svg", title=name, markers=markers)
    print(f"wrote {out / (name + '_traces.csv')}, {out / (name + '_aggregate.csv')}, {out / (name + '.svg')}")
    return EXIT_OK


def cmd_verify_divergence(args) -> int:
    if args.trials < 1 or not args.tol > 0:
        raise ConfigError("--trials must be positive and --tol > 0")
    return _report(divergence_checks(args.trials, args.tol, args.seed))


def cmd_verify_shift(args) -> int:
    if args.trials < 1:
        raise ConfigError("--trials must be positive")
    return _report(shift_checks(args.trials, args.seed))


def cmd_adversary_check(args) -> int:
    if args.alpha >= 1 or not args.epsilon > 0:
        raise ConfigError("need --alpha < 1 and --epsilon > 0")
    if args.r is not None and not args.r > 1:
        raise ConfigError("--r must exceed 1")
    return _report(adversary_checks(args.scheme, args.epsilon, args.alpha, args.r, args.states, args.seed))


def cmd_plot(args) -> int:
    results: list[AggregateResult] = []
    for path in args.inputs:
        if csv_kind(path) == "aggregate":
            results += read_aggregate_csv(path)
        else:
            groups: dict[tuple[str, str], list] = {}
            for (agent, scheme, _rep), series in read_traces_csv(path).items():
                groups.setdefault((agent, scheme), []).append(series)
            for (agent, scheme), series in groups.items():
                results.append(_aggregate_series(agent, scheme, series))
    emit_svg(results, args.out, title=args.title)
    return EXIT_OK


def _aggregate_series(agent, scheme, series) -> AggregateResult:
    traces = [RegretTrace(len(s), s, np.zeros(0), 0) for s in series]
    return aggregate(traces, agent, scheme)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ebucb", description="Bandits under approximate inference: experiments and checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run an experiment config")
    r.add_argument("--config", required=True)
    r.add_argument("--out-dir", default=None)
    r.add_argument("--jobs", type=int, default=None, help="worker processes (default: logical cores)")
    r.add_argument("--seed", type=int, default=None, help="override base_seed")
    r.set_defaults(func=cmd_run)

    d = sub.add_parser("verify-divergence", help="closed forms and dual-representation agreement")
    d.add_argument("--trials", type=int, default=200)
    d.add_argument("--tol", type=float, default=1e-8)
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(func=cmd_verify_divergence)

    s = sub.add_parser("verify-shift", help="quantile-shift bounds on random extremal pairs")
    s.add_argument("--trials", type=int, default=500)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify_shift)

    a = sub.add_parser("adversary-check", help="divergence budget of an adversarial posterior")
    a.add_argument("--scheme", choices=("ts", "ucb"), required=True)
    a.add_argument("--epsilon", type=float, required=True)
    a.add_argument("--alpha", type=float, required=True)
    a.add_argument("--r", type=float, default=None, help="default: 0.99 of the largest admissible r")
    a.add_argument("--states", type=int, default=50)
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_adversary_check)

    pl = sub.add_parser("plot", help="SVG chart from trace or aggregate CSV files")
    pl.add_argument("--in", dest="inputs", nargs="+", required=True)
    pl.add_argument("--out", required=True)
    pl.add_argument("--title", default="")
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ExportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

