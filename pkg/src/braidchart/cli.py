"""Command line entry point.

Reports are ``key<TAB>value`` lines on standard output (``--json`` gives the
same data as one JSON object).  Exit status: 0 when every requested check
passes, 1 when a chart is invalid or an identity fails, 2 for usage and
parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from .census import census
from .chart import reverse_orientation, translate_labels, validate
from .chartio import ChartDocument, parse_chart, parse_targets, serialize_chart, serialize_targets
from .classical import alexander_number, parse_pd, reverse_pd, verify_numbering
from .errors import BudgetExhaustedError, ChartError, StarViolationError
from .generate import GenConfig, generate
from .identities import WeightSequence, default_window, identity_report
from .realize import RealizeStats, normalize_targets, plan_targets, realize
from .render import RenderOptions, render_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    """Ordered key/value pairs; repeated keys become lists in JSON."""

    def __init__(self):
        self.items: list[tuple[str, Any]] = []

    def add(self, key: str, value: Any) -> None:
        self.items.append((key, value))

    def as_json(self) -> dict:
        grouped: dict[str, list] = {}
        for k, v in self.items:
            grouped.setdefault(k, []).append(v)
        return {k: v[0] if len(v) == 1 else v for k, v in grouped.items()}

    def emit(self, stream, as_json: bool) -> None:
        if as_json:
            json.dump(self.as_json(), stream, indent=2)
            stream.write("\n")
        else:
            for k, v in self.items:
                stream.write(f"{k}\t{v}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str, stdout) -> None:
    if path is None or path == "-":
        stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def parse_weights(spec: str, c, degree: int | None) -> list[WeightSequence]:
    kind, _, rest = spec.partition(":")
    lo, hi = default_window(c, degree)
    try:
        if kind == "constant" and rest:
            return [WeightSequence.constant(int(rest), lo, hi)]
        if kind == "linear" and not rest:
            return [WeightSequence.linear(lo, hi)]
        if kind == "triangular" and not rest:
            return [WeightSequence.triangular(lo, hi)]
        if kind == "explicit":
            start, _, vals = rest.partition(":")
            values = tuple(int(v) for v in vals.split(","))
            return [WeightSequence(int(start), values, f"explicit:{start}")]
        if kind == "random":
            seed, _, k = rest.partition(":")
            rng = random.Random(int(seed))
            count = int(k) if k else 1
            if count < 1:
                raise ValueError
            return [
                WeightSequence(lo, WeightSequence.random(rng, lo, hi).values, f"random:{seed}#{i}")
                for i in range(count)
            ]
    except ValueError:
        pass
    raise UsageError(f"bad --weights value {spec!r}")


# --- subcommands --------------------------------------------------------------------


def _load_chart(path: str):
    return parse_chart(_read(path)).chart


def cmd_validate(args, rep: Report, out) -> int:
    chart = _load_chart(args.chart)
    report = validate(chart)
    rep.add("vertices", len(chart.vertices))
    rep.add("edges", len(chart.edges))
    rep.add("faces", chart.face_count)
    rep.add("components", chart.component_count)
    for v in report.violations:
        rep.add("violation", f"{v.ident}\t{v.rule}\t{v.message}")
    rep.add("status", "ok" if report.ok else "invalid")
    return EXIT_OK if report.ok else EXIT_FAIL


def _census_items(rep: Report, c) -> None:
    for name in ("B", "T", "D"):
        for p, (plus, minus) in getattr(c, name).items():
            rep.add(f"{name}({p},+)", plus)
            rep.add(f"{name}({p},-)", minus)
    for name in ("E", "L"):
        for p, n in getattr(c, name).items():
            rep.add(f"{name}({p})", n)


def cmd_census(args, rep: Report, out) -> int:
    chart = _load_chart(args.chart)
    report = validate(chart)
    if not report.ok:
        rep.add("status", "invalid")
        for v in report.violations:
            rep.add("violation", f"{v.ident}\t{v.rule}\t{v.message}")
        return EXIT_FAIL
    rep.add("degree", chart.degree)
    _census_items(rep, census(chart))
    rep.add("status", "ok")
    return EXIT_OK


def cmd_verify(args, rep: Report, out) -> int:
    chart = _load_chart(args.chart)
    report = validate(chart)
    if not report.ok:
        for v in report.violations:
            rep.add("violation", f"{v.ident}\t{v.rule}\t{v.message}")
        rep.add("status", "invalid")
        return EXIT_FAIL
    c = census(chart)
    specs = args.weights or ["linear", "triangular"]
    weights = [w for s in specs for w in parse_weights(s, c, chart.degree)]
    idr = identity_report(c, weights)
    for p, ok in idr.star.items():
        rep.add(f"star({p})", "ok" if ok else "fail")
    for p, ok in idr.edge_count.items():
        rep.add(f"edge_count({p})", "ok" if ok else "fail")
    for name, total in idr.weighted_totals.items():
        rep.add(f"weighted[{name}]", total)
    rep.add("weighted_total", idr.weighted_total)
    for cor in idr.corollaries:
        rep.add(f"corollary[{cor.claim}]", f"{cor.lhs}\t{cor.rhs}\t{'ok' if cor.ok else 'fail'}")
    rep.add("status", "ok" if idr.ok else "fail")
    return EXIT_OK if idr.ok else EXIT_FAIL


def cmd_plan(args, rep: Report, out) -> int:
    t = parse_targets(_read(args.targets))
    planned = plan_targets(t.T, t.D)
    _write(args.output, serialize_targets(planned), out)
    if args.output:
        rep.add("status", "ok")
    return EXIT_OK


def cmd_realize(args, rep: Report, out) -> int:
    t = parse_targets(_read(args.targets))
    if not t.star_ok():
        bad = [p for p, ok in t.star().items() if not ok]
        rep.add("status", "star-violation")
        rep.add("indices", ",".join(map(str, bad)))
        return EXIT_FAIL
    norm, shift, degree = normalize_targets(t)
    stats = RealizeStats()
    try:
        chart = realize(norm, budget=args.budget, seed=args.seed, degree=max(degree, args.degree or 0), stats=stats)
    except (BudgetExhaustedError, StarViolationError) as exc:
        rep.add("status", "budget-exhausted" if isinstance(exc, BudgetExhaustedError) else "star-violation")
        rep.add("message", str(exc))
        if isinstance(exc, BudgetExhaustedError):
            rep.add("nodes", exc.nodes)
            for k, v in exc.partial.items():
                rep.add(f"partial[{k}]", v)
        return EXIT_FAIL
    text = serialize_chart(ChartDocument(chart, comments=(f"label shift {shift}",) if shift else ()))
    _write(args.output, text, out)
    if args.output:
        rep.add("shift", shift)
        rep.add("degree", chart.degree)
        rep.add("strategy", stats.strategy)
        rep.add("nodes", stats.nodes)
        rep.add("crossings", stats.crossings)
        rep.add("status", "ok")
    return EXIT_OK


def cmd_gen(args, rep: Report, out) -> int:
    cfg = GenConfig(
        seed=args.seed,
        degree=args.degree,
        size=args.size,
        allow_singular=not args.no_singular,
        black_free=args.black_free,
        splice_attempts=args.splices,
    )
    chart = generate(cfg)
    _write(args.output, serialize_chart(ChartDocument(chart, name=f"gen seed {args.seed}")), out)
    if args.output:
        rep.add("vertices", len(chart.vertices))
        rep.add("status", "ok")
    return EXIT_OK


def cmd_render(args, rep: Report, out) -> int:
    chart = _load_chart(args.chart)
    svg = render_svg(chart, RenderOptions(overlay=args.overlay, layout=not args.no_layout))
    _write(args.output, svg, out)
    if args.output:
        rep.add("status", "ok")
    return EXIT_OK


def cmd_translate(args, rep: Report, out) -> int:
    chart = _load_chart(args.chart)
    if args.shift:
        chart = translate_labels(chart, args.shift, args.degree)
    elif args.degree is not None:
        chart = translate_labels(chart, 0, args.degree)
    if args.reverse:
        chart = reverse_orientation(chart)
    _write(args.output, serialize_chart(chart), out)
    if args.output:
        rep.add("status", "ok")
    return EXIT_OK


def cmd_classical(args, rep: Report, out) -> int:
    pd = parse_pd(_read(args.pd))
    if args.reverse:
        pd = reverse_pd(pd)
    numbering = alexander_number(pd)
    rep.add("crossings", len(pd.crossings))
    rep.add("regions", len(numbering.regions))
    for region, n in zip(numbering.regions, numbering.number):
        rep.add("region", f"{' '.join(region)}\t{n}")
    ok = verify_numbering(pd, numbering)
    rep.add("status", "ok" if ok else "fail")
    return EXIT_OK if ok else EXIT_FAIL


# --- argument parsing ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    p = _Parser(prog="braidchart", description="Braid chart census, identities and synthesis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check templates and planarity")
    s.add_argument("chart")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("census", parents=[common], help="count branch, triple and singular points")
    s.add_argument("chart")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("verify", parents=[common], help="check every counting identity")
    s.add_argument("chart")
    s.add_argument("--weights", action="append",
                   help="constant:<c> | linear | triangular | explicit:<lo>:<v0,...> | random:<seed>:<k>")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("plan", parents=[common], help="complete T/D targets with minimal branch points")
    s.add_argument("targets")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("realize", parents=[common], help="build a chart with prescribed counts")
    s.add_argument("targets")
    s.add_argument("-o", "--output")
    s.add_argument("--budget", type=int, default=10**6)
    s.add_argument("--seed", type=int)
    s.add_argument("--degree", type=int)
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("gen", parents=[common], help="generate a random valid chart")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--degree", type=int, default=4)
    s.add_argument("--size", type=int, default=20)
    s.add_argument("--black-free", action="store_true")
    s.add_argument("--no-singular", action="store_true")
    s.add_argument("--splices", type=int, default=20)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("render", parents=[common], help="draw a chart as SVG")
    s.add_argument("chart")
    s.add_argument("-o", "--output")
    s.add_argument("--overlay", action="store_true", help="annotate vertices with index,sign")
    s.add_argument("--no-layout", action="store_true", help="fail instead of laying out a chart without coords")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("translate", parents=[common], help="shift labels and/or reverse orientation")
    s.add_argument("chart")
    s.add_argument("--shift", type=int, default=0)
    s.add_argument("--degree", type=int)
    s.add_argument("--reverse", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("classical", parents=[common], help="Alexander numbering of a PD diagram")
    s.add_argument("pd")
    s.add_argument("--reverse", action="store_true")
    s.set_defaults(func=cmd_classical)
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    rep = Report()
    try:
        code = args.func(args, rep, stdout)
    except (UsageError, ChartError) as exc:
        stderr.write(f"error\t{type(exc).__name__}\t{exc}\n")
        return EXIT_USAGE
    if rep.items:
        rep.emit(stdout, args.json)
    return code


def main_exit() -> None:  # pragma: no cover - console script shim
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
