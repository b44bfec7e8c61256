"""Command-line interface.

    dsrating datasets
    dsrating analyze --data builtin:crimes_no_homicide --variant ds3 --dims 2 --out res.json
    dsrating recode  --data builtin:toy --kind dominance --out e.csv
    dsrating plot    --data builtin:crimes_no_homicide --variant car --svg-kind biplot --out car.svg

Exit codes: 0 success, 2 domain error, 64 usage error.
"""
import argparse
import sys

from . import recode
from .dataio import BUILTIN_NAMES, builtin, format_recoded_csv, parse_data_spec, serialize_result
from .errors import DualScalingError
from .plot import BUILDERS, render_svg, write_atomic
from .variants import Variant, VariantConfig, run

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_data_args(p):
    p.add_argument("--data", required=True, help="CSV path or builtin:<name>")
    p.add_argument("--scale-max", type=int, help="q, the top of the 1..q rating scale")
    p.add_argument("--no-header", action="store_true", help="CSV has no header row")
    p.add_argument("--id-column", help="name (or 0-based index) of the respondent id column")


def _add_variant_args(p):
    p.add_argument("--variant", required=True, choices=[v.value for v in Variant])
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--drop-degenerate", action="store_true")


def build_parser():
    parser = _Parser(prog="dsrating", description="Dual scaling and correspondence analysis of ratings")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    a = sub.add_parser("analyze", help="run one variant and write its coordinates")
    _add_data_args(a)
    _add_variant_args(a)
    a.add_argument("--format", choices=["json", "csv"], default="json")
    a.add_argument("--out", help="output file (default: standard output)")
    a.add_argument("--svg", help="also write a figure here")
    a.add_argument("--svg-kind", choices=sorted(BUILDERS), default="biplot")

    r = sub.add_parser("recode", help="write one intermediate recoded matrix as CSV")
    _add_data_args(r)
    r.add_argument("--kind", required=True, choices=sorted(RECODINGS))
    r.add_argument("--out", help="output file (default: standard output)")

    pl = sub.add_parser("plot", help="write a figure as SVG")
    _add_data_args(pl)
    _add_variant_args(pl)
    pl.add_argument("--svg-kind", choices=sorted(BUILDERS), default="biplot")
    pl.add_argument("--scaling", choices=["standard", "principal"])
    pl.add_argument("--out", required=True)

    sub.add_parser("datasets", help="list the bundled datasets")
    return parser


def _rank(r):
    return recode.rank_rows(r)[0]


RECODINGS = {
    "t": recode.shift_counts,
    "s": lambda r: recode.reverse_counts(recode.shift_counts(r)),
    "fc": lambda r: recode.double_columns(recode.shift_counts(r),
                                          recode.reverse_counts(recode.shift_counts(r))),
    "fr": lambda r: recode.double_rows(*recode.rank_rows(r)),
    "rank": _rank,
    "rank-reversed": lambda r: recode.rank_rows(r)[1],
    "dominance": lambda r: recode.dominance(*recode.rank_rows(r)),
    "scd": recode.successive_categories,
}


def _load(args):
    id_column = args.id_column
    if id_column is not None and id_column.isdigit():
        id_column = int(id_column)
    desc = parse_data_spec(args.data, args.scale_max, not args.no_header, id_column)
    return desc.load()


def _emit(payload: bytes, out):
    if out:
        write_atomic(out, payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def cmd_analyze(args):
    r = _load(args)
    res = run(r, VariantConfig(Variant(args.variant), args.dims, args.drop_degenerate))
    payload = serialize_result(res, args.format)
    svg = None
    if args.svg:
        svg = render_svg(BUILDERS[args.svg_kind](res)).encode("utf-8")
    _emit(payload, args.out)
    if svg is not None:
        write_atomic(args.svg, svg)
    cum = res.solution.cumulative_explained[res.solution.k - 1]
    summary = f"{res.variant.value} k={res.solution.k} explained={100 * cum:.0f}%"
    if res.dropped:
        summary += " dropped=" + ",".join(res.dropped)
    # keep stdout clean for the payload when writing it there
    print(summary, file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_recode(args):
    m = RECODINGS[args.kind](_load(args))
    _emit(format_recoded_csv(m).encode("utf-8"), args.out)
    return EXIT_OK


def cmd_plot(args):
    res = run(_load(args), VariantConfig(Variant(args.variant), args.dims, args.drop_degenerate))
    builder = BUILDERS[args.svg_kind]
    spec = builder(res, args.scaling) if args.svg_kind != "biplot" else builder(res)
    write_atomic(args.out, render_svg(spec).encode("utf-8"))
    return EXIT_OK


def cmd_datasets(args):
    for name in BUILTIN_NAMES:
        r = builtin(name)
        print(f"{name} {r.n}x{r.p} q={r.q}")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "recode": cmd_recode, "plot": cmd_plot, "datasets": cmd_datasets}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except DualScalingError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
