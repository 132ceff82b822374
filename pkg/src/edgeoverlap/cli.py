"""Command-line front end.

Subcommands: generate, overlap, null-moments, simulate, analyze. Data goes
to stdout (or --out); logs and the resolved configuration go to stderr.
Exit codes: 0 success, 2 usage error, 1 domain or data error, reported as
one ``error: <code>: <message>`` line.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from .analysis import (AnalysisConfig, load_villages, run_analysis,
                       write_report_csv, write_report_json)
from .errors import ConfigError, EdgeOverlapError
from .generators import Family, GeneratorSpec, generate
from .graphs import load_edge_list, write_edge_list
from .metrics import average_overlap, overlap_arrays, write_per_edge_csv
from .nullmodels import (Approach, NullSpec, Variant, moments,
                         second_order_mean)
from .simulate import SimulationSpec, run_simulation, write_simulation_csv

_VARIANTS = {v.value: v for v in Variant}
_FAMILIES = {f.value: f for f in Family}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="RNG seed (default 0)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: all cores)")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format where both are supported")
    common.add_argument("--quiet", action="store_true",
                        help="suppress the config log line on stderr")
    common.add_argument("--out", default=None,
                        help="output file (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="edgeoverlap",
        description="Edge overlap metrics and random-graph null models")
    sub = parser.add_subparsers(dest="command", required=True)
    raw = argparse.RawDescriptionHelpFormatter

    g = sub.add_parser("generate", parents=[common], formatter_class=raw,
                       help="write a seeded random graph as edge-list CSV",
                       epilog="output CSV: '# n=<count>' comment, then header\n"
                              "src,dst (er, dir-er) or src,dst,weight (wrg);\n"
                              "rows sorted, byte-identical for a fixed seed")
    g.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.set_defaults(func=_cmd_generate)

    o = sub.add_parser("overlap", parents=[common], formatter_class=raw,
                       help="per-edge or averaged overlap of an edge list",
                       epilog="input CSV: header src,dst[,weight][,layer]\n"
                              "(optional for 2-column files), '#' comments\n"
                              "ignored; per-edge output CSV:\n"
                              "i,j,layer,value,undefined_reason")
    o.add_argument("--in", dest="input", required=True, metavar="FILE")
    o.add_argument("--variant", choices=sorted(_VARIANTS), default="unweighted")
    o.add_argument("--per-edge", action="store_true",
                   help="emit per-edge CSV instead of the summary")
    o.add_argument("--n", type=int, default=None,
                   help="declare the node count explicitly")
    o.set_defaults(func=_cmd_overlap)

    m = sub.add_parser("null-moments", parents=[common], formatter_class=raw,
                       help="closed-form overlap mean and variance",
                       epilog="output JSON: {mean, variance"
                              "[, second_order_mean]}")
    m.add_argument("--variant", choices=sorted(_VARIANTS), required=True)
    m.add_argument("--approach", type=int, choices=(1, 2), required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--p", type=float, required=True)
    m.add_argument("--second-order", action="store_true",
                   help="include the second-order mean correction")
    m.set_defaults(func=_cmd_null_moments)

    s = sub.add_parser("simulate", parents=[common], formatter_class=raw,
                       help="Monte Carlo check of the closed forms",
                       epilog="output CSV: variant,n,p,np,reps,sim_mean,"
                              "sim_var,\ntheory_mean_a1,theory_var_a1,"
                              "theory_mean_a2,theory_var_a2")
    s.add_argument("--variant", choices=sorted(_VARIANTS), required=True)
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--np-grid", default="5,10,20,50,100,200,300",
                   help="comma-separated average degrees (desk-scale default)")
    s.add_argument("--reps", type=int, default=200,
                   help="realizations per grid point (raise to 5000 for "
                        "publication-scale runs)")
    s.add_argument("--approach", choices=("1", "2", "both"), default="both")
    s.set_defaults(func=_cmd_simulate)

    a = sub.add_parser("analyze", parents=[common], formatter_class=raw,
                       help="stratified overlap report for village data",
                       epilog="inputs: directory of per-village edge CSVs\n"
                              "(src,dst[,weight][,layer]) plus an attribute\n"
                              "CSV node_id,sex,caste,age (empty = missing),\n"
                              "or a manifest JSON; output CSV:\n"
                              "village,layer,attribute,stratum,n,"
                              "defined_edges,undefined_edges,\n"
                              "p_hat,obs_mean,null_mean,null_sd,z")
    a.add_argument("--data", default=None, metavar="DIR",
                   help="directory of per-village edge CSVs")
    a.add_argument("--manifest", default=None, metavar="FILE",
                   help="JSON manifest listing village files")
    a.add_argument("--attrs", default=None, metavar="FILE",
                   help="node attribute CSV")
    a.add_argument("--variant", choices=("unweighted", "weighted", "both"),
                   default="unweighted")
    a.add_argument("--approach", type=int, choices=(1, 2), default=1)
    a.add_argument("--stratify", default="availability,sex,caste,age",
                   help="comma-separated attributes to stratify by")
    a.set_defaults(func=_cmd_analyze)
    return parser


@contextmanager
def _output(args):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _log_config(args) -> None:
    if args.quiet:
        return
    resolved = {k: v for k, v in sorted(vars(args).items())
                if k != "func" and v is not None}
    print(f"config: {json.dumps(resolved, sort_keys=True, default=str)}",
          file=sys.stderr)


def _cmd_generate(args) -> None:
    spec = GeneratorSpec(family=_FAMILIES[args.family], n=args.n, p=args.p,
                         seed=args.seed)
    g = generate(spec)
    with _output(args) as fh:
        write_edge_list(g, fh)


def _cmd_overlap(args) -> None:
    variant = _VARIANTS[args.variant]
    g = load_edge_list(args.input,
                       directed=variant is Variant.DIRECTED,
                       weighted=variant is Variant.WEIGHTED,
                       n=args.n)
    if args.per_edge:
        with _output(args) as fh:
            write_per_edge_csv(fh, overlap_arrays(g))
        return
    summary = average_overlap(g)
    payload = {
        "variant": variant.value,
        "n": g.n,
        "mean": summary.mean,
        "defined_edges": summary.defined_edge_count,
        "undefined_edges": summary.undefined_edge_count,
        "self_loops_dropped": g.self_loops_dropped,
    }
    if summary.mean is None:
        payload["no_defined_edges"] = True
    with _output(args) as fh:
        json.dump(payload, fh)
        fh.write("\n")


def _cmd_null_moments(args) -> None:
    spec = NullSpec(variant=_VARIANTS[args.variant],
                    approach=Approach(args.approach), n=args.n, p=args.p)
    m = moments(spec)
    payload = {"mean": m.mean, "variance": m.variance}
    if args.second_order:
        payload["second_order_mean"] = second_order_mean(spec)
    with _output(args) as fh:
        json.dump(payload, fh)
        fh.write("\n")


def _cmd_simulate(args) -> None:
    try:
        grid = tuple(float(x) / args.n for x in args.np_grid.split(","))
    except ValueError:
        raise ConfigError(f"cannot parse --np-grid {args.np_grid!r}") from None
    spec = SimulationSpec(variant=_VARIANTS[args.variant], n=args.n,
                          p_grid=grid, realizations=args.reps,
                          master_seed=args.seed)
    summary = run_simulation(spec, threads=args.threads)
    approaches = {
        "1": (Approach.TAYLOR,),
        "2": (Approach.FIXED_DENOMINATOR,),
        "both": (Approach.TAYLOR, Approach.FIXED_DENOMINATOR),
    }[args.approach]
    with _output(args) as fh:
        write_simulation_csv(fh, summary, approaches=approaches)


def _cmd_analyze(args) -> None:
    villages = load_villages(data_dir=args.data, attrs_path=args.attrs,
                             manifest=args.manifest)
    config = AnalysisConfig(
        variant=args.variant, approach=Approach(args.approach),
        stratify=tuple(s.strip() for s in args.stratify.split(",") if s.strip()))
    reports = run_analysis(villages, config, threads=args.threads)
    writer = write_report_json if args.format == "json" else write_report_csv
    with _output(args) as fh:
        writer(fh, reports)


def dispatch(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _log_config(args)
    try:
        args.func(args)
    except EdgeOverlapError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
