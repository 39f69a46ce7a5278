"""Command-line interface: ``gambitnet measure|build|filter|nulltest|simulate|meta``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 undefined statistic.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import csvio, gambit, graph, measures, npstats, nullmodel, simulate

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_UNDEFINED = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write(data: bytes, out: str | None):
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _undefined_text(res: measures.AssortativityResult):
    return res.value if res.defined else f"undefined ({res.reason})"


def cmd_measure(args):
    net = csvio.parse_edgelist_csv(args.input)
    result = {"measure": args.measure, "nodes": len(net), "edges": net.number_of_edges}
    if args.measure in (measures.NEWMAN, measures.SPEARMAN):
        res = measures.ASSORTATIVITY[args.measure](net)
        result["value"] = _undefined_text(res)
        result["defined"] = res.defined
    elif args.measure == "knn":
        curve = measures.knn_curve(net)
        result.update(per_node=curve.per_node, per_degree=curve.per_degree, slope=curve.slope, trend=curve.trend)
    elif args.measure == "richclub":
        result["per_k"] = measures.rich_club(net).per_k
    else:
        nodes = [args.node] if args.node is not None else list(net.nodes)
        for v in nodes:
            if v not in net:
                raise csvio.DataError(f"unknown node {v!r}")
        result["per_node"] = {v: measures.local_degree_difference(net, v) for v in nodes}
    params = {"measure": args.measure, "node": args.node}
    result["manifest"] = csvio.RunManifest.build("measure", params, None, [args.input])
    _write(csvio.emit_json(result), args.out)


def cmd_build(args):
    data = csvio.parse_census_csv(args.census)
    net = gambit.accumulate(data, args.weighting)
    if args.binary:
        net = graph.dichotomize(net)
    _write(csvio.edgelist_csv(net), args.out)


def cmd_filter(args):
    if not args.threshold > 0:
        raise UsageError("--threshold must be positive")
    net = csvio.parse_edgelist_csv(args.input)
    _write(csvio.edgelist_csv(graph.filter_edges(net, args.threshold)), args.out)


def cmd_nulltest(args):
    data = csvio.parse_census_csv(args.census)
    res = nullmodel.permutation_test(
        data,
        statistic=args.statistic,
        replicates=args.replicates,
        method=args.method,
        burn_in=args.burnin,
        thin=args.thin,
        seed=args.seed,
        threads=args.threads,
    )
    params = {
        "statistic": args.statistic, "method": args.method, "replicates": args.replicates,
        "burn_in": res.burn_in, "thin": res.thin,
    }
    out = {
        "statistic": res.statistic,
        "method": res.method,
        "observed": res.observed,
        "p_greater": res.p_greater,
        "p_less": res.p_less,
        "p_two_sided": res.p_two_sided,
        "replicates": res.replicates,
        "n_undefined": res.n_undefined,
        "burn_in": res.burn_in,
        "thin": res.thin,
        "seed": res.seed,
        "manifest": csvio.RunManifest.build("nulltest", params, args.seed, [args.census]),
    }
    if args.null_out:
        Path(args.null_out).write_bytes(csvio.nulls_csv(res))
    _write(csvio.emit_json(out), args.out)


def cmd_simulate(args):
    try:
        cfg = simulate.SimulationConfig(
            population=args.pop, groups_per_census=args.groups, censuses=args.censuses,
            runs=args.runs, dirichlet_alpha=args.alpha, seed=args.seed,
        )
        thresholds = [float(t) for t in args.thresholds.split(",")] if args.thresholds else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if thresholds and not all(0 < t <= 1 for t in thresholds):
        raise UsageError("--thresholds must lie in (0, 1]")
    params = cfg.as_dict()
    if thresholds:
        params["thresholds"] = thresholds
        traces = simulate.filtering_experiment(cfg, thresholds, threads=args.threads)
        body = csvio.trace_csv(traces, threshold_column=True)
        summary = csvio.summary_csv({t: simulate.summarize_trace(tr) for t, tr in traces.items()}, True)
    else:
        trace = simulate.run_simulation(cfg, threads=args.threads)
        body = csvio.trace_csv(trace)
        summary = csvio.summary_csv(simulate.summarize_trace(trace))
    manifest = csvio.emit_json(csvio.RunManifest.build("simulate", params, args.seed))
    _write(body, args.out)
    if args.summary_out:
        Path(args.summary_out).write_bytes(summary)
    if args.out:
        Path(args.out + ".manifest.json").write_bytes(manifest)
    else:
        sys.stderr.buffer.write(manifest)


def cmd_meta(args):
    records = npstats.load_records(args.dataset)
    report = npstats.meta_analysis(records)
    if args.json:
        report["manifest"] = csvio.RunManifest.build(
            "meta", {"dataset": args.dataset or "bundled:table1.csv"}, None,
            [args.dataset] if args.dataset else [],
        )
        _write(csvio.emit_json(report), args.out)
        return
    lines = [f"networks: {report['n_networks']}"]
    for c, info in report["classes"].items():
        lines.append(f"{c:14s} n={info['n']:3d} mean={info['mean']:+.3f}")
    kw = report["kruskal_wallis"]
    lines.append(f"Kruskal-Wallis H={kw['statistic']:.2f} df={kw['df']} p={kw['p_value']:.3g}")
    for rs in report["rank_sum"]:
        lines.append(
            f"rank-sum {rs['first']} vs {rs['second']}: W={rs['statistic']:g} "
            f"(complement {rs['statistic_complement']:g}) p={rs['p_value']:.3g}"
        )
    for c, sr in report["signed_rank"].items():
        lines.append(f"signed-rank {c} vs 0: V={sr['statistic']:g} n={sr['n']} p={sr['p_value']:.3g}")
    _write(("\n".join(lines) + "\n").encode("utf-8"), args.out)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--threads", type=int, default=1, help="worker threads; never changes results")
    common.add_argument("--out", help="write the result here instead of standard output")

    p = _Parser(prog="gambitnet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("measure", parents=[common], help="degree-correlation measures of an edge list")
    s.add_argument("--input", required=True)
    s.add_argument("--measure", required=True, choices=["newman", "spearman", "knn", "richclub", "localdiff"])
    s.add_argument("--node")
    s.set_defaults(func=cmd_measure)

    s = sub.add_parser("build", parents=[common], help="edge list from census data")
    s.add_argument("--census", required=True)
    s.add_argument("--weighting", choices=[gambit.COUNT, gambit.FREQUENCY], default=gambit.COUNT)
    s.add_argument("--binary", action="store_true", help="dichotomize the result")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("filter", parents=[common], help="keep edges with weight >= threshold")
    s.add_argument("--input", required=True)
    s.add_argument("--threshold", type=float, required=True)
    s.set_defaults(func=cmd_filter)

    s = sub.add_parser("nulltest", parents=[common], help="group-size-preserving permutation test")
    s.add_argument("--census", required=True)
    s.add_argument("--statistic", choices=["newman", "spearman"], default="newman")
    s.add_argument("--method", choices=[nullmodel.SWAP, nullmodel.RESAMPLE], default=nullmodel.SWAP)
    s.add_argument("--replicates", type=int, default=1000)
    s.add_argument("--burnin", type=int, help="default 1000 x number of sightings")
    s.add_argument("--thin", type=int, help="default number of sightings")
    s.add_argument("--null-out", help="CSV dump of the null distribution")
    s.set_defaults(func=cmd_nulltest)

    s = sub.add_parser("simulate", parents=[common], help="random group-membership simulation")
    s.add_argument("--pop", type=int, default=100)
    s.add_argument("--groups", type=int, default=20)
    s.add_argument("--censuses", type=int, default=20)
    s.add_argument("--runs", type=int, default=10)
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--thresholds", help="comma-separated frequency thresholds, e.g. 0.2,0.5")
    s.add_argument("--summary-out", help="per-census summary CSV")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("meta", parents=[common], help="meta-analysis of published assortativities")
    s.add_argument("--dataset", help="CSV name,size,type,assortativity,method,source (default: bundled table)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_meta)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1 or getattr(args, "replicates", 1) < 1:
        print("gambitnet: error: --threads and --replicates must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args)
    except UsageError as exc:
        print(f"gambitnet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except nullmodel.UndefinedStatisticError as exc:
        print(f"gambitnet: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (csvio.DataError, ValueError, KeyError, OSError) as exc:
        print(f"gambitnet: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
