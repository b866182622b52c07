"""Command-line interface.

One subcommand per module plus `scenario run` for end-to-end runs.
Byte-valued flags accept decimal-unit suffixes (KB, MB, GB, TB, PB,
all powers of 10). Exit codes: 0 success, 2 validation error,
3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import cachesim, columnar, joinplan, scenario as scenario_mod, tracemodel
from .pricing import RequestTally, format_usd, get_pricebook, load_pricebook
from .tracemodel import DEFAULT_ZIPF_EXPONENT, SynthSpec
from .units import parse_bytes


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _cmd_price(args) -> int:
    book = load_pricebook(args.book_file) if args.book_file else get_pricebook(args.book)
    with open(args.tally, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"tally file {args.tally}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict) or not isinstance(raw.get("counts"), dict):
        raise ValueError(f"tally file {args.tally}: expected {{\"counts\": {{kind: count}}}}")
    tally = RequestTally(counts=raw["counts"], transferred_bytes=raw.get("bytes", {}))
    cost = book.cost_of(tally)
    _print_json(
        {
            "price_book": book.book_id,
            "requests": tally.total_requests,
            "bytes": tally.total_bytes,
            "nanousd": cost,
            "usd": format_usd(cost),
        }
    )
    return 0


def _cmd_synth(args) -> int:
    spec = SynthSpec(
        records=args.records,
        size_anchors=((args.p50, 0.5), (args.p90, 0.9), (args.max, 1.0)),
        min_bytes=args.min_bytes,
        object_universe=args.objects,
        zipf_exponent=args.zipf,
        duration_ms=args.duration_ms,
    )
    trace = tracemodel.synthesize_trace(spec, args.seed)
    tracemodel.write_trace(trace, args.out)
    _print_json({"out": args.out, "records": len(trace), "seed": args.seed})
    return 0


def _load_scan_data(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"data file {path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ValueError(f"data file {path}: expected an object mapping columns to value arrays")
    return raw


def _cmd_scan(args) -> int:
    layout = columnar.load_layout(args.layout)
    select, predicates, pushdown = columnar.load_query(args.query)
    if args.data:
        data = _load_scan_data(args.data)
    else:
        data = columnar.synthesize_column_data(layout, args.seed)
    plans = {}
    for mode, flag in (("pushdown", True), ("full_scan", False)):
        plan = columnar.plan_scan(layout, data, select, predicates, pushdown=flag)
        if args.coalesce_gap is not None:
            plan = columnar.coalesce_requests(plan, args.coalesce_gap)
        plans[mode] = plan
    _print_json(
        {
            "table": layout.table,
            "rows": layout.rows,
            "mode": "pushdown" if pushdown else "full_scan",
            "survivors": len(plans["pushdown"].survivors),
            "pushdown": {
                "requests": plans["pushdown"].request_count,
                "bytes": plans["pushdown"].total_bytes,
            },
            "full_scan": {
                "requests": plans["full_scan"].request_count,
                "bytes": plans["full_scan"].total_bytes,
            },
        }
    )
    return 0


def _cmd_join(args) -> int:
    spec = joinplan.JoinSpec(
        build_bytes=args.build_bytes,
        probe_bytes=args.probe_bytes,
        workers=args.workers,
        strategy=args.strategy,
    )
    per_query = joinplan.plan_join(spec, args.request_bytes)
    params = joinplan.FleetParams(
        queries_per_day=args.queries,
        broadcast_fraction=args.broadcast_frac,
        workers=args.workers,
        build_bytes=args.build_bytes,
    )
    broadcast_bytes = joinplan.fleet_aggregate(params)
    shuffle_bytes = joinplan.fleet_aggregate(
        joinplan.FleetParams(args.queries, args.broadcast_frac, 1, args.build_bytes)
    )
    waste = joinplan.waste_fraction(args.workers)
    _print_json(
        {
            "per_query": {
                "strategy": per_query.strategy,
                "storage_bytes": per_query.storage_bytes,
                "requests": per_query.requests,
                "duplicated_bytes": per_query.duplicated_bytes,
                "network_bytes": per_query.network_bytes,
            },
            "fleet": {
                "broadcast_bytes_per_day": broadcast_bytes,
                "broadcast_requests_per_day": joinplan.fleet_api_calls(
                    broadcast_bytes, args.request_bytes
                ),
                "shuffle_bytes_per_day": shuffle_bytes,
                "shuffle_requests_per_day": joinplan.fleet_api_calls(
                    shuffle_bytes, args.request_bytes
                ),
            },
            "waste_fraction": f"{float(waste):.4f}",
        }
    )
    return 0


def _cmd_cache(args) -> int:
    trace = tracemodel.read_trace(args.trace)
    config = cachesim.CacheConfig(capacity_bytes=args.capacity, block_bytes=args.block)
    report = cachesim.simulate(trace, config)
    _print_json(
        {
            "config": {
                "capacity_bytes": config.capacity_bytes,
                "effective_capacity_bytes": config.effective_capacity_bytes,
                "block_bytes": config.block_bytes,
                "policy": config.policy,
                "fetch": config.fetch,
            },
            "report": report.to_dict(),
        }
    )
    return 0


def _cmd_scenario_run(args) -> int:
    s = scenario_mod.load_scenario(args.file)
    if args.annual:
        s = replace(s, annual=True)
    report = scenario_mod.run_scenario(s)
    sys.stdout.write(scenario_mod.render_report(report, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iocost",
        description="Cost model for cloud object-storage API calls under analytics I/O patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_price = sub.add_parser("price", help="price a request tally with a price book")
    group = p_price.add_mutually_exclusive_group(required=True)
    group.add_argument("--book", help="built-in price book id (e.g. s3-standard)")
    group.add_argument("--book-file", help="price book JSON file")
    p_price.add_argument("--tally", required=True, help="JSON file {\"counts\": {kind: count}}")
    p_price.set_defaults(func=_cmd_price)

    p_synth = sub.add_parser("synth", help="synthesize a workload trace")
    p_synth.add_argument("--records", type=int, default=100_000)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out", required=True, help="output trace path (JSONL)")
    p_synth.add_argument("--p50", type=parse_bytes, default="10KB", help="median request size")
    p_synth.add_argument("--p90", type=parse_bytes, default="1MB", help="90th percentile request size")
    p_synth.add_argument("--max", type=parse_bytes, default="100MB", help="maximum request size")
    p_synth.add_argument("--min-bytes", type=parse_bytes, default="100", help="minimum request size")
    p_synth.add_argument("--objects", type=int, default=1_000_000, help="object universe size")
    p_synth.add_argument("--zipf", type=float, default=DEFAULT_ZIPF_EXPONENT, help="popularity exponent")
    p_synth.add_argument("--duration-ms", type=int, default=86_400_000)
    p_synth.set_defaults(func=_cmd_synth)

    p_scan = sub.add_parser("scan", help="plan a columnar scan with and without pushdown")
    p_scan.add_argument("--layout", required=True, help="layout JSON file")
    p_scan.add_argument("--query", required=True, help="query JSON file")
    p_scan.add_argument("--coalesce-gap", type=parse_bytes, default=None,
                        help="merge requests separated by at most this many bytes")
    p_scan.add_argument("--data", help="column data JSON file (synthesized when omitted)")
    p_scan.add_argument("--seed", type=int, default=0, help="seed for synthesized column data")
    p_scan.set_defaults(func=_cmd_scan)

    p_join = sub.add_parser("join", help="broadcast vs shuffle join I/O at fleet scale")
    p_join.add_argument("--workers", type=int, required=True)
    p_join.add_argument("--build-bytes", type=parse_bytes, required=True)
    p_join.add_argument("--probe-bytes", type=parse_bytes, default="0")
    p_join.add_argument("--queries", type=int, required=True, help="queries per day")
    p_join.add_argument("--broadcast-frac", type=float, required=True)
    p_join.add_argument("--request-bytes", type=parse_bytes, required=True)
    p_join.add_argument("--strategy", choices=joinplan.STRATEGIES, default="broadcast")
    p_join.set_defaults(func=_cmd_join)

    p_cache = sub.add_parser("cache", help="simulate an LRU block cache over a trace")
    p_cache.add_argument("--trace", required=True, help="trace JSONL file")
    p_cache.add_argument("--capacity", type=parse_bytes, required=True)
    p_cache.add_argument("--block", type=parse_bytes, default="1MB")
    p_cache.set_defaults(func=_cmd_cache)

    p_scenario = sub.add_parser("scenario", help="scenario file operations")
    sub2 = p_scenario.add_subparsers(dest="scenario_command", required=True)
    p_run = sub2.add_parser("run", help="run a scenario file and print the cost report")
    p_run.add_argument("file", help="scenario JSON file")
    p_run.add_argument("--format", choices=("json", "table"), default="json")
    p_run.add_argument("--annual", action="store_true", help="add the x365 annual extrapolation")
    p_run.set_defaults(func=_cmd_scenario_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its message; fold --help into success
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
