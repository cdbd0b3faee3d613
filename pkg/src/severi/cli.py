"""Command-line front end: a thin client over the service API.

Subcommands: compute, table, gw, verify, cache, serve.  Exit codes: 0 success,
1 internal/check failure, 2 argument error, 3 resource limit, 4 cache format
error.  Data output (stdout) is deterministic byte-for-byte across identical
invocations; timing/memo metadata goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx

from .client import ServiceClient, ServiceError

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_ARGUMENT = 2
EXIT_RESOURCE = 3
EXIT_CACHE = 4

_CODE_TO_EXIT = {"argument": EXIT_ARGUMENT, "resource": EXIT_RESOURCE, "cache": EXIT_CACHE}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", help="base URL of a running service (default: in-process)")
    common.add_argument("--cache", help="cache file: imported before, exported after")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--no-prune-genus", action="store_true",
                        help="disable the arithmetic-genus pruning optimization")
    common.add_argument("--max-upsilon", type=int, default=None,
                        help="resource limit: refuse keys with upsilon above this")
    common.add_argument("--quiet", action="store_true", help="suppress the stderr meta line")

    parser = argparse.ArgumentParser(prog="severi",
                                     description="Exact curve counts on rational ruled surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="one Severi degree")
    p.add_argument("--surface", required=True, help="f<n> or p2")
    p.add_argument("--class", dest="class_spec", help="aS+bF, a,b (see --basis), or dL")
    p.add_argument("--degree", type=int, help="plane degree shorthand")
    p.add_argument("--basis", choices=("sf", "ef"), default="sf")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--alpha", default="", help="assigned contacts, e.g. 1:2,3:1")
    p.add_argument("--beta", default=None, help="unassigned contacts; default: budget * e1")
    p.add_argument("--variant", choices=("all", "irr"), default="all")

    p = sub.add_parser("table", parents=[common], help="genus table for one class")
    p.add_argument("--surface", required=True)
    p.add_argument("--class", dest="class_spec")
    p.add_argument("--degree", type=int)
    p.add_argument("--basis", choices=("sf", "ef"), default="sf")
    p.add_argument("--genus-min", type=int, default=None)
    p.add_argument("--genus-max", type=int, default=None)

    p = sub.add_parser("gw", parents=[common], help="Gromov-Witten invariant of F_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="class_spec", required=True, help="aE+bF or a,b in the (E,F) basis")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--points", default="auto", help="point insertions: auto or a count")
    p.add_argument("--insert", action="append", default=[],
                   help="extra insertion: divisor:a,b | point | fundamental (repeatable)")

    p = sub.add_parser("verify", parents=[common], help="run a validation suite")
    p.add_argument("--suite", choices=("all", "exp", "ab", "2skf", "plane"), default="all")
    p.add_argument("--grid", default="", help="size overrides, e.g. d=5,ups=6")

    p = sub.add_parser("cache", parents=[common], help="memo-table management")
    cache_sub = p.add_subparsers(dest="cache_command", required=True)
    cache_sub.add_parser("stat", parents=[common])
    pc = cache_sub.add_parser("export", parents=[common])
    pc.add_argument("--surface", required=True)
    pc.add_argument("--out", help="output path (default stdout)")
    pc = cache_sub.add_parser("import", parents=[common])
    pc.add_argument("path", help="cache file to load, or - for stdin")

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8732)

    return parser


def _options(args) -> dict:
    return {"prune_genus": not args.no_prune_genus, "max_upsilon": args.max_upsilon}


def _parse_grid(text: str) -> dict[str, int]:
    grid: dict[str, int] = {}
    if not text:
        return grid
    for chunk in text.split(","):
        key, sep, value = chunk.partition("=")
        if not sep:
            raise ServiceError("argument", f"bad --grid entry {chunk!r}", 0)
        try:
            grid[key.strip()] = int(value)
        except ValueError:
            raise ServiceError("argument", f"bad --grid entry {chunk!r}", 0) from None
    return grid


def _meta_line(data: dict, quiet: bool):
    meta = data.get("meta")
    if meta and not quiet:
        print(
            f"[{meta['elapsed_ms']:.1f} ms, memo {meta['memo_entries']} entries, "
            f"{meta['memo_hits']} hits]",
            file=sys.stderr,
        )


def _emit_json(payload: dict):
    print(json.dumps(payload, indent=2))


def _cache_import(client: ServiceClient, path: str):
    file = Path(path)
    if file.exists():
        client.post("/v1/cache/import", {"text": file.read_text(encoding="utf-8")})


def _cache_export(client: ServiceClient, path: str, surface: str):
    data = client.post("/v1/cache/export", {"surface": surface})
    Path(path).write_text(data["text"], encoding="utf-8")


def _run_compute(client: ServiceClient, args) -> int:
    payload = {
        "surface": args.surface,
        "class": args.class_spec,
        "degree": args.degree,
        "basis": args.basis,
        "genus": args.genus,
        "alpha": args.alpha,
        "beta": args.beta,
        "variant": args.variant,
        "options": _options(args),
    }
    if args.cache:
        _cache_import(client, args.cache)
    data = client.post("/v1/compute", payload)
    record = data["record"]
    if args.format == "text":
        print(record["value"])
    elif args.format == "csv":
        print("surface,class_sf,class_ef,genus,alpha,beta,variant,value")
        print(",".join(str(record[f] if record[f] is not None else "")
                       for f in ("surface", "class_sf", "class_ef", "genus",
                                 "alpha", "beta", "variant", "value")))
    else:
        _emit_json({"schema_version": record["schema_version"], "records": [record]})
    _meta_line(data, args.quiet)
    if args.cache:
        _cache_export(client, args.cache, args.surface)
    return EXIT_OK


def _run_table(client: ServiceClient, args) -> int:
    payload = {
        "surface": args.surface,
        "class": args.class_spec,
        "degree": args.degree,
        "basis": args.basis,
        "genus_min": args.genus_min,
        "genus_max": args.genus_max,
        "threads": args.threads,
        "options": _options(args),
    }
    if args.cache:
        _cache_import(client, args.cache)
    data = client.post("/v1/table", payload)
    rows = data["rows"]
    if args.format == "text":
        label = data["class_sf"] if data["class_ef"] is None \
            else f"{data['class_sf']} (= {data['class_ef']})"
        print(f"{data['surface']} {label}")
        for row in rows:
            total, irr = row["total"], row["irreducible"]
            shown = total if total == irr else f"{total} ({irr})"
            print(f"g={row['genus']}: {shown}")
    elif args.format == "csv":
        print("genus,total,irreducible")
        for row in rows:
            print(f"{row['genus']},{row['total']},{row['irreducible']}")
    else:
        _emit_json({k: data[k] for k in ("schema_version", "surface", "class_sf", "class_ef", "rows")})
    _meta_line(data, args.quiet)
    if args.cache:
        _cache_export(client, args.cache, args.surface)
    return EXIT_OK


def _run_gw(client: ServiceClient, args) -> int:
    if args.points == "auto":
        points = "auto"
    else:
        try:
            points = int(args.points)
        except ValueError:
            raise ServiceError("argument", f"--points must be auto or an integer, got {args.points!r}", 0) from None
    insertions = []
    for spec in args.insert:
        kind, _, rest = spec.partition(":")
        if kind == "divisor":
            insertions.append({"kind": "divisor", "divisor": rest})
        elif kind in ("point", "fundamental") and not rest:
            insertions.append({"kind": kind})
        else:
            raise ServiceError("argument", f"bad --insert {spec!r}", 0)
    payload = {
        "n": args.n,
        "class": args.class_spec,
        "genus": args.genus,
        "points": points,
        "insertions": insertions,
        "options": _options(args),
    }
    if args.cache:
        _cache_import(client, args.cache)
    data = client.post("/v1/gw", payload)
    record = data["record"]
    if args.format == "text":
        print(record["value"])
    elif args.format == "csv":
        print("n,class_ef,genus,points,value")
        print(f"{record['n']},{record['class_ef']},{record['genus']},{record['points']},{record['value']}")
    else:
        _emit_json({"schema_version": record["schema_version"], "records": [record]})
    _meta_line(data, args.quiet)
    if args.cache:
        _cache_export(client, args.cache, f"f{args.n % 2}")
    return EXIT_OK


def _run_verify(client: ServiceClient, args) -> int:
    payload = {"suite": args.suite, "grid": _parse_grid(args.grid), "options": _options(args)}
    data = client.post("/v1/verify", payload)
    if args.format == "json":
        _emit_json({k: data[k] for k in ("schema_version", "suite", "passed", "reports")})
    else:
        for report in data["reports"]:
            status = "PASS" if report["passed"] else "FAIL"
            print(f"{status} {report['name']} ({report['checked']} checks)")
            for failure in report["failures"]:
                print(f"  mismatch: {failure['description']}: {failure['lhs']} != {failure['rhs']}")
    _meta_line(data, args.quiet)
    return EXIT_OK if data["passed"] else EXIT_INTERNAL


def _run_cache(client: ServiceClient, args) -> int:
    if args.cache_command == "stat":
        data = client.get("/v1/cache/stat")
        if args.format == "json":
            _emit_json(data)
        else:
            print(f"entries: {data['entries']}")
            print(f"hits: {data['hits']}")
            print(f"computes: {data['computes']}")
            for surface, count in data["by_surface"].items():
                print(f"  {surface}: {count}")
        return EXIT_OK
    if args.cache_command == "export":
        data = client.post("/v1/cache/export", {"surface": args.surface})
        if args.out:
            Path(args.out).write_text(data["text"], encoding="utf-8")
        else:
            sys.stdout.write(data["text"])
        return EXIT_OK
    text = sys.stdin.read() if args.path == "-" else Path(args.path).read_text(encoding="utf-8")
    data = client.post("/v1/cache/import", {"text": text})
    print(f"loaded {data['loaded']} entries for {data['surface']}")
    return EXIT_OK


def run(args) -> int:
    if args.command == "serve":
        import uvicorn

        from .engine import SeveriEngine
        from .service import create_app

        engine = SeveriEngine(prune_genus=not args.no_prune_genus, max_upsilon=args.max_upsilon)
        app = create_app(engine)
        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    with ServiceClient(args.server) as client:
        if args.command == "compute":
            return _run_compute(client, args)
        if args.command == "table":
            return _run_table(client, args)
        if args.command == "gw":
            return _run_gw(client, args)
        if args.command == "verify":
            return _run_verify(client, args)
        if args.command == "cache":
            return _run_cache(client, args)
    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except ServiceError as exc:
        print(f"error ({exc.code}): {exc.message}", file=sys.stderr)
        return _CODE_TO_EXIT.get(exc.code, EXIT_INTERNAL)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except httpx.HTTPError as exc:
        print(f"error: cannot reach the service: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
