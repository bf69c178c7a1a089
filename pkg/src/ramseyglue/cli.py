"""Command-line interface.

    ramseyglue generate --s 3 --t 5 --nmax 13 --out cat/
    ramseyglue stats cat/r3_5_*.g6
    ramseyglue ingest data/r45_24.g6 --s 4 --t 5
    ramseyglue pointed cat/r3_4_8.g6 --out pointed.jsonl
    ramseyglue glue cat/r3_4_8.g6 --g 0.3 --h 1.2 --pi 0 --s 4 --t 4
    ramseyglue campaign cat/r3_4_8.g6 --s 4 --t 4 --engine both --out run/
    ramseyglue extend cat/r3_5_13.g6 --s 3 --t 5
    ramseyglue check-degree --n 48
    ramseyglue fixture

Exit codes: 0 success, 2 engine mismatch, 3 validation failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from pathlib import Path

from . import catalogue as cat
from . import csp, interval
from .extend import one_point_extensions
from .glue import build_problem, enumerate_clauses, solution_record
from .graph import automorphisms, g6_encode, is_good
from .pipeline import (
    EXIT_IO,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_VALIDATION,
    CampaignSpec,
    Mismatch,
    check_degree_argument,
    fixture_figure3,
    pointed_lines,
    problem_id,
    run_campaign,
)


def _open_out(path: str | None):
    return open(path, "w") if path else contextlib.nullcontext(sys.stdout)


def cmd_generate(args) -> int:
    c = cat.generate(args.s, args.t, args.nmax, jobs=args.jobs)
    if args.out:
        cat.save(c, args.out)
    for n, k in c.counts().items():
        print(f"R({args.s},{args.t},{n})\t{k}")
    print(f"total(n>=1)\t{c.total() - len(c.levels.get(0, []))}")
    return EXIT_OK


def _read_all(paths: list[str]):
    graphs = []
    for p in paths:
        graphs.extend(cat.read_graph6_file(p))
    return graphs


def cmd_stats(args) -> int:
    graphs = _read_all(args.files)
    rows = cat.stats_table(graphs)
    print("e\ti3\ti4\tc3\tdelta\tDelta\tcount")
    for r in rows:
        print(r.format())
    return EXIT_OK


def _g6_files(paths: list[str]) -> list[Path]:
    out = []
    for p in map(Path, paths):
        out.extend(sorted(p.glob("*.g6")) if p.is_dir() else [p])
    return out


def cmd_ingest(args) -> int:
    files = _g6_files(args.paths)
    c = cat.ingest(files, args.s, args.t, dedup=args.dedup)
    for n, k in c.counts().items():
        print(f"R({args.s},{args.t},{n})\t{k}\tvalidated")
    if args.out:
        cat.save(c, args.out)
    return EXIT_OK


def cmd_pointed(args) -> int:
    graphs = _read_all(args.files)
    if args.out:
        with open(args.out, "w") as fh:
            for line in pointed_lines(graphs):
                fh.write(line + "\n")
    print("d\ttypes\tcount")
    for row in cat.pointed_table(graphs):
        print(f"{row.d}\t{row.types}\t{row.count}")
    return EXIT_OK


def _parse_ref(s: str) -> tuple[int, int]:
    g, v = s.split(".")
    return int(g), int(v)


def cmd_glue(args) -> int:
    graphs = cat.read_graph6_file(args.catalogue)
    gi, ga = _parse_ref(args.g)
    hi, hb = _parse_ref(args.h)
    G = cat.make_pointed(graphs[gi], ga, gi)
    H = cat.make_pointed(graphs[hi], hb, hi)
    autos = automorphisms(G.type_graph())
    if not 0 <= args.pi < len(autos):
        print(f"pi index must be in 0..{len(autos) - 1}", file=sys.stderr)
        return EXIT_VALIDATION
    p = build_problem(G, H, autos[args.pi], args.s, args.t, problem_id(G.type_key, G, H, args.pi))
    cs = enumerate_clauses(p)
    sols = {}
    if args.engine in ("interval", "both"):
        sols["interval"] = interval.search(p, cs=cs)
    if args.engine in ("csp", "both"):
        sols["csp"] = csp.solve(p, cs=cs)
    results = list(sols.values())
    if len(results) == 2 and results[0] != results[1]:
        print(f"engine mismatch on {p.label}", file=sys.stderr)
        return EXIT_MISMATCH
    with _open_out(args.out) as fh:
        for m in sorted(results[0]):
            fh.write(solution_record(p, m) + "\n")
    print(f"{p.label}\td={p.d}\tdprime={p.dprime}\tclauses={len(cs.clique)}+{len(cs.indep)}\tsolutions={len(results[0])}",
          file=sys.stderr)
    return EXIT_OK


def cmd_campaign(args) -> int:
    spec = CampaignSpec(
        s=args.s, t=args.t, catalogue=args.catalogue, d_min=args.d[0], d_max=args.d[1],
        types=tuple(args.type or ()), engine=args.engine, sample=args.sample, seed=args.seed,
        out=args.out, shard=args.shard[0], shards=args.shard[1], jobs=args.jobs,
    )
    try:
        report = run_campaign(spec)
    except Mismatch as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MISMATCH
    print(report.to_json())
    return EXIT_MISMATCH if report.mismatches else EXIT_OK


def cmd_extend(args) -> int:
    graphs = _read_all(args.files)
    total = 0
    with _open_out(args.out) as fh:
        for idx, g in enumerate(graphs):
            if not is_good(g, args.s, args.t):
                print(f"graph {idx} is not in R({args.s},{args.t})", file=sys.stderr)
                return EXIT_VALIDATION
            ext = one_point_extensions(g, args.s, args.t)
            total += len(ext)
            if args.out:
                for h in ext:
                    fh.write(g6_encode(h).decode() + "\n")
            else:
                print(f"{idx}\t{len(ext)}")
    print(f"extensions\t{total}", file=sys.stderr)
    return EXIT_OK


def cmd_check_degree(args) -> int:
    rec = check_degree_argument(args.n, args.s, args.t)
    print("|W|\tdemand\tcapacity\tmargin")
    for r in rec.rows:
        print(f"{r.w}\t{r.demand}\t{r.capacity}\t{r.margin}")
    if rec.note:
        print(rec.note)
    print("closes" if rec.closes else f"does not close; failing |W|: {rec.failures()}")
    return EXIT_OK if rec.closes else EXIT_VALIDATION


def cmd_fixture(args) -> int:
    rec = fixture_figure3()
    for name, ok in rec.checks.items():
        print(f"{'PASS' if ok else 'FAIL'}\t{name}")
    print(json.dumps(rec.details, indent=1))
    return EXIT_OK if rec.ok else EXIT_VALIDATION


def _range(s: str) -> tuple[int, int]:
    if "-" in s:
        lo, hi = s.split("-")
        return int(lo), int(hi)
    return int(s), int(s)


def _shard(s: str) -> tuple[int, int]:
    i, n = s.split("/")
    return int(i), int(n)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ramseyglue", description=__doc__.split("\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def st(p, s=5, t=5):
        p.add_argument("--s", type=int, default=s)
        p.add_argument("--t", type=int, default=t)

    p = sub.add_parser("generate", help="isomorph-free R(s,t,n) catalogue by one-point extension")
    st(p, 3, 5)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="edge-class statistics table")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("ingest", help="validate graph6 files as members of R(s,t)")
    st(p, 4, 5)
    p.add_argument("paths", nargs="+")
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("pointed", help="pointed graphs and per-degree type counts")
    p.add_argument("files", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pointed)

    p = sub.add_parser("glue", help="solve a single gluing problem")
    st(p)
    p.add_argument("catalogue")
    p.add_argument("--g", required=True, help="graph.vertex for (G, a)")
    p.add_argument("--h", required=True, help="graph.vertex for (H, b)")
    p.add_argument("--pi", type=int, default=0, help="automorphism index of K")
    p.add_argument("--engine", choices=("interval", "csp", "both"), default="both")
    p.add_argument("--out")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("campaign", help="run many gluing problems with checkpointing")
    st(p)
    p.add_argument("catalogue")
    p.add_argument("--d", type=_range, default=(0, 64), help="degree range, e.g. 6-9")
    p.add_argument("--type", action="append", help="restrict to a K type (graph6)")
    p.add_argument("--engine", choices=("interval", "csp", "both"), default="both")
    p.add_argument("--sample", type=int, default=0, help="number of random problems (0 = all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shard", type=_shard, default=(0, 1), help="i/N")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="campaign")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("extend", help="one-point extensions")
    st(p)
    p.add_argument("files", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("check-degree", help="degree-counting argument for R(s,t,n)")
    st(p)
    p.add_argument("--n", type=int, default=48)
    p.set_defaults(func=cmd_check_degree)

    p = sub.add_parser("fixture", help="verify the 37-vertex example gluing")
    p.set_defaults(func=cmd_fixture)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:  # includes ValidationError and InvalidProblem
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
