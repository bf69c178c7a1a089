"""Orchestration: gluing campaigns, the degree-counting argument, the 37-vertex fixture."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from . import csp, interval
from .catalogue import PointedGraph, ValidationError, extract_pointed, make_pointed, pointed_relabelling
from .extend import extendable
from .figure3 import A_VERTEX, B_VERTEX, K_SIDE, ROWS
from .glue import (
    GluingProblem,
    assemble,
    build_problem,
    enumerate_clauses,
    matrix_rows,
    packed,
    swapped,
    transpose,
    verify_solution,
)
from .graph import Graph, automorphisms, canonical_form, g6_encode, induced, is_good

log = logging.getLogger(__name__)

EXIT_OK, EXIT_MISMATCH, EXIT_VALIDATION, EXIT_IO = 0, 2, 3, 4


# degree argument ----------------------------------------------------------------


@dataclass
class DegreeRow:
    w: int
    demand: int
    capacity: int

    @property
    def margin(self) -> int:
        return self.demand - self.capacity


@dataclass
class DegreeRecord:
    n: int
    s: int
    t: int
    max_degree: int
    threshold: int
    rows: list[DegreeRow]
    applicable: bool
    note: str = ""
    vacuous: bool = False

    @property
    def closes(self) -> bool:
        if self.vacuous:
            return True
        return self.applicable and all(r.demand > r.capacity for r in self.rows)

    def failures(self) -> list[int]:
        return [r.w for r in self.rows if r.demand <= r.capacity]


def check_degree_argument(n: int, s: int = 5, t: int = 5,
                          R_values: dict[tuple[int, int], int] | None = None,
                          threshold: int = 12) -> DegreeRecord:
    """Check that no graph in R(s,t,n) lacks a degree-D vertex with >= threshold degree-D neighbours.

    D = R(s-1,t) - 1 is the largest possible degree.  If every vertex of
    degree D had fewer than ``threshold`` such neighbours, each would send at
    least D - threshold + 1 edges out of W (the set of degree-D vertices);
    the complement does the same for the other side.  The argument closes
    when that demand exceeds |W|(n - |W|) for every |W|.
    """
    R = {(4, 5): 25, (5, 4): 25}
    if R_values:
        R.update(R_values)
    D = R[(s - 1, t)] - 1
    Dc = R[(s, t - 1)] - 1
    applicable = n == 0 or n - 1 - Dc == D - 1
    vacuous = n == 0 or n - 1 - Dc > D
    note = ""
    if n - 1 - Dc > D:
        note = f"degree bounds {n - 1 - Dc}..{D} are empty: R({s},{t},{n}) has no graphs"
    elif not applicable:
        note = f"degrees not confined to {{{D - 1}, {D}}} at n={n}"
    per = D - (threshold - 1)
    per_c = Dc - (threshold - 1)
    rows = [DegreeRow(w, per * w + per_c * (n - w), w * (n - w)) for w in range(n + 1)]
    return DegreeRecord(n, s, t, D, threshold, rows, applicable, note, vacuous)


# problem identity ----------------------------------------------------------------


def problem_id(type_key: bytes, G: PointedGraph, H: PointedGraph, pi_index: int) -> str:
    return f"{type_key.decode()}:{G.source[0]}.{G.source[1]}:{H.source[0]}.{H.source[1]}:{pi_index}"


# Figure 3 fixture ---------------------------------------------------------------------


@dataclass
class FixtureRecord:
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def figure3_graphs() -> tuple[Graph, Graph, Graph, Graph]:
    F = Graph.from_matrix(ROWS)
    G = induced(F, F.neighbours(B_VERTEX))
    H = induced(F, F.neighbours(A_VERTEX))
    K = induced(F, K_SIDE)
    return F, G, H, K


def figure3_problem() -> tuple[GluingProblem, int, int]:
    """The fixture as a gluing problem, its expected cross matrix, and the pi index."""
    F, G, H, K = figure3_graphs()
    g_vertices = F.neighbours(B_VERTEX)
    h_vertices = F.neighbours(A_VERTEX)
    a_in_G = g_vertices.index(A_VERTEX)
    b_in_H = h_vertices.index(B_VERTEX)
    sig_g, key_g = pointed_relabelling(G, a_in_G)
    sig_h, key_h = pointed_relabelling(H, b_in_H)
    pg_G = PointedGraph(G.permute(sig_g), G.degree(a_in_G), key_g, (0, a_in_G))
    pg_H = PointedGraph(H.permute(sig_h), H.degree(b_in_H), key_h, (1, b_in_H))
    d, dp = pg_G.d, pg_G.dprime
    pi = [0] * d
    for x in K_SIDE:
        pi[sig_h[h_vertices.index(x)]] = sig_g[g_vertices.index(x)]
    autos = automorphisms(pg_G.type_graph())
    pi_index = autos.index(tuple(pi))
    p = build_problem(pg_G, pg_H, pi, 5, 5, label=problem_id(key_g, pg_G, pg_H, pi_index))
    at_g = {sig_g[g_vertices.index(x)]: x for x in g_vertices}
    at_h = {sig_h[h_vertices.index(y)]: y for y in h_vertices}
    m = 0
    for i in range(dp):
        for j in range(dp):
            if F.has_edge(at_g[d + 1 + i], at_h[d + 1 + j]):
                m |= 1 << (i * dp + j)
    return p, m, pi_index


def fixture_figure3(engines: bool = True) -> FixtureRecord:
    rec = FixtureRecord()
    F, G, H, K = figure3_graphs()
    rec.checks["G in R(4,5,24)"] = G.n == 24 and is_good(G, 4, 5)
    rec.checks["H in R(4,5,24)"] = H.n == 24 and is_good(H, 4, 5)
    rec.checks["K in R(3,5,11)"] = K.n == 11 and is_good(K, 3, 5)
    rec.checks["F in R(5,5,37)"] = F.n == 37 and is_good(F, 5, 5)
    rec.checks["F not extendable"] = not extendable(F, 5, 5)
    p, m, pi_index = figure3_problem()
    rec.details["pi_index"] = pi_index
    rec.details["M"] = matrix_rows(m, p.dprime)
    rec.checks["assembled M is F"] = canonical_form(F).bytes == canonical_form(assemble(p, m)).bytes
    rec.checks["verify_solution(M)"] = verify_solution(p, m)
    if engines:
        cs = enumerate_clauses(p)
        by_interval = interval.search(p, cs=cs)
        by_csp = csp.solve(p, cs=cs)
        rec.details["solutions"] = len(by_interval)
        rec.checks["interval engine finds M"] = m in by_interval
        rec.checks["csp engine finds M"] = m in by_csp
        rec.checks["engines agree"] = by_interval == by_csp
        sw = swapped(p)
        rec.checks["swapped roles give M^T"] = transpose(m, p.dprime) in csp.solve(sw)
    return rec


# campaigns -------------------------------------------------------------------------


@dataclass
class CampaignSpec:
    s: int = 5
    t: int = 5
    catalogue: str = ""  # graph6 file of R(s-1, t, n) graphs
    d_min: int = 0
    d_max: int = 64
    types: tuple[str, ...] = ()  # restrict to these graph6 type keys
    engine: str = "both"
    sample: int = 0  # 0 = exhaustive
    seed: int = 0
    out: str = "campaign"
    shard: int = 0
    shards: int = 1
    jobs: int = 1

    def __post_init__(self) -> None:
        if not 0 <= self.shard < self.shards:
            raise ValueError(f"shard {self.shard} not in 0..{self.shards - 1}")
        if self.engine not in ("interval", "csp", "both"):
            raise ValueError(f"unknown engine {self.engine!r}")


@dataclass
class CampaignReport:
    problems: int = 0
    failed: int = 0
    solutions: int = 0
    solutions_noniso: int = 0
    mismatches: int = 0
    per_d: dict[int, dict[str, int]] = field(default_factory=dict)
    largest_type: dict[str, object] = field(default_factory=dict)
    seed: int = 0
    blocks: int = 0

    def to_json(self) -> str:
        d = asdict(self)
        d["per_d"] = {str(k): v for k, v in sorted(self.per_d.items())}
        return json.dumps(d, indent=2, sort_keys=True)


@dataclass(frozen=True)
class Block:
    """All problems sharing one type K and one automorphism pi."""

    type_key: bytes
    pi_index: int
    pairs: tuple[tuple[int, int], ...]  # indices into the type's pointed list

    @property
    def name(self) -> str:
        h = hashlib.sha1(self.type_key).hexdigest()[:16]
        return f"{h}_{self.pi_index}"


def load_pointed(spec: CampaignSpec) -> dict[bytes, list[PointedGraph]]:
    from .catalogue import group_by_type, read_graph6_file

    graphs = read_graph6_file(spec.catalogue)
    if len({g.n for g in graphs}) > 1:
        raise ValidationError("campaign catalogue must hold graphs of a single order")
    pointed = []
    for idx, g in enumerate(graphs):
        if not is_good(g, spec.s - 1, spec.t):
            raise ValidationError(f"catalogue graph {idx} is not in R({spec.s - 1},{spec.t})")
        for a in range(g.n):
            if spec.d_min <= g.degree(a) <= spec.d_max:
                pg = make_pointed(g, a, idx)
                if not spec.types or pg.type_key.decode() in spec.types:
                    pointed.append(pg)
    return group_by_type(pointed)


BLOCK_PAIRS = 64  # checkpoint granularity


def plan_blocks(spec: CampaignSpec, groups: dict[bytes, list[PointedGraph]]) -> list[Block]:
    """Deterministic list of blocks; sampling and sharding applied here."""
    universe: list[tuple[bytes, int, int, int]] = []
    autos = {key: len(automorphisms(pgs[0].type_graph())) for key, pgs in groups.items()}
    keys = sorted(groups)
    if spec.sample:
        rng = random.Random(spec.seed)
        weights = [len(groups[k]) ** 2 * autos[k] for k in keys]
        chosen = set()
        total = sum(weights)
        limit = min(spec.sample, total)
        while len(chosen) < limit:
            k = rng.choices(keys, weights)[0]
            n = len(groups[k])
            chosen.add((k, rng.randrange(autos[k]), rng.randrange(n), rng.randrange(n)))
        universe = sorted(chosen)
    else:
        universe = [(k, pi, i, j) for k in keys for pi in range(autos[k])
                    for i in range(len(groups[k])) for j in range(len(groups[k]))]
    blocks: dict[tuple[bytes, int], list[tuple[int, int]]] = {}
    for pos, (k, pi, i, j) in enumerate(universe):
        if pos % spec.shards == spec.shard:
            blocks.setdefault((k, pi), []).append((i, j))
    return [Block(k, pi, tuple(pairs[c:c + BLOCK_PAIRS]))
            for (k, pi), pairs in sorted(blocks.items()) for c in range(0, len(pairs), BLOCK_PAIRS)]


@dataclass
class BlockResult:
    name: str
    problems: int
    failed: int
    per_d: dict[int, list[int]]
    mismatches: list[dict]
    lines: list[str]
    graphs: list[str]  # graph6 of canonical forms of assembled solutions


def run_block(spec: CampaignSpec, block: Block, pointed: Sequence[PointedGraph]) -> BlockResult:
    pi = automorphisms(pointed[0].type_graph())[block.pi_index]
    res = BlockResult(block.name, 0, 0, {}, [], [], [])
    for i, j in block.pairs:
        G, H = pointed[i], pointed[j]
        p = build_problem(G, H, pi, spec.s, spec.t, problem_id(block.type_key, G, H, block.pi_index), check=False)
        cs = enumerate_clauses(p)
        sols = None
        if spec.engine in ("interval", "both"):
            sols = interval.search(p, cs=cs)
        if spec.engine in ("csp", "both"):
            other = csp.solve(p, cs=cs)
            if sols is not None and other != sols:
                res.mismatches.append({
                    "problem": p.label, "G": g6_encode(G.g).decode(), "H": g6_encode(H.g).decode(),
                    "d": p.d, "pi": list(pi), "s": p.s, "t": p.t,
                    "interval": sorted(packed(m, p.dprime) for m in sols),
                    "csp": sorted(packed(m, p.dprime) for m in other),
                })
            sols = other if sols is None else sols
        res.problems += 1
        row = res.per_d.setdefault(p.d, [0, 0, 0])
        row[0] += 1
        if not sols:
            res.failed += 1
            row[1] += 1
        row[2] += len(sols)
        for m in sorted(sols):
            res.lines.append(json.dumps({"problem": p.label, "dprime": p.dprime, "m": packed(m, p.dprime)}, sort_keys=True))
            res.graphs.append(canonical_form(assemble(p, m)).bytes.decode())
    return res


def _run_block_args(args) -> BlockResult:
    return run_block(*args)


class Mismatch(RuntimeError):
    pass


def run_campaign(spec: CampaignSpec) -> CampaignReport:
    """Run (or resume) a campaign; results land in ``spec.out``.

    Each finished block is written to ``blocks/<name>.json`` and listed in
    ``manifest.txt``; a rerun skips listed blocks.  The final solution
    stream and report are rebuilt from the block files, so they do not
    depend on worker count or interruption.
    """
    t0, c0 = time.time(), time.process_time()
    out = Path(spec.out)
    (out / "blocks").mkdir(parents=True, exist_ok=True)
    manifest = out / "manifest.txt"
    done = set(manifest.read_text().split()) if manifest.exists() else set()

    groups = load_pointed(spec)
    blocks = plan_blocks(spec, groups)
    todo = [b for b in blocks if b.name not in done]
    work = [(spec, b, groups[b.type_key]) for b in todo]

    def finish(res: BlockResult) -> None:
        tmp = out / "blocks" / f"{res.name}.json.tmp"
        tmp.write_text(json.dumps(asdict(res), sort_keys=True))
        os.replace(tmp, out / "blocks" / f"{res.name}.json")
        with open(manifest, "a") as fh:
            fh.write(res.name + "\n")
        if res.mismatches:
            (out / "mismatch.json").write_text(json.dumps(res.mismatches, indent=2, sort_keys=True))
            raise Mismatch(f"engine mismatch on {res.mismatches[0]['problem']}")

    if spec.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as ex:
            for res in ex.map(_run_block_args, work):
                finish(res)
    else:
        for w in work:
            finish(run_block(*w))

    report = merge_blocks(out, blocks, groups)
    report.seed = spec.seed
    (out / "report.json").write_text(report.to_json() + "\n")
    timing = {"wall_seconds": round(time.time() - t0, 3), "cpu_seconds": round(time.process_time() - c0, 3),
              "blocks_run": len(todo), "jobs": spec.jobs}
    (out / "timing.json").write_text(json.dumps(timing, sort_keys=True) + "\n")
    return report


def merge_blocks(out: Path, blocks: Sequence[Block], groups: dict[bytes, list[PointedGraph]]) -> CampaignReport:
    report = CampaignReport(blocks=len(blocks))
    lines: list[str] = []
    noniso: set[str] = set()
    for b in blocks:
        data = json.loads((out / "blocks" / f"{b.name}.json").read_text())
        report.problems += data["problems"]
        report.failed += data["failed"]
        report.mismatches += len(data["mismatches"])
        for d, (n, f, s) in data["per_d"].items():
            row = report.per_d.setdefault(int(d), {"problems": 0, "failed": 0, "solutions": 0})
            row["problems"] += n
            row["failed"] += f
            row["solutions"] += s
        lines.extend(data["lines"])
        noniso.update(data["graphs"])
    lines.sort()
    report.solutions = len(lines)
    report.solutions_noniso = len(noniso)
    if groups:
        key = max(groups, key=lambda k: (len(groups[k]), k))
        report.largest_type = {"type": key.decode(), "pointed": len(groups[key]),
                               "order": groups[key][0].d,
                               "edges": groups[key][0].type_graph().edge_count()}
    with open(out / "solutions.jsonl", "w") as fh:
        for line in lines:
            fh.write(line + "\n")
    return report


def pointed_lines(graphs: Sequence[Graph]) -> Iterator[str]:
    """One JSON line per pointed graph: source, degree, type."""
    for idx, g in enumerate(graphs):
        for pg in extract_pointed(g, idx):
            yield json.dumps({"graph": idx, "vertex": pg.source[1], "d": pg.d,
                              "type": pg.type_key.decode(), "g6": g6_encode(pg.g).decode()})
