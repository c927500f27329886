"""fragdex bench: random-query workload statistics.

For every k, each random query is first answered as a kNN search; a range
search at the resulting k-th distance follows, so both modes are compared
on the same ball.
"""

import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..index.fsindex import FSIndex
from ..ingest.synthetic import mixture_fragments, random_fragments
from ..runlog import log_event
from ..scoring.matrix import QuasiMetric, to_quasi_metric
from ..search.engine import batch_search, search_tables
from ..search.hits import HitList
from ..search.scan import check_equivalent, sequential_scan
from ..search.tables import matrix_tables, symmetric_tables
from .common import _log, load_config_mixture, load_matrix, open_index, output_stream
from .config import RunConfig

ROW_FIELDS = (
    "query", "k", "mode", "radius", "bins", "fragments", "residues",
    "residuePct", "evaluations", "hits", "overhead", "binRatio",
)


@dataclass
class BenchRow:
    """Statistics of one search."""
    query: str
    k: int
    mode: str
    radius: Optional[int]
    bins: int
    fragments: int
    residues: int
    residue_pct: float
    evaluations: int
    hits: int
    overhead: float
    bin_ratio: Optional[float] = None  # kNN bins over range bins, on range rows
    seconds: float = 0.0

    @classmethod
    def from_hits(cls, query: str, k: int, result: HitList, seconds: float) -> "BenchRow":
        s = result.stats
        return cls(
            query=query,
            k=k,
            mode=result.mode,
            radius=result.radius,
            bins=s.bins_scanned,
            fragments=s.fragments_scanned,
            residues=s.residues_scanned,
            residue_pct=s.residue_percentage,
            evaluations=s.distance_evaluations,
            hits=len(result),
            overhead=result.access_overhead,
            seconds=seconds,
        )

    def values(self) -> List[Any]:
        return [
            self.query, self.k, self.mode, self.radius, self.bins, self.fragments,
            self.residues, round(self.residue_pct, 4), self.evaluations, self.hits,
            round(self.overhead, 4), None if self.bin_ratio is None else round(self.bin_ratio, 4),
        ]


def aggregate(rows: List[BenchRow]) -> List[Dict[str, Any]]:
    """Means per (k, mode) recomputed from the rows."""
    out = []
    for key in sorted({(r.k, r.mode) for r in rows}):
        group = [r for r in rows if (r.k, r.mode) == key]
        ratios = [r.bin_ratio for r in group if r.bin_ratio is not None]
        out.append({
            "k": key[0],
            "mode": key[1],
            "queries": len(group),
            "bins": float(np.mean([r.bins for r in group])),
            "fragments": float(np.mean([r.fragments for r in group])),
            "residuePct": float(np.mean([r.residue_pct for r in group])),
            "evaluations": float(np.mean([r.evaluations for r in group])),
            "hits": float(np.mean([r.hits for r in group])),
            "overhead": float(np.mean([r.overhead for r in group])),
            "binRatio": float(np.mean(ratios)) if ratios else None,
            "seconds": float(np.sum([r.seconds for r in group])),
        })
    return out


@dataclass
class BenchReport:
    rows: List[BenchRow] = field(default_factory=list)
    verified: Optional[bool] = None

    @property
    def aggregates(self) -> List[Dict[str, Any]]:
        return aggregate(self.rows)

    def to_tsv(self) -> str:
        """Per-query rows without wall times, so identical runs give identical text."""
        lines = ["#" + "\t".join(ROW_FIELDS)]
        for row in self.rows:
            lines.append("\t".join("-" if v is None else str(v) for v in row.values()))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        return {"rows": [asdict(r) for r in self.rows], "aggregates": self.aggregates, "verified": self.verified}


def bench_queries(config: RunConfig, ix: FSIndex) -> List[str]:
    """Random queries: i.i.d. background letters, or a Dirichlet mixture when one is configured."""
    rng = np.random.default_rng(config.seed)
    if config.mixture:
        return mixture_fragments(rng, config.bench_queries, ix.m, load_config_mixture(config), ix.store.alphabet)
    return random_fragments(rng, config.bench_queries, ix.m, ix.store.background_freq, ix.store.alphabet)


def _timed(ix: FSIndex, tables, **mode) -> tuple:
    start = time.perf_counter()
    result = search_tables(ix, tables, **mode)
    return result, time.perf_counter() - start


def bench_one(
    ix: FSIndex,
    q: QuasiMetric,
    query_id: str,
    center: str,
    k: int,
    verify: bool,
    symmetric: bool = False,
) -> List[BenchRow]:
    """kNN then range at the discovered radius for one query.

    Raises:
        VerificationError: verify is set and a search disagrees with the scan
    """
    tables = (symmetric_tables if symmetric else matrix_tables)(q, center, ix.scheme)
    knn, t_knn = _timed(ix, tables, k=k, query_id=query_id)
    rows = [BenchRow.from_hits(query_id, k, knn, t_knn)]
    if verify:
        check_equivalent(knn, sequential_scan(ix.store, center, q, k=k, query_id=query_id, symmetric=symmetric))
    if knn.radius is None:
        return rows
    rng_hits, t_rng = _timed(ix, tables, radius=knn.radius, query_id=query_id)
    if verify:
        check_equivalent(rng_hits, sequential_scan(
            ix.store, center, q, radius=knn.radius, query_id=query_id, symmetric=symmetric
        ))
    row = BenchRow.from_hits(query_id, k, rng_hits, t_rng)
    row.bin_ratio = knn.stats.bins_scanned / max(rng_hits.stats.bins_scanned, 1)
    rows.append(row)
    return rows


def cmd_bench(config: RunConfig) -> BenchReport:
    """Run the benchmark workload and write per-query rows.

    Raises:
        VerificationError: --verify and any query disagrees with the scan
    """
    matrix = load_matrix(config)
    q = to_quasi_metric(matrix)
    ix = open_index(config)
    centers = bench_queries(config, ix)
    _log(config.verbose, f"{len(centers)} random queries, k in {config.bench_k}")

    report = BenchReport()
    for k in config.bench_k:
        jobs = [(f"random{i}", c) for i, c in enumerate(centers, start=1)]

        def run(job, k=k):
            return bench_one(ix, q, job[0], job[1], k, config.verify, config.symmetric)

        for rows in batch_search(run, jobs, config.workers):
            report.rows.extend(rows)
    if config.verify:
        report.verified = True

    for agg in report.aggregates:
        log_event("bench", **{key: v for key, v in agg.items() if key != "seconds"})
    with output_stream(config.output) as stream:
        stream.write(report.to_tsv())
    return report
