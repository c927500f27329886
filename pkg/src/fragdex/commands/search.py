"""fragdex search: range, kNN and PSSM queries against an index."""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..errors import QueryError
from ..index.fsindex import FSIndex
from ..ingest.fasta import read_fasta
from ..ingest.synthetic import random_fragments
from ..output import write_results
from ..runlog import log_event
from ..scoring.matrix import QuasiMetric, ScoreMatrix, to_quasi_metric
from ..scoring.pssm import PSSM
from ..search.engine import batch_search, search_tables
from ..search.hits import HitList, SearchStats
from ..search.scan import check_equivalent, sequential_scan
from ..search.tables import DistanceTables, matrix_tables, pssm_tables, symmetric_tables
from ..stats.distribution import (
    ScoreDistribution,
    matrix_score_distribution,
    pssm_score_distribution,
    score_threshold_for_evalue,
    score_to_radius,
)
from .common import load_matrix, open_index, output_stream
from .config import RunConfig


@dataclass
class Query:
    query_id: str
    center: Union[str, PSSM]


@dataclass
class QueryResult:
    hits: HitList
    extra: Optional[Dict[str, Any]] = None
    distribution: Optional[ScoreDistribution] = None


def collect_queries(config: RunConfig, ix: FSIndex) -> List[Query]:
    """Queries from --pssm, --query, --query-fasta and --random, in that order.

    Raises:
        QueryError: No query given
    """
    queries: List[Query] = []
    if config.pssm is not None:
        p = PSSM.load(config.pssm)
        queries.append(Query(p.name or config.pssm.stem, p))
    for i, fragment in enumerate(config.queries, start=1):
        queries.append(Query(f"q{i}", fragment.upper()))
    if config.query_fasta is not None:
        queries.extend(Query(r.id, r.residues) for r in read_fasta(config.query_fasta))
    if config.random_queries:
        rng = np.random.default_rng(config.seed)
        fragments = random_fragments(rng, config.random_queries, ix.m, ix.store.background_freq, ix.store.alphabet)
        queries.extend(Query(f"random{i}", f) for i, f in enumerate(fragments, start=1))
    if not queries:
        raise QueryError("No query given (use --query, --query-fasta, --random or --pssm)")
    return queries


def query_tables(ix: FSIndex, q: QuasiMetric, query: Query, symmetric: bool = False) -> DistanceTables:
    """Tables for one query.

    Raises:
        QueryError: symmetric with a PSSM query
    """
    if isinstance(query.center, PSSM):
        if symmetric:
            raise QueryError("--symmetric applies to fragment queries, not PSSMs")
        return pssm_tables(query.center, ix.scheme)
    if symmetric:
        return symmetric_tables(q, query.center, ix.scheme)
    return matrix_tables(q, query.center, ix.scheme)


def evalue_radius(
    ix: FSIndex,
    matrix: ScoreMatrix,
    query: Query,
    tables: DistanceTables,
    target: float,
):
    """(score threshold, epsilon, score distribution) for a target E-value."""
    if isinstance(query.center, PSSM):
        dist = pssm_score_distribution(query.center, ix.store.background_freq, ix.n)
    else:
        dist = matrix_score_distribution(matrix, query.center, ix.store.background_freq, ix.n)
    threshold = score_threshold_for_evalue(dist, target)
    radius = score_to_radius(tables.score_offset, threshold) if threshold is not None else None
    return threshold, radius, dist


def run_query(
    ix: FSIndex,
    matrix: ScoreMatrix,
    q: QuasiMetric,
    query: Query,
    config: RunConfig,
) -> QueryResult:
    """Search one query in the configured mode, checking against a full scan with --verify.

    Raises:
        VerificationError: --verify and the index disagrees with the scan
    """
    tables = query_tables(ix, q, query, config.symmetric)
    extra = None
    distribution = None
    radius, k = config.radius, config.k
    if config.evalue is not None:
        if tables.score_offset is None:
            raise QueryError("E-value searches need the quasi-metric, not its symmetric form")
        threshold, radius, distribution = evalue_radius(ix, matrix, query, tables, config.evalue)
        extra = {"evalue": config.evalue, "threshold": threshold, "epsilon": radius}
        if radius is None:
            empty = HitList(mode="range", stats=SearchStats(frag_length=ix.m), query_id=query.query_id, center=tables.label)
            return QueryResult(empty, extra, distribution)
        k = None

    hits = search_tables(ix, tables, radius=radius, k=k, query_id=query.query_id)
    if config.verify:
        scanned = sequential_scan(
            ix.store, query.center, q, radius=radius, k=k, query_id=query.query_id, symmetric=config.symmetric
        )
        check_equivalent(hits, scanned)
    return QueryResult(hits, extra, distribution)


def _dist_path(base: Path, i: int, total: int) -> Path:
    if total == 1:
        return base
    return base.with_name(f"{base.stem}-{i}{base.suffix}")


def cmd_search(config: RunConfig) -> List[QueryResult]:
    """Run every query and write hit blocks in input order.

    Raises:
        QueryError: No mode, or more than one of --radius, --k, --evalue
    """
    modes = sum(v is not None for v in (config.radius, config.k, config.evalue))
    if modes != 1:
        raise QueryError("Give exactly one of --radius, --k or --evalue")

    matrix = load_matrix(config)
    q = to_quasi_metric(matrix)
    ix = open_index(config)
    queries = collect_queries(config, ix)

    results = batch_search(lambda query: run_query(ix, matrix, q, query, config), queries, config.workers)
    for r in results:
        log_event(
            "search",
            query=r.hits.query_id,
            mode=r.hits.mode,
            radius=r.hits.radius,
            hits=len(r.hits),
            **r.hits.stats.to_dict(),
        )

    with output_stream(config.output) as stream:
        write_results([r.hits for r in results], stream, config.output_format, [r.extra for r in results])
    if config.dist_output is not None:
        for i, r in enumerate(results, start=1):
            if r.distribution is not None:
                r.distribution.dump(_dist_path(config.dist_output, i, len(results)))
    return results
