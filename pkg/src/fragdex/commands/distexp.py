"""fragdex distexp: distance-exponent estimates for a dataset or a generated point set."""

import json
from typing import Any, Dict

import numpy as np

from ..distexp.estimators import estimate_both
from ..distexp.generators import GENERATORS, generate
from ..distexp.sampling import sample_distance_cdf
from ..errors import EstimationError
from ..runlog import log_event
from ..scoring.matrix import to_quasi_metric
from .common import _log, load_matrix, load_store, output_stream
from .config import RunConfig


def _dataset(config: RunConfig, rng: np.random.Generator):
    if config.generator is not None:
        points = generate(config.generator, rng, config.points, config.dim)
        return points, config.point_metric or GENERATORS[config.generator].metric, config.generator
    if config.points_file is not None:
        points = np.atleast_2d(np.loadtxt(config.points_file, dtype=np.float64, ndmin=2))
        return points, config.point_metric or "l2", config.points_file.name
    if config.fasta is not None:
        return load_store(config), to_quasi_metric(load_matrix(config)), config.fasta.name
    raise EstimationError("Give a dataset: --generator, --points-file or --fasta")


def cmd_distexp(config: RunConfig) -> Dict[str, Any]:
    """Sample the distance CDF and run both estimators.

    Raises:
        EstimationError: No dataset, too few points, or both estimators failed
    """
    rng = np.random.default_rng(config.seed)
    data, metric, source = _dataset(config, rng)
    cdf = sample_distance_cdf(data, metric, pair_budget=config.pair_budget, rng=rng)
    _log(config.verbose, f"{cdf.pairs_evaluated} pairs from {cdf.points_sampled} points")
    if config.cdf_output is not None:
        cdf.dump(config.cdf_output)

    result = estimate_both(
        cdf,
        percentile_cap=config.percentile_cap,
        min_pair_count=config.min_pair_count,
        candidate_exponents=config.candidate_exponents,
        window_levels=config.window_levels,
        refine=config.refine,
    )
    if result["loglog"] is None and result["monomial"] is None:
        raise EstimationError(f"Both estimators failed: {result['loglogError']}; {result['monomialError']}")

    loglog, monomial = result["loglog"], result["monomial"]
    report: Dict[str, Any] = {
        "source": source,
        "dim": config.dim if config.generator else None,
        "pointsSampled": cdf.points_sampled,
        "pairs": cdf.pairs_evaluated,
        "loglog": None if loglog is None else round(loglog.exponent, 6),
        "loglogPoints": None if loglog is None else loglog.points,
        "monomial": None if monomial is None else monomial.exponent,
        "windows": [] if monomial is None else [w.to_dict() for w in monomial.windows],
    }
    for key in ("loglogError", "monomialError"):
        if key in result:
            report[key] = result[key]
    log_event("distexp", **{k: v for k, v in report.items() if k != "windows"})
    with output_stream(config.output) as stream:
        stream.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return report
