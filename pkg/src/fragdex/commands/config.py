"""Run configuration assembled from settings files and command line flags."""

import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from ..config.settings import Settings

# command line dest -> settings key
SETTING_FLAGS = {
    "frag_length": "fragLength",
    "partitions": "partitions",
    "matrix": "matrix",
    "mixture": "mixture",
    "evalue_schedule": "evalueSchedule",
    "min_hits": "minHits",
    "max_iterations": "maxIterations",
    "seed": "seed",
    "bench_queries": "benchQueries",
    "bench_k": "benchK",
    "pair_budget": "pairBudget",
    "percentile_cap": "percentileCap",
    "min_pair_count": "minPairCount",
    "window_levels": "windowLevels",
    "candidate_exponents": "candidateExponents",
    "output_format": "outputFormat",
    "workers": "workers",
    "log_file": "logFile",
}


def _path(value) -> Optional[Path]:
    return Path(value) if value else None


@dataclass
class RunConfig:
    """Everything one subcommand needs; the seed drives all randomness."""
    command: str = ""

    # inputs
    fasta: Optional[Path] = None
    index: Optional[Path] = None
    matrix: str = "BLOSUM62"
    mixture: Optional[str] = None
    pssm: Optional[Path] = None
    frag_length: int = 9
    partitions: str = "TSAN,ILVM,KR,DEQ,WFYH,GPC"

    # queries
    queries: List[str] = field(default_factory=list)
    query_fasta: Optional[Path] = None
    random_queries: Optional[int] = None

    # search mode
    radius: Optional[int] = None
    k: Optional[int] = None
    evalue: Optional[float] = None
    symmetric: bool = False
    verify: bool = False

    # profile iteration
    evalue_schedule: List[float] = field(default_factory=lambda: [1.0, 1.0, 0.1, 0.1, 0.01])
    min_hits: int = 30
    max_iterations: int = 5

    # benchmark
    bench_queries: int = 5000
    bench_k: List[int] = field(default_factory=lambda: [1, 10, 50])

    # distance exponent
    generator: Optional[str] = None
    dim: int = 2
    points: int = 5000
    points_file: Optional[Path] = None
    point_metric: Optional[str] = None
    pair_budget: int = 200000
    percentile_cap: float = 0.05
    min_pair_count: int = 5
    window_levels: List[float] = field(default_factory=lambda: [0.002, 0.005, 0.01, 0.02, 0.05])
    candidate_exponents: List[float] = field(default_factory=lambda: list(range(1, 21)))
    refine: bool = False

    # audit
    audit_matrices: List[str] = field(default_factory=list)

    # outputs
    output: Optional[Path] = None
    output_format: str = "tsv"
    dist_output: Optional[Path] = None
    cdf_output: Optional[Path] = None
    pssm_dir: Optional[Path] = None
    report: Optional[Path] = None
    log_file: Optional[Path] = None

    seed: int = 0
    workers: int = 1
    verbose: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Optional[Settings] = None) -> "RunConfig":
        """Merge parsed flags over layered settings.

        Raises:
            ValueError: A flag value fails settings validation
        """
        if settings is None:
            settings = Settings(config_file=_path(getattr(args, "config", None)))
            settings.load()
        for dest, key in SETTING_FLAGS.items():
            value = getattr(args, dest, None)
            if value is not None and key == "logFile":
                value = str(value)
            settings.set(key, value, scope="cli")

        def opt(name, default=None):
            return getattr(args, name, default)

        return cls(
            command=opt("command", "") or "",
            fasta=_path(opt("fasta")),
            index=_path(opt("index")),
            matrix=settings.get("matrix"),
            mixture=settings.get("mixture"),
            pssm=_path(opt("pssm")),
            frag_length=settings.get("fragLength"),
            partitions=settings.get("partitions"),
            queries=list(opt("query") or []),
            query_fasta=_path(opt("query_fasta")),
            random_queries=opt("random"),
            radius=opt("radius"),
            k=opt("k"),
            evalue=opt("evalue"),
            symmetric=bool(opt("symmetric", False)),
            verify=bool(opt("verify", False)),
            evalue_schedule=list(settings.get("evalueSchedule")),
            min_hits=settings.get("minHits"),
            max_iterations=settings.get("maxIterations"),
            bench_queries=settings.get("benchQueries"),
            bench_k=list(settings.get("benchK")),
            generator=opt("generator"),
            dim=opt("dim") or 2,
            points=opt("points") or 5000,
            points_file=_path(opt("points_file")),
            point_metric=opt("metric"),
            pair_budget=settings.get("pairBudget"),
            percentile_cap=settings.get("percentileCap"),
            min_pair_count=settings.get("minPairCount"),
            window_levels=list(settings.get("windowLevels")),
            candidate_exponents=list(settings.get("candidateExponents")),
            refine=bool(opt("refine", False)),
            audit_matrices=list(opt("matrices") or []),
            output=_path(opt("output")),
            output_format=settings.get("outputFormat"),
            dist_output=_path(opt("dist_output")),
            cdf_output=_path(opt("cdf_output")),
            pssm_dir=_path(opt("pssm_dir")),
            report=_path(opt("report")),
            log_file=_path(settings.get("logFile")),
            seed=settings.get("seed"),
            workers=settings.get("workers"),
            verbose=bool(opt("verbose", False)),
        )
