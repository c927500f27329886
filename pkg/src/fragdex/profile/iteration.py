"""Iterative profile search over the windows of a query sequence.

Each window starts as a plain fragment query under the score matrix. An
iteration searches at the radius matching the current E-value threshold,
and when enough hits come back their weighted profile becomes the next
query. A window stops when it has too few hits, when two successive
profile iterations return the same hit set, or after the configured number
of iterations. The first iteration searches with the score matrix, so its
hits never count towards convergence.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, FrozenSet, List, Optional, Union

import numpy as np

from ..errors import QueryError
from ..index.fsindex import FSIndex
from ..runlog import log_event
from ..scoring.matrix import ScoreMatrix, to_quasi_metric
from ..scoring.pssm import PSSM
from ..search.engine import search_tables
from ..search.hits import Hit, HitList
from ..search.tables import matrix_tables, pssm_tables
from ..stats.distribution import (
    matrix_score_distribution,
    pssm_score_distribution,
    score_threshold_for_evalue,
    score_to_radius,
)
from .builder import build_pssm
from .dirichlet import DirichletMixture
from .weights import henikoff_weights

ACTIVE = "active"
DEACTIVATED = "deactivated"
CONVERGED = "converged"
FINISHED = "finished"

HitFilter = Callable[[List[Hit]], List[Hit]]


def no_filter(hits: List[Hit]) -> List[Hit]:
    """Default low-complexity filter: keep everything."""
    return hits


@dataclass
class IterationConfig:
    """Settings shared by every window of an iteration run."""
    matrix: ScoreMatrix
    mixture: DirichletMixture
    evalue_schedule: List[float] = field(default_factory=lambda: [1.0, 1.0, 0.1, 0.1, 0.01])
    min_hits: int = 30
    max_iterations: int = 5
    hit_filter: HitFilter = no_filter
    background: Optional[np.ndarray] = None  # defaults to the indexed store's frequencies

    def __post_init__(self) -> None:
        schedule = list(self.evalue_schedule)
        if not schedule or any(e <= 0 for e in schedule):
            raise QueryError("E-value schedule must be a non-empty list of positive values")
        if any(a < b for a, b in zip(schedule, schedule[1:])):
            raise QueryError("E-value schedule may not increase")
        self.evalue_schedule = schedule
        self.quasi_metric = to_quasi_metric(self.matrix)

    def evalue_for(self, iteration: int) -> float:
        """Threshold of a 0-based iteration; the last entry repeats."""
        return self.evalue_schedule[min(iteration, len(self.evalue_schedule) - 1)]


@dataclass
class IterationRecord:
    """One (window, iteration) line of the iteration log."""
    offset: int
    window: str
    iteration: int
    evalue: float
    score_threshold: Optional[int]
    radius: Optional[int]
    hits: int
    status: str

    def to_dict(self) -> dict:
        return {
            "offset": self.offset,
            "window": self.window,
            "iteration": self.iteration,
            "evalue": self.evalue,
            "scoreThreshold": self.score_threshold,
            "radius": self.radius,
            "hits": self.hits,
            "status": self.status,
        }


@dataclass
class IterationState:
    """Progress of one query window."""
    offset: int
    window: str
    query: Union[str, PSSM]
    iteration: int = 0
    evalue: float = 1.0
    last_hits: Optional[FrozenSet[int]] = None  # hits of the last profile iteration
    active: bool = True
    status: str = ACTIVE
    history: List[IterationRecord] = field(default_factory=list)

    @property
    def pssm(self) -> Optional[PSSM]:
        return self.query if isinstance(self.query, PSSM) else None


def initial_state(window: str, offset: int, config: IterationConfig) -> IterationState:
    return IterationState(offset=offset, window=window, query=window, evalue=config.evalue_for(0))


def _search(state: IterationState, ix: FSIndex, config: IterationConfig, background: np.ndarray):
    if isinstance(state.query, PSSM):
        tables = pssm_tables(state.query, ix.scheme)
        dist = pssm_score_distribution(state.query, background, ix.n)
    else:
        tables = matrix_tables(config.quasi_metric, state.query, ix.scheme)
        dist = matrix_score_distribution(config.matrix, state.query, background, ix.n)
    threshold = score_threshold_for_evalue(dist, state.evalue)
    radius = score_to_radius(tables.score_offset, threshold) if threshold is not None else None
    if radius is None:
        hits = HitList(mode="range", radius=None, center=tables.label)
    else:
        hits = search_tables(ix, tables, radius=radius)
    return threshold, radius, hits


def iterate(state: IterationState, ix: FSIndex, config: IterationConfig) -> IterationState:
    """Run one search for an active window and decide what happens next.

    Raises:
        QueryError: The state is inactive or the window does not fit the index
    """
    if not state.active:
        raise QueryError(f"Window at offset {state.offset} is no longer active")
    if len(state.window) != ix.m:
        raise QueryError(f"Window length {len(state.window)} does not match index fragment length {ix.m}")

    background = config.background if config.background is not None else ix.store.background_freq
    threshold, radius, hit_list = _search(state, ix, config, background)
    hits = config.hit_filter(list(hit_list.hits))
    hit_set = frozenset(h.index for h in hits)
    done = state.iteration + 1

    if len(hits) < config.min_hits:
        status, query = DEACTIVATED, state.query
    elif hit_set == state.last_hits:
        status, query = CONVERGED, state.query
    else:
        weighted = henikoff_weights([h.fragment for h in hits], ix.store.alphabet)
        query = build_pssm(weighted, background, config.mixture, name=f"{state.offset}:{state.window}")
        status = FINISHED if done >= config.max_iterations else ACTIVE

    record = IterationRecord(
        offset=state.offset,
        window=state.window,
        iteration=done,
        evalue=state.evalue,
        score_threshold=threshold,
        radius=radius,
        hits=len(hits),
        status=status,
    )
    log_event("iteration", **record.to_dict())
    return replace(
        state,
        query=query,
        iteration=done,
        evalue=config.evalue_for(done),
        last_hits=hit_set if isinstance(state.query, PSSM) else None,
        active=status == ACTIVE,
        status=status,
        history=state.history + [record],
    )


def query_windows(sequence: str, m: int, alphabet) -> List[tuple]:
    """(offset, window) for every length-m window made of alphabet letters."""
    sequence = sequence.upper()
    return [
        (i, sequence[i:i + m])
        for i in range(len(sequence) - m + 1)
        if alphabet.is_valid(sequence[i:i + m])
    ]


def run_window(window: str, offset: int, ix: FSIndex, config: IterationConfig) -> IterationState:
    """Iterate one window until it stops."""
    state = initial_state(window, offset, config)
    while state.active:
        state = iterate(state, ix, config)
    return state


def run_iterations(
    sequence: str,
    ix: FSIndex,
    config: IterationConfig,
    workers: int = 1,
) -> List[IterationState]:
    """Iterate every overlapping window of a query sequence.

    Returns:
        Final states in window order; empty when the sequence is shorter than m
    """
    windows = query_windows(sequence, ix.m, ix.store.alphabet)
    if workers <= 1 or len(windows) <= 1:
        return [run_window(w, off, ix, config) for off, w in windows]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda item: run_window(item[1], item[0], ix, config), windows))
