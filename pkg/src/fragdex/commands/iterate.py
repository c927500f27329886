"""fragdex iterate: iterative profile search over the windows of query sequences."""

from typing import List, Tuple

from ..errors import QueryError
from ..ingest.fasta import SequenceRecord, read_fasta
from ..profile.iteration import IterationConfig, IterationState, run_iterations
from ..runlog import log_event
from .common import _log, load_config_mixture, load_matrix, open_index, output_stream
from .config import RunConfig

LOG_FIELDS = ("query", "offset", "window", "iteration", "evalue", "threshold", "epsilon", "hits", "status")


def query_sequences(config: RunConfig) -> List[SequenceRecord]:
    records = [SequenceRecord(f"q{i}", "", s.upper()) for i, s in enumerate(config.queries, start=1)]
    if config.query_fasta is not None:
        records.extend(read_fasta(config.query_fasta))
    if not records:
        raise QueryError("No query sequence given (use --query or --query-fasta)")
    return records


def format_log(runs: List[Tuple[str, List[IterationState]]]) -> str:
    lines = ["#" + "\t".join(LOG_FIELDS)]
    for query_id, states in runs:
        for state in states:
            for rec in state.history:
                values = (
                    query_id, rec.offset, rec.window, rec.iteration, rec.evalue,
                    rec.score_threshold, rec.radius, rec.hits, rec.status,
                )
                lines.append("\t".join("-" if v is None else str(v) for v in values))
    return "\n".join(lines) + "\n"


def cmd_iterate(config: RunConfig, renderer=None) -> List[Tuple[str, List[IterationState]]]:
    """Iterate every window of every query sequence; write the log and the final PSSMs.

    Sequences shorter than the fragment length produce a warning and no windows.
    """
    ix = open_index(config)
    it_config = IterationConfig(
        matrix=load_matrix(config),
        mixture=load_config_mixture(config),
        evalue_schedule=config.evalue_schedule,
        min_hits=config.min_hits,
        max_iterations=config.max_iterations,
    )
    runs = []
    for record in query_sequences(config):
        if len(record.residues) < ix.m:
            message = f"Query {record.id} is shorter than the fragment length {ix.m}; nothing to do"
            if renderer is not None:
                renderer.warning(message)
            log_event("skip", query=record.id, length=len(record.residues))
            runs.append((record.id, []))
            continue
        states = run_iterations(record.residues, ix, it_config, workers=config.workers)
        _log(config.verbose, f"{record.id}: {len(states)} windows")
        runs.append((record.id, states))

    if config.pssm_dir is not None:
        for query_id, states in runs:
            for state in states:
                if state.pssm is not None:
                    state.pssm.save(config.pssm_dir / f"{query_id}_{state.offset}.pssm")
    with output_stream(config.output) as stream:
        stream.write(format_log(runs))
    return runs
