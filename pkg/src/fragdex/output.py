"""Machine-readable hit output.

Two formats are written. ``tsv`` gives one block per query: a header line,
one tab-separated row per hit, then a footer line of the form

    #stats<TAB>key=value<TAB>key=value...

with the keys query, mode, radius, hits, bins, fragments, residues,
evaluations, overhead, residuePct and, for E-value searches, evalue,
threshold and epsilon, always in that order. ``json`` writes JSON lines:
one object per hit and one ``{"query": ..., "stats": {...}}`` object closing
each query.
"""

import json
from typing import Any, Dict, Iterable, List, Optional, TextIO

from .search.hits import HitList

HIT_COLUMNS = ("query", "record", "offset", "fragment", "distance", "score")
FOOTER_PREFIX = "#stats"


def _cell(value: Any) -> str:
    return "-" if value is None else str(value)


def footer_fields(result: HitList, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Ordered footer values for one query."""
    stats = result.stats
    fields: Dict[str, Any] = {
        "query": result.query_id or result.center,
        "mode": result.mode,
        "radius": result.radius,
        "hits": len(result),
        "bins": stats.bins_scanned,
        "fragments": stats.fragments_scanned,
        "residues": stats.residues_scanned,
        "evaluations": stats.distance_evaluations,
        "overhead": f"{result.access_overhead:.4f}",
        "residuePct": f"{stats.residue_percentage:.2f}",
    }
    for key in ("evalue", "threshold", "epsilon"):
        if extra and key in extra:
            fields[key] = extra[key]
    return fields


def format_footer(result: HitList, extra: Optional[Dict[str, Any]] = None) -> str:
    pairs = (f"{k}={_cell(v)}" for k, v in footer_fields(result, extra).items())
    return "\t".join([FOOTER_PREFIX, *pairs])


def parse_footer(line: str) -> Dict[str, str]:
    """Key/value pairs of a footer line, all values as strings."""
    parts = line.rstrip("\n").split("\t")
    if parts[0] != FOOTER_PREFIX:
        raise ValueError(f"Not a stats footer: {line!r}")
    return dict(p.split("=", 1) for p in parts[1:])


def format_tsv(result: HitList, extra: Optional[Dict[str, Any]] = None) -> str:
    query = result.query_id or result.center
    lines = ["#" + "\t".join(HIT_COLUMNS)]
    for h in result:
        lines.append("\t".join(
            _cell(v) for v in (query, h.record_id, h.offset, h.fragment, h.distance, h.score)
        ))
    lines.append(format_footer(result, extra))
    return "\n".join(lines) + "\n"


def format_json(result: HitList, extra: Optional[Dict[str, Any]] = None) -> str:
    query = result.query_id or result.center
    lines = [json.dumps({"query": query, **h.to_dict()}, sort_keys=True) for h in result]
    stats = footer_fields(result, extra)
    stats.pop("query")
    lines.append(json.dumps({"query": query, "stats": stats}, sort_keys=True))
    return "\n".join(lines) + "\n"


def write_results(
    results: Iterable[HitList],
    stream: TextIO,
    fmt: str = "tsv",
    extras: Optional[List[Optional[Dict[str, Any]]]] = None,
) -> None:
    """Write result blocks in the given order.

    Args:
        results: One hit list per query
        stream: Destination text stream
        fmt: "tsv" or "json"
        extras: Optional per-query footer additions (E-value mode)
    """
    formatter = format_json if fmt == "json" else format_tsv
    for i, result in enumerate(results):
        extra = extras[i] if extras else None
        stream.write(formatter(result, extra))
