"""fragdex audit: triangle-inequality check of score matrices."""

from typing import Any, Dict, List

from ..config.paths import bundled_matrices, find_matrix
from ..scoring.matrix import audit_triangle, independent_triples, load_score_matrix, to_quasi_metric
from .common import output_stream
from .config import RunConfig


def audit_matrix(name: str) -> Dict[str, Any]:
    """Failing ordered triples of one matrix's quasi-metric."""
    matrix = load_score_matrix(find_matrix(name))
    failures = audit_triangle(to_quasi_metric(matrix))
    independent = independent_triples(failures)
    example = None
    if independent:
        f = independent[0]
        example = f"{f.a},{f.b},{f.c} ({f.margin})"
    return {
        "matrix": matrix.name,
        "failures": len(failures),
        "independent": len(independent),
        "example": example,
        "triples": [f._asdict() for f in failures],
    }


def cmd_audit(config: RunConfig) -> List[Dict[str, Any]]:
    """Audit the named matrices (every bundled matrix by default)."""
    names = config.audit_matrices or bundled_matrices()
    rows = [audit_matrix(name) for name in names]
    with output_stream(config.output) as stream:
        stream.write("#matrix\ta\tb\tc\tmargin\n")
        for row in rows:
            for t in row["triples"]:
                stream.write(f"{row['matrix']}\t{t['a']}\t{t['b']}\t{t['c']}\t{t['margin']}\n")
    return rows
