"""Score matrices and the quasi-metrics derived from them.

A similarity matrix s satisfying s(a,a) > 0 and s(a,a) >= s(a,b) converts
into the distance d(a,b) = s(a,a) - s(a,b), with co-weight w(a) = s(a,a).
The triangle inequality holds exactly when
s(a,b) + s(b,c) <= s(a,c) + s(b,b) for every triple, which auditTriangle checks.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, NamedTuple, Optional, Union

import numpy as np

from ..errors import AlphabetError, MatrixConditionError, ParseError, QueryError
from .alphabet import DNA, STANDARD, Alphabet


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.int64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScoreMatrix:
    """Integer similarity scores s(a,b) in half-bit units."""
    alphabet: Alphabet
    scores: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        k = len(self.alphabet)
        scores = _frozen(self.scores)
        if scores.shape != (k, k):
            raise ParseError(f"Score matrix must be {k}x{k}, got {scores.shape}")
        object.__setattr__(self, "scores", scores)

    def score(self, a: str, b: str) -> int:
        """s(a, b) for two letters."""
        return int(self.scores[self.alphabet.index(a), self.alphabet.index(b)])

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.scores, self.scores.T))

    def to_text(self) -> str:
        """Render in the NCBI whitespace layout."""
        letters = self.alphabet.letters
        lines = [f"# {self.name}"] if self.name else []
        lines.append("   " + " ".join(f"{a:>3}" for a in letters))
        for i, a in enumerate(letters):
            lines.append(f"{a}  " + " ".join(f"{int(v):>3}" for v in self.scores[i]))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class QuasiMetric:
    """Letter distance d(a,b) with optional co-weight w(a) = s(a,a)."""
    alphabet: Alphabet
    dist: np.ndarray
    co_weight: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "dist", _frozen(self.dist))
        if self.co_weight is not None:
            object.__setattr__(self, "co_weight", _frozen(self.co_weight))

    def __call__(self, a: str, b: str) -> int:
        return int(self.dist[self.alphabet.index(a), self.alphabet.index(b)])

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.dist, self.dist.T))


class TriangleFailure(NamedTuple):
    """Ordered triple with d(a,b) + d(b,c) < d(a,c); margin is negative."""
    a: str
    b: str
    c: str
    margin: int


def _read_source(source: Union[str, Path]) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    return source


def load_score_matrix(
    source: Union[str, Path],
    name: str = "",
    alphabet: Optional[Alphabet] = None,
) -> ScoreMatrix:
    """Parse an NCBI-style score matrix and restrict it to a standard alphabet.

    Args:
        source: Matrix text, or a Path to read it from
        name: Label for the matrix (defaults to the file name for paths)
        alphabet: Target alphabet. When omitted, the 20 amino acids are used if
            the header covers them, otherwise DNA if the header is exactly ACGT.

    Returns:
        ScoreMatrix restricted to the target alphabet; B, Z, X, * and other
        non-standard rows and columns are dropped.
    """
    if isinstance(source, Path) and not name:
        name = source.name
    text = _read_source(source)

    header: Optional[List[str]] = None
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            header = tokens
            if len(set(header)) != len(header):
                raise ParseError(f"Line {lineno}: duplicated letter in matrix header")
            continue
        letter, values = tokens[0], tokens[1:]
        if len(values) != len(header):
            raise ParseError(
                f"Line {lineno}: row {letter!r} has {len(values)} values, expected {len(header)}"
            )
        if letter in rows:
            raise ParseError(f"Line {lineno}: duplicated row {letter!r}")
        try:
            rows[letter] = [int(v) for v in values]
        except ValueError:
            raise ParseError(f"Line {lineno}: non-integer score in row {letter!r}") from None

    if header is None:
        raise ParseError("Score matrix text is empty")

    if alphabet is None:
        if set(STANDARD.letters) <= set(header):
            alphabet = STANDARD
        elif sorted(header) == sorted(DNA.letters):
            alphabet = DNA
        else:
            alphabet = STANDARD

    col = {a: j for j, a in enumerate(header)}
    k = len(alphabet)
    scores = np.zeros((k, k), dtype=np.int64)
    for i, a in enumerate(alphabet.letters):
        if a not in rows or a not in col:
            raise AlphabetError(f"Score matrix {name or ''} is missing letter {a!r}".strip(), a)
        for j, b in enumerate(alphabet.letters):
            scores[i, j] = rows[a][col[b]]
    return ScoreMatrix(alphabet=alphabet, scores=scores, name=name)


def to_quasi_metric(s: ScoreMatrix) -> QuasiMetric:
    """Convert a similarity matrix to d(a,b) = s(a,a) - s(a,b).

    Raises:
        MatrixConditionError: s(a,a) <= 0 for some a, or s(a,b) > s(a,a)
    """
    letters = s.alphabet.letters
    diag = np.diag(s.scores)
    for i, a in enumerate(letters):
        if diag[i] <= 0:
            raise MatrixConditionError(f"s({a},{a}) = {diag[i]} must be positive", (a, a))
    excess = s.scores > diag[:, None]
    if excess.any():
        i, j = map(int, np.argwhere(excess)[0])
        a, b = letters[i], letters[j]
        raise MatrixConditionError(
            f"s({a},{b}) = {s.scores[i, j]} exceeds s({a},{a}) = {diag[i]}", (a, b)
        )
    return QuasiMetric(
        alphabet=s.alphabet,
        dist=diag[:, None] - s.scores,
        co_weight=diag.copy(),
        name=s.name,
    )


def associated_metric(q: QuasiMetric) -> QuasiMetric:
    """Letter metric max(d(a,b), d(b,a)).

    Summed over positions this is a metric on fragments, but it can exceed
    the fragment-level max(d(x,y), d(y,x)); see symmetric_distance.
    """
    return QuasiMetric(
        alphabet=q.alphabet,
        dist=np.maximum(q.dist, q.dist.T),
        co_weight=None,
        name=f"{q.name}-sym" if q.name else "",
    )


def audit_triangle(q: QuasiMetric) -> List[TriangleFailure]:
    """Every ordered triple (a,b,c) with d(a,b) + d(b,c) < d(a,c).

    For a symmetric source matrix failures come in (a,b,c)/(c,b,a) pairs,
    so the list is twice the number of independent triples.
    """
    d = q.dist
    # slack[a, b, c] = d(a,b) + d(b,c) - d(a,c)
    slack = d[:, :, None] + d[None, :, :] - d[:, None, :]
    letters = q.alphabet.letters
    return [
        TriangleFailure(letters[a], letters[b], letters[c], int(slack[a, b, c]))
        for a, b, c in np.argwhere(slack < 0)
    ]


def independent_triples(failures: List[TriangleFailure]) -> List[TriangleFailure]:
    """Collapse (a,b,c)/(c,b,a) mirror pairs to one representative."""
    seen = set()
    out = []
    for f in failures:
        key = (min(f.a, f.c), f.b, max(f.a, f.c))
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def fragment_distance(q: QuasiMetric, x: str, y: str) -> int:
    """l1-type sum of letter distances over two equal-length fragments."""
    if len(x) != len(y):
        raise QueryError(f"Fragments differ in length: {len(x)} vs {len(y)}")
    ix = q.alphabet.encode(x)
    iy = q.alphabet.encode(y)
    return int(q.dist[ix, iy].sum())


def symmetric_distance(q: QuasiMetric, x: str, y: str) -> int:
    """Associated metric of the fragment quasi-metric, max(d(x,y), d(y,x))."""
    return max(fragment_distance(q, x, y), fragment_distance(q, y, x))
