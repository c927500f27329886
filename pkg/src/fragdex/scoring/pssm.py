"""Position-specific scoring matrices in half-bit units."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import ParseError, QueryError
from .alphabet import STANDARD, Alphabet
from .matrix import ScoreMatrix


@dataclass(frozen=True)
class PSSM:
    """Per-position integer score functions S_i(a).

    valuation_shift[i] is min_a S_i(a); max_scores[i] is max_a S_i(a). Search
    uses the distance-like valuation sum_i (max_scores[i] - S_i(x_i)).
    """
    scores: np.ndarray
    alphabet: Alphabet = STANDARD
    name: str = ""
    valuation_shift: np.ndarray = field(init=False, repr=False, compare=False)
    max_scores: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        scores = np.array(self.scores, dtype=np.int64)
        if scores.ndim != 2 or scores.shape[1] != len(self.alphabet) or scores.shape[0] < 1:
            raise ParseError(
                f"PSSM must have shape (m, {len(self.alphabet)}) with m >= 1, got {scores.shape}"
            )
        scores.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        shift = scores.min(axis=1)
        top = scores.max(axis=1)
        shift.setflags(write=False)
        top.setflags(write=False)
        object.__setattr__(self, "valuation_shift", shift)
        object.__setattr__(self, "max_scores", top)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PSSM):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.scores, other.scores)

    @property
    def length(self) -> int:
        return int(self.scores.shape[0])

    @property
    def shift_total(self) -> int:
        return int(self.valuation_shift.sum())

    @property
    def max_total(self) -> int:
        return int(self.max_scores.sum())

    def cost_table(self) -> np.ndarray:
        """(m, |alphabet|) table of max_b S_i(b) - S_i(a), all non-negative."""
        return self.max_scores[:, None] - self.scores

    def argmax_fragment(self) -> str:
        """Best-scoring fragment; ties go to the earlier alphabet letter."""
        return self.alphabet.decode(self.scores.argmax(axis=1))

    @classmethod
    def from_matrix_rows(cls, matrix: ScoreMatrix, center: str) -> "PSSM":
        """Replicate matrix rows: S_i(a) = s(center_i, a)."""
        codes = matrix.alphabet.encode(center)
        return cls(scores=matrix.scores[codes], alphabet=matrix.alphabet,
                   name=f"{matrix.name}:{center}")

    def to_text(self) -> str:
        """Tab-separated text: header is the alphabet, one row per position."""
        lines = ["\t".join(self.alphabet.letters)]
        lines.extend("\t".join(str(int(v)) for v in row) for row in self.scores)
        return "\n".join(lines) + "\n"

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "PSSM":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if len(lines) < 2:
            raise ParseError("PSSM text needs a header and at least one position")
        header = lines[0].split()
        alphabet = STANDARD if "".join(header) == STANDARD.letters else Alphabet("".join(header))
        rows = []
        for n, line in enumerate(lines[1:], start=1):
            values = line.split()
            if len(values) != len(header):
                raise ParseError(f"PSSM row {n} has {len(values)} values, expected {len(header)}")
            try:
                rows.append([int(v) for v in values])
            except ValueError:
                raise ParseError(f"PSSM row {n} has a non-integer score") from None
        return cls(scores=np.array(rows), alphabet=alphabet, name=name)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PSSM":
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), name=path.stem)


def _check_length(p: PSSM, x: str) -> np.ndarray:
    if len(x) != p.length:
        raise QueryError(f"Fragment length {len(x)} does not match PSSM length {p.length}")
    return p.alphabet.encode(x)


def pssm_score(p: PSSM, x: str) -> int:
    """sum_i S_i(x_i)."""
    codes = _check_length(p, x)
    return int(p.scores[np.arange(p.length), codes].sum())


def pssm_valuation(p: PSSM, x: str) -> int:
    """sum_i (max_a S_i(a) - S_i(x_i)); zero iff x maximises every position."""
    codes = _check_length(p, x)
    return int(p.cost_table()[np.arange(p.length), codes].sum())
