"""Per-position alphabet partitions and the mixed-radix bin rank.

A spec string lists groups separated by ',' for one position, and positions
separated by '#'. A single-position spec applies to every position:

    "TSAN,ILVM,KR,DEQ,WFYH,GPC"            six groups at each position
    "AB,CD,EF#ABCD,EF#AB,CD,EF#AB,CD,EF"  position-varying scheme
"""

import math
from dataclasses import dataclass, field
from typing import List, Tuple, Union

import numpy as np

from ..errors import PartitionError, QueryError
from ..scoring.alphabet import STANDARD, Alphabet

MAX_BINS = 2 ** 32


@dataclass(frozen=True, eq=False)
class PartitionScheme:
    """Reduced alphabets for each of the m fragment positions.

    ``tables[i, a]`` is the reduced letter of letter code a at position i.
    ``weights[i]`` is the product of the sizes of all later positions, so the
    rank of a reduced fragment is sum_i r_i * weights[i] with position 0 most
    significant. Schemes with more than MAX_BINS bins are rejected.
    """
    groups: Tuple[Tuple[str, ...], ...]
    alphabet: Alphabet = STANDARD
    tables: np.ndarray = field(init=False, repr=False)
    sizes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        m = len(self.groups)
        k = len(self.alphabet)
        total = math.prod(len(p) for p in self.groups)
        if total > MAX_BINS:
            raise PartitionError(
                f"Partitions give {total} bins for fragment length {m}, more than the limit {MAX_BINS}"
            )
        tables = np.full((m, k), 255, dtype=np.uint8)
        for i, position in enumerate(self.groups):
            for r, group in enumerate(position):
                for a in group:
                    tables[i, self.alphabet.index(a)] = r
        sizes = np.array([len(p) for p in self.groups], dtype=np.int64)
        weights = np.ones(m, dtype=np.int64)
        for i in range(m - 2, -1, -1):
            weights[i] = weights[i + 1] * sizes[i + 1]
        for name, value in (("tables", tables), ("sizes", sizes), ("weights", weights)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartitionScheme):
            return NotImplemented
        # group spelling order is irrelevant; the letter maps decide equality
        return self.alphabet == other.alphabet and np.array_equal(self.tables, other.tables)

    @property
    def m(self) -> int:
        return len(self.groups)

    @property
    def num_bins(self) -> int:
        """N, the product of the reduced alphabet sizes."""
        return math.prod(int(s) for s in self.sizes)

    def to_spec(self) -> str:
        """Render back to spec syntax, collapsing to one position when uniform."""
        parts = [",".join(p) for p in self.groups]
        if len(set(parts)) == 1:
            return parts[0]
        return "#".join(parts)

    def reduce(self, codes: np.ndarray) -> np.ndarray:
        """Reduced letters of encoded fragments; works on (m,) and (n, m) arrays."""
        return self.tables[np.arange(self.m), codes]

    def rank_codes(self, codes: np.ndarray) -> np.ndarray:
        """Bin rank of encoded fragments, vectorised over the leading axis."""
        return (self.reduce(codes).astype(np.int64) * self.weights).sum(axis=-1)


def _parse_position(text: str, position: int, alphabet: Alphabet) -> Tuple[str, ...]:
    groups = [g.strip().upper() for g in text.split(",")]
    seen = {}
    for group in groups:
        if not group:
            raise PartitionError(f"Position {position}: empty group in {text!r}", position=position)
        for a in group:
            if a not in alphabet:
                raise PartitionError(
                    f"Position {position}: letter {a!r} is not in the alphabet", letter=a, position=position
                )
            if a in seen:
                raise PartitionError(
                    f"Position {position}: letter {a!r} appears in more than one group",
                    letter=a, position=position,
                )
            seen[a] = group
    for a in alphabet.letters:
        if a not in seen:
            raise PartitionError(
                f"Position {position}: letter {a!r} is missing from {text!r}", letter=a, position=position
            )
    return tuple(groups)


def parse_partitions(spec: str, m: int, alphabet: Alphabet = STANDARD) -> PartitionScheme:
    """Parse a partition spec into a PartitionScheme for fragments of length m.

    Args:
        spec: Groups separated by ',', positions by '#'; one position is broadcast
        m: Fragment length
        alphabet: Letters every position must cover exactly once

    Returns:
        PartitionScheme with reduced letters numbered in group order

    Raises:
        PartitionError: Missing or duplicated letter, empty group, or a position
            count that is neither 1 nor m
    """
    if m < 1:
        raise PartitionError(f"Fragment length must be at least 1, got {m}")
    positions = [p for p in spec.strip().split("#")]
    if len(positions) == 1:
        positions = positions * m
    elif len(positions) != m:
        raise PartitionError(f"Partition spec has {len(positions)} positions, fragment length is {m}")
    groups = tuple(_parse_position(p, i, alphabet) for i, p in enumerate(positions))
    return PartitionScheme(groups=groups, alphabet=alphabet)


def rank(scheme: PartitionScheme, x: Union[str, np.ndarray]) -> int:
    """Bin index of a fragment: mixed-radix value of its reduced letters.

    Raises:
        QueryError: Length does not match the scheme
        AlphabetError: Letter outside the alphabet
    """
    codes = scheme.alphabet.encode(x) if isinstance(x, str) else np.asarray(x)
    if len(codes) != scheme.m:
        raise QueryError(f"Fragment length {len(codes)} does not match scheme length {scheme.m}")
    return int(scheme.rank_codes(codes))


def unrank(scheme: PartitionScheme, u: int) -> List[int]:
    """Reduced letters of bin u, position 0 first."""
    if not 0 <= u < scheme.num_bins:
        raise QueryError(f"Bin {u} outside [0, {scheme.num_bins})")
    out = []
    for w in scheme.weights:
        r, u = divmod(u, int(w))
        out.append(r)
    return out
