"""Residue alphabets and fragment encoding."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Sequence

import numpy as np

from ..errors import AlphabetError

# NCBI matrix order. Selenocysteine (U) and the ambiguity codes are not standard.
STANDARD_LETTERS = "ARNDCQEGHILKMFPSTWYV"
DNA_LETTERS = "ACGT"


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of residue symbols with a symbol -> index lookup."""
    letters: str
    lookup: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.letters:
            raise AlphabetError("Alphabet cannot be empty")
        if len(set(self.letters)) != len(self.letters):
            raise AlphabetError(f"Alphabet letters must be unique: {self.letters!r}")
        object.__setattr__(self, "lookup", {a: i for i, a in enumerate(self.letters)})

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, letter: object) -> bool:
        return letter in self.lookup

    def index(self, letter: str) -> int:
        """Return the index of a letter, raising AlphabetError if unknown."""
        try:
            return self.lookup[letter]
        except KeyError:
            raise AlphabetError(f"Letter {letter!r} is not in alphabet {self.letters}", letter) from None

    def is_valid(self, text: str) -> bool:
        """True if every letter of text belongs to the alphabet."""
        return all(c in self.lookup for c in text)

    def encode(self, text: str) -> np.ndarray:
        """Encode a fragment as a uint8 array of letter indices."""
        return np.fromiter((self.index(c) for c in text), dtype=np.uint8, count=len(text))

    def decode(self, codes: Iterable[int]) -> str:
        """Turn letter indices back into a string."""
        return "".join(self.letters[int(c)] for c in codes)

    def translation_table(self) -> np.ndarray:
        """256-entry byte -> code table; 255 marks letters outside the alphabet."""
        table = np.full(256, 255, dtype=np.uint8)
        for i, a in enumerate(self.letters):
            table[ord(a)] = i
        return table


STANDARD = Alphabet(STANDARD_LETTERS)
DNA = Alphabet(DNA_LETTERS)


def encode_many(alphabet: Alphabet, fragments: Sequence[str]) -> np.ndarray:
    """Encode equal-length fragments into an (n, m) uint8 matrix."""
    if not fragments:
        return np.zeros((0, 0), dtype=np.uint8)
    m = len(fragments[0])
    out = np.empty((len(fragments), m), dtype=np.uint8)
    for i, frag in enumerate(fragments):
        if len(frag) != m:
            raise AlphabetError(f"Fragment {frag!r} has length {len(frag)}, expected {m}")
        out[i] = alphabet.encode(frag)
    return out
