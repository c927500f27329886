"""Fixed-length fragment datasets with provenance."""

import hashlib
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import EmptyDataError, QueryError
from ..scoring.alphabet import STANDARD, Alphabet
from .fasta import SequenceRecord

_INVALID = 255


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FragmentStore:
    """Every valid length-m window of a sequence collection.

    Fragments are numbered 0..n-1 in (record, offset) order. ``codes`` holds
    the encoded fragments as an (n, m) uint8 matrix.
    """
    records: List[SequenceRecord]
    frag_length: int
    alphabet: Alphabet
    record_index: np.ndarray
    offsets: np.ndarray
    codes: np.ndarray
    windows_total: int = 0
    windows_rejected: int = 0
    background_freq: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        for name in ("record_index", "offsets", "codes"):
            _readonly(getattr(self, name))
        freq = _frequencies(self.codes, len(self.alphabet)) if len(self) else np.zeros(len(self.alphabet))
        object.__setattr__(self, "background_freq", _readonly(freq))

    def __len__(self) -> int:
        return int(self.codes.shape[0])

    @property
    def size(self) -> int:
        return len(self)

    def fragment(self, i: int) -> str:
        """Fragment i as a string."""
        return self.alphabet.decode(self.codes[i])

    def provenance(self, i: int) -> Tuple[str, int]:
        """(record id, 0-based offset) of fragment i."""
        return self.records[int(self.record_index[i])].id, int(self.offsets[i])

    def window(self, i: int) -> str:
        """Fragment i cut directly from its source record."""
        rec = self.records[int(self.record_index[i])]
        off = int(self.offsets[i])
        return rec.residues[off:off + self.frag_length]

    def locate(self, record: int, offset: int) -> int:
        """Fragment number of a (record index, offset) pair, or -1."""
        key = (np.uint64(record) << np.uint64(32)) | np.uint64(offset)
        keys = self._keys()
        pos = int(np.searchsorted(keys, key))
        if pos < len(keys) and keys[pos] == key:
            return pos
        return -1

    def locate_many(self, record: np.ndarray, offset: np.ndarray) -> np.ndarray:
        """Vectorised locate; -1 where a pair is not a stored fragment."""
        keys = self._keys()
        wanted = (record.astype(np.uint64) << np.uint64(32)) | offset.astype(np.uint64)
        pos = np.searchsorted(keys, wanted)
        pos_clip = np.minimum(pos, max(len(keys) - 1, 0))
        found = (pos < len(keys)) & (keys[pos_clip] == wanted) if len(keys) else np.zeros(len(wanted), bool)
        return np.where(found, pos, -1).astype(np.int64)

    def _keys(self) -> np.ndarray:
        # (record, offset) order is the storage order, so keys are sorted
        return (self.record_index.astype(np.uint64) << np.uint64(32)) | self.offsets.astype(np.uint64)

    def content_digest(self) -> bytes:
        """SHA-256 over fragment length, alphabet and every record."""
        h = hashlib.sha256()
        h.update(f"{self.frag_length}\0{self.alphabet.letters}\0".encode())
        for rec in self.records:
            h.update(rec.id.encode())
            h.update(b"\0")
            h.update(rec.residues.encode())
            h.update(b"\n")
        return h.digest()

    @classmethod
    def from_fragments(cls, fragments: Sequence[str], alphabet: Alphabet = STANDARD) -> "FragmentStore":
        """One record per fragment; handy for synthetic datasets and tests."""
        if not fragments:
            raise EmptyDataError("No fragments given")
        m = len(fragments[0])
        records = [SequenceRecord(f"f{i}", "", frag.upper()) for i, frag in enumerate(fragments)]
        store = extract_fragments(records, m, alphabet)
        return store


def _frequencies(codes: np.ndarray, k: int) -> np.ndarray:
    counts = np.bincount(codes.ravel(), minlength=k).astype(np.float64)
    return counts / counts.sum()


def extract_fragments(
    records: Sequence[SequenceRecord],
    m: int,
    alphabet: Alphabet = STANDARD,
) -> FragmentStore:
    """Collect every overlapping window of length m made of alphabet letters.

    Windows touching a non-standard letter are skipped; sequences shorter
    than m contribute nothing.

    Raises:
        QueryError: m < 1
    """
    if m < 1:
        raise QueryError(f"Fragment length must be at least 1, got {m}")

    table = alphabet.translation_table()
    rec_parts, off_parts, code_parts = [], [], []
    windows_total = 0
    windows_rejected = 0
    for ri, rec in enumerate(records):
        L = len(rec.residues)
        if L < m:
            continue
        encoded = table[np.frombuffer(rec.residues.encode("latin-1", "replace"), dtype=np.uint8)]
        windows = sliding_window_view(encoded, m)
        valid = ~(windows == _INVALID).any(axis=1)
        windows_total += len(windows)
        windows_rejected += int((~valid).sum())
        offs = np.flatnonzero(valid).astype(np.uint32)
        rec_parts.append(np.full(len(offs), ri, dtype=np.uint32))
        off_parts.append(offs)
        code_parts.append(windows[valid])

    if code_parts:
        codes = np.ascontiguousarray(np.concatenate(code_parts).astype(np.uint8))
        record_index = np.concatenate(rec_parts)
        offsets = np.concatenate(off_parts)
    else:
        codes = np.zeros((0, m), dtype=np.uint8)
        record_index = np.zeros(0, dtype=np.uint32)
        offsets = np.zeros(0, dtype=np.uint32)

    return FragmentStore(
        records=list(records),
        frag_length=m,
        alphabet=alphabet,
        record_index=record_index,
        offsets=offsets,
        codes=codes,
        windows_total=windows_total,
        windows_rejected=windows_rejected,
    )


def background_frequencies(store: FragmentStore) -> np.ndarray:
    """Relative letter frequencies over all residues of all stored fragments.

    Raises:
        EmptyDataError: The store has no fragments
    """
    if len(store) == 0:
        raise EmptyDataError("Cannot estimate background frequencies from an empty store")
    return store.background_freq.copy()
