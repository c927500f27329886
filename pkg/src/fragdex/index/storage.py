"""Binary persistence for FSIndex.

Layout, all integers little-endian:

    magic        4 bytes  b"FSIX"
    version      u32
    m            u32
    k            u32      alphabet size
    alphabet     k bytes
    tables       m*k u8   reduced letter of every (position, letter)
    N            u64
    n            u64
    digest       32 bytes SHA-256 of the fragment store content
    bin          (N+1) u64
    frag         n * (record u32, offset u32)
    lcp          n u8
    crc          u32      zlib CRC32 of everything before it

Sequences are not stored; the FASTA stays the source of truth and the digest
ties an index file to it.
"""

import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from ..errors import (
    AlphabetError,
    IndexChecksumError,
    IndexFormatError,
    IndexMismatchError,
    IndexTruncatedError,
    IndexVersionError,
)
from ..ingest.store import FragmentStore
from ..scoring.alphabet import Alphabet
from .fsindex import FSIndex
from .partitions import PartitionScheme

MAGIC = b"FSIX"
FORMAT_VERSION = 1

_PREFIX = struct.Struct("<4sIII")
_COUNTS = struct.Struct("<QQ")
_CRC = struct.Struct("<I")
_DIGEST_SIZE = 32
_PAIR = np.dtype([("record", "<u4"), ("offset", "<u4")])


@dataclass
class IndexHeader:
    """Everything in an index file except the arrays."""
    version: int
    scheme: PartitionScheme
    num_bins: int
    n: int
    digest: bytes

    @property
    def m(self) -> int:
        return self.scheme.m


def _scheme_from_tables(alphabet: Alphabet, tables: np.ndarray) -> PartitionScheme:
    groups = []
    for i, row in enumerate(tables):
        size = int(row.max()) + 1
        position = tuple(
            "".join(a for a, r in zip(alphabet.letters, row) if r == g) for g in range(size)
        )
        if any(not g for g in position):
            raise IndexFormatError(f"Position {i} of the stored partition has an empty group")
        groups.append(position)
    return PartitionScheme(groups=tuple(groups), alphabet=alphabet)


def index_to_bytes(ix: FSIndex) -> bytes:
    """Serialise an index; identical indexes give identical bytes."""
    scheme = ix.scheme
    letters = scheme.alphabet.letters.encode("ascii")
    parts = [
        _PREFIX.pack(MAGIC, FORMAT_VERSION, scheme.m, len(letters)),
        letters,
        np.ascontiguousarray(scheme.tables, dtype=np.uint8).tobytes(),
        _COUNTS.pack(ix.num_bins, ix.n),
        ix.store.content_digest(),
        ix.bin.astype("<u8").tobytes(),
    ]
    pairs = np.empty(ix.n, dtype=_PAIR)
    pairs["record"] = ix.store.record_index[ix.frag]
    pairs["offset"] = ix.store.offsets[ix.frag]
    parts.append(pairs.tobytes())
    parts.append(ix.lcp.astype(np.uint8).tobytes())
    payload = b"".join(parts)
    return payload + _CRC.pack(zlib.crc32(payload) & 0xFFFFFFFF)


def save_index(ix: FSIndex, path: Union[str, Path]) -> None:
    """Write an index file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(index_to_bytes(ix))


def _take(data: bytes, pos: int, size: int) -> Tuple[bytes, int]:
    if pos + size > len(data):
        raise IndexTruncatedError(
            f"Index file ends at byte {len(data)}, expected at least {pos + size}"
        )
    return data[pos:pos + size], pos + size


def _parse_header(data: bytes) -> Tuple[IndexHeader, int]:
    raw, pos = _take(data, 0, _PREFIX.size)
    magic, version, m, k = _PREFIX.unpack(raw)
    if magic != MAGIC:
        raise IndexVersionError(f"Not an FSIndex file (magic {magic!r})")
    if version != FORMAT_VERSION:
        raise IndexVersionError(f"Unsupported index format version {version}, expected {FORMAT_VERSION}")
    letters, pos = _take(data, pos, k)
    try:
        alphabet = Alphabet(letters.decode("ascii"))
    except (UnicodeDecodeError, AlphabetError) as e:
        raise IndexFormatError(f"Corrupt alphabet in index header: {e}") from None
    raw_tables, pos = _take(data, pos, m * k)
    tables = np.frombuffer(raw_tables, dtype=np.uint8).reshape(m, k)
    raw, pos = _take(data, pos, _COUNTS.size)
    N, n = _COUNTS.unpack(raw)
    digest, pos = _take(data, pos, _DIGEST_SIZE)
    scheme = _scheme_from_tables(alphabet, tables)
    if scheme.num_bins != N:
        raise IndexFormatError(f"Header bin count {N} disagrees with partitions ({scheme.num_bins})")
    return IndexHeader(version=version, scheme=scheme, num_bins=N, n=n, digest=digest), pos


def read_header(path: Union[str, Path]) -> IndexHeader:
    """Read and validate only the header of an index file."""
    with open(path, "rb") as f:
        head = f.read(_PREFIX.size)
        if len(head) == _PREFIX.size:
            _, _, m, k = _PREFIX.unpack(head)
            head += f.read(k + m * k + _COUNTS.size + _DIGEST_SIZE)
    return _parse_header(head)[0]


def index_from_bytes(data: bytes, store: FragmentStore) -> FSIndex:
    """Rebuild an index from bytes against the store it was built from.

    Raises:
        IndexVersionError: Bad magic or version
        IndexTruncatedError: Data ends early
        IndexChecksumError: CRC32 mismatch
        IndexMismatchError: The file belongs to a different store
    """
    header, pos = _parse_header(data)
    N, n = header.num_bins, header.n
    expected = pos + 8 * (N + 1) + _PAIR.itemsize * n + n + _CRC.size
    if len(data) < expected:
        raise IndexTruncatedError(f"Index file has {len(data)} bytes, expected {expected}")
    if len(data) > expected:
        raise IndexFormatError(f"Index file has {len(data) - expected} trailing bytes")

    (stored_crc,) = _CRC.unpack(data[-_CRC.size:])
    if zlib.crc32(data[:-_CRC.size]) & 0xFFFFFFFF != stored_crc:
        raise IndexChecksumError("Index file checksum does not match its contents")

    if header.m != store.frag_length:
        raise IndexMismatchError(
            f"Index was built for fragment length {header.m}, store has {store.frag_length}"
        )
    if header.scheme.alphabet != store.alphabet:
        raise IndexMismatchError("Index alphabet differs from the store alphabet")
    if header.n != len(store):
        raise IndexMismatchError(f"Index holds {header.n} fragments, store has {len(store)}")
    if header.digest != store.content_digest():
        raise IndexMismatchError("Index was built from different sequences")

    bins = np.frombuffer(data, dtype="<u8", count=N + 1, offset=pos).astype(np.int64)
    pos += 8 * (N + 1)
    pairs = np.frombuffer(data, dtype=_PAIR, count=n, offset=pos)
    pos += _PAIR.itemsize * n
    lcp = np.frombuffer(data, dtype=np.uint8, count=n, offset=pos).copy()

    frag = store.locate_many(pairs["record"], pairs["offset"])
    if n and (frag < 0).any():
        raise IndexMismatchError("Index references fragments missing from the store")
    if bins[0] != 0 or bins[-1] != n or (np.diff(bins) < 0).any():
        raise IndexFormatError("Bin offsets are not a valid partition of the fragments")

    return FSIndex(scheme=header.scheme, store=store, bin=bins, frag=frag, lcp=lcp)


def load_index(path: Union[str, Path], store: FragmentStore) -> FSIndex:
    """Load an index file written by save_index."""
    return index_from_bytes(Path(path).read_bytes(), store)
