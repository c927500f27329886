"""Tests for index persistence."""

import struct

import numpy as np
import pytest

from fragdex.errors import (
    IndexChecksumError,
    IndexFormatError,
    IndexMismatchError,
    IndexTruncatedError,
    IndexVersionError,
)
from fragdex.index import (
    FORMAT_VERSION,
    build_index,
    index_from_bytes,
    index_to_bytes,
    load_index,
    parse_partitions,
    read_header,
    save_index,
)
from fragdex.ingest import FragmentStore, SequenceRecord, extract_fragments, random_fragments

SPEC = "TSAN,ILVM,KR,DEQ,WFYH,GPC"


def _records(seed: int, count: int = 20):
    rng = np.random.default_rng(seed)
    lengths = rng.integers(3, 40, size=count)
    return [SequenceRecord(f"r{i}", "", random_fragments(rng, 1, int(L))[0]) for i, L in enumerate(lengths)]


def _index(seed: int = 0, m: int = 4, spec: str = SPEC):
    store = extract_fragments(_records(seed), m)
    return build_index(store, parse_partitions(spec, m))


class TestRoundTrip:
    """Tests for save and load."""

    @pytest.mark.parametrize("seed", range(10))
    def test_random_round_trip(self, seed, temp_dir):
        m = 3 + seed % 4
        ix = _index(seed, m, SPEC if seed % 2 else "TSAN,ILVM,KRDEQ,WFYHGPC#" * (m - 1) + "ACDEFGHIKLMNPQRSTVWY")
        path = temp_dir / "ix.fsix"
        save_index(ix, path)
        again = load_index(path, ix.store)
        assert again == ix
        assert again.scheme == ix.scheme

    def test_header(self, temp_dir):
        ix = _index(1)
        path = temp_dir / "ix.fsix"
        save_index(ix, path)
        header = read_header(path)
        assert header.version == FORMAT_VERSION
        assert header.m == 4
        assert header.n == ix.n
        assert header.num_bins == 6 ** 4
        assert header.scheme == ix.scheme
        assert header.digest == ix.store.content_digest()

    def test_byte_identical_rebuild(self):
        assert index_to_bytes(_index(3)) == index_to_bytes(_index(3))

    def test_empty_index(self):
        store = extract_fragments([SequenceRecord("s", "", "AC")], 4)
        ix = build_index(store, parse_partitions(SPEC, 4))
        assert index_from_bytes(index_to_bytes(ix), store) == ix


class TestCorruption:
    """Tests for rejected index files."""

    def test_bad_magic(self):
        ix = _index()
        data = b"XXXX" + index_to_bytes(ix)[4:]
        with pytest.raises(IndexVersionError):
            index_from_bytes(data, ix.store)

    def test_bad_version(self):
        ix = _index()
        data = bytearray(index_to_bytes(ix))
        data[4:8] = struct.pack("<I", FORMAT_VERSION + 1)
        with pytest.raises(IndexVersionError):
            index_from_bytes(bytes(data), ix.store)

    def test_truncated(self):
        ix = _index()
        with pytest.raises(IndexTruncatedError):
            index_from_bytes(index_to_bytes(ix)[:-10], ix.store)

    def test_truncated_header(self):
        ix = _index()
        with pytest.raises(IndexTruncatedError):
            index_from_bytes(index_to_bytes(ix)[:20], ix.store)

    def test_trailing_bytes(self):
        ix = _index()
        with pytest.raises(IndexFormatError):
            index_from_bytes(index_to_bytes(ix) + b"\0", ix.store)

    def test_checksum(self):
        ix = _index()
        data = bytearray(index_to_bytes(ix))
        data[-10] ^= 0xFF
        with pytest.raises(IndexChecksumError):
            index_from_bytes(bytes(data), ix.store)

    def test_other_fragment_length(self):
        ix = _index(m=4)
        other = extract_fragments(ix.store.records, 5)
        with pytest.raises(IndexMismatchError):
            index_from_bytes(index_to_bytes(ix), other)

    def test_other_sequences(self):
        ix = _index(seed=1)
        other = FragmentStore.from_fragments([ix.store.fragment(i)[::-1] for i in range(ix.n)])
        with pytest.raises(IndexMismatchError):
            index_from_bytes(index_to_bytes(ix), other)
