"""Tests for alphabet partitions and bin ranks."""

import numpy as np
import pytest

from fragdex.errors import PartitionError, QueryError
from fragdex.index import parse_partitions, rank, unrank
from fragdex.index.partitions import MAX_BINS
from fragdex.scoring import Alphabet

TOY = Alphabet("ABCDEF")
DEFAULT = "TSAN,ILVM,KR,DEQ,WFYH,GPC"


@pytest.fixture
def toy_scheme():
    return parse_partitions("AB,CD,EF", 4, TOY)


class TestParsePartitions:
    """Tests for parse_partitions."""

    def test_default_scheme_size(self):
        scheme = parse_partitions(DEFAULT, 9)
        assert list(scheme.sizes) == [6] * 9
        assert scheme.num_bins == 10077696

    def test_coarse_scheme_size(self):
        assert parse_partitions("TSAN,ILVM,KRDEQ,WFYHGPC", 12).num_bins == 16777216

    def test_bin_limit(self):
        assert parse_partitions(DEFAULT, 12).num_bins == 6 ** 12
        for m in (13, 25, 30):
            with pytest.raises(PartitionError):
                parse_partitions(DEFAULT, m)

    def test_limit_is_exact(self):
        assert parse_partitions("AB,CD", 32, Alphabet("ABCD")).num_bins == MAX_BINS
        with pytest.raises(PartitionError):
            parse_partitions("AB,CD", 33, Alphabet("ABCD"))

    def test_position_varying(self):
        scheme = parse_partitions("AB,CD,EF#ABCD,EF#ABCDEF", 3, TOY)
        assert list(scheme.sizes) == [3, 2, 1]
        assert scheme.num_bins == 6
        assert scheme.to_spec() == "AB,CD,EF#ABCD,EF#ABCDEF"

    def test_uniform_spec_collapses(self, toy_scheme):
        assert toy_scheme.to_spec() == "AB,CD,EF"

    def test_missing_letter(self):
        with pytest.raises(PartitionError) as exc_info:
            parse_partitions("TSAN,ILVM,KR,DEQ,WFYH,GP", 9)
        assert exc_info.value.letter == "C"
        assert "C" in str(exc_info.value)

    def test_duplicate_letter(self):
        with pytest.raises(PartitionError) as exc_info:
            parse_partitions("AB,BC,DEF", 2, TOY)
        assert exc_info.value.letter == "B"

    def test_unknown_letter(self):
        with pytest.raises(PartitionError) as exc_info:
            parse_partitions("AB,CD,EF,X", 2, TOY)
        assert exc_info.value.letter == "X"

    def test_empty_group(self):
        with pytest.raises(PartitionError):
            parse_partitions("AB,,CDEF", 2, TOY)

    def test_position_count(self):
        with pytest.raises(PartitionError):
            parse_partitions("ABCDEF#ABCDEF", 3, TOY)

    def test_group_order_does_not_matter_for_equality(self):
        a = parse_partitions("AB,CD,EF", 2, TOY)
        b = parse_partitions("AB,CD,EF", 2, TOY)
        assert a == b


class TestRank:
    """Tests for rank and unrank."""

    def test_hand_values(self, toy_scheme):
        assert rank(toy_scheme, "AAAA") == 0
        assert rank(toy_scheme, "ACEB") == 15
        assert rank(toy_scheme, "FFFF") == 80 == toy_scheme.num_bins - 1

    def test_unrank_inverts(self, toy_scheme):
        assert unrank(toy_scheme, 15) == [0, 1, 2, 0]
        for u in range(toy_scheme.num_bins):
            letters = "".join("ACE"[r] for r in unrank(toy_scheme, u))
            assert rank(toy_scheme, letters) == u

    def test_default_scheme_round_trip(self):
        scheme = parse_partitions(DEFAULT, 9)
        first = [[g[0] for g in position] for position in scheme.groups]
        rng = np.random.default_rng(2024)
        for u in rng.integers(0, scheme.num_bins, size=10_000):
            u = int(u)
            reduced = unrank(scheme, u)
            assert all(0 <= r < 6 for r in reduced)
            assert rank(scheme, "".join(first[j][r] for j, r in enumerate(reduced))) == u

    def test_vectorised(self, toy_scheme):
        codes = np.array([TOY.encode("ACEB"), TOY.encode("FFFF")])
        assert list(toy_scheme.rank_codes(codes)) == [15, 80]

    def test_length_mismatch(self, toy_scheme):
        with pytest.raises(QueryError):
            rank(toy_scheme, "ABC")

    def test_unrank_out_of_range(self, toy_scheme):
        with pytest.raises(QueryError):
            unrank(toy_scheme, 81)
