"""Tests for FASTA parsing, fragment extraction and synthetic data."""

import gzip

import numpy as np
import pytest

from fragdex.errors import EmptyDataError, ParseError, QueryError
from fragdex.ingest import (
    FragmentStore,
    SequenceRecord,
    background_frequencies,
    extract_fragments,
    mixture_fragments,
    mutate,
    parse_fasta,
    random_fragments,
    read_fasta,
    write_fasta,
)
from fragdex.profile import uniform_mixture
from fragdex.scoring import STANDARD


class TestParseFasta:
    """Tests for parse_fasta."""

    def test_single_record(self):
        records = parse_fasta(">s1\nACDE\n")
        assert records == [SequenceRecord("s1", "", "ACDE")]

    def test_order_and_description(self):
        records = parse_fasta(">s1 first one\nAC\nDE\n>s2\nKL\n")
        assert [r.id for r in records] == ["s1", "s2"]
        assert records[0].description == "first one"
        assert records[0].residues == "ACDE"

    def test_lowercase_normalised(self):
        assert parse_fasta(">s\nacde\n")[0].residues == "ACDE"

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_fasta("")

    def test_data_before_header(self):
        with pytest.raises(ParseError):
            parse_fasta("ACDE\n>s1\nAC\n")

    def test_header_without_residues(self):
        with pytest.raises(ParseError):
            parse_fasta(">s1\n>s2\nAC\n")

    def test_gzip_and_round_trip(self, temp_dir):
        records = [SequenceRecord("a", "desc", "ACDEFGHIKL" * 9), SequenceRecord("b", "", "MNPQ")]
        plain = temp_dir / "x.fa"
        write_fasta(records, plain)
        packed = temp_dir / "x.fa.gz"
        with gzip.open(packed, "wt", encoding="utf-8") as f:
            f.write(plain.read_text(encoding="utf-8"))
        assert read_fasta(plain) == records
        assert read_fasta(packed) == records


class TestExtractFragments:
    """Tests for extract_fragments."""

    def _store(self, *seqs, m=3):
        return extract_fragments([SequenceRecord(f"s{i}", "", s) for i, s in enumerate(seqs)], m)

    def test_all_windows(self):
        store = self._store("ACDEF")
        assert len(store) == 3
        assert list(store.offsets) == [0, 1, 2]
        assert [store.fragment(i) for i in range(3)] == ["ACD", "CDE", "DEF"]

    def test_non_standard_letter_everywhere(self):
        assert len(self._store("ACXEF")) == 0

    def test_non_standard_letter_skipped(self):
        store = self._store("ACXEFGH")
        assert [store.fragment(i) for i in range(len(store))] == ["EFG", "FGH"]
        assert store.windows_total == 5
        assert store.windows_rejected == 3

    def test_short_sequence(self):
        store = self._store("AC", "ACDE")
        assert len(store) == 2
        assert store.provenance(0) == ("s1", 0)

    def test_window_matches_fragment(self):
        store = self._store("MKVLAAGIW", "ACDEFGHIK")
        for i in range(len(store)):
            assert store.window(i) == store.fragment(i)
            assert store.locate(int(store.record_index[i]), int(store.offsets[i])) == i

    def test_locate_missing(self):
        store = self._store("ACXEFGH")
        assert store.locate(0, 0) == -1
        found = store.locate_many(np.array([0, 0]), np.array([3, 1]))
        assert list(found) == [0, -1]

    def test_bad_length(self):
        with pytest.raises(QueryError):
            self._store("ACDE", m=0)

    def test_digest_tracks_content(self):
        a = self._store("ACDEFG")
        b = self._store("ACDEFG")
        c = self._store("ACDEFH")
        assert a.content_digest() == b.content_digest()
        assert a.content_digest() != c.content_digest()


class TestBackground:
    """Tests for background_frequencies."""

    def test_single_letter(self):
        freq = background_frequencies(FragmentStore.from_fragments(["AAA"]))
        assert freq[STANDARD.index("A")] == 1.0
        assert freq.sum() == 1.0

    def test_two_letters(self):
        freq = background_frequencies(FragmentStore.from_fragments(["AC", "CA"]))
        assert freq[STANDARD.index("A")] == 0.5
        assert freq[STANDARD.index("C")] == 0.5

    def test_uniform_corpus(self, random_store):
        store = random_store(5000, 4, seed=3)
        freq = background_frequencies(store)
        n = 5000 * 4
        sigma = np.sqrt(n * 0.05 * 0.95) / n
        assert np.all(np.abs(freq - 0.05) < 3 * sigma + 1e-3)

    def test_empty(self):
        store = extract_fragments([SequenceRecord("s", "", "AC")], 3)
        with pytest.raises(EmptyDataError):
            background_frequencies(store)


class TestSynthetic:
    """Tests for synthetic fragment generators."""

    def test_seeded(self):
        a = random_fragments(np.random.default_rng(1), 10, 6)
        b = random_fragments(np.random.default_rng(1), 10, 6)
        assert a == b
        assert all(len(f) == 6 and STANDARD.is_valid(f) for f in a)

    def test_background_weights(self, rng):
        freq = np.zeros(20)
        freq[STANDARD.index("W")] = 1.0
        assert random_fragments(rng, 3, 4, freq) == ["WWWW"] * 3

    def test_mixture_fragments(self, rng):
        fragments = mixture_fragments(rng, 50, 5, uniform_mixture())
        assert len(fragments) == 50
        assert all(len(f) == 5 and STANDARD.is_valid(f) for f in fragments)

    def test_mutate(self, rng):
        x = mutate(rng, "WHCYWFMCH", 2)
        assert len(x) == 9
        assert sum(a != b for a, b in zip(x, "WHCYWFMCH")) <= 2
