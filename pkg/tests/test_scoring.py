"""Tests for alphabets, score matrices, quasi-metrics and PSSMs."""

import numpy as np
import pytest

from fragdex.config.paths import bundled_matrices, find_matrix
from fragdex.errors import AlphabetError, MatrixConditionError, ParseError, QueryError
from fragdex.scoring import (
    DNA,
    PSSM,
    STANDARD,
    Alphabet,
    ScoreMatrix,
    associated_metric,
    audit_triangle,
    fragment_distance,
    independent_triples,
    load_score_matrix,
    pssm_score,
    pssm_valuation,
    symmetric_distance,
    to_quasi_metric,
)

DNA_TEXT = """
   A  C  G  T
A  5 -4 -4 -4
C -4  5 -4 -4
G -4 -4  5 -4
T -4 -4 -4  5
"""


class TestAlphabet:
    """Tests for Alphabet."""

    def test_standard_alphabet(self):
        """Standard alphabet has 20 unique letters with consistent lookup."""
        assert len(STANDARD) == 20
        for i, a in enumerate(STANDARD.letters):
            assert STANDARD.index(a) == i

    def test_selenocysteine_not_standard(self):
        assert "U" not in STANDARD
        assert not STANDARD.is_valid("ACUD")

    def test_encode_decode(self):
        codes = STANDARD.encode("WHCY")
        assert codes.dtype == np.uint8
        assert STANDARD.decode(codes) == "WHCY"

    def test_unknown_letter(self):
        with pytest.raises(AlphabetError) as exc_info:
            STANDARD.encode("AXB")
        assert exc_info.value.letter == "X"

    def test_duplicate_letters_rejected(self):
        with pytest.raises(AlphabetError):
            Alphabet("AAB")


class TestScoreMatrix:
    """Tests for loading score matrices."""

    def test_blosum62_values(self, blosum62):
        """Canonical BLOSUM62 restricted to the standard letters."""
        assert blosum62.score("T", "T") == 5
        assert blosum62.score("I", "V") == 3
        assert blosum62.scores.shape == (20, 20)
        assert blosum62.is_symmetric
        assert blosum62.name == "BLOSUM62"

    def test_missing_row(self, blosum62):
        text = "\n".join(line for line in blosum62.to_text().splitlines() if not line.startswith("W "))
        with pytest.raises(AlphabetError) as exc_info:
            load_score_matrix(text)
        assert exc_info.value.letter == "W"

    def test_ragged_row(self):
        with pytest.raises(ParseError):
            load_score_matrix("  A C\nA 1 0\nC 0\n", alphabet=Alphabet("AC"))

    def test_dna_matrix(self):
        m = load_score_matrix(DNA_TEXT)
        assert m.alphabet == DNA
        assert m.score("A", "A") == 5
        assert m.score("A", "G") == -4

    def test_text_round_trip(self, blosum62):
        again = load_score_matrix(blosum62.to_text())
        assert np.array_equal(again.scores, blosum62.scores)


class TestQuasiMetric:
    """Tests for the similarity to distance conversion."""

    def test_blosum62_spot_values(self, qm62):
        """d(a,b) = s(a,a) - s(a,b)."""
        assert qm62("S", "T") == 3
        assert qm62("T", "S") == 4
        assert qm62("I", "V") == 1
        assert qm62("V", "I") == 1
        assert qm62("T", "W") == 7
        assert qm62("W", "T") == 13

    def test_identity_and_non_negativity(self, qm62):
        assert (np.diag(qm62.dist) == 0).all()
        assert (qm62.dist >= 0).all()
        assert not qm62.is_symmetric

    def test_co_weight_is_self_score(self, blosum62, qm62):
        assert np.array_equal(qm62.co_weight, np.diag(blosum62.scores))

    def test_dna_metric(self):
        q = to_quasi_metric(load_score_matrix(DNA_TEXT))
        off_diagonal = q.dist[~np.eye(4, dtype=bool)]
        assert (off_diagonal == 9).all()
        assert q.is_symmetric

    def test_non_positive_diagonal(self):
        s = ScoreMatrix(Alphabet("AB"), np.array([[0, -1], [-1, 2]]))
        with pytest.raises(MatrixConditionError) as exc_info:
            to_quasi_metric(s)
        assert exc_info.value.pair == ("A", "A")

    def test_off_diagonal_exceeds_diagonal(self):
        s = ScoreMatrix(Alphabet("AB"), np.array([[1, 3], [0, 4]]))
        with pytest.raises(MatrixConditionError) as exc_info:
            to_quasi_metric(s)
        assert exc_info.value.pair == ("A", "B")

    def test_associated_metric(self, qm62):
        sym = associated_metric(qm62)
        assert sym.is_symmetric
        assert sym("S", "T") == sym("T", "S") == 4
        assert sym.co_weight is None

    def test_symmetric_distance_is_fragment_level(self, qm62):
        assert fragment_distance(qm62, "TS", "ST") == fragment_distance(qm62, "ST", "TS") == 7
        assert symmetric_distance(qm62, "TS", "ST") == 7
        assert fragment_distance(associated_metric(qm62), "TS", "ST") == 8


class TestTriangleAudit:
    """Tests for the triangle inequality audit."""

    def test_blosum62_passes(self, qm62):
        assert audit_triangle(qm62) == []

    @pytest.mark.parametrize("name", ["BLOSUM45", "BLOSUM50", "BLOSUM80", "BLOSUM90"])
    def test_bundled_matrices_pass(self, name):
        q = to_quasi_metric(load_score_matrix(find_matrix(name)))
        assert audit_triangle(q) == []

    def test_bundled_names(self):
        assert "BLOSUM62" in bundled_matrices()

    @pytest.mark.skip(reason="BLOSUM55 and BLOSUM30 are not bundled")
    def test_blosum55_fails_on_iva(self):
        q = to_quasi_metric(load_score_matrix(find_matrix("BLOSUM55")))
        failures = audit_triangle(q)
        assert len(failures) == 2
        assert {failures[0].a, failures[0].b, failures[0].c} == {"I", "V", "A"}

    def test_constructed_failure(self):
        """A symmetric failure shows up as a mirrored pair."""
        s = ScoreMatrix(Alphabet("ABC"), np.array([[5, 4, -5], [4, 5, 4], [-5, 4, 5]]))
        failures = audit_triangle(to_quasi_metric(s))
        assert {(f.a, f.b, f.c) for f in failures} == {("A", "B", "C"), ("C", "B", "A")}
        assert all(f.margin == -8 for f in failures)
        assert len(independent_triples(failures)) == 1


class TestFragmentDistance:
    """Tests for the l1-type fragment distance."""

    def test_sum_of_letter_distances(self, qm62):
        assert fragment_distance(qm62, "IV", "VI") == 2
        assert fragment_distance(qm62, "TS", "ST") == 7
        assert fragment_distance(qm62, "ST", "TS") == 7

    def test_identity(self, qm62):
        assert fragment_distance(qm62, "WHCYWF", "WHCYWF") == 0

    def test_length_mismatch(self, qm62):
        with pytest.raises(QueryError):
            fragment_distance(qm62, "AC", "ACD")


class TestPSSM:
    """Tests for PSSM scoring."""

    def test_valuation_zero_at_argmax(self, blosum62):
        p = PSSM.from_matrix_rows(blosum62, "WHCY")
        assert p.argmax_fragment() == "WHCY"
        assert pssm_valuation(p, "WHCY") == 0
        assert pssm_score(p, "WHCY") == 11 + 8 + 9 + 7

    def test_valuation_matches_quasi_metric(self, blosum62, qm62):
        """Row replication turns the valuation into the quasi-metric distance."""
        p = PSSM.from_matrix_rows(blosum62, "ACDE")
        for x in ("ACDE", "WWWW", "TSTS", "KLMN"):
            assert pssm_valuation(p, x) == fragment_distance(qm62, "ACDE", x)

    def test_shift(self):
        p = PSSM(np.array([[1, -2, 3], [0, 0, 0]]), Alphabet("ABC"))
        assert list(p.valuation_shift) == [-2, 0]
        assert p.shift_total == -2
        assert p.max_total == 3

    def test_shape_check(self):
        with pytest.raises(ParseError):
            PSSM(np.zeros((2, 19)))

    def test_length_mismatch(self, blosum62):
        p = PSSM.from_matrix_rows(blosum62, "ACDE")
        with pytest.raises(QueryError):
            pssm_score(p, "ACD")

    def test_save_load(self, blosum62, temp_dir):
        p = PSSM.from_matrix_rows(blosum62, "MKV")
        path = temp_dir / "q.pssm"
        p.save(path)
        again = PSSM.load(path)
        assert again == p
        assert again.name == "q"
