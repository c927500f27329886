"""Tests for sequence weights, Dirichlet priors, PSSM building and iteration."""

import numpy as np
import pytest

from fragdex.errors import EmptyDataError, MixtureError, QueryError, StatisticsError
from fragdex.index import build_index, parse_partitions
from fragdex.ingest import FragmentStore, mutate, random_fragments
from fragdex.profile import (
    ACTIVE,
    CONVERGED,
    DEACTIVATED,
    IterationConfig,
    build_pssm,
    dirichlet_posterior,
    half_bit_scores,
    henikoff_weights,
    initial_state,
    iterate,
    load_mixture,
    parse_mixture,
    query_windows,
    responsibilities,
    round_half_away,
    run_iterations,
    run_window,
    uniform_mixture,
)
from fragdex.scoring import STANDARD

COARSE = "TSAN,ILVM,KRDEQ,WFYHGPC"
MOTIF = "WHCYWFMCH"
UNIFORM = np.full(20, 0.05)

TWO_COMPONENTS = """Name = toy.2comp
Order = A C D E F G H I K L M N P Q R S T V W Y
Mixture= 0.75
Alpha= 40.0 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2
Mixture= 0.25
Alpha= 1.0 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05 0.05
"""


class TestHenikoffWeights:
    """Tests for position-based weights."""

    def test_duplicate_pair(self):
        weighted = henikoff_weights(["AA", "AA", "CC"])
        assert weighted.weights.tolist() == pytest.approx([0.75, 0.75, 1.5])
        assert weighted.total_weight == pytest.approx(3.0)

    def test_identical_fragments(self):
        weighted = henikoff_weights(["WHCY"] * 4)
        assert weighted.weights.tolist() == pytest.approx([1.0] * 4)

    def test_column_counts(self):
        counts = henikoff_weights(["AA", "AA", "CC"]).column_counts()
        a, c = STANDARD.index("A"), STANDARD.index("C")
        assert counts[0, a] == pytest.approx(1.5)
        assert counts[0, c] == pytest.approx(1.5)
        assert counts.sum() == pytest.approx(6.0)

    def test_empty(self):
        with pytest.raises(EmptyDataError):
            henikoff_weights([])

    def test_ragged(self):
        with pytest.raises(QueryError):
            henikoff_weights(["AA", "AAA"])


class TestDirichlet:
    """Tests for mixture parsing and posteriors."""

    def test_uniform_posterior(self):
        counts = np.zeros(20)
        counts[STANDARD.index("A")] = 10
        post = dirichlet_posterior(counts, uniform_mixture())
        assert post[STANDARD.index("A")] == pytest.approx(11 / 30)
        assert post[STANDARD.index("C")] == pytest.approx(1 / 30)
        assert post.sum() == pytest.approx(1.0)

    def test_no_counts_gives_prior_mean(self):
        mixture = parse_mixture(TWO_COMPONENTS)
        assert dirichlet_posterior(np.zeros(20), mixture) == pytest.approx(np.full(20, 0.05))

    def test_large_counts_approach_frequencies(self):
        mixture = parse_mixture(TWO_COMPONENTS)
        freq = np.random.default_rng(3).dirichlet(np.ones(20))
        post = dirichlet_posterior(freq * 1e7, mixture)
        assert np.allclose(post, freq, atol=1e-5)

    def test_responsibilities_favour_sparse_component(self):
        mixture = parse_mixture(TWO_COMPONENTS)
        counts = np.zeros(20)
        counts[0] = 30
        resp = responsibilities(counts, mixture)
        assert resp.sum() == pytest.approx(1.0)
        assert resp[1] > resp[0]

    def test_bundled_uniform(self):
        mixture = load_mixture()
        assert mixture.num_components == 1
        assert np.allclose(mixture.alphas, 1.0)
        assert load_mixture("uniform.1comp").name == "uniform.1comp"

    def test_order_line_permutes_columns(self):
        reversed_order = "Y W V T S R Q P N M L K I H G F E D C A"
        alpha = " ".join(str(float(i + 1)) for i in range(20))
        text = f"Order = {reversed_order}\nMixture= 1.0\nAlpha= {alpha}\n"
        mixture = parse_mixture(text)
        assert mixture.alphas[0, STANDARD.index("Y")] == 1.0
        assert mixture.alphas[0, STANDARD.index("A")] == 20.0

    def test_bad_leading_alpha(self):
        text = "Mixture= 1.0\nAlpha= 99 " + " ".join(["1"] * 20) + "\n"
        with pytest.raises(MixtureError):
            parse_mixture(text)

    def test_unbalanced_lines(self):
        with pytest.raises(MixtureError):
            parse_mixture("Mixture= 0.5\nMixture= 0.5\nAlpha= " + " ".join(["1"] * 20) + "\n")

    def test_negative_counts(self):
        with pytest.raises(MixtureError):
            dirichlet_posterior(-np.ones(20), uniform_mixture())


class TestBuildPssm:
    """Tests for half-bit scoring."""

    def test_round_half_away(self):
        assert round_half_away(np.array([0.5, -0.5, 1.49, -2.5])).tolist() == [1, -1, 1, -3]

    def test_four_fold_is_four_half_bits(self):
        assert half_bit_scores(np.array([0.2, 0.8]), np.array([0.05, 0.95])).tolist()[0] == 4

    def test_posterior_equal_background(self):
        assert (half_bit_scores(UNIFORM, UNIFORM) == 0).all()

    def test_zero_background(self):
        bg = UNIFORM.copy()
        bg[0] = 0.0
        with pytest.raises(StatisticsError):
            half_bit_scores(UNIFORM, bg)

    def test_identical_hits(self):
        """30 copies: posterior 31/50 against 1/20 gives round(2*log2(12.4)) = 7."""
        p = build_pssm(henikoff_weights([MOTIF] * 30), UNIFORM, uniform_mixture())
        assert p.length == 9
        assert p.argmax_fragment() == MOTIF
        assert p.max_scores.tolist() == [7] * 9


@pytest.fixture(scope="module")
def planted():
    """10^4 random fragments plus 50 copies of a motif with up to two substitutions."""
    rng = np.random.default_rng(31)
    fragments = random_fragments(rng, 10_000, 9)
    fragments += [mutate(rng, MOTIF, 2) for _ in range(50)]
    store = FragmentStore.from_fragments(fragments)
    return build_index(store, parse_partitions(COARSE, 9))


class TestIteration:
    """Tests for iterative profile search."""

    def test_config_validation(self, blosum62):
        with pytest.raises(QueryError):
            IterationConfig(blosum62, uniform_mixture(), evalue_schedule=[0.1, 1.0])
        with pytest.raises(QueryError):
            IterationConfig(blosum62, uniform_mixture(), evalue_schedule=[])
        config = IterationConfig(blosum62, uniform_mixture(), evalue_schedule=[1.0, 0.1])
        assert config.evalue_for(0) == 1.0
        assert config.evalue_for(7) == 0.1

    def test_deactivated(self, planted, blosum62):
        config = IterationConfig(blosum62, uniform_mixture(), min_hits=10 ** 6)
        state = run_window(MOTIF, 0, planted, config)
        assert state.status == DEACTIVATED
        assert len(state.history) == 1
        assert state.pssm is None
        with pytest.raises(QueryError):
            iterate(state, planted, config)

    def test_converged(self, blosum62):
        """Matrix hits never count, so the second profile search is the first that can converge."""
        fragments = [MOTIF] * 40 + random_fragments(np.random.default_rng(8), 200, 9)
        ix = build_index(FragmentStore.from_fragments(fragments), parse_partitions(COARSE, 9))
        config = IterationConfig(
            blosum62, uniform_mixture(), evalue_schedule=[0.01], background=UNIFORM
        )
        state = run_window(MOTIF, 0, ix, config)
        assert state.status == CONVERGED
        assert [r.hits for r in state.history] == [40, 40, 40]
        assert [r.status for r in state.history] == [ACTIVE, ACTIVE, CONVERGED]

    def test_planted_motif_recovered(self, planted, blosum62):
        config = IterationConfig(blosum62, uniform_mixture())
        state = run_window(MOTIF, 0, planted, config)
        assert state.status != DEACTIVATED
        assert len(state.history) >= 3
        assert [r.evalue for r in state.history[:3]] == [1.0, 1.0, 0.1]
        assert state.history[-1].hits >= 30
        assert state.pssm is not None
        assert state.pssm.argmax_fragment() == MOTIF

    def test_history_records(self, planted, blosum62):
        config = IterationConfig(blosum62, uniform_mixture(), evalue_schedule=[10.0], max_iterations=1)
        state = iterate(initial_state(MOTIF, 4, config), planted, config)
        record = state.history[0]
        assert record.offset == 4 and record.iteration == 1
        assert record.radius is not None and record.score_threshold is not None
        assert record.to_dict()["scoreThreshold"] == record.score_threshold

    def test_query_windows(self):
        assert query_windows("ACXDEFG", 3, STANDARD) == [(3, "DEF"), (4, "EFG")]

    def test_short_sequence(self, planted, blosum62):
        config = IterationConfig(blosum62, uniform_mixture())
        assert run_iterations("WHC", planted, config) == []

    def test_workers_keep_window_order(self, planted, blosum62):
        config = IterationConfig(blosum62, uniform_mixture(), min_hits=10 ** 6)
        sequence = "MKVWHCYWFMCHLA"
        serial = run_iterations(sequence, planted, config)
        threaded = run_iterations(sequence, planted, config, workers=3)
        assert [s.offset for s in threaded] == [s.offset for s in serial] == list(range(6))
