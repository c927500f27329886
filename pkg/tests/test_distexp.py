"""Tests for distance distributions and distance-exponent estimation."""

import numpy as np
import pytest

from fragdex.distexp import (
    GENERATORS,
    EmpiricalDistanceCdf,
    estimate_both,
    estimate_log_log_slope,
    estimate_monomial_fit,
    generate,
    monomial_coefficient,
    pairwise_distances,
    sample_distance_cdf,
    subset_size,
)
from fragdex.errors import EstimationError
from fragdex.ingest import FragmentStore
from fragdex.scoring import associated_metric

GRID = np.linspace(0.0005, 1.0, 2000)


class TestSampling:
    """Tests for the empirical distance CDF."""

    def test_two_points(self):
        cdf = sample_distance_cdf(np.array([[0.0, 0.0], [3.0, 4.0]]), "l2")
        assert cdf.radii.tolist() == [5.0]
        assert cdf.values.tolist() == [1.0]
        assert cdf.pairs_evaluated == 1
        assert cdf(4.9) == 0.0 and cdf(5.0) == 1.0

    def test_single_point(self):
        with pytest.raises(EstimationError):
            sample_distance_cdf(np.zeros((1, 3)), "l2")

    def test_cube_linf(self):
        """Per coordinate P(|x - y| <= r) = 2r - r^2, so F(0.5) = 0.75^2."""
        points = generate("cube", np.random.default_rng(1), 3000, 2)
        cdf = sample_distance_cdf(points, "linf", pair_budget=400_000, rng=np.random.default_rng(2))
        assert cdf(0.5) == pytest.approx(0.5625, abs=0.01)

    def test_subset_size(self):
        assert subset_size(10 ** 6, 200_000) == 632
        assert subset_size(5, 10 ** 6) == 5
        assert subset_size(10, 0) == 2

    def test_seeded(self):
        points = generate("gaussian", np.random.default_rng(0), 500, 3)
        a = sample_distance_cdf(points, "l2", pair_budget=1000, rng=np.random.default_rng(9))
        b = sample_distance_cdf(points, "l2", pair_budget=1000, rng=np.random.default_rng(9))
        assert np.array_equal(a.radii, b.radii)

    def test_fragments_use_symmetric_metric(self, random_store, qm62):
        store = random_store(200, 5, seed=6)
        cdf = sample_distance_cdf(store, qm62, pair_budget=500)
        sym = associated_metric(qm62)
        assert cdf.points_sampled == subset_size(200, 500)
        assert cdf.radii.max() <= 5 * sym.dist.max()
        assert cdf.values[-1] == 1.0

    def test_fragment_level_maximum(self, qm62):
        """d(TS,ST) = d(ST,TS) = 4 + 3, below the per-letter maximum 4 + 4."""
        store = FragmentStore.from_fragments(["TS", "ST"])
        cdf = sample_distance_cdf(store, qm62)
        assert cdf.radii.tolist() == [7.0]
        assert cdf.source == "BLOSUM62-sym"

    def test_quasi_metric_on_points(self, qm62):
        with pytest.raises(EstimationError):
            sample_distance_cdf(np.zeros((4, 2)), qm62)

    def test_unknown_metric(self):
        with pytest.raises(EstimationError):
            pairwise_distances(np.zeros((3, 2)), "hamming-ish")

    def test_geodesic(self):
        points = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
        assert pairwise_distances(points, "geodesic") == pytest.approx([np.pi / 2, np.pi, np.pi / 2])

    def test_dump(self, temp_dir):
        cdf = EmpiricalDistanceCdf.from_distances(np.array([1.0, 1.0, 2.0]))
        path = temp_dir / "cdf.tsv"
        cdf.dump(path)
        assert path.read_text(encoding="utf-8").splitlines() == ["# r\tF", "1\t0.6666666667", "2\t1"]


class TestLogLog:
    """Tests for the log-log slope estimator."""

    def test_exact_cubic(self):
        cdf = EmpiricalDistanceCdf.from_function(GRID, lambda r: r ** 3)
        est = estimate_log_log_slope(cdf, percentile_cap=0.05)
        assert est.exponent == pytest.approx(3.0, abs=1e-6)
        assert est.window_end == pytest.approx(0.05 ** (1 / 3), abs=1e-3)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_cube(self, dim):
        points = generate("cube", np.random.default_rng(dim), 5000, dim)
        cdf = sample_distance_cdf(points, "linf", pair_budget=500_000, rng=np.random.default_rng(0))
        assert estimate_log_log_slope(cdf).exponent == pytest.approx(dim, abs=0.25)

    def test_gaussian_underestimates(self):
        """The small-r slope of a 9-dimensional Gaussian is 9 - r^2/2, below 9 at any finite cap."""
        points = generate("gaussian", np.random.default_rng(4), 2000, 9)
        cdf = sample_distance_cdf(points, "l2", rng=np.random.default_rng(5))
        assert estimate_log_log_slope(cdf).exponent < 9.0

    def test_too_few_points(self):
        cdf = EmpiricalDistanceCdf.from_distances(np.array([1.0]))
        with pytest.raises(EstimationError):
            estimate_log_log_slope(cdf)


class TestMonomialFit:
    """Tests for the monomial-fit estimator."""

    def test_coefficient_of_constant(self):
        """Fitting a*r to F = 1 on [0, 1] gives a = 3/2."""
        assert monomial_coefficient(np.array([0.0]), np.array([1.0]), 1.0, 1.0) == pytest.approx(1.5)

    def test_exact_quartic(self):
        cdf = EmpiricalDistanceCdf.from_function(GRID, lambda r: r ** 4)
        est = estimate_monomial_fit(cdf)
        assert est.exponent == 4.0
        assert all(w.best_exponent == 4.0 for w in est.windows)
        assert est.windows[0].coefficient == pytest.approx(1.0, abs=0.05)

    def test_refine_stays_near_integer(self):
        cdf = EmpiricalDistanceCdf.from_function(GRID, lambda r: r ** 2.5)
        est = estimate_monomial_fit(cdf, refine=True)
        assert est.exponent == pytest.approx(2.5, abs=0.1)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_cube(self, dim):
        points = generate("cube", np.random.default_rng(dim), 5000, dim)
        cdf = sample_distance_cdf(points, "linf", pair_budget=500_000, rng=np.random.default_rng(0))
        assert estimate_monomial_fit(cdf).exponent == dim

    def test_no_candidates(self):
        cdf = EmpiricalDistanceCdf.from_function(GRID, lambda r: r)
        with pytest.raises(EstimationError):
            estimate_monomial_fit(cdf, candidate_exponents=[])

    def test_both_report_failures(self):
        cdf = EmpiricalDistanceCdf.from_distances(np.array([1.0, 2.0]))
        out = estimate_both(cdf)
        assert out["loglog"] is None and "loglogError" in out
        assert out["monomial"] is None and "monomialError" in out


class TestGenerators:
    """Tests for synthetic point sets."""

    def test_sphere_on_unit_sphere(self, rng):
        points = generate("sphere", rng, 100, 3)
        assert points.shape == (100, 4)
        assert np.allclose(np.linalg.norm(points, axis=1), 1.0)

    def test_trough(self, rng):
        points = generate("trough", rng, 50, 2)
        assert points.shape == (50, 3)
        assert np.allclose(points[:, 2], points[:, 0] ** 2)

    def test_metrics(self):
        assert {name: g.metric for name, g in GENERATORS.items()} == {
            "cube": "linf",
            "gaussian": "l2",
            "sphere": "geodesic",
            "trough": "l2",
        }

    def test_unknown(self, rng):
        with pytest.raises(EstimationError):
            generate("torus", rng, 10, 2)

    def test_bad_size(self, rng):
        with pytest.raises(EstimationError):
            generate("cube", rng, 0, 2)
