"""Distance-exponent estimators.

Both work on the small-r end of an empirical distance CDF, where F(r)
behaves like c * r^D for a dataset of distance exponent D.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy import optimize, stats

from ..errors import EstimationError
from .sampling import EmpiricalDistanceCdf

DEFAULT_LEVELS = (0.002, 0.005, 0.01, 0.02, 0.05)


@dataclass
class LogLogEstimate:
    """Least-squares slope of log F against log r."""
    exponent: float
    intercept: float
    window_end: float
    points: int
    rvalue: float

    def to_dict(self) -> Dict:
        return {
            "exponent": self.exponent,
            "intercept": self.intercept,
            "windowEnd": self.window_end,
            "points": self.points,
            "rvalue": self.rvalue,
        }


def estimate_log_log_slope(
    cdf: EmpiricalDistanceCdf,
    percentile_cap: float = 0.05,
    min_pair_count: int = 5,
) -> LogLogEstimate:
    """Slope of (log r, log F) for r up to the first radius where F reaches the cap.

    Points backed by fewer than ``min_pair_count`` pairs are skipped; CDFs
    without counts keep every point.

    Raises:
        EstimationError: Fewer than two usable points
    """
    end = cdf.quantile_radius(percentile_cap)
    if end is None:
        end = float(cdf.radii[-1])
    keep = (cdf.radii > 0) & (cdf.values > 0) & (cdf.radii <= end)
    if cdf.counts is not None:
        keep &= cdf.counts >= min_pair_count
    if keep.sum() < 2:
        raise EstimationError(
            f"Only {int(keep.sum())} usable points below F = {percentile_cap}; need at least 2"
        )
    fit = stats.linregress(np.log(cdf.radii[keep]), np.log(cdf.values[keep]))
    return LogLogEstimate(
        exponent=float(fit.slope),
        intercept=float(fit.intercept),
        window_end=end,
        points=int(keep.sum()),
        rvalue=float(fit.rvalue),
    )


def monomial_coefficient(x: np.ndarray, y: np.ndarray, p: float, end: float) -> float:
    """Coefficient a minimising the integral of (F - a r^p)^2 over [0, end].

    F is the step function equal to y[j] on [x[j], x[j+1]) with x[-1] == end
    closing the last step; F is 0 below x[0].
    """
    edges = np.append(x, end) if x[-1] < end else x
    steps = y[: len(edges) - 1]
    q = p + 1.0
    inner = (steps * (edges[1:] ** q - edges[:-1] ** q)).sum() / q
    return float((2 * p + 1) * inner / end ** (2 * p + 1))


def _test_error(x: np.ndarray, y: np.ndarray, a: float, p: float) -> float:
    return float(((y - a * x ** p) ** 2).sum())


@dataclass
class WindowFit:
    """Diagnostics for one window end."""
    level: float
    end: float
    points: int
    best_exponent: float
    coefficient: float
    errors: Dict[float, float] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "level": self.level,
            "end": self.end,
            "points": self.points,
            "bestExponent": self.best_exponent,
            "coefficient": self.coefficient,
        }


@dataclass
class MonomialEstimate:
    """Largest best-fitting exponent over all usable windows."""
    exponent: float
    windows: List[WindowFit]

    def to_dict(self) -> Dict:
        return {"exponent": self.exponent, "windows": [w.to_dict() for w in self.windows]}


def _split(x: np.ndarray, y: np.ndarray):
    # alternate points: even positions train, odd positions test
    return (x[0::2], y[0::2]), (x[1::2], y[1::2])


def estimate_monomial_fit(
    cdf: EmpiricalDistanceCdf,
    candidate_exponents: Sequence[float] = tuple(range(1, 21)),
    window_levels: Sequence[float] = DEFAULT_LEVELS,
    refine: bool = False,
) -> MonomialEstimate:
    """Fit a * r^p on windows [0, L] and keep the largest best p over all L.

    For each window end L (the radius where F first reaches a level), the
    sampled points up to L are split alternately into training and testing
    halves. a is fitted on the training step function, and each candidate p
    is scored by squared error on the testing points. With ``refine`` the
    best integer is polished by bounded scalar minimisation within +-1.

    Raises:
        EstimationError: No candidates, or every window has too few points
    """
    candidates = sorted(float(p) for p in candidate_exponents)
    if not candidates:
        raise EstimationError("No candidate exponents given")

    positive = cdf.radii > 0
    radii, values = cdf.radii[positive], cdf.values[positive]
    windows: List[WindowFit] = []
    for level in window_levels:
        end = cdf.quantile_radius(level)
        if end is None or end <= 0:
            continue
        inside = radii <= end
        x, y = radii[inside], values[inside]
        (xt, yt), (xs, ys) = _split(x, y)
        if len(xt) < 2 or len(xs) < 2:
            continue

        def error(p: float) -> float:
            return _test_error(xs, ys, monomial_coefficient(xt, yt, p, end), p)

        errors = {p: error(p) for p in candidates}
        best = min(candidates, key=lambda p: (errors[p], p))
        if refine:
            res = optimize.minimize_scalar(error, bounds=(max(best - 1.0, 1e-6), best + 1.0), method="bounded")
            if res.success and res.fun <= errors[best]:
                best = float(res.x)
        windows.append(WindowFit(
            level=level,
            end=end,
            points=int(inside.sum()),
            best_exponent=best,
            coefficient=monomial_coefficient(xt, yt, best, end),
            errors=errors,
        ))

    if not windows:
        raise EstimationError("Every window has too few points for a train/test split")
    return MonomialEstimate(exponent=max(w.best_exponent for w in windows), windows=windows)


def estimate_both(
    cdf: EmpiricalDistanceCdf,
    percentile_cap: float = 0.05,
    min_pair_count: int = 5,
    candidate_exponents: Sequence[float] = tuple(range(1, 21)),
    window_levels: Sequence[float] = DEFAULT_LEVELS,
    refine: bool = False,
) -> Dict[str, Optional[object]]:
    """Run both estimators; a failing estimator reports None and its reason."""
    out: Dict[str, Optional[object]] = {}
    try:
        out["loglog"] = estimate_log_log_slope(cdf, percentile_cap, min_pair_count)
    except EstimationError as e:
        out["loglog"], out["loglogError"] = None, str(e)
    try:
        out["monomial"] = estimate_monomial_fit(cdf, candidate_exponents, window_levels, refine)
    except EstimationError as e:
        out["monomial"], out["monomialError"] = None, str(e)
    return out
