"""Estimators and tests for cocycle, defect and tracking samples.

Integer observables (``Q_n``, ``Psi``) are summed exactly with Python ints, so
moment accumulators merge exactly in any order.  Float inputs fall back to
Neumaier-compensated sums.

The standard normal CDF is ``scipy.special.ndtr`` (Cephes ``erfc``, relative
error near machine epsilon); KS p-values use the exact finite-n Kolmogorov
distribution ``scipy.stats.kstwo``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

import numpy as np
from scipy import special, stats as sps

from .base import distance_to_segment
from .errors import DegenerateSampleError, InsufficientSamplesError

AD_CRITICAL_1PCT = 3.857  # fully specified null, Stephens (1974)


def normal_cdf(x):
    return special.ndtr(x)


# ---------------------------------------------------------------------------
# moment accumulation
# ---------------------------------------------------------------------------


class MomentAccumulator:
    """Count and power sums ``sum x^k`` for ``k = 1..order``.

    Stays exact while every input is an integer; the first float switches it
    to compensated floating-point sums.
    """

    __slots__ = ("order", "count", "sums", "comp", "exact")

    def __init__(self, order: int = 4):
        if order < 1:
            raise ValueError("order must be at least 1")
        self.order = order
        self.count = 0
        self.sums = [0] * order
        self.comp = [0.0] * order
        self.exact = True

    def _to_float(self):
        if self.exact:
            self.exact = False
            self.sums = [float(s) for s in self.sums]

    def _add_float(self, k: int, v: float):
        s = self.sums[k]
        t = s + v
        if abs(s) >= abs(v):
            self.comp[k] += (s - t) + v
        else:
            self.comp[k] += (v - t) + s
        self.sums[k] = t

    def add(self, x) -> "MomentAccumulator":
        if isinstance(x, (int, np.integer)) and self.exact:
            x = int(x)
            p = 1
            for k in range(self.order):
                p *= x
                self.sums[k] += p
        else:
            self._to_float()
            x = float(x)
            p = 1.0
            for k in range(self.order):
                p *= x
                self._add_float(k, p)
        self.count += 1
        return self

    def extend(self, xs) -> "MomentAccumulator":
        for x in xs:
            self.add(x)
        return self

    def merge(self, other: "MomentAccumulator") -> "MomentAccumulator":
        if other.order != self.order:
            raise ValueError("cannot merge accumulators of different order")
        out = MomentAccumulator(self.order)
        out.count = self.count + other.count
        if self.exact and other.exact:
            out.sums = [a + b for a, b in zip(self.sums, other.sums)]
            return out
        out.exact = False
        out.sums = [0.0] * self.order
        for acc in (self, other):
            for k in range(self.order):
                out._add_float(k, float(acc.sums[k]))
                out._add_float(k, acc.comp[k])
        return out

    __add__ = merge

    def __eq__(self, other):
        if not isinstance(other, MomentAccumulator):
            return NotImplemented
        same = (self.order, self.count, self.exact) == (other.order, other.count, other.exact)
        return same and all(self.total(k) == other.total(k) for k in range(1, self.order + 1))

    def total(self, k: int):
        if self.exact:
            return self.sums[k - 1]
        return self.sums[k - 1] + self.comp[k - 1]

    def _raw(self, k: int):
        if self.count == 0:
            raise InsufficientSamplesError("no samples accumulated")
        if self.exact:
            return Fraction(self.sums[k - 1], self.count)
        return self.total(k) / self.count

    def moment(self, k: int) -> float:
        """Raw moment ``E x^k``."""
        return float(self._raw(k))

    @property
    def mean(self) -> float:
        return self.moment(1)

    def central(self, k: int) -> float:
        """Central moment ``E (x - mean)^k`` for ``k <= order`` (population normalisation)."""
        if k > self.order:
            raise ValueError(f"central moment {k} needs order >= {k}")
        mu = self._raw(1)
        total = 0
        for j in range(k + 1):
            raw = 1 if j == 0 else self._raw(j)
            total += math.comb(k, j) * raw * (-mu) ** (k - j)
        return float(total)

    def variance(self, ddof: int = 1) -> float:
        if self.count <= ddof:
            raise InsufficientSamplesError("not enough samples for a variance")
        return self.central(2) * self.count / (self.count - ddof)

    def skewness(self) -> float:
        m2 = self.central(2)
        if m2 <= 0:
            raise DegenerateSampleError("zero variance")
        return self.central(3) / m2 ** 1.5

    def excess_kurtosis(self) -> float:
        m2 = self.central(2)
        if m2 <= 0:
            raise DegenerateSampleError("zero variance")
        return self.central(4) / m2 ** 2 - 3.0


def accumulate(values, order: int = 4) -> MomentAccumulator:
    return MomentAccumulator(order).extend(values)


# ---------------------------------------------------------------------------
# drift and variance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DriftEstimate:
    ell: float
    stderr: float
    horizons: tuple
    means: dict
    stability: dict

    def as_dict(self) -> dict:
        return asdict(self)


def estimate_drift(samples: dict, min_samples: int = 30) -> DriftEstimate:
    """``ell = mean(Q_{n_r}) / n_r`` at the largest horizon.

    ``stability[n] = |mean(Q_n)/n - ell|``; the bias of ``mean(Q_n)/n`` decays
    like ``n^{-3/4}``, so these should shrink along the grid.
    """
    horizons = tuple(sorted(n for n in samples if n > 0))
    if len(horizons) < 2:
        raise InsufficientSamplesError("drift needs at least two positive horizons")
    for n in horizons:
        if len(samples[n]) < min_samples:
            raise InsufficientSamplesError(f"horizon {n} has {len(samples[n])} samples, need {min_samples}")
    means = {n: accumulate(samples[n], 2).mean for n in horizons}
    top = horizons[-1]
    acc = accumulate(samples[top], 2)
    ell = float(acc._raw(1) / top)
    stderr = math.sqrt(acc.variance() / acc.count) / top if acc.count > 1 else math.nan
    stability = {n: abs(means[n] / n - ell) for n in horizons}
    return DriftEstimate(ell, stderr, horizons, means, stability)


def estimate_sigma(q_samples, n: int, min_samples: int = 100) -> float:
    """``sigma = sqrt(Var(Q_n) / n)``; raises on a degenerate sample."""
    q = list(q_samples)
    if len(q) < min_samples:
        raise InsufficientSamplesError(f"sigma needs at least {min_samples} samples, got {len(q)}")
    if n <= 0:
        raise ValueError("horizon must be positive")
    var = accumulate(q, 2).variance()
    if var <= 0:
        raise DegenerateSampleError("Q_n has zero sample variance; cannot standardize")
    return math.sqrt(var / n)


def standardize(q_samples, n: int, ell: float, sigma: float) -> np.ndarray:
    if sigma <= 0:
        raise DegenerateSampleError("sigma must be positive to standardize")
    return (np.asarray(q_samples, dtype=float) - ell * n) / (sigma * math.sqrt(n))


# ---------------------------------------------------------------------------
# normality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CltReport:
    n: int | None
    samples: int
    ell: float | None
    sigma: float | None
    mean: float
    std: float
    skewness: float
    excess_kurtosis: float
    ks_stat: float
    ks_pvalue: float
    ad_stat: float
    alpha: float
    ks_rejected: bool
    ad_rejected: bool
    lattice_span: int = 0
    ks_stat_smoothed: float | None = None
    ks_pvalue_smoothed: float | None = None

    @property
    def rejected(self) -> bool:
        """KS verdict: on the smoothed sample when the data are lattice-valued."""
        if self.ks_pvalue_smoothed is not None:
            return self.ks_pvalue_smoothed < self.alpha
        return self.ks_rejected

    def as_dict(self) -> dict:
        return {**asdict(self), "rejected": self.rejected}

    def text(self) -> str:
        rows = list(self.as_dict().items())
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in rows)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def ks_normal(z) -> tuple[float, float]:
    """One-sample KS statistic and exact p-value against N(0, 1)."""
    x = np.sort(np.asarray(z, dtype=float))
    m = x.size
    cdf = normal_cdf(x)
    i = np.arange(1, m + 1)
    d = max(float(np.max(i / m - cdf)), float(np.max(cdf - (i - 1) / m)))
    return d, float(sps.kstwo.sf(d, m))


def anderson_darling_normal(z) -> float:
    """A^2 against the fully specified N(0, 1)."""
    x = np.sort(np.asarray(z, dtype=float))
    m = x.size
    i = np.arange(1, m + 1)
    log_f = special.log_ndtr(x)
    log_sf = special.log_ndtr(-x[::-1])
    return float(-m - np.sum((2 * i - 1) * (log_f + log_sf)) / m)


def normality_test(z, n: int | None = None, ell: float | None = None, sigma: float | None = None,
                   alpha: float = 0.01, min_samples: int = 1000) -> CltReport:
    z = np.asarray(z, dtype=float)
    if z.size < min_samples:
        raise InsufficientSamplesError(f"normality test needs at least {min_samples} samples, got {z.size}")
    if not np.all(np.isfinite(z)):
        raise DegenerateSampleError("non-finite standardized values")
    if np.ptp(z) == 0:
        raise DegenerateSampleError("constant sample")
    acc = accumulate(z.tolist(), 4)
    d, p = ks_normal(z)
    a2 = anderson_darling_normal(z)
    return CltReport(
        n=n, samples=int(z.size), ell=ell, sigma=sigma,
        mean=acc.mean, std=math.sqrt(acc.variance()),
        skewness=acc.skewness(), excess_kurtosis=acc.excess_kurtosis(),
        ks_stat=d, ks_pvalue=p, ad_stat=a2, alpha=alpha,
        ks_rejected=p < alpha, ad_rejected=a2 > AD_CRITICAL_1PCT,
    )


def lattice_span(values) -> int:
    """Largest ``s`` with every value in ``values[0] + s Z`` (0 if constant or non-integral)."""
    vals = np.asarray(values)
    if vals.size == 0 or not np.issubdtype(vals.dtype, np.integer):
        return 0
    return int(np.gcd.reduce(np.abs(vals - vals[0])))


def smooth_lattice(q_samples, n: int, ell: float, sigma: float, span: int, rng) -> np.ndarray:
    """Continuity-corrected standardization of lattice data.

    Each value is spread uniformly over its lattice cell, ``q + span * U``
    with ``U ~ U(-1/2, 1/2)``, and the added variance ``span^2 / 12`` is
    folded into the scale.  The KS null assumes a continuous law; without
    this the atoms alone put a floor of about half an atom's mass under
    the statistic.
    """
    q = np.asarray(q_samples, dtype=float)
    u = rng.random(q.size) - 0.5
    return (q + span * u - ell * n) / math.sqrt(sigma * sigma * n + span * span / 12.0)


def clt_report(q_samples, n: int, ell: float, sigma: float, jitter_rng=None, **kw) -> CltReport:
    """Normality report for ``(Q_n - ell n) / (sigma sqrt n)``.

    With ``jitter_rng`` and lattice-valued ``Q_n`` the KS test is repeated on
    the continuity-corrected sample (see :func:`smooth_lattice`).
    """
    q = np.asarray(q_samples)
    report = normality_test(standardize(q, n, ell, sigma), n=n, ell=ell, sigma=sigma, **kw)
    span = lattice_span(q)
    if span == 0 or jitter_rng is None:
        return report
    d, p = ks_normal(smooth_lattice(q, n, ell, sigma, span, jitter_rng))
    return replace(report, lattice_span=span, ks_stat_smoothed=d, ks_pvalue_smoothed=p)


# ---------------------------------------------------------------------------
# defect growth
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthFit:
    """Moments ``E|Psi_{m,n}|^p`` along a grid and two growth fits.

    ``exponent`` is the log-log least-squares slope of moment against ``n``
    (``None`` below three usable points); ``coeff`` fits
    ``moment = coeff * log(m + n)^(2p)``.  ``residuals`` are the log-log
    residuals (``nan`` where the moment is zero).
    """

    p: int
    grid: tuple
    moments: tuple
    counts: tuple
    exponent: float | None
    intercept: float | None
    coeff: float | None
    residuals: tuple

    def rows(self):
        for (m, n), mom, res in zip(self.grid, self.moments, self.residuals):
            yield n, self.p, mom, self.exponent, self.coeff, res


def loglog_fit(xs, ys) -> tuple[float, float, np.ndarray]:
    """Least squares ``log y = a log x + b``; returns ``(a, b, residuals)``."""
    lx, ly = np.log(np.asarray(xs, dtype=float)), np.log(np.asarray(ys, dtype=float))
    a, b = np.polyfit(lx, ly, 1)
    return float(a), float(b), ly - (a * lx + b)


def defect_moment_table(records, ps=(1, 2)) -> dict[int, GrowthFit]:
    """Group defect records by ``(m, n)`` and fit moment growth for each ``p``."""
    ps = tuple(int(p) for p in ps)
    if any(p < 1 for p in ps):
        raise ValueError("moment orders must be positive")
    order = max(ps)
    groups: dict = defaultdict(lambda: MomentAccumulator(order))
    for r in records:
        groups[(r.m, r.n)].add(abs(int(r.psi)))
    grid = tuple(sorted(groups))
    out = {}
    for p in ps:
        moments = tuple(groups[k].moment(p) for k in grid)
        counts = tuple(groups[k].count for k in grid)
        use = [i for i, (k, mom) in enumerate(zip(grid, moments)) if k[1] > 0 and mom > 0]
        res = [math.nan] * len(grid)
        exponent = intercept = None
        if len(use) >= 3:
            exponent, intercept, r = loglog_fit([grid[i][1] for i in use], [moments[i] for i in use])
            for i, v in zip(use, r):
                res[i] = float(v)
        logs = np.array([math.log(m + n) ** (2 * p) if m + n > 1 else 0.0 for m, n in grid])
        mom = np.array(moments)
        denom = float(np.dot(logs, logs))
        coeff = float(np.dot(logs, mom) / denom) if denom > 0 else None
        out[p] = GrowthFit(p, grid, moments, counts, exponent, intercept, coeff, tuple(res))
    return out


def strictly_decreasing(values) -> bool:
    v = list(values)
    return all(a > b for a, b in zip(v, v[1:]))


# ---------------------------------------------------------------------------
# tracking
# ---------------------------------------------------------------------------


def tracking_stats(base, path, k0: float | None = None, window: int | None = None) -> tuple[int, int]:
    """Max distance of ``path`` from the geodesic ``path[0] -> path[-1]`` and
    the count of pairs ``j - i >= window`` with ``k0 * d(path_i, path_j) < j - i``.

    Exact on tree bases; on higher-rank lattices the geodesic used is the
    coordinate-order one.  ``k0=None`` skips the pair count (returns -1).
    """
    path = list(path)
    if not path:
        return 0, 0
    seg = base.geodesic(path[0], path[-1])
    dev = max(distance_to_segment(base, p, seg) for p in path)
    if k0 is None:
        return dev, -1
    if window is None:
        raise ValueError("window is required with k0")
    viol = 0
    d = base.distance
    n = len(path)
    for i in range(n):
        for j in range(i + window, n):
            if k0 * d(path[i], path[j]) < j - i:
                viol += 1
    return dev, viol


@dataclass(frozen=True)
class TrackingSummary:
    n: int
    samples: int
    median_deviation: float
    mean_deviation: float
    max_deviation: int
    slow_fraction: float
    violation_fraction: float | None
    extra: dict = field(default_factory=dict)


def summarize_tracking(records, slow_factor: float = 10.0) -> dict[int, TrackingSummary]:
    """Per-horizon summaries; ``slow_fraction`` is the share with ``d_H(Zbar_n, id) <= n / slow_factor``."""
    by_n: dict = defaultdict(list)
    for r in records:
        by_n[r.n].append(r)
    out = {}
    for n in sorted(by_n):
        rs = by_n[n]
        dev = np.array([r.max_deviation for r in rs])
        slow = float(np.mean([r.base_distance <= n / slow_factor for r in rs]))
        viol = [r.violations for r in rs if r.violations >= 0]
        vf = float(np.mean([v > 0 for v in viol])) if viol else None
        out[n] = TrackingSummary(n, len(rs), float(np.median(dev)), float(dev.mean()), int(dev.max()), slow, vf)
    return out
