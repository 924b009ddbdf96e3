"""Empirical-distribution utilities: histograms, unit-mean rescaling,
Kolmogorov-Smirnov distances, and the reference CDFs of the three spacing
laws.

The half-Gaussian and Rayleigh laws have closed-form CDFs; the Bessel-I0 law
does not, so its CDF is built once by adaptive quadrature on a 2048-interval
grid and evaluated by monotone (linear) interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import circulant
from .circulant import SpacingSample
from .specfun import erf

__all__ = [
    "Histogram",
    "GofReport",
    "histogram",
    "merge_histograms",
    "normalize_unit_mean",
    "ks_statistic",
    "ks_two_sample",
    "cdf_cc",
    "cdf_rc",
    "cdf_generic",
    "adaptive_simpson",
    "GridCdf",
]


@dataclass(frozen=True)
class Histogram:
    """Counts over half-open bins [e_i, e_{i+1}); out-of-range values are
    dropped from the bins but kept in ``n_out`` so totals stay auditable."""

    edges: np.ndarray
    counts: np.ndarray
    total: int
    n_out: int
    density_mode: bool = False

    def __post_init__(self):
        edges = np.ascontiguousarray(self.edges, dtype=float)
        counts = np.ascontiguousarray(self.counts, dtype=np.int64)
        if edges.ndim != 1 or edges.size < 2:
            raise ValueError("need at least 2 edges")
        if np.any(np.diff(edges) <= 0):
            raise ValueError("edges must be strictly increasing")
        if counts.size != edges.size - 1:
            raise ValueError("counts must have one entry per bin")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "counts", counts)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def densities(self) -> np.ndarray:
        """Per-bin density; integrates to the in-range fraction of the data."""
        if self.total == 0:
            return np.zeros_like(self.widths)
        return self.counts / (self.total * self.widths)


@dataclass(frozen=True)
class GofReport:
    """Result of a one-sample KS comparison against a reference CDF."""

    ks_distance: float
    n: int
    pass_threshold: float
    passed: bool
    label: str = ""
    reference_only: bool = False

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "ks_distance": self.ks_distance,
            "n": self.n,
            "pass_threshold": self.pass_threshold,
            "passed": self.passed,
            "reference_only": self.reference_only,
        }


def histogram(sample, edges) -> Histogram:
    """Bin a sample into half-open bins; a value equal to the first edge lands
    in the first bin, a value equal to the last edge is out of range."""
    sample = np.ascontiguousarray(sample, dtype=float)
    edges = np.ascontiguousarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise ValueError("need at least 2 edges")
    if np.any(np.diff(edges) <= 0):
        raise ValueError("edges must be strictly increasing")
    nbins = edges.size - 1
    idx = np.searchsorted(edges, sample, side="right") - 1
    in_range = (idx >= 0) & (idx < nbins)
    counts = np.bincount(idx[in_range], minlength=nbins)
    return Histogram(
        edges=edges,
        counts=counts,
        total=sample.size,
        n_out=int(sample.size - in_range.sum()),
    )


def merge_histograms(a: Histogram, b: Histogram) -> Histogram:
    """Merge two histograms over identical edges; equals histogramming the
    concatenated sample (associative and commutative)."""
    if not np.array_equal(a.edges, b.edges):
        raise ValueError("histograms must share identical edges")
    return Histogram(
        edges=a.edges,
        counts=a.counts + b.counts,
        total=a.total + b.total,
        n_out=a.n_out + b.n_out,
    )


def normalize_unit_mean(sample: SpacingSample) -> SpacingSample:
    """Rescale a spacing sample so its mean is exactly 1."""
    vals = sample.values
    if vals.size == 0:
        raise ValueError("cannot normalize an empty sample")
    mean = float(vals.mean())
    if mean <= 0.0:
        raise ValueError("cannot normalize a sample with nonpositive mean")
    return SpacingSample(sample.klass, vals / mean, normalized=True)


def ks_statistic(sample, cdf, pass_threshold: float = 1.0, label: str = "") -> GofReport:
    """Sup-norm distance between the empirical CDF of a sorted sample and a
    reference CDF.  The sample must already be sorted ascending."""
    x = np.ascontiguousarray(sample, dtype=float)
    if x.size == 0:
        raise ValueError("empty sample")
    if np.any(np.diff(x) < 0):
        raise ValueError("sample must be sorted ascending")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(x.size)
    d = max(float(np.max(f - i / x.size)), float(np.max((i + 1) / x.size - f)))
    return GofReport(
        ks_distance=d,
        n=int(x.size),
        pass_threshold=pass_threshold,
        passed=bool(d < pass_threshold),
        label=label,
    )


def ks_two_sample(x1, x2) -> float:
    """Sup-norm distance between two empirical CDFs."""
    x1 = np.sort(np.ascontiguousarray(x1, dtype=float))
    x2 = np.sort(np.ascontiguousarray(x2, dtype=float))
    if x1.size == 0 or x2.size == 0:
        raise ValueError("empty sample")
    grid = np.concatenate([x1, x2])
    grid.sort(kind="mergesort")
    f1 = np.searchsorted(x1, grid, side="right") / x1.size
    f2 = np.searchsorted(x2, grid, side="right") / x2.size
    return float(np.max(np.abs(f1 - f2)))


# ---------------------------------------------------------------------------
# Quadrature and cached CDFs
# ---------------------------------------------------------------------------


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-11, max_depth: int = 30) -> float:
    """Adaptive Simpson quadrature of a scalar function on [a, b]."""

    def _simpson(lo, flo, hi, fhi, mid, fmid):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def _recurse(lo, flo, hi, fhi, mid, fmid, whole, eps, depth):
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        flm = f(lmid)
        frm = f(rmid)
        left = _simpson(lo, flo, mid, fmid, lmid, flm)
        right = _simpson(mid, fmid, hi, fhi, rmid, frm)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return _recurse(lo, flo, mid, fmid, lmid, flm, left, 0.5 * eps, depth - 1) + _recurse(
            mid, fmid, hi, fhi, rmid, frm, right, 0.5 * eps, depth - 1
        )

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = _simpson(a, fa, b, fb, m, fm)
    return _recurse(a, fa, b, fb, m, fm, whole, tol, max_depth)


class GridCdf:
    """CDF built by per-interval adaptive quadrature of a density, evaluated
    by monotone linear interpolation; clamps to [0, F(hi)] outside the grid."""

    def __init__(self, pdf, hi: float, intervals: int = 2048, tol: float = 1e-11):
        grid = np.linspace(0.0, hi, intervals + 1)
        vals = np.empty_like(grid)
        vals[0] = 0.0
        for i in range(1, grid.size):
            vals[i] = vals[i - 1] + adaptive_simpson(pdf, grid[i - 1], grid[i], tol=tol)
        self.grid = grid
        self.values = np.maximum.accumulate(vals)  # quadrature noise must not break monotonicity

    def __call__(self, x):
        return np.interp(np.asarray(x, dtype=float), self.grid, self.values)


def cdf_cc(z):
    """CDF of the half-Gaussian conjugate-pair law: erf(z / sqrt(pi))."""
    arr = np.asarray(z, dtype=float)
    if arr.ndim == 0:
        return erf(float(arr) / math.sqrt(math.pi))
    out = np.empty(arr.shape, dtype=float)
    flat = arr.ravel()
    dst = out.ravel()
    for i in range(flat.size):
        dst[i] = erf(flat[i] / math.sqrt(math.pi))
    return out


_RC_CDF: GridCdf | None = None


def cdf_rc(z):
    """CDF of the Bessel-I0 real-complex law (cached quadrature grid)."""
    global _RC_CDF
    if _RC_CDF is None:
        _RC_CDF = GridCdf(circulant.pdf_rc, hi=12.0)
    return _RC_CDF(z)


def cdf_generic(s):
    """CDF of the unit-mean Rayleigh law: 1 - exp(-pi s^2 / 4)."""
    arr = np.asarray(s, dtype=float)
    return -np.expm1(-math.pi * arr * arr / 4.0)
