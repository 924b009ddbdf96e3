"""Random real circulant (cyclic) matrices and their spacing statistics.

A circulant is stored as its first row ``a[0..n-1]``; row r of the full
matrix is the cyclic right-shift of the first row by r positions.  Circulants
are pseudo-orthogonal with respect to the index-reversal permutation
("generalized parity"), their eigenvalues are the unnormalized Fourier
transform of the first row, and for a real first row the spectrum is closed
under complex conjugation with the pairing l <-> n-l (0-based; position 0,
and position n/2 for even n, are self-paired and real).

Spacings between eigenvalues are Euclidean distances in the complex plane and
come in three classes:

* ``cc``      -- the two members of a conjugate pair,
* ``rc``      -- a real eigenvalue against a complex one,
* ``generic`` -- two complex eigenvalues that are not mutual conjugates.

Under the Gaussian ensemble weight exp(-A tr(M^T M)) the normalized (unit
mean) laws are exact for every matrix size: a half-Gaussian for ``cc``, a
Bessel-I0 modulated law for ``rc`` and the Rayleigh distribution for
``generic``.  All qualifying index pairs contribute one spacing each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import bessel_i0, dft, hyp2f1_series

__all__ = [
    "Circulant",
    "Spectrum",
    "SpacingSample",
    "generalized_parity",
    "pseudo_orthogonality_residual",
    "eigenvalues",
    "batch_spectra",
    "trace_norm",
    "sample_ensemble",
    "sample_rows",
    "classify_spacings",
    "classify_spacings_batch",
    "jpdf_log",
    "pdf_cc",
    "pdf_rc",
    "pdf_generic",
    "RC_SHAPE_CONST",
]

# 2F1(3/4, 5/4; 1; 1/4): shape constant of the real-complex spacing law.
RC_SHAPE_CONST = hyp2f1_series(0.75, 1.25, 1.0, 0.25)


@dataclass(frozen=True)
class Circulant:
    """Real cyclic matrix, stored as its first row."""

    first_row: np.ndarray

    def __post_init__(self):
        row = np.ascontiguousarray(self.first_row, dtype=float)
        if row.ndim != 1 or row.size < 2:
            raise ValueError("Circulant needs a 1-d first row of length >= 2")
        if not np.all(np.isfinite(row)):
            raise ValueError("Circulant entries must be finite")
        object.__setattr__(self, "first_row", row)

    @property
    def n(self) -> int:
        return self.first_row.size

    def dense(self) -> np.ndarray:
        """Full n x n matrix; row r is the right-shift of the first row by r."""
        n = self.n
        i, j = np.indices((n, n))
        return self.first_row[(j - i) % n]


@dataclass(frozen=True)
class SpacingSample:
    """Scalar spacings of one class, optionally rescaled to unit mean."""

    klass: str  # "cc" | "rc" | "generic"
    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("SpacingSample values must be 1-d")
        if vals.size and vals.min() < 0:
            raise ValueError("spacings are nonnegative")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with their conjugation pairing.

    ``partner[i] == i`` marks a real eigenvalue; otherwise ``partner[i]`` is
    the index of the complex-conjugate partner of ``eigs[i]``.
    """

    eigs: np.ndarray
    partner: np.ndarray

    def __post_init__(self):
        eigs = np.ascontiguousarray(self.eigs, dtype=complex)
        partner = np.ascontiguousarray(self.partner, dtype=int)
        if eigs.shape != partner.shape or eigs.ndim != 1:
            raise ValueError("eigs and partner must be 1-d arrays of equal length")
        if not np.array_equal(partner[partner], np.arange(eigs.size)):
            raise ValueError("partner must be an involution")
        object.__setattr__(self, "eigs", eigs)
        object.__setattr__(self, "partner", partner)

    @property
    def n(self) -> int:
        return self.eigs.size

    def real_indices(self) -> np.ndarray:
        return np.flatnonzero(self.partner == np.arange(self.n))

    def pair_indices(self) -> list[tuple[int, int]]:
        """Each conjugate pair once, as (i, partner_of_i) with i < partner."""
        idx = np.arange(self.n)
        sel = idx < self.partner
        return list(zip(idx[sel].tolist(), self.partner[sel].tolist()))


def _circulant_partner(n: int) -> np.ndarray:
    return (-np.arange(n)) % n


def generalized_parity(n: int) -> np.ndarray:
    """Index-reversal permutation matrix: 1 at (0,0) and at (j, n-j), j >= 1.

    Squares to the identity, which is what lets it act as a parity.
    """
    if n < 2:
        raise ValueError("generalized parity needs n >= 2")
    eta = np.zeros((n, n))
    eta[0, 0] = 1.0
    j = np.arange(1, n)
    eta[j, n - j] = 1.0
    return eta


def pseudo_orthogonality_residual(c: Circulant) -> float:
    """Max-entry |eta M eta^-1 - M^T|; zero for every circulant.

    eta is its own inverse, so the similarity is a plain two-sided product.
    """
    m = c.dense()
    eta = generalized_parity(c.n)
    return float(np.max(np.abs(eta @ m @ eta - m.T)))


def eigenvalues(c: Circulant) -> Spectrum:
    """Spectrum of a circulant: the unnormalized Fourier transform of its row.

    eigs[0] is the row sum (always real); for even n, eigs[n/2] is the
    alternating sum (also real); eigs[l] and eigs[n-l] are conjugates.
    """
    return Spectrum(eigs=dft(c.first_row), partner=_circulant_partner(c.n))


def batch_spectra(rows: np.ndarray) -> np.ndarray:
    """Eigenvalues of many circulants at once: (count, n) -> (count, n).

    One matrix product against the transform matrix; agrees with
    per-row ``eigenvalues`` and exists because ensemble runs are the hot path.
    """
    rows = np.ascontiguousarray(rows, dtype=float)
    if rows.ndim != 2:
        raise ValueError("batch_spectra expects a (count, n) array")
    n = rows.shape[1]
    k = np.arange(n)
    w = np.exp((2j * np.pi / n) * np.outer(k, k))
    return rows.astype(complex) @ w


def trace_norm(c: Circulant) -> float:
    """tr(M^T M) = n * sum_p a_p^2; equals sum_l |E_l|^2 by Parseval."""
    return c.n * float(np.dot(c.first_row, c.first_row))


def entry_sigma(n: int, weight: float) -> float:
    """Per-entry standard deviation under the ensemble weight exp(-A tr M^T M).

    The exponent is -A * n * sum_p a_p^2, i.e. each entry is a zero-mean
    Gaussian with variance 1/(2 n A).
    """
    if weight <= 0:
        raise ValueError("ensemble weight A must be positive")
    return 1.0 / math.sqrt(2.0 * n * weight)


def sample_rows(n: int, weight: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """First rows of ``count`` independent draws, as a (count, n) array."""
    if n < 2:
        raise ValueError("need n >= 2")
    if count < 1:
        raise ValueError("need count >= 1")
    return rng.normal(0.0, entry_sigma(n, weight), size=(count, n))


def sample_ensemble(n: int, weight: float, count: int, rng: np.random.Generator):
    """Yield ``count`` circulants drawn from the Gaussian ensemble."""
    for row in sample_rows(n, weight, count, rng):
        yield Circulant(row)


def classify_spacings(spec: Spectrum) -> tuple[SpacingSample, SpacingSample, SpacingSample]:
    """Split all qualifying eigenvalue pairs of one spectrum into cc/rc/generic.

    Every unordered pair contributes at most once: conjugate pairs to ``cc``,
    (real, complex) pairs to ``rc``, non-conjugate complex pairs to
    ``generic``.  Real-real pairs belong to no class and are dropped.
    """
    cc, rc, gen = _classify_arrays(spec.eigs[None, :], spec.partner)
    return (
        SpacingSample("cc", cc),
        SpacingSample("rc", rc),
        SpacingSample("generic", gen),
    )


def classify_spacings_batch(
    spectra: np.ndarray, partner: np.ndarray | None = None
) -> tuple[SpacingSample, SpacingSample, SpacingSample]:
    """Pooled spacing classes over a (count, n) batch sharing one pairing."""
    spectra = np.ascontiguousarray(spectra, dtype=complex)
    if partner is None:
        partner = _circulant_partner(spectra.shape[1])
    cc, rc, gen = _classify_arrays(spectra, partner)
    return (
        SpacingSample("cc", cc),
        SpacingSample("rc", rc),
        SpacingSample("generic", gen),
    )


def _classify_arrays(spectra: np.ndarray, partner: np.ndarray):
    n = spectra.shape[1]
    idx = np.arange(n)
    real_idx = np.flatnonzero(partner == idx)
    lead = np.flatnonzero(idx < partner)  # one representative per pair
    comp_idx = np.flatnonzero(partner != idx)  # every complex eigenvalue

    cc = np.abs(spectra[:, lead] - spectra[:, partner[lead]]).ravel()
    rc = np.abs(
        spectra[:, real_idx][:, :, None] - spectra[:, comp_idx][:, None, :]
    ).ravel()

    iu, ju = np.triu_indices(comp_idx.size, k=1)
    not_conj = partner[comp_idx[iu]] != comp_idx[ju]
    gen = np.abs(
        spectra[:, comp_idx[iu[not_conj]]] - spectra[:, comp_idx[ju[not_conj]]]
    ).ravel()
    return cc, rc, gen


def jpdf_log(spec: Spectrum, weight: float, atol: float = 1e-9) -> float:
    """Log of the unnormalized eigenvalue density of the Gaussian ensemble.

    The exponent is -A (sum over self-paired E_i^2 + sum over conjugate pairs
    2 E_i E_partner).  For a spectrum from a real circulant every product
    E_i E_partner is |E_i|^2, so the exponent is real; a spectrum violating
    the pairing makes it complex and is rejected.
    """
    if weight <= 0:
        raise ValueError("ensemble weight A must be positive")
    eigs = spec.eigs
    scale = max(1.0, float(np.max(np.abs(eigs))) if eigs.size else 1.0)
    acc = 0.0 + 0.0j
    for i, j in enumerate(spec.partner):
        if i == int(j):
            acc += eigs[i] * eigs[i]
        else:
            acc += eigs[i] * eigs[int(j)]
    if abs(acc.imag) > atol * scale * scale:
        raise ValueError("spectrum is inconsistent with the conjugation pairing")
    return -weight * acc.real


# ---------------------------------------------------------------------------
# Exact spacing laws (unit-mean normalized)
# ---------------------------------------------------------------------------


def pdf_cc(z: float) -> float:
    """Half-Gaussian law for conjugate-pair spacings: (2/pi) exp(-z^2/pi)."""
    z = float(z)
    if z < 0:
        raise ValueError("spacing must be nonnegative")
    return (2.0 / math.pi) * math.exp(-z * z / math.pi)


def _i0_scaled(x: float) -> float:
    """exp(-x) I0(x); asymptotic expansion past the overflow range of I0."""
    if x <= 600.0:
        return math.exp(-x) * bessel_i0(x)
    inv8 = 1.0 / (8.0 * x)
    series = 1.0 + inv8 + 4.5 * inv8 * inv8 + 37.5 * inv8 * inv8 * inv8
    return series / math.sqrt(2.0 * math.pi * x)


def pdf_rc(z: float) -> float:
    """Bessel-I0 law for real-complex spacings.

    p(z) = (3 sqrt(3) pi / 16) c^2 z exp(-(3 pi/16) c^2 z^2)
           * I0((3 pi/32) c^2 z^2),   c = 2F1(3/4, 5/4; 1; 1/4).

    The exp/I0 product is evaluated in scaled form so large z underflows
    gracefully instead of overflowing I0.
    """
    z = float(z)
    if z < 0:
        raise ValueError("spacing must be nonnegative")
    c2 = RC_SHAPE_CONST * RC_SHAPE_CONST
    amp = (3.0 * math.sqrt(3.0) * math.pi / 16.0) * c2
    p = (3.0 * math.pi / 16.0) * c2
    q = (3.0 * math.pi / 32.0) * c2
    u = z * z
    # exp(-p u) I0(q u) = exp((q - p) u) * [exp(-q u) I0(q u)], both factors <= 1
    return amp * z * math.exp((q - p) * u) * _i0_scaled(q * u)


def pdf_generic(s: float) -> float:
    """Rayleigh law (unit mean) for non-conjugate complex pair spacings."""
    s = float(s)
    if s < 0:
        raise ValueError("spacing must be nonnegative")
    return (math.pi * s / 2.0) * math.exp(-math.pi * s * s / 4.0)
