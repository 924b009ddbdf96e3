"""The five 2x2 pseudo-Hermitian random-matrix families.

Each family is a structured 2x2 form H(params) with real parameters, an
invertible Hermitian metric eta satisfying eta H eta^-1 = H^dagger, and
(where known) a metric zeta for the diagonalizer.  Matrices are plain 2x2
complex ndarrays.

Families and their Gaussian parameter widths
--------------------------------------------
Parameters are drawn i.i.d. zero-mean Gaussian from the matrix weight
exp(-tr(H^dagger H) / (2 sigma^2)) evaluated on the family's parametrization.
Writing out tr(H^dagger H) per family gives the per-parameter variances:

    F1_ANTIDIAG_IMAG  [[a, -i b], [i c, a]]          2a^2+b^2+c^2
                      -> a: sigma^2/2; b, c: sigma^2
    F2_DIAG_PARITY    [[a+c, i b], [i b, a-c]]       2(a^2+b^2+c^2)
                      -> a, b, c: sigma^2/2
    F3_EPSILON_SCALED [[a, -i e c], [i c/e, b]]      a^2+b^2+(e^2+e^-2)c^2
                      -> a, b: sigma^2; c: sigma^2/(e^2+e^-2)
    F4_COMPLEX_DIAG   [[a+i b, c], [d, a-i b]]       2a^2+2b^2+c^2+d^2
                      -> a, b: sigma^2/2; c, d: sigma^2
    F5_INDEFINITE     [[a+b, d+i c], [-d+i c, a-b]]  2(a^2+b^2+c^2+d^2)
                      -> a, b, c, d: sigma^2/2

Only F1 has a closed spacing law: P(S) = S/(pi sigma^2) K0(S^2 / 4 sigma^2),
with eigenvalues a +- sqrt(bc) (real for bc > 0, a conjugate pair otherwise).
The remaining families are sampled for empirical histograms only.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .specfun import bessel_k0
from .stats import GridCdf

__all__ = [
    "FamilyTag",
    "Family2x2",
    "MetricPair",
    "sample_family",
    "sample_params",
    "family_matrix",
    "eigenvalues2",
    "metric_of",
    "diagonalizer",
    "pseudo_hermiticity_residual",
    "spacing_pdf_f1",
    "spacing_cdf_f1",
    "spacing_samples_f1",
    "F1Spacings",
]


class FamilyTag(enum.Enum):
    F1_ANTIDIAG_IMAG = "f1"
    F2_DIAG_PARITY = "f2"
    F3_EPSILON_SCALED = "f3"
    F4_COMPLEX_DIAG = "f4"
    F5_INDEFINITE = "f5"


@dataclass(frozen=True)
class Family2x2:
    """A family tag plus its fixed structural parameters (epsilon for F3)."""

    tag: FamilyTag
    epsilon: float = 1.0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class MetricPair:
    """Metric for H and, when known, the metric for its diagonalizer."""

    eta: np.ndarray
    zeta: np.ndarray | None


_PARAM_NAMES = {
    FamilyTag.F1_ANTIDIAG_IMAG: ("a", "b", "c"),
    FamilyTag.F2_DIAG_PARITY: ("a", "b", "c"),
    FamilyTag.F3_EPSILON_SCALED: ("a", "b", "c"),
    FamilyTag.F4_COMPLEX_DIAG: ("a", "b", "c", "d"),
    FamilyTag.F5_INDEFINITE: ("a", "b", "c", "d"),
}


def param_sigmas(family: Family2x2, sigma: float) -> dict[str, float]:
    """Per-parameter Gaussian widths from the family's matrix weight."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    tag = family.tag
    root2 = math.sqrt(2.0)
    if tag is FamilyTag.F1_ANTIDIAG_IMAG:
        return {"a": sigma / root2, "b": sigma, "c": sigma}
    if tag is FamilyTag.F2_DIAG_PARITY:
        return {"a": sigma / root2, "b": sigma / root2, "c": sigma / root2}
    if tag is FamilyTag.F3_EPSILON_SCALED:
        e = family.epsilon
        return {
            "a": sigma,
            "b": sigma,
            "c": sigma / math.sqrt(e * e + 1.0 / (e * e)),
        }
    if tag is FamilyTag.F4_COMPLEX_DIAG:
        return {"a": sigma / root2, "b": sigma / root2, "c": sigma, "d": sigma}
    if tag is FamilyTag.F5_INDEFINITE:
        return {
            "a": sigma / root2,
            "b": sigma / root2,
            "c": sigma / root2,
            "d": sigma / root2,
        }
    raise ValueError(f"unknown family tag {tag}")


def sample_params(
    family: Family2x2, sigma: float, count: int, rng: np.random.Generator
) -> dict[str, np.ndarray]:
    """Draw ``count`` independent parameter records for a family."""
    if count < 1:
        raise ValueError("count must be >= 1")
    widths = param_sigmas(family, sigma)
    return {name: rng.normal(0.0, w, size=count) for name, w in widths.items()}


def family_matrix(family: Family2x2, **params: float) -> np.ndarray:
    """Build the structured 2x2 matrix of a family from its real parameters."""
    tag = family.tag
    a = params["a"]
    if tag is FamilyTag.F1_ANTIDIAG_IMAG:
        b, c = params["b"], params["c"]
        return np.array([[a, -1j * b], [1j * c, a]], dtype=complex)
    if tag is FamilyTag.F2_DIAG_PARITY:
        b, c = params["b"], params["c"]
        return np.array([[a + c, 1j * b], [1j * b, a - c]], dtype=complex)
    if tag is FamilyTag.F3_EPSILON_SCALED:
        b, c = params["b"], params["c"]
        e = family.epsilon
        return np.array([[a, -1j * e * c], [1j * c / e, b]], dtype=complex)
    if tag is FamilyTag.F4_COMPLEX_DIAG:
        b, c, d = params["b"], params["c"], params["d"]
        return np.array([[a + 1j * b, c], [d, a - 1j * b]], dtype=complex)
    if tag is FamilyTag.F5_INDEFINITE:
        b, c, d = params["b"], params["c"], params["d"]
        return np.array([[a + b, d + 1j * c], [-d + 1j * c, a - b]], dtype=complex)
    raise ValueError(f"unknown family tag {tag}")


def sample_family(family: Family2x2, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """One random matrix of the family under the Gaussian matrix weight."""
    draws = sample_params(family, sigma, 1, rng)
    return family_matrix(family, **{k: float(v[0]) for k, v in draws.items()})


def eigenvalues2(m: np.ndarray) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 matrix via the trace/determinant closed form.

    Returns (E+, E-) with E+ carrying the principal branch of the square
    root; a vanishing discriminant yields a repeated eigenvalue.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("eigenvalues2 expects a 2x2 matrix")
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = cmath.sqrt(tr * tr - 4.0 * det)
    return (0.5 * (tr + disc), 0.5 * (tr - disc))


def metric_of(family: Family2x2) -> MetricPair:
    """The family's metric eta and, where known, the diagonalizer metric zeta."""
    tag = family.tag
    if tag is FamilyTag.F1_ANTIDIAG_IMAG:
        return MetricPair(
            eta=np.array([[0, 1j], [-1j, 0]], dtype=complex),
            zeta=np.array([[0, 1], [1, 0]], dtype=complex),
        )
    if tag is FamilyTag.F2_DIAG_PARITY:
        return MetricPair(eta=np.diag([1.0 + 0j, -1.0]), zeta=None)
    if tag is FamilyTag.F3_EPSILON_SCALED:
        e = family.epsilon
        eta = np.diag([1.0 / e + 0j, e])
        return MetricPair(eta=eta, zeta=eta.copy())
    if tag is FamilyTag.F4_COMPLEX_DIAG:
        return MetricPair(eta=np.array([[0, 1], [1, 0]], dtype=complex), zeta=None)
    if tag is FamilyTag.F5_INDEFINITE:
        eta = np.diag([1.0 + 0j, -1.0])
        return MetricPair(eta=eta, zeta=eta.copy())
    raise ValueError(f"unknown family tag {tag}")


def diagonalizer(family: Family2x2, *, r: float | None = None, theta: float | None = None) -> np.ndarray:
    """The family's reference diagonalizer.

    F1 takes r = sqrt(c/b) (defined for bc > 0); F2, F3 and F5 take an angle
    theta; F4 takes both r and theta.  F4's form is carried as reference
    data only: its parameters are not tied to the sampled matrix here, so it
    is not a computational device.
    """
    tag = family.tag
    if tag is FamilyTag.F1_ANTIDIAG_IMAG:
        if r is None or r < 0:
            raise ValueError("F1 diagonalizer needs r = sqrt(c/b) >= 0")
        return np.array([[1.0, 1j / r], [1j * r, 1.0]], dtype=complex) / math.sqrt(2.0)
    if tag is FamilyTag.F2_DIAG_PARITY:
        if theta is None or not -math.pi / 4 < theta < math.pi / 4:
            raise ValueError("F2 diagonalizer needs |theta| < pi/4")
        ct, st = math.cos(theta), math.sin(theta)
        return np.array([[ct, 1j * st], [-1j * st, ct]], dtype=complex) / math.sqrt(
            math.cos(2 * theta)
        )
    if tag is FamilyTag.F3_EPSILON_SCALED:
        if theta is None:
            raise ValueError("F3 diagonalizer needs theta")
        e = family.epsilon
        ct, st = math.cos(theta), math.sin(theta)
        return np.array([[ct, 1j * e * st], [-1j * st / e, ct]], dtype=complex)
    if tag is FamilyTag.F4_COMPLEX_DIAG:
        if r is None or theta is None:
            raise ValueError("F4 diagonalizer needs r and theta")
        w = r * cmath.exp(1j * theta) / math.sin(theta)
        return np.array([[w, -w], [1.0, 1.0]], dtype=complex)
    if tag is FamilyTag.F5_INDEFINITE:
        if theta is None:
            raise ValueError("F5 diagonalizer needs theta")
        ct, st = math.cos(theta), math.sin(theta)
        return np.array(
            [[1j * ct, cmath.exp(1j * theta) * st], [cmath.exp(-1j * theta) * st, -1j * ct]],
            dtype=complex,
        )
    raise ValueError(f"unknown family tag {tag}")


def pseudo_hermiticity_residual(m: np.ndarray, eta: np.ndarray) -> float:
    """Max-entry |eta m eta^-1 - m^dagger|; zero iff m is eta-pseudo-Hermitian."""
    m = np.asarray(m, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    det = eta[0, 0] * eta[1, 1] - eta[0, 1] * eta[1, 0]
    if abs(det) < 1e-300:
        raise ValueError("metric eta must be invertible")
    eta_inv = np.array([[eta[1, 1], -eta[0, 1]], [-eta[1, 0], eta[0, 0]]], dtype=complex) / det
    return float(np.max(np.abs(eta @ m @ eta_inv - m.conj().T)))


# ---------------------------------------------------------------------------
# F1 spacing law
# ---------------------------------------------------------------------------


def spacing_pdf_f1(s: float, sigma: float) -> float:
    """Level-spacing density of F1: P(S) = S/(pi sigma^2) K0(S^2 / 4 sigma^2).

    P(0) = 0 by continuity (S K0(S^2) -> 0 despite the log divergence of K0).
    As S -> 0 the density behaves like (2/pi) S ln(1/S): level repulsion with
    a non-algebraic logarithmic factor.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    s = float(s)
    if s < 0:
        raise ValueError("spacing must be nonnegative")
    if s == 0.0:
        return 0.0
    return s / (math.pi * sigma * sigma) * bessel_k0(s * s / (4.0 * sigma * sigma))


_F1_CDF: GridCdf | None = None


def spacing_cdf_f1(s, sigma: float = 1.0):
    """CDF of the F1 spacing law, cached by quadrature at sigma=1 and rescaled
    through S -> S/sigma (the law is a pure scale family)."""
    global _F1_CDF
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if _F1_CDF is None:
        _F1_CDF = GridCdf(lambda u: spacing_pdf_f1(u, 1.0), hi=25.0, intervals=4096)
    return _F1_CDF(np.asarray(s, dtype=float) / sigma)


@dataclass(frozen=True)
class F1Spacings:
    """|E+ - E-| of F1 draws, split by eigenvalue type.

    ``real`` holds draws with bc > 0 (two real eigenvalues; the sector the
    K0 law describes), ``conjugate`` holds bc <= 0 draws, where the spacing
    is the Euclidean distance 2|Im E| across the conjugate pair.
    """

    real: np.ndarray
    conjugate: np.ndarray

    @property
    def all_values(self) -> np.ndarray:
        return np.concatenate([self.real, self.conjugate])


def spacing_samples_f1(count: int, sigma: float, rng: np.random.Generator) -> F1Spacings:
    """Spacings |E+ - E-| = 2 sqrt(|bc|) for ``count`` independent F1 draws."""
    if count < 1:
        raise ValueError("count must be >= 1")
    fam = Family2x2(FamilyTag.F1_ANTIDIAG_IMAG)
    draws = sample_params(fam, sigma, count, rng)
    bc = draws["b"] * draws["c"]
    spacing = 2.0 * np.sqrt(np.abs(bc))
    real_sector = bc > 0
    return F1Spacings(real=spacing[real_sector], conjugate=spacing[~real_sector])
