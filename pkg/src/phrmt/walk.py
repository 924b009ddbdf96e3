"""Biased random walks on periodic lattices, driven by circulant transition
matrices, plus the ensemble-averaged relaxation law for disordered rings.

The transition matrix of a nearest-neighbour walk with jump probability w and
right bias p is the circulant with first row (1-w, pw, 0, ..., 0, qw),
q = 1 - p; any doubly stochastic hop row is accepted as well.  Because every
circulant shares the Fourier eigenbasis, time evolution is exact in spectral
form: expand the start distribution in the unitary Fourier basis, scale mode
l by lambda_l^t, and transform back.

For an ensemble of random ring transition matrices, the site-occupation
excess above the uniform state decays, after scaling by the site count, as

    D(t) = C (2/sqrt(pi))^(1+t) gamma((3+t)/2, pi/4),
    C = 1 / (erf(sqrt(pi)/2) - exp(-pi/4)),

which is the t-th moment of the eigenvalue modulus under the radial density
proportional to r^2 exp(-pi r^2 / 4) on [0, 1] (the unit-mean Rayleigh law of
generic complex spacings times the polar measure factor r, restricted to the
stochastic-matrix disk).  A two-term large-t expansion and a Monte Carlo
estimator over synthetic spectra are provided as cross-checks; the stationary
eigenvalue lambda_1 = 1 is excluded from the average by subtracting the
theta = 0 (real-axis) angular mode from the otherwise uniform phase density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circulant import Circulant
from .specfun import erf, lower_incomplete_gamma

__all__ = [
    "WalkConfig",
    "WalkState",
    "transition_matrix",
    "evolve_spectral",
    "entropy",
    "spectral_gap_mixing_time",
    "rmt_decay_closed_form",
    "rmt_decay_asymptotic",
    "excess_occupation",
    "sample_decay_moduli",
    "rmt_decay_monte_carlo",
]

_PROB_TOL = 1e-12

# Normalization of the decay law: 1 / (erf(sqrt(pi)/2) - exp(-pi/4)).
DECAY_NORM = 1.0 / (erf(math.sqrt(math.pi) / 2.0) - math.exp(-math.pi / 4.0))


@dataclass(frozen=True)
class WalkConfig:
    """Ring walk configuration: either (n_sites, w, p) or a general hop row.

    The hop row lists the probability of staying (entry 0) and of hopping
    +k sites (entry k, cyclically); it must be nonnegative and sum to 1.
    """

    n_sites: int
    w: float | None = None
    p: float | None = None
    row: np.ndarray | None = None

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError("need at least 2 sites")
        if self.row is not None:
            row = np.ascontiguousarray(self.row, dtype=float)
            if row.size != self.n_sites:
                raise ValueError("hop row length must equal n_sites")
            if row.min() < 0:
                raise ValueError("hop probabilities must be nonnegative")
            if abs(row.sum() - 1.0) > _PROB_TOL:
                raise ValueError(f"hop row must sum to 1, got {row.sum()!r}")
            object.__setattr__(self, "row", row)
        else:
            if self.w is None or self.p is None:
                raise ValueError("give either a hop row or both w and p")
            if not 0.0 <= self.w <= 1.0:
                raise ValueError("jump probability w must lie in [0, 1]")
            if not 0.0 <= self.p <= 1.0:
                raise ValueError("bias p must lie in [0, 1]")

    def hop_row(self) -> np.ndarray:
        if self.row is not None:
            return self.row.copy()
        n = self.n_sites
        row = np.zeros(n)
        row[0] = 1.0 - self.w
        # += so the degenerate n == 2 ring folds pw and qw onto one neighbour
        row[1 % n] += self.p * self.w
        row[(n - 1) % n] += (1.0 - self.p) * self.w
        return row


@dataclass(frozen=True)
class WalkState:
    """Site-occupation probabilities at an integer time."""

    t: int
    probs: np.ndarray

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("time must be nonnegative")
        probs = np.ascontiguousarray(self.probs, dtype=float)
        if probs.min() < -1e-14:
            raise ValueError("occupation probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > _PROB_TOL:
            raise ValueError(f"occupation probabilities must sum to 1, got {probs.sum()!r}")
        object.__setattr__(self, "probs", np.clip(probs, 0.0, None))

    @classmethod
    def delta(cls, n_sites: int, site: int = 0) -> "WalkState":
        probs = np.zeros(n_sites)
        probs[site] = 1.0
        return cls(t=0, probs=probs)

    @classmethod
    def uniform(cls, n_sites: int) -> "WalkState":
        return cls(t=0, probs=np.full(n_sites, 1.0 / n_sites))


def transition_matrix(cfg: WalkConfig) -> Circulant:
    """Transition matrix of the configured walk, as a circulant.

    Rows and columns each sum to 1 (circulants over a probability row are
    doubly stochastic).
    """
    return Circulant(cfg.hop_row())


def _modes(cfg: WalkConfig) -> tuple[np.ndarray, np.ndarray]:
    """Fourier eigenbasis (unitary) and eigenvalues of the transition matrix."""
    n = cfg.n_sites
    k = np.arange(n)
    basis = np.exp((2j * np.pi / n) * np.outer(k, k)) / math.sqrt(n)
    lam = cfg.hop_row().astype(complex) @ np.exp((2j * np.pi / n) * np.outer(k, k))
    return basis, lam


def evolve_spectral(cfg: WalkConfig, p0: WalkState, t: int) -> WalkState:
    """State after t steps, computed in the Fourier eigenbasis.

    Exact for circulant transition matrices (they are all diagonal in the
    same unitary basis, normal or not); matches repeated matrix
    multiplication to near roundoff.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    if p0.probs.size != cfg.n_sites:
        raise ValueError("state size does not match the configuration")
    if t == 0:
        return p0  # identity power, exactly
    basis, lam = _modes(cfg)
    coeff = basis.conj().T @ p0.probs
    probs = (basis @ (lam**t * coeff)).real
    return WalkState(t=p0.t + t, probs=probs)


def entropy(state: WalkState) -> float:
    """Occupation entropy -sum p_i ln p_i in units of k_B (0 ln 0 = 0)."""
    p = state.probs[state.probs > 0.0]
    return float(-np.sum(p * np.log(p)))


def spectral_gap_mixing_time(cfg: WalkConfig, target: float = 1e-8) -> int:
    """Steps after which every non-stationary mode has decayed below target.

    Uses the second-largest eigenvalue modulus; raises for periodic or
    decoupled rings (no spectral gap), where the walk never mixes.
    """
    _, lam = _modes(cfg)
    moduli = np.sort(np.abs(lam))
    second = moduli[-2]
    if second >= 1.0 - 1e-15:
        raise ValueError("no spectral gap: the configuration does not mix")
    if target >= 1.0:
        return 0
    return int(math.ceil(math.log(target) / math.log(second)))


# ---------------------------------------------------------------------------
# Ensemble-averaged decay of the occupation excess
# ---------------------------------------------------------------------------


def rmt_decay_closed_form(t: int) -> float:
    """Site-count-scaled mean occupation excess at integer time t.

    D(t) = C (2/sqrt(pi))^(1+t) gamma((3+t)/2, pi/4); strictly positive and
    decreasing for t >= 1.  The value is independent of the ring size; divide
    by the site count for a per-site curve.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    a = 0.5 * (3.0 + t)
    return DECAY_NORM * (2.0 / math.sqrt(math.pi)) ** (1 + t) * lower_incomplete_gamma(a, math.pi / 4.0)


def rmt_decay_asymptotic(t: int) -> float:
    """Two-term large-t expansion of the scaled decay law.

    (pi/4) exp(-pi/4) C [2/(t+3) + pi/((t+3)(t+5))]; within 1% of the closed
    form from t of a few tens onward, with the leading constant/(t+3) decay.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    pref = 0.25 * math.pi * math.exp(-math.pi / 4.0) * DECAY_NORM
    return pref * (2.0 / (t + 3.0) + math.pi / ((t + 3.0) * (t + 5.0)))


def excess_occupation(lams: np.ndarray, p0: np.ndarray, j: int, t: int) -> complex:
    """Occupation excess p_j(t) - 1/N from the non-stationary modes.

    ``lams`` lists the N-1 eigenvalues lambda_2..lambda_N of a ring
    transition matrix (the stationary lambda_1 = 1 excluded); p0 is the start
    distribution.  At t = 0 this reproduces p0[j] - 1/N identically for any
    spectrum, by completeness of the Fourier modes.
    """
    lams = np.ascontiguousarray(lams, dtype=complex)
    p0 = np.ascontiguousarray(p0, dtype=float)
    n = p0.size
    if lams.size != n - 1:
        raise ValueError("need exactly N-1 non-stationary eigenvalues")
    l = np.arange(1, n)
    acc = 0.0 + 0.0j
    for site, weight in enumerate(p0):
        if weight == 0.0:
            continue
        omega = np.exp((2j * np.pi / n) * (j - site))
        acc += weight * np.sum(lams**t * omega**l)
    return acc / n


def sample_decay_moduli(count: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenvalue moduli under the decay law's radial density.

    Density proportional to r^2 exp(-pi r^2/4) on [0, 1]: the Rayleigh
    modulus law times the polar measure factor r, truncated to the stochastic
    disk.  Sampled by rejection from the uniform envelope (the density is
    increasing on [0, 1], so the envelope constant is its value at 1).
    """
    out = np.empty(count)
    have = 0
    fmax = math.exp(-math.pi / 4.0)
    while have < count:
        m = int((count - have) * 2.5) + 16
        r = rng.random(m)
        u = rng.random(m)
        keep = r[u * fmax <= r * r * np.exp(-math.pi * r * r / 4.0)]
        take = min(keep.size, count - have)
        out[have : have + take] = keep[:take]
        have += take
    return out


def rmt_decay_monte_carlo(
    n: int, t: int, realizations: int, rng: np.random.Generator
) -> tuple[float, float]:
    """Monte Carlo estimate (mean, standard error) of the scaled decay law.

    Each realization draws N-1 synthetic eigenvalues: moduli from
    ``sample_decay_moduli`` and phases uniform on (-pi, pi], with the
    stationary mode excluded by subtracting the real-axis (theta = 0)
    angular component from the uniform one (signed weights +2 and -1, which
    keep total angular mass 1).  The excess-occupation mode sum for a delta
    start is evaluated at every site except the start and averaged; its
    expectation equals ``rmt_decay_closed_form(t)`` for t >= 1.
    """
    if n < 3:
        raise ValueError("need at least 3 sites")
    if realizations < 1:
        raise ValueError("need at least one realization")
    if t < 0:
        raise ValueError("time must be nonnegative")
    r = sample_decay_moduli(realizations * (n - 1), rng).reshape(realizations, n - 1)
    theta = rng.uniform(-math.pi, math.pi, size=(realizations, n - 1))
    # Site average over j != 0 of the mode sum: sum_{j != 0} omega_j^l = -1
    # for every l >= 1, so the average collapses to a plain mode sum.
    site_factor = -1.0 / (n * (n - 1))
    s_uniform = ((r * np.exp(1j * theta)) ** t).sum(axis=1) * site_factor
    s_axis = (r**t).sum(axis=1) * site_factor
    est = n * (2.0 * s_uniform - s_axis).real
    mean = float(est.mean())
    stderr = float(est.std(ddof=1) / math.sqrt(realizations)) if realizations > 1 else math.inf
    return mean, stderr
