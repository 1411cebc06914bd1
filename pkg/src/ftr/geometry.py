"""Statistical geometry of the physical origin.

The uncertainty of a physical origin relative to a geometrical one has
standard deviation ``sigma = R0 / (2 sqrt N)``; its scale part has
``sigma_eps = 1 / (2 sqrt N)``.  Everything here is built on that pair plus
the Einstein-universe relation ``R0 / N = G m_h / (pi c^2)``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from mpmath import mp, mpf

from .errors import DomainError, NonPositiveInput, OutOfRange, Singular
from .numeric import LENGTH, ConstantSet, Quantity, parse_unit, real, sqrt

# --------------------------------------------------------------------------
# the cosmic frame


def _positive_count(N) -> mpf:
    value = real(N)
    if value <= 0:
        raise NonPositiveInput(f"particle count must be positive, got {N}")
    return value


def _positive_length(R: Quantity, what: str = "length") -> Quantity:
    if not isinstance(R, Quantity) or not R.dims.same_as(LENGTH):
        raise NonPositiveInput(f"{what} must be a length quantity")
    if R.magnitude <= 0:
        raise NonPositiveInput(f"{what} must be positive")
    return R


@dataclass(frozen=True)
class CosmicFrame:
    """The cosmological pair (N, R0) and the microscopic scales derived from it."""

    N: int | mpf
    R0: Quantity

    def __post_init__(self):
        _positive_count(self.N)
        _positive_length(self.R0, "R0")

    @property
    def sqrt_N(self) -> mpf:
        return mp.sqrt(real(self.N))

    @property
    def sigma(self) -> Quantity:
        return (self.R0 / (2 * self.sqrt_N)).labelled("sigma")

    @property
    def sigma_eps(self) -> mpf:
        return 1 / (2 * self.sqrt_N)

    @property
    def k(self) -> Quantity:
        return (self.R0 / self.sqrt_N).labelled("k")

    @classmethod
    def from_range(cls, k: Quantity, N) -> "CosmicFrame":
        """Frame with R0 = k sqrt(N)."""
        _positive_length(k, "k")
        return cls(N, k * mp.sqrt(_positive_count(N)))


def sigma_from_cosmic(N, R0: Quantity) -> Quantity:
    return CosmicFrame(N, R0).sigma


def range_constant(frame: CosmicFrame) -> Quantity:
    return 2 * frame.sigma


def projection_ratio(frame: CosmicFrame) -> mpf:
    """O'P'/OP = (R0 - sigma)/R0 = 1 - sigma_eps."""
    return 1 - frame.sigma_eps


def einstein_ratio(constants: ConstantSet) -> Quantity:
    """R0/N = G m_h / (pi c^2) for a hydrogen Einstein universe."""
    G, m_h, c = constants.require("G", "m_h", "c")
    return (G * m_h / (mp.pi * c**2)).labelled("R0/N")


def solve_cosmic_pair(ratio: Quantity, k: Quantity) -> CosmicFrame:
    """Recover (N, R0) from R0/N and R0/sqrt(N)."""
    _positive_length(ratio, "ratio")
    _positive_length(k, "k")
    sqrt_N = (k / ratio).magnitude
    return CosmicFrame(sqrt_N**2, k * sqrt_N)


# --------------------------------------------------------------------------
# fluctuations


@dataclass(frozen=True)
class GaussianPDF:
    mean: mpf
    std: mpf

    def __post_init__(self):
        object.__setattr__(self, "mean", real(self.mean))
        object.__setattr__(self, "std", real(self.std))
        if self.std <= 0:
            raise DomainError("standard deviation must be positive")

    @property
    def variance(self) -> mpf:
        return self.std**2

    def pdf(self, y):
        """Density; vectorised in float64 for numpy input, mpf otherwise."""
        if isinstance(y, np.ndarray):
            s, m = float(self.std), float(self.mean)
            return np.exp(-((y - m) ** 2) / (2 * s * s)) / (s * np.sqrt(2 * np.pi))
        y = real(y)
        return mp.exp(-((y - self.mean) ** 2) / (2 * self.variance)) / (self.std * mp.sqrt(2 * mp.pi))


@dataclass(frozen=True)
class FluctuationSplit:
    """Counting fluctuation of n0 expected particles out of N.

    ``compound`` is the finite-N Bernoulli law, ``ordinary`` its N -> infinity
    limit and ``extraordinary`` the finite-universe part; the ordinary law is
    the compound law convolved with the extraordinary one.
    """

    n0: mpf
    N: mpf
    ordinary: GaussianPDF
    extraordinary: GaussianPDF
    compound: GaussianPDF
    zeta_std: mpf


def fluctuation_split(n0, N) -> FluctuationSplit:
    n0, N = real(n0), real(N)
    if not 0 < n0 < N:
        raise DomainError("need 0 < n0 < N")
    return FluctuationSplit(
        n0,
        N,
        ordinary=GaussianPDF(0, mp.sqrt(n0)),
        extraordinary=GaussianPDF(0, n0 / mp.sqrt(N)),
        compound=GaussianPDF(0, mp.sqrt(n0 * (1 - n0 / N))),
        zeta_std=1 / mp.sqrt(N),
    )


def convolution_sup_error(n0, N, points: int = 10_001, span: float = 10.0) -> float:
    """Sup-norm gap between (compound * extraordinary) and the ordinary law.

    The convolution is a Riemann sum on a uniform grid of ``points`` nodes
    covering +/- ``span`` ordinary standard deviations.
    """
    split = fluctuation_split(n0, N)
    if points % 2 == 0:
        points += 1
    half = span * float(split.ordinary.std)
    y = np.linspace(-half, half, points)
    step = y[1] - y[0]
    conv = np.convolve(split.compound.pdf(y), split.extraordinary.pdf(y), mode="same") * step
    return float(np.max(np.abs(conv - split.ordinary.pdf(y))))


class ZetaEps(NamedTuple):
    exact: mpf
    approx: mpf
    error: mpf


def zeta_epsilon(zeta) -> ZetaEps:
    """Scale deviation eps from (1 + zeta)^2 = (1 + eps)^4."""
    zeta = real(zeta)
    if 1 + zeta <= 0:
        raise DomainError("need 1 + zeta > 0")
    exact = mp.expm1(mp.log1p(zeta) / 2)
    approx = zeta / 2
    return ZetaEps(exact, approx, abs(approx - exact))


def _tolerance() -> mpf:
    return mpf(10) ** -(mp.dps - 5)


def local_uncertainty(r: Quantity, frame: CosmicFrame) -> tuple[Quantity, Quantity]:
    """(radial, transverse) standard deviations at distance r."""
    sigma = frame.sigma
    radial_sq = sigma**2 - (frame.sigma_eps * r) ** 2
    if radial_sq.magnitude < 0:
        if -radial_sq.magnitude > _tolerance() * (sigma**2).magnitude:
            raise OutOfRange("r lies beyond the spherical frame")
        radial_sq = 0 * radial_sq
    return sqrt(radial_sq), sigma


def line_element(r: Quantity, dr: Quantity, dtheta, dphi, theta, frame: CosmicFrame | None) -> Quantity:
    """ds^2 of the sigma-metric; ``frame=None`` gives flat space."""
    dtheta, dphi, theta = real(dtheta), real(dphi), real(theta)
    if frame is None:
        curvature = Quantity(0, LENGTH * -2)
    else:
        curvature = (frame.sigma_eps / frame.sigma) ** 2
    denom = 1 - curvature * r**2
    if denom.magnitude == 0:
        raise Singular("line element is singular at r = R0")
    if denom.magnitude < 0:
        raise OutOfRange("|r| exceeds R0")
    return dr**2 / denom + r**2 * dtheta**2 + r**2 * mp.sin(theta) ** 2 * dphi**2


def direct_measure_correction(sigma: Quantity) -> Quantity:
    """Scatter removed by measuring directly instead of via the geometric origin."""
    return sigma * mp.sqrt(2)


def carrier_range(m: Quantity, constants: ConstantSet) -> Quantity:
    """Range k ~ hbar / (2 m c) of a virtual carrier of mass (or rest energy) m."""
    hbar, c = constants.require("hbar", "c")
    if m.dims.same_as(parse_unit("erg")[1]):
        m = m / c**2
    return (hbar / (2 * m * c)).labelled("range")


# --------------------------------------------------------------------------
# Monte Carlo check of the centroid scaling


@dataclass(frozen=True)
class McReport:
    n_particles: int
    trials: int
    seed: int
    R0: float
    empirical_std: float
    predicted_std: float
    standard_error: float
    z: float

    @property
    def passed(self) -> bool:
        return abs(self.z) < 3

    def as_dict(self) -> dict:
        return {
            "n_particles": self.n_particles,
            "trials": self.trials,
            "seed": self.seed,
            "R0": self.R0,
            "empirical_std": self.empirical_std,
            "predicted_std": self.predicted_std,
            "standard_error": self.standard_error,
            "z": self.z,
            "passed": self.passed,
        }


_BLOCK = 64


def _block_centroids(seed: int, block: int, rows: int, n: int, std: float) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([seed, block]))
    out = np.empty(rows)
    # bound memory to ~8 MB of samples per draw
    step = max(1, 1_000_000 // n)
    for i in range(0, rows, step):
        j = min(rows, i + step)
        out[i:j] = rng.normal(0.0, std, size=(j - i, n)).mean(axis=1)
    return out


def mc_centroid(n_particles: int, trials: int, seed: int, R0: float = 1.0, workers: int = 1) -> McReport:
    """Sample centroids of ``n_particles`` coordinates with std R0/2.

    Trials are split into fixed blocks, each with its own stream derived from
    (seed, block index), so the report does not depend on ``workers``.
    """
    if n_particles < 1:
        raise DomainError("need at least one particle")
    if trials < 100:
        raise DomainError("need at least 100 trials")
    std = float(R0) / 2
    blocks = [(b, min(_BLOCK, trials - b * _BLOCK)) for b in range((trials + _BLOCK - 1) // _BLOCK)]

    def run(block):
        return _block_centroids(seed, block[0], block[1], n_particles, std)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    centroids = np.concatenate(parts)
    empirical = float(np.std(centroids, ddof=1))
    predicted = std / np.sqrt(n_particles)
    se = predicted / np.sqrt(2 * trials)
    return McReport(n_particles, trials, seed, float(R0), empirical, float(predicted), float(se), float((empirical - predicted) / se))
