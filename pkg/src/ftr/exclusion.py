"""Weight function, exclusion top energy, proper mass and the uranoid/planoid
machinery, the non-Coulomb energy and the degeneracy-pressure constant."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from mpmath import mp, mpf

from .errors import NonPositiveInput
from .geometry import CosmicFrame
from .numeric import ConstantSet, Quantity, beta_power, real, sqrt

#: extracule to standard-particle mass ratio M/m0
M_OVER_M0 = Fraction(136, 10)
#: sub-threshold hbar_1^2 / hbar^2
HBAR1_SQ_RATIO = Fraction(3, 5)
#: sub-threshold G_1 / G
G1_RATIO = Fraction(5, 3)


class Temperature(Enum):
    ZERO = "zero"
    INFINITE = "infinite"


@dataclass(frozen=True)
class Uranoid:
    frame: CosmicFrame
    temperature: Temperature = Temperature.ZERO


@dataclass(frozen=True)
class Planoid:
    """Flat substitute environment with N1 particles inside radius R1.

    An ordinary planoid keeps R1^2 / (5 N1) equal to sigma^2 of its uranoid;
    the special planoid takes N1 = N and R1 = R0 while keeping hbar_1.
    """

    N1: mpf
    R1: Quantity
    special: bool = False

    @classmethod
    def matching(cls, frame: CosmicFrame, N1) -> "Planoid":
        N1 = real(N1)
        return cls(N1, frame.sigma * mp.sqrt(5 * N1))

    @classmethod
    def special_for(cls, frame: CosmicFrame) -> "Planoid":
        return cls(real(frame.N), frame.R0, special=True)

    def sigma(self) -> Quantity:
        return self.R1 / mp.sqrt(5 * real(self.N1))


@dataclass(frozen=True)
class WeightParams:
    varpi: Quantity


class WeightConstant(NamedTuple):
    varpi: Quantity
    energy: Quantity
    over_electron_rest: mpf


def _positive(q: Quantity, what: str) -> None:
    if q.magnitude <= 0:
        raise NonPositiveInput(f"{what} must be positive")


def weight_constant(sigma: Quantity, constants: ConstantSet) -> WeightConstant:
    """varpi = hbar / (2 sigma), also as the energy varpi c over m_e c^2."""
    _positive(sigma, "sigma")
    hbar, c, m_e = constants.require("hbar", "c", "m_e")
    varpi = (hbar / (2 * sigma)).labelled("varpi")
    energy = varpi * c
    return WeightConstant(varpi, energy, (energy / (m_e * c**2)).magnitude)


def weight_apply(p, params: WeightParams) -> mpf:
    """Gaussian weight (2 pi varpi^2)^(-1/2) exp(-p^2 / 2 varpi^2).

    Returned as a magnitude per unit of momentum in the units of ``varpi``.
    """
    varpi = params.varpi
    if isinstance(varpi, Quantity):
        x = (p / varpi).magnitude if isinstance(p, Quantity) else real(p) / varpi.magnitude
        scale = varpi.magnitude
    else:
        scale = real(varpi)
        x = real(p) / scale
    return mp.exp(-(x**2) / 2) / (scale * mp.sqrt(2 * mp.pi))


def infinite_T_energy(sigma: Quantity, constants: ConstantSet) -> Quantity:
    """Root-mean-square energy sqrt(3) hbar c / (2 sigma) of a massless
    particle whose three momentum components each carry varpi^2."""
    _positive(sigma, "sigma")
    hbar, c = constants.require("hbar", "c")
    return (mp.sqrt(3) * hbar * c / (2 * sigma)).labelled("E")


def exclusion_top_energy(n: Quantity, mu0: Quantity, constants: ConstantSet) -> Quantity:
    """E = (3 n / 8 pi)^(2/3) h^2 / (2 mu0) for two particles per cell h^3."""
    _positive(n, "n")
    _positive(mu0, "mu0")
    (h,) = constants.require("h")
    return ((3 * n / (8 * mp.pi)) ** Fraction(2, 3) * h**2 / (2 * mu0)).labelled("top energy")


def mean_over_top() -> Fraction:
    """Mean to top energy of a filled momentum sphere: <p^2> / P^2 = 3/5."""
    return Fraction(3, 5)


class ProperMass(NamedTuple):
    m0: Quantity
    M: Quantity


def proper_mass(frame: CosmicFrame, constants: ConstantSet, observational: bool = False) -> ProperMass:
    """m0 = (3/4) hbar sqrt(4N/5) / (c R0) and M = (136/10) m0.

    ``observational`` applies the beta^(1/6) factor of the observational system.
    """
    hbar, c = constants.require("hbar", "c")
    m0 = Fraction(3, 4) * hbar * mp.sqrt(Fraction(4, 5) * real(frame.N)) / (c * frame.R0)
    if observational:
        m0 = m0 * beta_power(Fraction(1, 6))
    return ProperMass(m0.labelled("m0"), (m0 * M_OVER_M0).labelled("M"))


def sigma_from_M(M: Quantity, constants: ConstantSet) -> Quantity:
    """sigma = (136/10)(3/4) beta^(1/6) hbar sqrt(1/5) / (M c)."""
    _positive(M, "M")
    hbar, c = constants.require("hbar", "c")
    coeff = real(M_OVER_M0 * Fraction(3, 4)) * beta_power(Fraction(1, 6)) / mp.sqrt(5)
    return (coeff * hbar / (M * c)).labelled("sigma")


class Subthreshold(NamedTuple):
    hbar1: Quantity
    G1: Quantity


def subthreshold_constants(constants: ConstantSet) -> Subthreshold:
    hbar, G = constants.require("hbar", "G")
    return Subthreshold(hbar * mp.sqrt(real(HBAR1_SQ_RATIO)), G * G1_RATIO)


def proper_mass_from_exclusion(frame: CosmicFrame, constants: ConstantSet) -> Quantity:
    """m0 from the exclusion route: m0^2 c^2 = (3/4) N (hbar_1 / R0)^2."""
    hbar, c = constants.require("hbar", "c")
    hbar1_sq = hbar**2 * HBAR1_SQ_RATIO
    m0_sq = Fraction(3, 4) * real(frame.N) * hbar1_sq / (frame.R0**2 * c**2)
    return sqrt(m0_sq).labelled("m0")


def top_quantum_number(N) -> mpf:
    """S with S^3 = (3/4) N."""
    return mp.cbrt(real(N) * 3 / 4)


def planoid_mass(p: Planoid, constants: ConstantSet) -> Quantity:
    """m0 = (3/4) hbar sqrt(N1) / (c R1)."""
    hbar, c = constants.require("hbar", "c")
    return (Fraction(3, 4) * hbar * mp.sqrt(real(p.N1)) / (c * p.R1)).labelled("m0")


class SpecialPlanoid(NamedTuple):
    sigma1: Quantity
    varpi1: Quantity


def special_planoid(sigma: Quantity, constants: ConstantSet) -> SpecialPlanoid:
    """sigma_1^2 = (4/5) sigma^2 and varpi_1 = hbar_1 / (2 sigma_1) = sqrt(3/4) varpi."""
    _positive(sigma, "sigma")
    (hbar,) = constants.require("hbar")
    sigma1 = sigma * mp.sqrt(real(Fraction(4, 5)))
    hbar1 = hbar * mp.sqrt(real(HBAR1_SQ_RATIO))
    return SpecialPlanoid(sigma1.labelled("sigma1"), (hbar1 / (2 * sigma1)).labelled("varpi1"))


def non_coulomb_B(sigma: Quantity, constants: ConstantSet) -> Quantity:
    """B = -(4/3)^(1/2) 16 pi e^2 sigma^2 (energy times volume)."""
    _positive(sigma, "sigma")
    (e,) = constants.require("e")
    return -(mp.sqrt(mpf(4) / 3) * 16 * mp.pi * e**2 * sigma**2)


def non_coulomb_amplitude(sigma: Quantity, constants: ConstantSet, mass_ratio=M_OVER_M0) -> Quantity:
    """A = (16 / 3 pi)^(1/2) (m_p / m0) e^2 / sigma; ``mass_ratio=1`` drops the correction."""
    _positive(sigma, "sigma")
    (e,) = constants.require("e")
    return (mp.sqrt(16 / (3 * mp.pi)) * e**2 / sigma * mass_ratio).labelled("A")


def non_coulomb_energy(r: Quantity, sigma: Quantity, constants: ConstantSet, mass_corrected: bool = False) -> Quantity:
    """E_nc = -A exp(-r^2 / k^2) with k = 2 sigma."""
    A = non_coulomb_amplitude(sigma, constants, M_OVER_M0 if mass_corrected else 1)
    k = 2 * sigma
    return -A * mp.exp(-((r / k) ** 2).magnitude)


def like_charge_energy(r: Quantity, sigma: Quantity, constants: ConstantSet, mass_corrected: bool = False) -> Quantity:
    """Coulomb repulsion plus the non-Coulomb well, e^2 / r + E_nc."""
    (e,) = constants.require("e")
    return e**2 / r + non_coulomb_energy(r, sigma, constants, mass_corrected)


def like_charge_sign_change(sigma: Quantity, constants: ConstantSet, mass_corrected: bool = False) -> Quantity:
    """Outer zero of e^2/r + E_nc: the total is attractive just inside it
    and repulsive beyond."""
    (e,) = constants.require("e")
    A = non_coulomb_amplitude(sigma, constants, M_OVER_M0 if mass_corrected else 1).magnitude
    s, e2 = sigma.magnitude, (e**2).magnitude

    # work in x = r / sigma to keep the bracket well scaled
    def f(x):
        return e2 / (x * s) - A * mp.exp(-(x**2) / 4)

    lo, hi = mpf("1e-12"), mpf(1)
    while f(hi) < 0:
        hi *= 2
        if hi > 1e6:
            raise ValueError("no sign change found")
    if f(lo) < 0:
        raise ValueError("no attractive region")
    grid = [lo * (hi / lo) ** (mpf(i) / 400) for i in range(401)]
    values = [f(x) for x in grid]
    crossings = [(grid[i], grid[i + 1]) for i in range(400) if values[i] * values[i + 1] < 0]
    if not crossings:
        raise ValueError("no sign change found")
    a, b = crossings[-1]
    root = mp.findroot(f, (a, b), solver="illinois")
    return Quantity(root * s, sigma.dims, "r0")


class DegeneracyForm(Enum):
    PAPER = "paper"
    MODERN = "modern"


def degeneracy_K(mu: Quantity, constants: ConstantSet, form: DegeneracyForm | str = "paper") -> Quantity:
    """K in P = K n^(5/3) for a number density n of degenerate particles.

    The first form is (1/5)(3/8 pi)^(2/3) h^2 / mu; the second is
    (3 pi^2)^(2/3) hbar^2 / (5 mu), written with hbar.
    """
    _positive(mu, "mu")
    form = DegeneracyForm(form)
    if form is DegeneracyForm.PAPER:
        (h,) = constants.require("h")
        return ((3 / (8 * mp.pi)) ** (mpf(2) / 3) * h**2 / (5 * mu)).labelled("K")
    (h,) = constants.require("h")
    hbar = h / (2 * mp.pi)
    return ((3 * mp.pi**2) ** (mpf(2) / 3) * hbar**2 / (5 * mu)).labelled("K")


def mass_density_K(K: Quantity, mu_e, constants: ConstantSet) -> Quantity:
    """Convert K for number density into K for mass density rho = n mu_e m_u."""
    (m_u,) = constants.require("m_u")
    return K / (real(mu_e) * m_u) ** Fraction(5, 3)


def degeneracy_pressure(K: Quantity, n: Quantity) -> Quantity:
    return K * n ** Fraction(5, 3)


def interchange_mass(m0):
    """m3 = (136/3) m0 for the V3 extracule."""
    factor = Fraction(136, 3)
    if isinstance(m0, (int, Fraction)):
        return factor * m0
    return m0 * factor


class InterchangeCheck(NamedTuple):
    m3: object
    M: object
    ratio: Fraction
    consistent: bool


def interchange_consistency(m0=Fraction(1)) -> InterchangeCheck:
    """Compare m3 = (136/3) m0 with M = (136/10) m0 through M = (3/10) m3."""
    m3 = interchange_mass(m0)
    M = M_OVER_M0 * m0
    ratio = Fraction(M) / Fraction(m3)
    return InterchangeCheck(m3, M, ratio, ratio == Fraction(3, 10))


def top_energy_from_S(S, hbar1: Quantity, R0: Quantity, c: Quantity) -> Quantity:
    """Top energy with S^3 (hbar_1 / R0)^2 = (E/c)^2, as an energy."""
    return sqrt(real(S) ** 3 * (hbar1 / R0) ** 2) * c


def uranoid_mean_square_momentum(u: Uranoid, constants: ConstantSet) -> Quantity:
    """Mean square of one momentum component: zero at T = 0, varpi^2 at T = infinity."""
    varpi = weight_constant(u.frame.sigma, constants).varpi
    if u.temperature is Temperature.ZERO:
        return 0 * varpi**2
    return varpi**2

