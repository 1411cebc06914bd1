"""Carriers, the extracule/intracule reduction of a two-particle system, and
the Bond-factor conversions between the bound (A) and free (B) systems."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import ComplexRoots, NonPositiveInput, UnknownClass
from .numeric import BETA, Quantity, beta_power, real, sqrt

ALLOWED_K = frozenset({1, 3, 4, 10, 136, 137})


@dataclass(frozen=True)
class Carrier:
    """A blank particle V_k; ``stabilized`` names the characteristics frozen
    at assumed values when reducing to a smaller multiplicity."""

    k: int
    stabilized: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.k not in ALLOWED_K:
            raise ValueError(f"multiplicity {self.k} not in {sorted(ALLOWED_K)}")
        object.__setattr__(self, "stabilized", frozenset(self.stabilized))

    @property
    def label(self) -> str:
        return f"V{self.k}"

    def stabilize(self, to_k: int, *names: str) -> "Carrier":
        if to_k >= self.k:
            raise ValueError("stabilizing must lower the multiplicity")
        return Carrier(to_k, self.stabilized | set(names))


@dataclass(frozen=True)
class TwoParticle:
    m: Quantity
    m2: Quantity

    def __post_init__(self):
        if self.m.magnitude <= 0 or self.m2.magnitude <= 0:
            raise NonPositiveInput("masses must be positive")


def reduce_two_particle(p: TwoParticle) -> tuple[Quantity, Quantity]:
    """(M, mu): total mass of the extracule and reduced mass of the intracule."""
    total = p.m + p.m2
    return total.labelled("M"), (p.m * p.m2 / total).labelled("mu")


def two_particle_roots(M1: Quantity, mu: Quantity) -> tuple[Quantity, Quantity]:
    """Roots of m^2 - M1 m + M1 mu = 0, heavier first."""
    disc = M1**2 - 4 * M1 * mu
    if disc.magnitude < 0:
        raise ComplexRoots("M1^2 < 4 M1 mu")
    root = sqrt(disc)
    return (M1 + root) / 2, (M1 - root) / 2


def hydrocule_rest(m0):
    """Rest mass beta m0 of the hydrocule; exact for rational input."""
    if isinstance(m0, (int, Fraction)):
        if m0 <= 0:
            raise NonPositiveInput("m0 must be positive")
        return BETA * m0
    if m0.magnitude <= 0:
        raise NonPositiveInput("m0 must be positive")
    return m0 * BETA


class System(Enum):
    A = "A"
    B = "B"


#: beta exponent applied on the A -> B conversion, per quantity class
BETA_EXPONENTS = {
    "length": Fraction(-1, 6),
    "time": Fraction(-1, 6),
    "intracule-mass": Fraction(1, 2),
    "extracule-mass-density": Fraction(1),
}


def system_convert(q, quantity_class: str, source: System | str, target: System | str):
    """Scale ``q`` from one system to the other by beta to the class exponent."""
    try:
        exponent = BETA_EXPONENTS[quantity_class]
    except KeyError:
        raise UnknownClass(quantity_class) from None
    source, target = System(source), System(target)
    if source == target:
        return q
    if source == System.B:
        exponent = -exponent
    if exponent.denominator == 1:
        factor = BETA ** int(exponent)
        return factor * q if isinstance(q, (int, Fraction)) else q * factor
    return q * beta_power(exponent)


def mutual_density_check(m, m2, A, A2, C):
    """A m^2 + A' m'^2 - C m m'; zero when the rest densities are consistent."""
    return A * m**2 + A2 * m2**2 - C * m * m2


def solve_mutual_C(m, m2, A, A2):
    """The C that makes the mutual-density residual vanish."""
    return (A * m**2 + A2 * m2**2) / (m * m2)


def energies_B(m0, mu, p_ext, p_int, c=1):
    """(E_e, E_i) in the free-intracule system: both parts move classically."""
    c = c if isinstance(c, Quantity) else real(c)
    return m0 * c**2 + p_ext**2 / (2 * m0), mu * c**2 + p_int**2 / (2 * mu)


def energies_A(m0, mu, p_int, c=1):
    """(E_e, E_i) in the bound system, where the extracule stays at rest."""
    c = c if isinstance(c, Quantity) else real(c)
    return m0 * c**2, mu * c**2 + p_int**2 / (2 * mu)


def mass_ratio_M_over_mu(p: TwoParticle):
    M, mu = reduce_two_particle(p)
    return (M / mu).magnitude

