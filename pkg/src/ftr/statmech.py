"""Multiplicity, entropy and Boltzmann weights, occupation energetics and the
rigid-coordinate transform."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Sequence

from mpmath import mp, mpf

from .errors import NonPositiveMultiplicity, ZeroL, ZeroMultiplicity
from .numeric import ConstantSet, Quantity, real


@dataclass(frozen=True)
class EinsteinSolid:
    """``oscillators`` independent oscillators sharing ``q`` energy quanta."""

    oscillators: int
    q: int

    def __post_init__(self):
        if self.oscillators < 1:
            raise ValueError("need at least one oscillator")
        if self.q < 0:
            raise ValueError("q must be non-negative")

    @classmethod
    def from_atoms(cls, atoms: int, q: int, per_atom: int = 3) -> "EinsteinSolid":
        return cls(per_atom * atoms, q)


def multiplicity(s: EinsteinSolid) -> int:
    """Number of ways to place q quanta in M oscillators, C(q + M - 1, q)."""
    return comb(s.q + s.oscillators - 1, s.q)


def entropy(omega, constants: ConstantSet) -> Quantity:
    """S = k_B ln(Omega)."""
    if omega < 1:
        raise ValueError("multiplicity must be at least 1")
    (k_B,) = constants.require("k_B")
    return (k_B * mp.log(real(omega))).labelled("S")


def prob_ratio(omega1, omega0) -> mpf:
    if omega0 < 1:
        raise ValueError("reference multiplicity must be at least 1")
    if isinstance(omega1, int) and isinstance(omega0, int):
        return real(Fraction(omega1, omega0))
    return real(omega1) / real(omega0)


@dataclass(frozen=True)
class StateEnergies:
    energies: tuple
    temperature: Quantity
    k_B: Quantity

    def __post_init__(self):
        object.__setattr__(self, "energies", tuple(self.energies))
        if self.temperature.magnitude <= 0:
            raise ValueError("temperature must be positive")

    @classmethod
    def with_constants(cls, energies: Sequence[Quantity], temperature: Quantity, constants: ConstantSet):
        return cls(tuple(energies), temperature, constants["k_B"])


def boltzmann(states: StateEnergies) -> list[mpf]:
    """Pr(E_i) = exp(-E_i / k_B T) / Z.

    Exponents are shifted by the lowest energy first so the largest weight is
    exactly one; the normalised result is unchanged.
    """
    kT = states.k_B * states.temperature
    scaled = [(E / kT) for E in states.energies]
    x = [s.magnitude if isinstance(s, Quantity) else real(s) for s in scaled]
    for s in scaled:
        if isinstance(s, Quantity) and not s.dims.dimensionless:
            raise ValueError("energies must be energies")
    low = min(x)
    weights = [mp.exp(-(v - low)) for v in x]
    Z = mp.fsum(weights)
    return [w / Z for w in weights]


@dataclass(frozen=True)
class OccupationModel:
    """Occupation energetics of a Hamiltonian H0.

    Either give the homogeneity ``degree`` n of H0 (with ``H0``), or give the
    multiplicity ``k`` and dimension-index ``l`` together with ``E0`` or
    ``H0``; the two descriptions meet at n = -l/k.  k = -1 is the relativity
    particle.
    """

    k: int | None = None
    l: int | None = None
    degree: Fraction | int | None = None
    E0: Quantity | Fraction | None = None
    H0: Quantity | Fraction | None = None

    def __post_init__(self):
        if self.k is not None and self.k != -1 and self.k < 1:
            raise ValueError("k must be a positive integer or -1")


class OccupationSplit(NamedTuple):
    E0: Quantity | Fraction
    W0: Quantity | Fraction
    H0: Quantity | Fraction


def _scale(x, r: Fraction):
    # stay exact for rational input
    if isinstance(x, (int, Fraction)):
        return Fraction(x) * r
    return x * r


def occupation_split(m: OccupationModel) -> OccupationSplit:
    """(E0, W0, H0); exact when the energies are given as int or Fraction."""
    if m.degree is not None:
        if m.H0 is None:
            raise ValueError("degree form needs H0")
        n = Fraction(m.degree)
        return OccupationSplit(_scale(m.H0, n), _scale(m.H0, 1 - n), m.H0)
    if m.l is None or m.k is None:
        raise ValueError("need either degree or both k and l")
    if m.l == 0:
        raise ZeroL("dimension-index l must be non-zero")
    k, l = Fraction(m.k), Fraction(m.l)
    if m.E0 is not None:
        E0 = m.E0
    elif m.H0 is not None:
        E0 = _scale(m.H0, -l / k)
    else:
        raise ValueError("need E0 or H0")
    return OccupationSplit(E0, _scale(E0, -(l + k) / l), _scale(E0, -k / l))


def top_vs_mean(H_mean, k: int):
    """Quantity carried by the top particle, -H_mean / k."""
    if k == 0:
        raise ZeroMultiplicity("k must be non-zero")
    if isinstance(H_mean, (int, Fraction)):
        return -Fraction(H_mean) / k
    return H_mean * Fraction(-1, k)


def mass_from_multiplicity(m1, k1: int, k2: int):
    """m2 from m1/m2 = k2/k1."""
    if k1 < 1 or k2 < 1:
        raise NonPositiveMultiplicity("multiplicities must be positive")
    if isinstance(m1, (int, Fraction)):
        return Fraction(m1) * Fraction(k1, k2)
    return m1 * Fraction(k1, k2)


class RigidCoordinates(NamedTuple):
    x: object
    y: object
    z: object
    t: object
    g44: int
    sqrt_neg_g: int


def rigid_transform(x, y, z, t, k: int) -> RigidCoordinates:
    """Galilean to rigid coordinates: t' = -k t, g44 = k^2, sqrt(-g) = -k."""
    if k == 0:
        raise ZeroMultiplicity("k must be non-zero")
    return RigidCoordinates(x, y, z, -k * t, k * k, -k)


def galilean_energy(p4_rigid, k: int):
    """p4 = -k p4' recovers the Galilean energy component."""
    return -k * p4_rigid


def rigid_energy(p4, k: int):
    if k == 0:
        raise ZeroMultiplicity("k must be non-zero")
    if isinstance(p4, (int, Fraction)):
        return -Fraction(p4) / k
    return p4 * Fraction(-1, k)
