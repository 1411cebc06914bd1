"""Physical constants derived from (N, R0, beta), compared with the values
quoted in 1946 and with a constant set of choice."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple

from mpmath import mp, mpf

from .errors import ConfigError
from .exclusion import (
    non_coulomb_amplitude,
    proper_mass,
    proper_mass_from_exclusion,
    sigma_from_M,
    weight_constant,
    degeneracy_K,
)
from .geometry import CosmicFrame, carrier_range, einstein_ratio, solve_cosmic_pair
from .numeric import BETA, ConstantSet, Quantity, beta_power, natural_value, real, rel_error

#: range constant of nuclear forces quoted with the derivations, in cm
K_NUCLEAR = "1.921e-13"
ALPHA_PAPER = Fraction(1, 137)
ETA1 = Fraction(136**2, 10)

# --------------------------------------------------------------------------
# result rows

DEFAULT_TOLERANCES = {
    "exact": 1e-3,  # exact-chain results, relative
    "vintage": 1e-2,  # sensitive to which constant set is used, relative
    "magnitude": 5e-2,  # order-of-magnitude comparisons, relative
    "order": 1.0,  # decades, |log10(computed / reference)|
}


@dataclass(frozen=True)
class DerivationResult:
    """One derived value with its comparands.

    The verdict is taken against ``paper_value`` or ``modern_value`` as
    selected by ``target``; rows with ``tolerance=None`` are informational.
    """

    name: str
    computed: Quantity
    unit: str
    formula: str
    paper_value: Quantity | None = None
    modern_value: Quantity | None = None
    target: str = "paper"
    tolerance: str | None = "vintage"
    note: str = ""

    @property
    def value(self) -> mpf:
        return self.computed.to(self.unit)

    @property
    def rel_error_paper(self) -> mpf | None:
        return None if self.paper_value is None else rel_error(self.computed, self.paper_value)

    @property
    def rel_error_modern(self) -> mpf | None:
        return None if self.modern_value is None else rel_error(self.computed, self.modern_value)

    @property
    def reference(self) -> Quantity | None:
        return self.paper_value if self.target == "paper" else self.modern_value

    def deviation(self) -> mpf | None:
        ref = self.reference
        if ref is None:
            return None
        if self.tolerance == "order":
            return abs(mp.log10(abs((self.computed / ref).magnitude)))
        return rel_error(self.computed, ref)

    def limit(self, tolerances: Mapping[str, float]) -> float | None:
        if self.tolerance is None:
            return None
        if self.name in tolerances:
            return tolerances[self.name]
        return tolerances[self.tolerance]

    def verdict(self, tolerances: Mapping[str, float] = DEFAULT_TOLERANCES) -> str:
        limit = self.limit(tolerances)
        dev = self.deviation()
        if limit is None or dev is None:
            return "info"
        return "pass" if dev <= limit else "fail"


def merge_tolerances(overrides: Mapping[str, float] | None) -> dict[str, float]:
    merged = dict(DEFAULT_TOLERANCES)
    for name, value in (overrides or {}).items():
        if value < 0:
            raise ConfigError(f"tolerance {name} must be non-negative")
        merged[name] = float(value)
    return merged


# --------------------------------------------------------------------------
# the derivations


class TheoreticalN(NamedTuple):
    exact: int
    decimal: mpf


def theoretical_N() -> TheoreticalN:
    """N = (3/2) 136 2^256."""
    exact = Fraction(3, 2) * 136 * 2**256
    assert exact.denominator == 1
    return TheoreticalN(int(exact), real(int(exact)))


def G_from_N(N, constants: ConstantSet) -> Quantity:
    """G with R0 eliminated between R0/N = G m_h / (pi c^2) and
    R0/sqrt(N) = (136/10)(9/20)^(1/2) beta^(1/6) h / (2 pi c m_h)."""
    h, c, m_h = constants.require("h", "c", "m_h")
    coeff = 136 * mp.sqrt(real(Fraction(9, 20))) * beta_power(Fraction(1, 6)) / 20
    return (coeff * h * c / (m_h**2 * mp.sqrt(real(N)))).labelled("G")


def N_from_G(G: Quantity, constants: ConstantSet) -> mpf:
    """Inverse of :func:`G_from_N`."""
    h, c, m_h = constants.require("h", "c", "m_h")
    coeff = 136 * mp.sqrt(real(Fraction(9, 20))) * beta_power(Fraction(1, 6)) / 20
    return ((coeff * h * c / (m_h**2 * G)).magnitude) ** 2


def derive_G(N, constants: ConstantSet) -> DerivationResult:
    G = G_from_N(N, constants)
    modern = constants["G"] if "G" in constants else None
    return DerivationResult(
        "G",
        G,
        "cm3.g-1.s-2",
        "G = 136 beta^(1/6) h c (9/20)^(1/2) / (20 m_h^2 sqrt(N))",
        paper_value=Quantity.of("6.6665e-8", "cm3.g-1.s-2"),
        modern_value=modern,
        tolerance="exact",
    )


def _ratio_of_roots(a, b, c) -> mpf:
    """Larger over smaller root of a m^2 - b m + c = 0 (all positive)."""
    disc = mp.sqrt(b * b - 4 * a * c)
    return (b + disc) / (b - disc)


def mass_ratio_standard() -> tuple[Fraction, mpf]:
    """eta_1 = 136^2/10 and the root ratio of 10 m^2 - 136 m m0 + m0^2 = 0."""
    return ETA1, _ratio_of_roots(real(10), real(136), real(1))


def mass_ratio_current() -> tuple[mpf, mpf]:
    """The same pair in the observational system, carrying beta^(-5/6)."""
    b56 = beta_power(Fraction(5, 6))
    return real(ETA1) / b56, _ratio_of_roots(real(10), real(136), b56)


def fine_structure(mode: str, constants: ConstantSet | None = None) -> Quantity:
    """alpha: exactly 1/137, or e^2 / (hbar c) from ``constants``."""
    if mode == "paper":
        return Quantity(ALPHA_PAPER, label="alpha")
    if mode == "modern":
        if constants is None:
            raise ConfigError("modern fine-structure constant needs a constant set")
        e, hbar, c = constants.require("e", "hbar", "c")
        return (e**2 / (hbar * c)).labelled("alpha")
    raise ConfigError(f"unknown mode {mode!r}")


def rydberg(mu: Quantity, constants: ConstantSet, empirical: bool = False, alpha: str = "paper") -> Quantity:
    """R = (1/2) alpha^2 mu c / (2 pi hbar) in cm^-1.

    With ``empirical`` the mass is read as the observed (system A) reduced
    mass; the formula is unchanged.
    """
    hbar, c = constants.require("hbar", "c")
    a = fine_structure(alpha, constants)
    return (a**2 * mu * c / (4 * mp.pi * hbar)).labelled("R_A" if empirical else "R")


def rydberg_textbook(mu: Quantity, constants: ConstantSet) -> Quantity:
    """R = 2 pi^2 mu e^4 / (h^3 c)."""
    e, h, c = constants.require("e", "h", "c")
    return (2 * mp.pi**2 * mu * e**4 / (h**3 * c)).labelled("R")


def rydberg_extra_e2(mu: Quantity, constants: ConstantSet, alpha: str = "paper") -> Quantity:
    """The variant carrying an extra e^2 in the numerator; not a wavenumber."""
    (e,) = constants.require("e")
    return rydberg(mu, constants, alpha=alpha) * e**2


def force_constant(N, constants: ConstantSet, beta=BETA) -> tuple[mpf, mpf]:
    """(theory, direct): (2 / (3 pi beta^2)) sqrt(5 N) and e^2 / (G m_p m_e)."""
    e, G, m_p, m_e = constants.require("e", "G", "m_p", "m_e")
    theory = 2 / (3 * mp.pi * real(beta) ** 2) * mp.sqrt(5 * real(N))
    direct = (e**2 / (G * m_p * m_e)).magnitude
    return theory, direct


def recession(k: Quantity, N, constants: ConstantSet) -> Quantity:
    """V0 = c / (k sqrt(3 N)), a rate (use ``.to('km.s-1.Mpc-1')``)."""
    (c,) = constants.require("c")
    return (c / (k * mp.sqrt(3 * real(N)))).labelled("V0")


def hubble_dimensionless(H0) -> mpf:
    """h = H0 / (100 km/s/Mpc); bare numbers are read in km/s/Mpc."""
    if isinstance(H0, Quantity):
        H0 = H0.to("km.s-1.Mpc-1")
    return real(H0) / 100


def hubble_in_modern_range(h) -> bool:
    return mpf("0.5") <= real(h) <= 1


def N_from_recession(V0_kms_Mpc, k: Quantity, constants: ConstantSet) -> mpf:
    """N implied by a recession constant and the nuclear range, k V0 = c / sqrt(3N)."""
    (c,) = constants.require("c")
    V0 = Quantity.of(V0_kms_Mpc, "km.s-1.Mpc-1")
    return ((c / (k * V0)).magnitude) ** 2 / 3


class FaradayAudit(NamedTuple):
    value: Quantity
    units: str
    expected: str
    consistent: bool


def mu_from_faraday(constants: ConstantSet) -> FaradayAudit:
    """4 pi 137^3 F^2 m_h^2 with F = e / (m_h c), plus its dimension audit."""
    (m_h,) = constants.require("m_h")
    if "faraday_h" in constants:
        F = constants["faraday_h"]
    else:
        e, c = constants.require("e", "c")
        F = e / (m_h * c)
    value = (4 * mp.pi * 137**3 * F**2 * m_h**2).labelled("mu_A")
    consistent = value.dims.same_as(m_h.dims)
    return FaradayAudit(value, str(value.dims), "g", consistent)


def rounded_natural_basis() -> ConstantSet:
    """c = 3e10 cm/s and hbar = 1.054e-27 erg s, the rounding used by hand."""
    return ConstantSet.from_values({"c": ("3e10", "cm.s-1"), "hbar": ("1.054e-27", "g.cm2.s-1")})


class PhotonIdentity(NamedTuple):
    kg_in_s: mpf
    kg_power: int
    kg_m: mpf  # the dimensionless number equal to 1 kg m
    C_value: mpf
    C_power: int


def photon_momentum_identity(constants: ConstantSet) -> PhotonIdentity:
    """Express C = p / n (units kg m^4 / s) in pure seconds with c = hbar = 1."""
    constants.require("c", "hbar")
    kg, kg_power = natural_value(Quantity.of(1, "kg"), constants)
    kg_m, _ = natural_value(Quantity.of(1, "kg.m"), constants)
    C, C_power = natural_value(Quantity.of(1, "kg.m4.s-1"), constants)
    return PhotonIdentity(kg, kg_power, kg_m, C, C_power)


# --------------------------------------------------------------------------
# the full chain


@dataclass
class ChainOptions:
    k: str = K_NUCLEAR
    N: int | None = None
    natural_basis: ConstantSet | None = field(default=None)


def _dimless(x, label: str = "") -> Quantity:
    return Quantity(real(x), label=label)


def run_chain(constants: ConstantSet, options: ChainOptions | None = None) -> list[DerivationResult]:
    """Every derivation, in dependency order, as comparison rows."""
    options = options or ChainOptions()
    constants.require("c", "h", "hbar", "e", "G", "m_e", "m_p", "m_h")
    rows: list[DerivationResult] = []
    add = rows.append

    theory = theoretical_N()
    N = options.N if options.N is not None else theory.exact
    k = Quantity.of(options.k, "cm")
    add(DerivationResult(
        "N", _dimless(N), "1", "N = (3/2) 136 2^256",
        paper_value=_dimless(theory.exact), tolerance="exact",
    ))

    ratio = einstein_ratio(constants)
    add(DerivationResult(
        "R0/N", ratio, "cm", "R0/N = G m_h / (pi c^2)",
        paper_value=Quantity.of("3.95e-53", "cm"),
    ))
    pair = solve_cosmic_pair(ratio, Quantity.of("1.9e-13", "cm"))
    add(DerivationResult(
        "N (cosmic pair)", _dimless(pair.N), "1", "sqrt(N) = k / (R0/N)",
        paper_value=_dimless("2.31e79"), note="k = 1.9e-13 cm",
    ))
    add(DerivationResult(
        "R0 (cosmic pair)", pair.R0, "cm", "R0 = k sqrt(N)",
        paper_value=Quantity.of("9.14e26", "cm"),
    ))
    add(DerivationResult(
        "N spread", _dimless(rel_error(pair.N, N)), "1", "|N_pair - N| / N", tolerance=None,
        note="observational pair against the theoretical count",
    ))

    add(derive_G(N, constants))

    sigma = sigma_from_M(constants["m_h"], constants)
    add(DerivationResult(
        "sigma", sigma, "cm", "sigma = (136/10)(3/4) beta^(1/6) hbar (1/5)^(1/2) / (M c), M = m_h",
        paper_value=Quantity.of("9.53657e-14", "cm"),
        # the quoted digits come from the era's constants, so hold those to the exact class
        tolerance="exact" if constants.provenance == "paper-era-1946" else "vintage",
    ))
    add(DerivationResult(
        "k", 2 * sigma, "cm", "k = 2 sigma",
        paper_value=Quantity.of(K_NUCLEAR, "cm"),
    ))

    frame = CosmicFrame.from_range(k, N)
    M = proper_mass(frame, constants, observational=True).M
    add(DerivationResult(
        "M", M, "g", "M = (136/10)(3/4) beta^(1/6) hbar sqrt(4N/5) / (c R0)",
        modern_value=constants["m_h"], target="modern",
    ))
    add(DerivationResult(
        "m0 two-path", proper_mass_from_exclusion(frame, constants), "g",
        "m0^2 = (3/4)(3/5) hbar^2 N / (c R0)^2",
        modern_value=proper_mass(frame, constants).m0, target="modern", tolerance="exact",
        note="exclusion route against the relativistic route",
    ))

    V0 = recession(k, N, constants)
    add(DerivationResult(
        "V0", V0, "km.s-1.Mpc-1", "V0 = c / (k sqrt(3N))",
        paper_value=Quantity.of("572.4", "km.s-1.Mpc-1"),
        modern_value=Quantity.of("72", "km.s-1.Mpc-1"), note="observed then: 560",
    ))
    add(DerivationResult(
        "h (recession)", _dimless(hubble_dimensionless(V0)), "1", "h = V0 / 100",
        tolerance=None, note="outside the modern range 0.5-1",
    ))
    add(DerivationResult(
        "N (from H0 = 72)", _dimless(N_from_recession(72, k, constants)), "1", "N = (c / (k V0))^2 / 3",
        tolerance=None, note="what-if with the modern Hubble constant",
    ))

    theory_F, direct_F = force_constant(N, constants)
    add(DerivationResult(
        "F", _dimless(theory_F), "1", "F = (2 / (3 pi beta^2)) sqrt(5N)",
        modern_value=_dimless(direct_F), target="modern", note="against e^2 / (G m_p m_e)",
    ))

    eta1, eta2 = mass_ratio_standard()
    eta1c, eta2c = mass_ratio_current()
    m_ratio = (constants["m_p"] / constants["m_e"]).magnitude
    add(DerivationResult("eta1", _dimless(eta1), "1", "eta1 = 136^2 / 10",
                         paper_value=_dimless("1849.6"), tolerance="exact"))
    add(DerivationResult("eta2", _dimless(eta2), "1", "10 m^2 - 136 m m0 + m0^2 = 0",
                         paper_value=_dimless("1847.6"), tolerance="exact"))
    add(DerivationResult("eta1'", _dimless(eta1c), "1", "eta1' = (136^2 / 10) beta^(-5/6)",
                         paper_value=_dimless("1838.34"), tolerance="exact"))
    add(DerivationResult("eta2'", _dimless(eta2c), "1", "10 m^2 - 136 m m0 + beta^(5/6) m0^2 = 0",
                         paper_value=_dimless("1836.34"), modern_value=_dimless(m_ratio), tolerance="exact"))

    alpha = fine_structure("modern", constants)
    add(DerivationResult("alpha", alpha, "1", "alpha = e^2 / (hbar c)",
                         paper_value=fine_structure("paper"), tolerance="exact"))

    mu = (constants["m_p"] * constants["m_e"] / (constants["m_p"] + constants["m_e"])).labelled("mu")
    textbook = rydberg_textbook(mu, constants)
    add(DerivationResult(
        "R_H", textbook, "cm-1", "R = 2 pi^2 mu e^4 / (h^3 c)",
        modern_value=Quantity.of("109677.58", "cm-1"), target="modern", tolerance="exact",
    ))
    add(DerivationResult(
        "R_H (alpha = 1/137)", rydberg(mu, constants), "cm-1", "R = (1/2)(1/137)^2 mu c / (2 pi hbar)",
        modern_value=textbook, target="modern", tolerance="exact",
    ))
    extra = rydberg_extra_e2(mu, constants)
    add(DerivationResult(
        "R_H (extra e^2)", extra, str(extra.dims), "R = (1/2)(1/137)^2 mu c e^2 / (2 pi hbar)",
        tolerance=None, note=f"units {extra.dims}, not cm-1",
    ))

    faraday = mu_from_faraday(constants)
    add(DerivationResult(
        "mu_A (Faraday)", faraday.value, faraday.units, "mu_A = 4 pi 137^3 F^2 m_h^2",
        tolerance=None, note=f"units {faraday.units}, expected {faraday.expected}",
    ))

    wc = weight_constant(sigma, constants)
    add(DerivationResult(
        "varpi c / m_e c^2", _dimless(wc.over_electron_rest), "1", "varpi = hbar / (2 sigma)",
        paper_value=_dimless(200), tolerance="magnitude",
    ))
    A = non_coulomb_amplitude(sigma, constants) / (constants["m_e"] * constants["c"] ** 2)
    add(DerivationResult(
        "A / m_e c^2", A, "1", "A = (16 / 3 pi)^(1/2) (m_p / m0) e^2 / sigma",
        paper_value=_dimless("52.01"), modern_value=_dimless("52.26"), note="observed then: 52.26",
    ))

    K_paper = degeneracy_K(constants["m_e"], constants, "paper")
    add(DerivationResult(
        "K", K_paper, "g.cm4.s-2", "K = (1/5)(3 / 8 pi)^(2/3) h^2 / m_e",
        modern_value=degeneracy_K(constants["m_e"], constants, "modern"), target="modern", tolerance="exact",
        note="against (3 pi^2)^(2/3) hbar^2 / (5 m_e)",
    ))

    add(DerivationResult(
        "pion range", carrier_range(Quantity.of("139.57", "MeV"), constants), "cm",
        "k = hbar / (2 m c)", paper_value=Quantity.of("0.73e-13", "cm"), tolerance="magnitude",
    ))
    add(DerivationResult(
        "Z range", carrier_range(Quantity.of("91.19", "GeV"), constants), "cm",
        "k = hbar / (2 m c)", paper_value=Quantity.of("1e-15", "cm"), tolerance="order",
    ))

    rounded = options.natural_basis or rounded_natural_basis()
    hand = photon_momentum_identity(rounded)
    own = photon_momentum_identity(constants)
    add(DerivationResult(
        "1 kg in s^-1", _dimless(hand.kg_in_s), "1", "kg -> c^2 / hbar (c = 3e10, hbar = 1.054e-27)",
        paper_value=_dimless("8.540e50"), tolerance="exact",
    ))
    add(DerivationResult(
        "1 kg in s^-1 (set)", _dimless(own.kg_in_s), "1", "kg -> c^2 / hbar",
        paper_value=_dimless("8.540e50"),
    ))
    add(DerivationResult(
        "1 / (1 kg m)", _dimless(1 / hand.kg_m), "1", "kg m -> c / hbar (c = 3e10, hbar = 1.054e-27)",
        paper_value=_dimless("3.513e-43"), tolerance="exact",
    ))
    add(DerivationResult(
        "photon C", _dimless(own.C_value), "1", "C = p / n, 1 kg m^4 / s in s^i",
        paper_value=_dimless(1), tolerance="exact", note=f"carries s^{own.C_power}",
    ))
    return rows
