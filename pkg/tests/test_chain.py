import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from ftr.chain import (
    ALPHA_PAPER,
    ETA1,
    ChainOptions,
    DEFAULT_TOLERANCES,
    DerivationResult,
    G_from_N,
    N_from_G,
    N_from_recession,
    _ratio_of_roots,
    derive_G,
    fine_structure,
    force_constant,
    hubble_dimensionless,
    hubble_in_modern_range,
    mass_ratio_current,
    mass_ratio_standard,
    merge_tolerances,
    mu_from_faraday,
    photon_momentum_identity,
    recession,
    rounded_natural_basis,
    run_chain,
    rydberg,
    rydberg_extra_e2,
    rydberg_textbook,
    theoretical_N,
)
from ftr.errors import ConfigError, MissingConstant
from ftr.numeric import BETA, Quantity
from ftr.particles import TwoParticle, reduce_two_particle

from conftest import close

N_TH = 204 * 2**256


def test_theoretical_N_exact():
    th = theoretical_N()
    # independent oracle: shift-and-add in plain integers, checked digit by digit
    oracle = (128 + 64 + 8 + 4) << 256
    assert th.exact == oracle
    assert str(th.exact) == str(204 * pow(2, 256))
    assert Fraction(3, 2) * 136 == 204
    assert isinstance(th.exact, int)


def test_theoretical_N_decimal():
    th = theoretical_N()
    assert close(th.decimal, mpf("2.362e79"), mpf("1e-4"))
    spread = (th.decimal - mpf("2.31e79")) / mpf("2.31e79")
    assert mpf("0.02") < spread < mpf("0.025")


def test_derive_G_modern(modern):
    r = derive_G(N_TH, modern)
    assert close(r.value, mpf("6.6665e-8"), mpf("2e-3"))
    assert close(r.value, mpf("6.666e-8"), mpf("1e-3"))
    assert r.verdict() == "pass"
    # within 0.5% of the measured G
    assert r.rel_error_modern < mpf("5e-3")
    h, c, m_h = 6.62607015e-27, 2.99792458e10, 1.6735328e-24
    oracle = 136 * (137 / 136) ** (1 / 6) * h * c * math.sqrt(9 / 20) / (20 * m_h**2 * math.sqrt(float(N_TH)))
    assert close(r.value, oracle, mpf("1e-12"))


def test_G_scaling(modern):
    a = G_from_N(100, modern).magnitude
    assert close(G_from_N(400, modern).magnitude, a / 2, mpf("1e-48"))


def test_N_from_modern_G(modern):
    N = N_from_G(modern["G"], modern)
    assert close(N, mpf("2.36e79"), mpf("0.01"))


@settings(max_examples=30)
@given(st.decimals("1e10", "1e100", places=None).map(str))
def test_N_G_round_trip(N):
    from ftr.numeric import bundled

    modern = bundled("modern")
    assert close(N_from_G(G_from_N(mpf(N), modern), modern), mpf(N), mpf(10) ** -(mp.dps - 5))


def test_derive_G_needs_m_h(modern):
    with pytest.raises(MissingConstant) as info:
        derive_G(N_TH, modern.without("m_h"))
    assert info.value.name == "m_h"


def test_mass_ratio_standard():
    eta1, eta2 = mass_ratio_standard()
    assert eta1 == Fraction(9248, 5) == ETA1
    assert abs(eta2 - mpf("1847.6")) <= mpf("0.01")


def test_mass_ratio_vieta():
    disc = mp.sqrt(mpf("13.6") ** 2 - mpf("0.4"))
    heavy, light = (mpf("13.6") + disc) / 2, (mpf("13.6") - disc) / 2
    assert close(heavy + light, mpf("13.6"), mpf("1e-48"))
    assert close(heavy * light, mpf("0.1"), mpf("1e-48"))
    assert close(heavy / light, mass_ratio_standard()[1], mpf("1e-45"))


@given(st.decimals("1e-20", "1e20", places=None).map(str))
def test_root_ratio_invariant_under_rescaling(scale):
    s = mpf(scale)
    # 10 m^2 - 136 m (s m0) + (s m0)^2 has roots scaled by s
    a = _ratio_of_roots(mpf(10), 136 * s, s * s)
    assert close(a, mass_ratio_standard()[1], mpf(10) ** -(mp.dps - 10))


def test_mass_ratio_current(modern):
    eta1p, eta2p = mass_ratio_current()
    assert abs(eta1p - mpf("1838.34")) <= mpf("0.01")
    assert abs(eta2p - mpf("1836.34")) <= mpf("0.01")
    measured = (modern["m_p"] / modern["m_e"]).magnitude
    assert abs(measured - mpf("1836.15")) < mpf("0.01")


def test_fine_structure():
    a = fine_structure("paper")
    assert ALPHA_PAPER == Fraction(1, 137)
    assert a.magnitude == mpf(1) / 137
    assert mp.nstr(mpf(1) / 137, 6) == "0.00729927"
    assert BETA * 136 == 137
    with pytest.raises(ConfigError):
        fine_structure("modern")
    with pytest.raises(ConfigError):
        fine_structure("other")


def test_fine_structure_modern(modern):
    a = fine_structure("modern", modern)
    assert a.dims.dimensionless
    assert abs(1 / a.magnitude - mpf("137.04")) <= mpf("0.01")


def _mu(constants):
    return reduce_two_particle(TwoParticle(constants["m_p"], constants["m_e"]))[1]


def test_rydberg_textbook(modern):
    R = rydberg_textbook(_mu(modern), modern)
    assert close(R.to("cm-1"), mpf("109677"), mpf("1e-3"))
    e, h, c = 4.80320471e-10, 6.62607015e-27, 2.99792458e10
    mp_, me = 1.67262192369e-24, 9.1093837015e-28
    oracle = 2 * math.pi**2 * (mp_ * me / (mp_ + me)) * e**4 / (h**3 * c)
    assert close(R.to("cm-1"), oracle, mpf("1e-12"))


def test_rydberg_forms(modern):
    mu = _mu(modern)
    modern_form = rydberg(mu, modern, alpha="modern")
    # the tabulated hbar and h / 2 pi differ at 1e-10, so the forms agree to about 1e-9
    assert close(modern_form.to("cm-1"), rydberg_textbook(mu, modern).to("cm-1"), mpf("1e-8"))
    paper_form = rydberg(mu, modern)
    assert paper_form.dims == modern_form.dims
    # alpha = 1/137 exactly shifts the wavenumber by (137.036/137)^2
    shift = (paper_form / modern_form).magnitude
    assert close(shift, (1 / fine_structure("modern", modern).magnitude / 137) ** 2, mpf("1e-45"))
    extra = rydberg_extra_e2(mu, modern)
    assert close((extra / paper_form).magnitude, (modern["e"] ** 2).magnitude, mpf("1e-48"))
    assert not extra.dims.same_as(paper_form.dims)
    assert rydberg(mu, modern, empirical=True).magnitude == paper_form.magnitude


def test_force_constant(modern):
    theory, direct = force_constant(N_TH, modern)
    assert close(theory, mpf("2.27e39"), mpf("0.01"))
    assert close(direct, mpf("2.27e39"), mpf("0.01"))
    assert close(theory, direct, mpf("0.01"))
    e, G, mp_, me = 4.80320471e-10, 6.67430e-8, 1.67262192369e-24, 9.1093837015e-28
    assert close(direct, e**2 / (G * mp_ * me), mpf("1e-12"))


@given(st.decimals("1e70", "1e90", places=None).map(str))
def test_force_constant_two_paths(N):
    """Theory scales as sqrt(N); it meets the direct path where N sits near 2.36e79."""
    from ftr.numeric import bundled

    modern = bundled("modern")
    theory, direct = force_constant(mpf(N), modern)
    base, _ = force_constant(N_TH, modern)
    assert close(theory, base * mp.sqrt(mpf(N) / N_TH), mpf(10) ** -(mp.dps - 5))
    assert direct == force_constant(N_TH, modern)[1]


def test_recession(modern):
    V0 = recession(Quantity.of("1.921e-13", "cm"), N_TH, modern)
    assert abs(V0.to("km.s-1.Mpc-1") - mpf("572.4")) <= 2
    c, k, mpc_cm = 2.99792458e10, 1.921e-13, 3.0857e24
    oracle = c / (k * math.sqrt(3 * float(N_TH))) * mpc_cm / 1e5
    assert close(V0.to("km.s-1.Mpc-1"), oracle, mpf("1e-12"))
    V4 = recession(Quantity.of("1.921e-13", "cm"), 4 * N_TH, modern)
    assert close(V4.magnitude * 2, V0.magnitude, mpf("1e-48"))


def test_recession_inverts(modern):
    k = Quantity.of("1.921e-13", "cm")
    V0 = recession(k, N_TH, modern).to("km.s-1.Mpc-1")
    assert close(N_from_recession(V0, k, modern), N_TH, mpf("1e-45"))
    assert close(N_from_recession(72, k, modern), mpf("1.49e81"), mpf("0.01"))


def test_hubble_dimensionless():
    assert hubble_dimensionless(72) == mpf("0.72")
    assert hubble_dimensionless(100) == 1
    h = hubble_dimensionless(mpf("572.4"))
    assert close(h, mpf("5.724"), mpf("1e-48"))
    assert not hubble_in_modern_range(h)
    assert hubble_in_modern_range(hubble_dimensionless(72))
    assert close(hubble_dimensionless(Quantity.of(72, "km.s-1.Mpc-1")), mpf("0.72"), mpf("1e-48"))


def test_faraday(modern):
    audit = mu_from_faraday(modern)
    assert 137**3 == 2571353
    assert close(modern["faraday_h"].magnitude, mpf("9573.62"), mpf("1e-6"))
    assert not audit.consistent and audit.expected == "g"
    doubled = modern.replace(faraday_h=(2 * modern["faraday_h"].magnitude, "esu.g-1.s.cm-1"))
    assert close(mu_from_faraday(doubled).value.magnitude, 4 * audit.value.magnitude, mpf("1e-45"))


def test_photon_identity_steps():
    ident = photon_momentum_identity(rounded_natural_basis())
    assert close(ident.kg_in_s, mpf("8.540e50"), mpf("1e-3"))
    assert ident.kg_power == -1
    assert close(1 / ident.kg_m, mpf("3.513e-43"), mpf("1e-3"))


def test_photon_C_carries_seconds(modern):
    ident = photon_momentum_identity(modern)
    # kg m^4 / s -> s^-1 s^4 s^-1 = s^2
    assert ident.C_power == 2
    assert ident.C_value > 0


def test_photon_needs_hbar(modern):
    with pytest.raises(MissingConstant):
        photon_momentum_identity(modern.without("hbar"))


# --- run_chain ---------------------------------------------------------------


def test_run_chain_modern(modern):
    rows = run_chain(modern)
    assert len(rows) >= 12
    assert all(isinstance(r, DerivationResult) for r in rows)
    for r in rows:
        # dimension firewall: every row converts to its declared unit
        r.value


def test_run_chain_paper_era(vintage):
    rows = {r.name: r for r in run_chain(vintage)}
    for name in ("N", "G", "eta1", "eta2", "eta1'", "eta2'", "V0", "alpha", "k", "A / m_e c^2", "K"):
        assert rows[name].verdict() == "pass", name


def test_run_chain_missing_m_h(modern):
    with pytest.raises(MissingConstant) as info:
        run_chain(modern.without("m_h"))
    assert info.value.name == "m_h"


def test_run_chain_is_deterministic(modern):
    a = [(r.name, r.value) for r in run_chain(modern)]
    b = [(r.name, r.value) for r in run_chain(modern)]
    assert a == b


def test_run_chain_custom_N(modern):
    rows = {r.name: r for r in run_chain(modern, ChainOptions(N=4 * N_TH))}
    base = {r.name: r for r in run_chain(modern)}
    assert close(rows["G"].value * 2, base["G"].value, mpf("1e-45"))


def test_exact_rows_stay_exact(modern):
    rows = {r.name: r for r in run_chain(modern)}
    assert ETA1 == Fraction(9248, 5)
    assert rows["eta1"].computed.magnitude == mpf(9248) / 5
    assert rows["N"].computed.magnitude == mpf(N_TH)


def test_tolerances():
    assert DEFAULT_TOLERANCES == {"exact": 1e-3, "vintage": 1e-2, "magnitude": 5e-2, "order": 1.0}
    merged = merge_tolerances({"vintage": 0.5, "G": 1e-6})
    assert merged["vintage"] == 0.5 and merged["G"] == 1e-6 and merged["exact"] == 1e-3
    with pytest.raises(ConfigError):
        merge_tolerances({"exact": -1})


def test_row_override(modern):
    r = derive_G(N_TH, modern)
    assert r.verdict(merge_tolerances({"G": 1e-9})) == "fail"
    assert r.verdict(merge_tolerances({"exact": 1e-9})) == "fail"
    info = DerivationResult("x", Quantity(1), "1", "", tolerance=None)
    assert info.verdict() == "info"


def test_order_tolerance_uses_decades():
    r = DerivationResult("z", Quantity.of("1.08e-16", "cm"), "cm", "", paper_value=Quantity.of("1e-15", "cm"),
                         tolerance="order")
    assert close(r.deviation(), mp.log10(mpf("1e-15") / mpf("1.08e-16")), mpf("1e-45"))
    assert r.verdict() == "pass"
