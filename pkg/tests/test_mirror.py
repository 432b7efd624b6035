from fractions import Fraction

import pytest

from slagforge import mirror
from slagforge.exterior import WeightedForm, d
from slagforge.model import builtin
from slagforge.parse import parse_form
from slagforge.scalars import I, ONE, Scalar, V

FT_CS = "-v*(t[1] + i*t[4])*(e(lam*r0)*t[2] + i*e(-lam*r0)*t[5])*(e(-lam*r0)*t[3] + i*e(lam*r0)*t[6])"
OMEGA_CS_MIRROR = "i*v*(t[1] + i*t[4])*(t[3] + i*t[5])*(t[2] + i*t[6])"
POL = mirror.chart_polarization()


@pytest.fixture(scope="module")
def cs():
    return builtin("nakamura_cs")


@pytest.fixture(scope="module")
def omega_check(cs):
    return mirror.to_chart(cs, cs.omega)


def test_polarization_switch_exponential(omega_check):
    lhs = mirror.polarization_switch(mirror.exp_form(omega_check.scale(2)), POL)
    assert lhs == mirror.exp_form(omega_check.scale(I))


def test_polarization_switch_simple():
    assert mirror.polarization_switch(WeightedForm.const(1), POL) == WeightedForm.const(1)
    assert mirror.polarization_switch(WeightedForm.mono(1, 4, coeff=2), POL) == WeightedForm.mono(1, 4, coeff=I)


def test_exp_form_rejects_odd():
    with pytest.raises(mirror.MirrorError):
        mirror.exp_form(WeightedForm.mono(1))


def test_fourier_mukai_of_exp(cs, omega_check):
    ft = mirror.fourier_mukai(mirror.exp_form(omega_check.scale(2)))
    mir = builtin("nakamura_cs_mirror")
    assert ft == mirror.parse_chart_form(mir, FT_CS)
    assert mirror.from_chart(mir, ft) == parse_form(OMEGA_CS_MIRROR)


def test_fourier_mukai_zero():
    assert mirror.fourier_mukai(WeightedForm.zero()).is_zero()


def test_fourier_mukai_orientation_and_volume(omega_check):
    f = mirror.exp_form(omega_check.scale(2))
    ft = mirror.fourier_mukai(f)
    assert mirror.fourier_mukai(f, orientation=-1) == ft.scale(-1)
    assert mirror.fourier_mukai(f, fiber_volume=Scalar(3)) == ft.scale(ONE * 3 / V)


def test_dual_model_cs():
    r = mirror.dual_model(builtin("nakamura_cs"), "L234")
    assert r.model.name == "nakamura_cs_mirror"
    assert r.omega_transported
    assert r.remap["dt0"] == "-t[4]"
    y = r.model.lattice.periods["y"]
    assert (y.q, y.unit) == (Fraction(1), "lam/2pi")


def test_dual_model_twice_restores_lattice():
    cs = builtin("nakamura_cs").with_tau(Fraction(3, 2))
    back = mirror.dual_model(mirror.dual_model(cs, "L234").model, "L234").model
    assert back.name == cs.name
    assert back.lattice.periods == cs.lattice.periods


def test_dual_model_cp():
    assert mirror.dual_model(builtin("nakamura_cp"), "L123").model.name == "nakamura_cp_mirror"


def test_dual_model_rejects_other_foliations():
    with pytest.raises(mirror.MirrorError):
        mirror.dual_model(builtin("nakamura_cs"), "L123")


def test_susy_cs_iib(cs):
    rep = mirror.susy_check(cs, "IIB")
    assert rep.ok
    assert rep.F == Scalar(8)
    assert rep.norm_squared == ONE
    # computed by hand from the structure equations
    assert rep.rho == parse_form("-1/2*lam^2*(t[1,2,4,5] + t[1,3,4,6])")


@pytest.mark.xfail(strict=True, reason="reference relative sign contradicts the 2<->3 symmetry of the model")
def test_susy_cs_iib_reference_rho(cs):
    assert mirror.susy_check(cs, "IIB").rho == parse_form("1/2*lam^2*(t[1,2,4,5] - t[1,3,4,6])")


def test_susy_cp_iib():
    rep = mirror.susy_check(builtin("nakamura_cp"), "IIB")
    assert rep.ok and rep.F == Scalar(8)
    assert rep.rho_complex == parse_form("-1/8*(t[1,4,2,5] + t[1,4,3,6])")


def test_susy_iia_on_dual_with_transformed_Omega(cs, omega_check):
    mir = builtin("nakamura_cs_mirror")
    Om = mirror.from_chart(mir, mirror.fourier_mukai(mirror.exp_form(omega_check.scale(2))))
    rep = mirror.susy_check(mir, "IIA", Omega=Om)
    assert rep.ok
    assert d(mir.omega, mir).is_zero() and d(Om.real_part(), mir).is_zero()


def test_conformal_factor_duality(cs):
    Fc = mirror.susy_check(builtin("nakamura_cs_mirror"), "IIA").F
    F = mirror.susy_check(cs, "IIB").F
    assert (Fc * F).subs({"v": 1}) == Scalar(64)


def test_norm_identity(cs):
    # |Omega|^2 omega^3/3! = (i^9 / 8) Omega ^ conj(Omega)
    nsq = mirror.norm_squared(cs.omega, cs.Omega, 3)
    lhs = cs.omega.power(3).scale(nsq / 6)
    rhs = cs.Omega.wedge(cs.Omega.conjugate()).scale(I ** 9 / 8)
    assert lhs == rhs


def test_susy_unknown_type(cs):
    with pytest.raises(mirror.MirrorError):
        mirror.susy_check(cs, "IIC")


def test_chart_roundtrip(cs):
    f = parse_form("e(lam*x)*t[2,3] + 2*t[1,5]", cs.weight_directions)
    assert mirror.from_chart(cs, mirror.to_chart(cs, f)) == f
