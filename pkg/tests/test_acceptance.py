"""Acceptance battery: one group of exact checks per criterion.

The terminal summary prints one PASS/FAIL line per criterion.  Known gaps are
strict xfails: they keep pytest green while their criterion prints FAIL.
"""

import random
from fractions import Fraction

import pytest

from slagforge import cohomology as coh
from slagforge import deform, lattice, mirror, slag, suite
from slagforge import exterior as ext
from slagforge.exterior import theta
from slagforge.model import BUILTINS, bracket, builtin, norm_omega_squared
from slagforge.parse import parse_form
from slagforge.scalars import LAM, ONE, QuadInt, Scalar, quad_sqrt_check

crit = pytest.mark.criterion
gap = pytest.mark.xfail(strict=True)

PHASE_0 = {(1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5)}
PHASE_ROT = {(4, 5, 6), (2, 3, 4), (1, 3, 5), (1, 2, 6)}


# 1 -------------------------------------------------------------------------

@crit(1)
@pytest.mark.parametrize("name", ["iwasawa", "nakamura_cs"])
@pytest.mark.parametrize("phase, want", [("0", PHASE_0), ("-pi/2", PHASE_ROT)])
def test_c1_axis_scan(name, phase, want):
    assert {r.triple for r in slag.scan_axis(builtin(name), phase)} == want


# 2 -------------------------------------------------------------------------

SYSTEM = [
    "x1*x10 - x4*x7 + x2*x11 - x5*x8 + x3*x12 - x6*x9",
    "x1*x16 - x4*x13 + x2*x17 - x5*x14 + x3*x18 - x6*x15",
    "x7*x16 - x10*x13 + x8*x17 - x11*x14 + x9*x18 - x12*x15",
    "x1*x8*x18 - x1*x12*x14 - x2*x7*x18 + x2*x12*x13 + x6*x7*x14 - x6*x8*x13"
    " - x1*x9*x17 + x1*x11*x15 + x3*x7*x17 - x3*x11*x13 - x5*x7*x15 + x5*x9*x13"
    " + x2*x9*x16 - x2*x10*x15 - x3*x8*x16 + x3*x10*x14 + x4*x8*x15 - x4*x9*x14"
    " - x4*x11*x18 + x4*x12*x17 + x5*x10*x18 - x5*x12*x16 - x6*x10*x17 + x6*x11*x16",
]


@crit(2)
@pytest.mark.parametrize("name", ["iwasawa", "nakamura_cs"])
def test_c2_system(name):
    s = slag.build_system(builtin(name), "0")
    assert list(s.equations) == [slag.Poly.parse(t) for t in SYSTEM]


# 3 -------------------------------------------------------------------------

def _nonzero_brackets(m):
    out = {}
    for j in range(1, 7):
        for k in range(j + 1, 7):
            nz = {t: c for t, c in enumerate(bracket(m, j, k), start=1) if not c.is_zero()}
            if nz:
                out[(j, k)] = nz
    return out


@crit(3)
@pytest.mark.parametrize("name", ["iwasawa", "nakamura_cs"])
def test_c3_phase0_triples_involutive(name):
    m = builtin(name)
    assert all(slag.involutive(m, t) for t in PHASE_0)


@crit(3)
@pytest.mark.parametrize("name, want", [
    ("iwasawa", {(1, 2): {3: ONE}, (1, 5): {6: ONE}, (2, 4): {6: -ONE}, (4, 5): {3: -ONE}}),
    ("nakamura_cs", {(1, 2): {2: LAM}, (1, 3): {3: -LAM}, (1, 5): {5: LAM}, (1, 6): {6: -LAM}}),
])
def test_c3_brackets(name, want):
    assert _nonzero_brackets(builtin(name)) == want


# 4 -------------------------------------------------------------------------

def _zero_order(s):
    return {(n + 1, key[1]): c for n, eq in enumerate(s.equations) for key, c in eq.items() if key[0] == "a"}


@crit(4)
@pytest.mark.parametrize("name, triple, conv, want", [
    ("iwasawa", (1, 2, 3), "signed", {(3, 2): ONE, (4, 1): -ONE}),
    ("nakamura_cs", (1, 2, 3), "signed", {(2, 2): LAM, (3, 3): -LAM}),
    ("nakamura_cs", (1, 5, 6), "index", {(2, 5): -3 * LAM, (3, 6): 3 * LAM}),
])
def test_c4_deformation_systems(name, triple, conv, want):
    m = builtin(name)
    s = deform.generate(m, triple, conv)
    assert _zero_order(s) == want
    assert deform.invariant_solution_dim(m, triple, conv) == 1


@crit(4)
def test_c4_iwasawa_jets():
    s = deform.generate(builtin("iwasawa"), (1, 2, 3))
    assert [deform.format_linear(e) for e in s.equations] == [
        "E_1(alpha_1) + E_2(alpha_2) + E_3(alpha_3)",
        "E_1(alpha_2) - E_2(alpha_1)",
        "E_1(alpha_3) - E_3(alpha_1) + alpha_2",
        "E_2(alpha_3) - E_3(alpha_2) - alpha_1",
    ]


# 5 -------------------------------------------------------------------------

def _involutive_slag_triples():
    for name in BUILTINS:
        m = builtin(name)
        for phase in slag.PHASES:
            for r in slag.scan_axis(m, phase):
                if r.involutivity:
                    yield name, r.triple


@crit(5)
@pytest.mark.parametrize("name, triple", list(_involutive_slag_triples()))
def test_c5_oracle(name, triple):
    m = builtin(name)
    rng = random.Random(f"{name}{triple}")
    for conv in deform.J_CONVENTIONS:
        for _ in range(3):
            assert suite.deform_oracle_agrees(m, triple, conv, rng)
    cc = deform.cross_check(m, triple)
    if cc.applicable:
        assert cc.agrees["statement"]
        assert all(n == 3 and key == ("a", triple[2]) for n, key, _, _ in cc.differences["proof"])


# 6 -------------------------------------------------------------------------

@crit(6)
@pytest.mark.parametrize("triple, b1", [((1, 2, 3), 1), ((1, 5, 6), 1), ((1, 3, 5), 1), ((1, 2, 6), 1),
                                        ((2, 4, 6), 3), ((3, 4, 5), 3), ((2, 3, 4), 3), ((4, 5, 6), 3)])
def test_c6_nakamura_cs_b1(triple, b1):
    assert deform.leaf_betti1(builtin("nakamura_cs"), triple) == b1


@crit(6)
@pytest.mark.parametrize("triple", sorted(PHASE_0))
def test_c6_iwasawa_b1(triple):
    assert deform.leaf_betti1(builtin("iwasawa"), triple) == 2


# 7 -------------------------------------------------------------------------

@crit(7)
@pytest.mark.parametrize("fid, kind, cond", [
    ("L123", "closed_iff", ("B", "C")), ("L156", "closed_iff", ("A", "B")),
    ("L246", "never_closed", ()), ("L345", "never_closed", ()),
    ("L135", "never_closed", ()), ("L126", "never_closed", ()),
    ("L234", "always_closed", ()), ("L456", "always_closed", ()),
])
def test_c7_closure(fid, kind, cond):
    v = lattice.classify_leaf_closure(builtin("nakamura_cs"), fid)
    assert (v.kind, tuple(sorted(v.condition))) == (kind, cond)


# 8 -------------------------------------------------------------------------

@crit(8)
def test_c8_number_theory():
    M = [[2, 3], [1, 2]]
    ed = lattice.eigen_data(M)
    assert ed.discriminant == 12
    assert quad_sqrt_check(12).is_square is False
    assert ed.eigenvalues == (QuadInt(2, 1, 3), QuadInt(2, -1, 3))
    assert lattice.diag_integer_matrix_search(M, 50) is None
    assert all(lattice.verify_torus_conjugation(M, a) for a in range(4))


# 9 -------------------------------------------------------------------------

DERHAM_REPS = {
    1: [(1,), (4,)], 2: [(1, 4), (3, 5), (2, 6), (2, 3), (5, 6)],
    3: [(1, 3, 5), (1, 2, 6), (1, 2, 3), (1, 5, 6), (3, 4, 5), (2, 4, 6), (2, 3, 4), (4, 5, 6)],
}


@crit(9)
def test_c9_de_rham_cs():
    m = builtin("nakamura_cs")
    t = coh.de_rham(m)
    assert t.betti() == (1, 2, 5, 8, 5, 2, 1)
    for k, idxs in DERHAM_REPS.items():
        assert {str(theta(*i)) for i in idxs} == {str(f) for f in t.representatives[k]}
        assert all(ext.d(theta(*i), m).is_zero() for i in idxs)


@crit(9)
def test_c9_cp_pair_betti():
    bm = coh.de_rham(builtin("nakamura_cp_mirror")).betti()
    bc = coh.de_rham(builtin("nakamura_cp")).betti()
    assert (bm, bc) == ((1, 2, 3, 4, 3, 2, 1), (1, 2, 5, 8, 5, 2, 1))
    assert bm[2] != bc[2]


@crit(9)
def test_c9_h10():
    cs = builtin("nakamura_cs")
    assert coh.dolbeault_h10(cs) == 3
    assert coh.dolbeault_h10(cs.with_tau(Fraction(1, 2))) == 1
    assert (coh.dolbeault_h10(cs), coh.dolbeault_h10(builtin("nakamura_cs_mirror"))) == (3, 1)


# 10 ------------------------------------------------------------------------

CS_TY = [(1,), (1, 1), (1, 3, 1), (1, 3, 3, 1), (1, 3, 1), (1, 1), (1,)]


@crit(10)
def test_c10_tseng_yau_cs_mirror():
    assert coh.refined_tseng_yau(builtin("nakamura_cs_mirror")).diamond() == CS_TY


@crit(10)
def test_c10_mirror_diamond_cs():
    assert coh.mirror_diamond_check(builtin("nakamura_cs_mirror"), builtin("nakamura_cs")).ok


@crit(10)
@gap
def test_c10_tseng_yau_cp_mirror_integral_tau():
    got = coh.refined_tseng_yau(builtin("nakamura_cp_mirror")).diamond()
    assert got == [(1,), (1, 1), (0, 3, 0), (0, 0, 0, 0), (0, 3, 0), (1, 1), (1,)]


@crit(10)
@gap
def test_c10_tseng_yau_cp_mirror_generic_tau():
    got = coh.refined_tseng_yau(builtin("nakamura_cp_mirror").with_tau(2)).diamond()
    assert got == [(1,), (1, 1), (0, 2, 0), (0, 0, 0, 0), (0, 2, 0), (1, 1), (1,)]


# 11 ------------------------------------------------------------------------

FT = "-v*(t[1] + i*t[4])*(e(lam*r0)*t[2] + i*e(-lam*r0)*t[5])*(e(-lam*r0)*t[3] + i*e(lam*r0)*t[6])"
OMEGA_MIRROR = "i*v*(t[1] + i*t[4])*(t[3] + i*t[5])*(t[2] + i*t[6])"


@crit(11)
def test_c11_fourier_mukai():
    cs, mir = builtin("nakamura_cs"), builtin("nakamura_cs_mirror")
    ft = mirror.fourier_mukai(mirror.exp_form(mirror.to_chart(cs, cs.omega).scale(2)))
    assert ft == mirror.parse_chart_form(mir, FT)
    assert mirror.from_chart(mir, ft) == parse_form(OMEGA_MIRROR)


@crit(11)
@pytest.mark.parametrize("name", ["nakamura_cs", "nakamura_cp"])
def test_c11_conformal_factor(name):
    assert mirror.susy_check(builtin(name), "IIB").F == Scalar(8)


@crit(11)
def test_c11_rho_cp():
    rep = mirror.susy_check(builtin("nakamura_cp"), "IIB")
    assert rep.rho_complex == parse_form("-1/8*(t[1,4,2,5] + t[1,4,3,6])")


@crit(11)
@gap
def test_c11_rho_cs():
    rep = mirror.susy_check(builtin("nakamura_cs"), "IIB")
    assert rep.rho == parse_form("1/2*lam^2*t[1,2,4,5] - 1/2*lam^2*t[1,3,4,6]")


@crit(11)
@pytest.mark.parametrize("name", BUILTINS)
def test_c11_balanced_and_norm(name):
    m = builtin(name)
    om2 = m.omega.power(2)
    assert ext.d(om2, m).is_zero()
    assert ext.d(om2.scale(norm_omega_squared(m)), m).is_zero()


@crit(11)
@pytest.mark.parametrize("name", [n for n in BUILTINS if builtin(n).kind == "complex"])
def test_c11_d_Omega_complex(name):
    m = builtin(name)
    assert ext.d(m.Omega, m).is_zero()


@crit(11)
@pytest.mark.parametrize("name", [n for n in BUILTINS if builtin(n).kind == "symplectic"])
def test_c11_d_re_Omega_symplectic(name):
    m = builtin(name)
    assert ext.d(m.Omega.real_part(), m).is_zero()


@crit(11)
@gap
@pytest.mark.parametrize("name", [n for n in BUILTINS if builtin(n).kind == "symplectic"])
def test_c11_d_Omega_symplectic(name):
    m = builtin(name)
    assert ext.d(m.Omega, m).is_zero()


# 12 ------------------------------------------------------------------------

@crit(12)
@pytest.mark.parametrize("name", list(suite.PROPERTIES))
def test_c12_properties(name):
    fails, n = suite.run_property(name, samples=500)
    assert n >= 500 and fails == 0
