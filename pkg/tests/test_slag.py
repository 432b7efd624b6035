import random
import warnings

import pytest

from slagforge import slag
from slagforge.model import abelian, builtin
from slagforge.scalars import LAM, ONE, ZERO, Scalar

FIRST = "x1*x10 - x4*x7 + x2*x11 - x5*x8 + x3*x12 - x6*x9"
RE_OMEGA_AXES = {(1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5)}


def test_first_equation():
    s = slag.build_system(builtin("iwasawa"), "0")
    assert s.equations[0] == slag.Poly.parse(FIRST)


def test_degrees():
    for name in ("iwasawa", "nakamura_cs"):
        for phase in slag.PHASES:
            assert slag.build_system(builtin(name), phase).degrees() == (2, 2, 2, 3)


def test_rotated_phase_uses_real_part():
    s = slag.build_system(builtin("iwasawa"), "-pi/2")
    for t in RE_OMEGA_AXES:
        res = slag.eval_system(s, slag.DistributionMatrix.axis(t))
        assert not res[3].is_zero()
    for t in [(4, 5, 6), (2, 3, 4), (1, 3, 5), (1, 2, 6)]:
        assert all(r.is_zero() for r in slag.eval_system(s, slag.DistributionMatrix.axis(t)))


def test_eval_on_axes():
    s = slag.build_system(builtin("iwasawa"))
    assert slag.eval_system(s, slag.DistributionMatrix.axis((1, 2, 3))) == (ZERO,) * 4
    assert slag.eval_system(s, slag.DistributionMatrix.axis((1, 2, 4))) == (ZERO, ONE, ZERO, ZERO)


def test_zero_matrix_warns():
    s = slag.build_system(builtin("iwasawa"))
    with pytest.warns(slag.DegenerateDistribution):
        A = slag.DistributionMatrix.of([[0] * 6] * 3)
        assert slag.eval_system(s, A) == (ZERO,) * 4


def test_wrong_dimension_rejected():
    with pytest.raises(slag.SlagError):
        slag.build_system(abelian(4))


@pytest.mark.parametrize("phase, want", [("0", RE_OMEGA_AXES),
                                         ("-pi/2", {(4, 5, 6), (2, 3, 4), (1, 3, 5), (1, 2, 6)})])
def test_scan(phase, want):
    assert {r.triple for r in slag.scan_axis(builtin("nakamura_cs"), phase)} == want


def test_iwasawa_phase_zero_all_involutive():
    assert all(r.involutivity for r in slag.scan_axis(builtin("iwasawa"), "0"))


def test_involutive_with_witness():
    m = builtin("iwasawa")
    assert slag.involutive(m, (1, 2, 3))
    inv = slag.involutive(m, (1, 2, 4))
    assert not inv
    assert "[E_2, E_4] = -E_6" in inv.describe()
    assert slag.involutive(builtin("nakamura_cs"), (2, 3, 4))


def test_matrix_file_format():
    A = slag.DistributionMatrix.parse("1 0 0 0 0 0\n0 1 0 0 0 0\n0 0 1/2 0 0 lam\n")
    assert A.rows[2][2] == Scalar(1) / 2
    assert A.rank() == 3


def test_scan_invariant_under_row_order():
    m = builtin("nakamura_cs")
    s = slag.build_system(m)
    for t in RE_OMEGA_AXES:
        for perm in [(t[1], t[0], t[2]), (t[2], t[1], t[0])]:
            res = slag.eval_system(s, slag.DistributionMatrix.axis(perm))
            assert all(r.is_zero() for r in res)


@pytest.mark.parametrize("phase", slag.PHASES)
def test_system_matches_direct_evaluation(phase):
    rng = random.Random(phase)
    m = builtin("iwasawa")
    s = slag.build_system(m, phase)
    for _ in range(200):
        rows = [[Scalar(rng.randint(-4, 4)) for _ in range(6)] for _ in range(3)]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", slag.DegenerateDistribution)
            A = slag.DistributionMatrix.of(rows)
        assert slag.eval_system(s, A) == slag.residuals_direct(m, A, phase)


def test_poly_parse():
    p = slag.Poly.parse("x1*x2 - 3*x4 + lam*x5")
    assert p.degree() == 2
    vals = [Scalar(k) for k in range(1, 19)]
    assert p.evaluate(vals) == Scalar(2 - 12) + 5 * LAM
