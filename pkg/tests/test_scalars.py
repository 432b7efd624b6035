from fractions import Fraction

import pytest

from slagforge.parse import ParseError, parse_quad, parse_rational, parse_scalar
from slagforge.scalars import (I, LAM, ONE, ZERO, MalformedScalar, QuadInt, Scalar,
                               normalize, quad_sqrt_check)


def test_normalize_cancels_common_factors():
    assert normalize(2 * LAM, 2) == LAM
    assert normalize(LAM ** 2 - LAM, LAM) == LAM - 1
    assert normalize(0, LAM) == ZERO


def test_normalize_rejects_zero_denominator():
    with pytest.raises(MalformedScalar):
        normalize(1, 0)


def test_gaussian_unit():
    assert I * I == -ONE
    assert (1 / (2 * I)) == Scalar.complex(0, Fraction(-1, 2))
    assert I.conjugate() == -I


def test_real_and_imaginary_parts():
    z = (LAM + 3 * I) / (LAM + 1)
    assert z.real() == LAM / (LAM + 1)
    assert z.imag() == 3 / (LAM + 1)
    assert not z.is_real()


@pytest.mark.parametrize("n, square, root", [(0, True, 0), (49, True, 7), (12, False, None)])
def test_quad_sqrt_check(n, square, root):
    res = quad_sqrt_check(n)
    assert res.is_square is square
    assert res.root == root


def test_quad_sqrt_check_reports_squarefree_part():
    res = quad_sqrt_check(12)
    assert (res.squarefree, res.coefficient) == (3, 2)


def test_quadint_arithmetic():
    a, b = QuadInt(2, 1, 3), QuadInt(2, -1, 3)
    assert a * b == QuadInt(1, 0, 3)
    assert a.inverse() == b
    assert a.conjugate() == b
    assert QuadInt.sqrt(12) == QuadInt(0, 2, 3)
    assert parse_quad("2+sqrt(3)") == a


def test_substitution_at_rational_points():
    f = LAM / (LAM + 1)
    assert f.subs({"lam": Fraction(1, 2)}) == Scalar(Fraction(1, 3))
    with pytest.raises(MalformedScalar):
        (ONE / (LAM - 2)).subs({"lam": 2})


def test_parse_roundtrip():
    for text in ["1/(2*i)", "3*i + 1", "-lam*i/3", "(i*lam - 1)/(lam + 1)", "lam^2/2"]:
        x = parse_scalar(text)
        assert parse_scalar(str(x)) == x


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_scalar("lam +")
    with pytest.raises(ParseError):
        parse_scalar("foo")


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
