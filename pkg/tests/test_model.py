from dataclasses import replace

import pytest

from slagforge.exterior import WeightedForm, d, evaluate, unit_vector
from slagforge.model import (BUILTINS, ModelError, abelian, bracket, brackets, builtin,
                             consistency_report, j_squared_is_minus_one, show)
from slagforge.parse import parse_form
from slagforge.scalars import LAM, ONE, ZERO


def _vec(**coeffs):
    v = [ZERO] * 6
    for k, c in coeffs.items():
        v[int(k[1:]) - 1] = ONE * c
    return v


def test_iwasawa_structure_equations():
    m = builtin("iwasawa")
    assert m.structure_form(3) == parse_form("-t[1,2] + t[4,5]")
    assert m.structure_form(6) == parse_form("t[2,4] - t[1,5]")


def test_nakamura_cs_structure_equations():
    m = builtin("nakamura_cs")
    assert m.structure_form(2) == WeightedForm.mono(1, 2, coeff=-LAM)
    assert m.structure_form(5) == WeightedForm.mono(1, 5, coeff=-LAM)


def test_nakamura_cp_structure_and_bracket():
    m = builtin("nakamura_cp")
    assert m.structure_form(2) == parse_form("-t[1,2] + t[4,5]")
    assert bracket(m, 1, 2) == _vec(e2=1)


def test_iwasawa_brackets():
    m = builtin("iwasawa")
    assert bracket(m, 1, 5) == _vec(e6=1)
    assert bracket(m, 4, 5) == _vec(e3=-1)


def test_nakamura_cs_bracket():
    assert bracket(builtin("nakamura_cs"), 1, 2) == [ZERO, LAM, ZERO, ZERO, ZERO, ZERO]


def test_abelian_brackets_vanish():
    assert all(all(c.is_zero() for c in v) for v in brackets(abelian()).values())


@pytest.mark.parametrize("name", BUILTINS)
def test_brackets_dual_to_structure_equations(name):
    # d theta^i (E_j, E_k) = -theta^i([E_j, E_k])
    m = builtin(name)
    for (j, k), v in brackets(m).items():
        for i in range(1, 7):
            lhs = evaluate(m.structure_form(i), [unit_vector(j, 6), unit_vector(k, 6)])
            assert lhs == -v[i - 1]


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_consistent(name):
    rep = consistency_report(builtin(name))
    assert rep.ok, str(rep)


def test_nakamura_cs_balanced():
    m = builtin("nakamura_cs")
    assert d(m.omega.power(2), m).is_zero()


def test_corrupted_structure_constant_breaks_d_squared():
    m = builtin("nakamura_cp")
    s = {i: dict(row) for i, row in m.structure.items()}
    s[3][(1, 2)] = ONE
    rep = consistency_report(replace(m, structure=s))
    assert "d^2 = 0" in rep.failures()


@pytest.mark.parametrize("name", BUILTINS)
def test_volume_pairing_nondegenerate(name):
    m = builtin(name)
    top = m.Omega.wedge(m.Omega.conjugate())
    assert list(top.terms) and all(idx == (1, 2, 3, 4, 5, 6) for _, idx in top.terms)


def test_j_squared():
    assert j_squared_is_minus_one(builtin("iwasawa").J)
    assert not j_squared_is_minus_one(((1, 4), (1, 5), (1, 6), (1, 1), (-1, 2), (-1, 3)))


def test_unknown_builtin():
    with pytest.raises(ModelError):
        builtin("bogus")


def test_with_tau_only_changes_period():
    m = builtin("nakamura_cs")
    m2 = m.with_tau(2)
    assert m2.lattice.periods["y"].q == 2
    assert m.lattice.periods["y"].q == 1
    with pytest.raises(ModelError):
        builtin("iwasawa").with_tau(2)


def test_show_mentions_structure_and_brackets():
    text = show(builtin("iwasawa"))
    assert "dθ^3 = -θ^{12} + θ^{45}" in text
    assert "[E_4, E_5] = -E_3" in text
