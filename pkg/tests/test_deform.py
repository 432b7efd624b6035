import pytest

from slagforge import deform
from slagforge.model import builtin
from slagforge.scalars import LAM, ONE, ZERO


def zero_order(s):
    return {(n + 1, key[1]): c for n, eq in enumerate(s.equations) for key, c in eq.items() if key[0] == "a"}


def test_iwasawa_123_system():
    s = deform.generate(builtin("iwasawa"), (1, 2, 3))
    text = [deform.format_linear(e) for e in s.equations]
    assert text == [
        "E_1(alpha_1) + E_2(alpha_2) + E_3(alpha_3)",
        "E_1(alpha_2) - E_2(alpha_1)",
        "E_1(alpha_3) - E_3(alpha_1) + alpha_2",
        "E_2(alpha_3) - E_3(alpha_2) - alpha_1",
    ]


def test_nakamura_cs_123_zero_order():
    s = deform.generate(builtin("nakamura_cs"), (1, 2, 3))
    assert zero_order(s) == {(2, 2): LAM, (3, 3): -LAM}


def test_nakamura_cs_156_zero_order_index_convention():
    s = deform.generate(builtin("nakamura_cs"), (1, 5, 6), "index")
    assert zero_order(s) == {(2, 5): -3 * LAM, (3, 6): 3 * LAM}


def test_nakamura_cs_156_signed_convention_differs():
    s = deform.generate(builtin("nakamura_cs"), (1, 5, 6))
    assert zero_order(s) != {(2, 5): -3 * LAM, (3, 6): 3 * LAM}


@pytest.mark.parametrize("name, triple, dim", [
    ("iwasawa", (1, 2, 3), 1),
    ("nakamura_cs", (1, 2, 3), 1),
    ("nakamura_cs", (2, 3, 4), 3),
])
def test_invariant_solution_dim(name, triple, dim):
    assert deform.invariant_solution_dim(builtin(name), triple) == dim


def test_iwasawa_invariant_solution_is_alpha3():
    assert deform.invariant_solutions(builtin("iwasawa"), (1, 2, 3)) == [[ZERO, ZERO, ONE]]


def test_first_equation_is_divergence():
    for name in ("iwasawa", "nakamura_cs"):
        m = builtin(name)
        s = deform.generate(m, (1, 2, 3))
        jets = {k for k in s.equations[0] if k[0] == "E"}
        assert jets == {("E", r, r) for r in (1, 2, 3)}


@pytest.mark.parametrize("name, triple, b1", [
    ("nakamura_cs", (1, 2, 3), 1),
    ("nakamura_cs", (2, 4, 6), 3),
    ("iwasawa", (1, 2, 3), 2),
])
def test_leaf_betti1(name, triple, b1):
    assert deform.leaf_betti1(builtin(name), triple) == b1


def test_leaf_betti1_needs_subalgebra():
    with pytest.raises(deform.DeformError):
        deform.leaf_betti1(builtin("iwasawa"), (1, 2, 4))


def test_generate_rejects_non_involutive():
    with pytest.raises(deform.DeformError, match="not involutive"):
        deform.generate(builtin("iwasawa"), (1, 2, 4))


def test_generate_rejects_non_slag():
    with pytest.raises(deform.DeformError, match="special Lagrangian"):
        deform.generate(builtin("iwasawa"), (1, 3, 4))


def test_closed_form_cross_check():
    cc = deform.cross_check(builtin("nakamura_cs"), (1, 2, 3))
    assert cc.agrees["statement"]
    assert not cc.agrees["proof"]
    assert [(n, key) for n, key, _, _ in cc.differences["proof"]] == [(3, ("a", 3))]


def test_closed_form_not_applicable_to_cp_mirror():
    m = builtin("nakamura_cp_mirror")
    assert not deform.closed_form_applies(m)
    with pytest.raises(deform.DeformError):
        deform.closed_form(m, (1, 2, 3))
