"""First-order deformation systems for SLag leaves of axis distributions.

For a leaf L tangent to {E_i, E_j, E_k} and a 1-form alpha on L, the
infinitesimal deformation conditions are

    d(*alpha) = 0,        d alpha + T alpha = 0,   T alpha = -(iota_{J alpha^#} d omega)|_L,

computed here directly from the structure equations.  Equations are linear in
the jets E_m(alpha_r) and the coefficients alpha_r.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from . import exterior as ext
from . import slag
from .exterior import WeightedForm
from .linalg import nullspace, rank
from .model import ModelManifold, bracket
from .scalars import ONE, ZERO, Scalar

J_CONVENTIONS = ("signed", "index")

# ("E", m, r) is E_m(alpha_r); ("a", r) is alpha_r
Symbol = Tuple
Linear = Dict[Symbol, Scalar]


class DeformError(ValueError):
    pass


def _add(acc: Linear, key: Symbol, v: Scalar) -> None:
    acc[key] = acc[key] + v if key in acc else v


def _clean(acc: Linear) -> Linear:
    return {k: v for k, v in acc.items() if not v.is_zero()}


def _sym_str(key: Symbol) -> str:
    if key[0] == "E":
        return f"E_{key[1]}(alpha_{key[2]})"
    return f"alpha_{key[1]}"


def _sym_order(key: Symbol):
    return (0, key[1], key[2]) if key[0] == "E" else (1, key[1], 0)


def format_linear(expr: Linear) -> str:
    if not expr:
        return "0"
    out = ""
    for key in sorted(expr, key=_sym_order):
        c, sym = expr[key], _sym_str(key)
        s = str(c)
        neg = s.startswith("-") and " " not in s
        mag = s[1:] if neg else s
        body = sym if mag == "1" else (f"({mag})*{sym}" if " " in mag else f"{mag}*{sym}")
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


@dataclass(frozen=True)
class DeformSystem:
    model: str
    triple: Tuple[int, int, int]
    equations: Tuple[Linear, ...]
    labels: Tuple[str, ...]
    j_convention: str

    def __str__(self):
        return "\n".join(f"{format_linear(e)} = 0" for e in self.equations)

    def zero_order(self) -> List[List[Scalar]]:
        """Coefficients of alpha_r (jets dropped), one row per equation."""
        return [[e.get(("a", r), ZERO) for r in self.triple] for e in self.equations]

    def coefficient(self, eq: int, symbol: Symbol) -> Scalar:
        return self.equations[eq].get(symbol, ZERO)


def _check_triple(m: ModelManifold, triple: Sequence[int]) -> Tuple[int, int, int]:
    t = tuple(sorted(triple))
    if len(t) != 3 or len(set(t)) != 3 or not all(1 <= x <= m.dim for x in t):
        raise DeformError(f"bad index triple {tuple(triple)}")
    return t  # type: ignore[return-value]


def _J_image(m: ModelManifold, r: int, convention: str) -> Tuple[int, int]:
    s, t = m.J[r - 1]
    if convention == "signed":
        return s, t
    if convention == "index":
        return 1, t
    raise DeformError(f"unknown J convention {convention!r}; use one of {J_CONVENTIONS}")


def _d_symbolic(m: ModelManifold, L: Tuple[int, ...], r: int, f: WeightedForm, acc: Dict) -> None:
    """Accumulate d(alpha_r f)|_L into acc[(form index)] as Linear."""
    for (ch, idx), c in f.terms.items():
        for a in L:
            s, new = ext.merge((a,), idx)
            if s:
                _add(acc.setdefault(new, {}), ("E", a, r), c * s)
        dpart = ext.restrict(ext.d(WeightedForm.mono(*idx), m), L)
        for (_, new), v in dpart.terms.items():
            _add(acc.setdefault(new, {}), ("a", r), c * v)


def _require_slag_leaf(m: ModelManifold, L: Tuple[int, int, int]) -> None:
    inv = slag.involutive(m, L)
    if not inv:
        raise DeformError(f"{L} is not involutive: {inv.describe()}")
    cache = m._cache.setdefault("slag_systems", {})
    for phase in slag.PHASES:
        if phase not in cache:
            cache[phase] = slag.build_system(m, phase)
        if slag.axis_is_slag(m, L, phase, cache[phase]):
            return
    raise DeformError(f"{L} is not a special Lagrangian axis triple of {m.name}")


def generate(m: ModelManifold, triple: Sequence[int], j_convention: str = "signed",
             validate: bool = True) -> DeformSystem:
    L = _check_triple(m, triple)
    if validate:
        _require_slag_leaf(m, L)
    i, j, k = L
    top: Dict = {}
    two: Dict = {}
    for r in L:
        _d_symbolic(m, L, r, ext.hodge_star(WeightedForm.mono(r), L), top)
        _d_symbolic(m, L, r, WeightedForm.mono(r), two)
    domega = ext.d(m.omega, m)
    for r in L:
        s, t = _J_image(m, r, j_convention)
        vec = [ZERO] * m.dim
        vec[t - 1] = ONE * s
        term = ext.restrict(ext.interior(vec, domega), L)
        for (_, idx), c in term.terms.items():
            _add(two.setdefault(idx, {}), ("a", r), -c)
    eqs = (_clean(top.get(L, {})),) + tuple(_clean(two.get(p, {})) for p in ((i, j), (i, k), (j, k)))
    labels = (f"theta^{i}{j}{k}", f"theta^{i}{j}", f"theta^{i}{k}", f"theta^{j}{k}")
    return DeformSystem(m.name, L, eqs, labels, j_convention)


# ---------------------------------------------------------------------------
# closed-form coefficients


def _f(m: ModelManifold, t: int, r: int, s: int) -> Scalar:
    """f^t_{rs}, antisymmetric in r, s."""
    if r == s:
        return ZERO
    row = m.structure.get(t, {})
    if r < s:
        return row.get((r, s), ZERO)
    return -row.get((s, r), ZERO)


def _sgn(a: int, b: int) -> int:
    return -1 if a > b else 1


CLOSED_FORM_VARIANTS = ("statement", "proof")


def closed_form_applies(m: ModelManifold) -> bool:
    """The table assumes the standard pairing: omega = sum_{h < h~} theta^{h h~} with J E_h = +E_h~."""
    want = WeightedForm.zero()
    for h, (s, t) in enumerate(m.J, start=1):
        if h < t:
            if s != 1:
                return False
            want = want + WeightedForm.mono(h, t)
    return m.omega == want


def closed_form(m: ModelManifold, triple: Sequence[int], variant: str = "statement") -> DeformSystem:
    """Deformation system from the closed-form coefficient table.

    The table is written for the unsigned pairing J E_h = E_{h~}.  ``variant``
    selects between two readings of the alpha_k coefficient in the theta^{jk}
    equation (lower index j or i in its last structure constant).
    """
    if variant not in CLOSED_FORM_VARIANTS:
        raise DeformError(f"unknown variant {variant!r}")
    if not closed_form_applies(m):
        raise DeformError(f"closed form needs omega = sum theta^(h h~) over J E_h = +E_h~, h < h~; {m.name} differs")
    L = _check_triple(m, triple)
    i, j, k = L
    tl = {h: m.J[h - 1][1] for h in L}
    e = {h: _sgn(h, tl[h]) for h in L}
    f = lambda t, r, s: _f(m, t, r, s)  # noqa: E731

    def fL(r, s):
        # d theta^{rs}|_L = fL(r, s) theta^{ijk}
        form = ext.restrict(ext.d(WeightedForm.mono(r, s), m), L)
        return form.coefficient(L)

    def lead(h, t, a, b):
        return (1 - e[h]) * f(t, a, b)

    it, jt, kt = tl[i], tl[j], tl[k]
    eq1 = {("E", i, i): ONE, ("E", j, j): ONE, ("E", k, k): ONE,
           ("a", i): fL(j, k), ("a", j): -fL(i, k), ("a", k): fL(i, j)}
    eq2 = {("E", i, j): ONE, ("E", j, i): -ONE,
           ("a", i): lead(i, i, i, j) + e[i] * f(it, j, it) - e[j] * f(jt, i, it),
           ("a", j): lead(j, j, i, j) - e[j] * f(jt, i, jt) + e[i] * f(it, j, jt),
           ("a", k): lead(k, k, i, j) + e[i] * f(it, j, kt) - e[j] * f(jt, i, kt)}
    eq3 = {("E", i, k): ONE, ("E", k, i): -ONE,
           ("a", i): lead(i, i, i, k) + e[i] * f(it, k, it) - e[k] * f(kt, i, it),
           ("a", j): lead(j, j, i, k) - e[k] * f(kt, i, jt) + e[i] * f(it, k, jt),
           ("a", k): lead(k, k, i, k) + e[i] * f(it, k, kt) - e[k] * f(kt, i, kt)}
    last = j if variant == "statement" else i
    eq4 = {("E", j, k): ONE, ("E", k, j): -ONE,
           ("a", i): lead(i, i, j, k) + e[j] * f(jt, k, it) - e[k] * f(kt, j, it),
           ("a", j): lead(j, j, j, k) + e[j] * f(jt, k, jt) - e[k] * f(kt, j, jt),
           ("a", k): lead(k, k, j, k) + e[j] * f(jt, k, kt) - e[k] * f(kt, last, kt)}
    eqs = tuple(_clean(q) for q in (eq1, eq2, eq3, eq4))
    labels = (f"theta^{i}{j}{k}", f"theta^{i}{j}", f"theta^{i}{k}", f"theta^{j}{k}")
    return DeformSystem(m.name, L, eqs, labels, "index")


@dataclass(frozen=True)
class CrossCheck:
    triple: Tuple[int, int, int]
    agrees: Dict[str, bool]
    differences: Dict[str, Tuple[Tuple[int, Symbol, Scalar, Scalar], ...]]
    applicable: bool = True

    @property
    def matching_variants(self) -> List[str]:
        return [v for v, ok in self.agrees.items() if ok]


def cross_check(m: ModelManifold, triple: Sequence[int]) -> CrossCheck:
    """Compare the direct computation (unsigned J) with each closed-form variant."""
    direct = generate(m, triple, "index")
    if not closed_form_applies(m):
        return CrossCheck(direct.triple, {}, {}, applicable=False)
    agrees, diffs = {}, {}
    for v in CLOSED_FORM_VARIANTS:
        cf = closed_form(m, triple, v)
        out = []
        for n, (a, b) in enumerate(zip(direct.equations, cf.equations)):
            for key in sorted(set(a) | set(b), key=_sym_order):
                x, y = a.get(key, ZERO), b.get(key, ZERO)
                if x != y:
                    out.append((n, key, x, y))
        agrees[v] = not out
        diffs[v] = tuple(out)
    return CrossCheck(direct.triple, agrees, diffs)


# ---------------------------------------------------------------------------
# invariant solutions and leaf cohomology


def invariant_solutions(m: ModelManifold, triple: Sequence[int],
                        j_convention: str = "signed") -> List[List[Scalar]]:
    """Constant solutions (all jets zero), as coefficient vectors on the triple."""
    return nullspace(generate(m, triple, j_convention).zero_order(), 3)


def invariant_solution_dim(m: ModelManifold, triple: Sequence[int],
                           j_convention: str = "signed") -> int:
    return len(invariant_solutions(m, triple, j_convention))


def leaf_betti1(m: ModelManifold, triple: Sequence[int]) -> int:
    """b_1 of the Lie algebra spanned by the triple (Chevalley-Eilenberg)."""
    L = _check_triple(m, triple)
    for a, b in combinations(L, 2):
        v = bracket(m, a, b)
        if any(not x.is_zero() for t, x in enumerate(v, start=1) if t not in L):
            raise DeformError(f"{L} does not span a subalgebra")
    pairs = list(combinations(L, 2))
    rows = []
    for r in L:
        form = ext.restrict(ext.d(WeightedForm.mono(r), m), L)
        rows.append([form.coefficient(p) for p in pairs])
    return 3 - rank(rows)
