"""Lattice and number-theoretic layer.

Everything here is exact: eigenvalues of hyperbolic ``M`` in SL(2, Z) live in
Q(sqrt D), translation periods are rational multiples of products of powers
of 2*pi and lam (treated as independent transcendentals), and leaf closure
is decided by the rank of the integer stabilizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exterior import Character
from .linalg import rank
from .model import (LatticeSpec, ModelManifold, _mat_q, qmat_det, qmat_inv,
                    qmat_mul)
from .scalars import QuadInt, Scalar, quad_sqrt_check

QMatrix = Tuple[Tuple[QuadInt, QuadInt], Tuple[QuadInt, QuadInt]]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class EigenData:
    M: Tuple[Tuple[int, int], Tuple[int, int]]
    eigenvalues: Tuple[QuadInt, QuadInt]  # (e^lam, e^-lam), larger first
    P: QMatrix  # rows are left eigenvectors with first entry 1
    discriminant: int  # Tr(M)^2 - 4

    @property
    def D(self) -> QMatrix:
        z = QuadInt(0)
        return ((self.eigenvalues[0], z), (z, self.eigenvalues[1]))


def _as_int_matrix(M) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    try:
        out = tuple(tuple(int(x) for x in row) for row in M)
    except (TypeError, ValueError):
        raise LatticeError("M must be a 2x2 integer matrix") from None
    if len(out) != 2 or any(len(r) != 2 for r in out):
        raise LatticeError("M must be 2x2")
    return out


def eigen_data(M) -> EigenData:
    """Exact diagonalization P M P^-1 = diag(e^lam, e^-lam) over Q(sqrt D).

    >>> ed = eigen_data([[2, 3], [1, 2]])
    >>> [str(e) for e in ed.eigenvalues]
    ['2 + sqrt(3)', '2 - sqrt(3)']
    """
    (a, b), (c, d) = M = _as_int_matrix(M)
    if a * d - b * c != 1:
        raise LatticeError(f"det M = {a * d - b * c}, expected 1")
    tr = a + d
    disc = tr * tr - 4
    if disc <= 0:
        raise LatticeError(f"M is not hyperbolic (|Tr M| = {abs(tr)} <= 2)")
    chk = quad_sqrt_check(disc)
    if chk.is_square:  # impossible for det 1, kept as a guard
        raise LatticeError("eigenvalues of M are rational")
    root = QuadInt(0, chk.coefficient, chk.squarefree)
    mus = [(QuadInt(tr) + root) / 2, (QuadInt(tr) - root) / 2]
    # left eigenvector (1, s): a + c s = mu
    rows = tuple((QuadInt(1), (mu - a) / c) for mu in mus)
    ed = EigenData(M, (mus[0], mus[1]), rows, disc)
    check = qmat_mul(qmat_mul(ed.P, _mat_q(M)), qmat_inv(ed.P))
    assert check == ed.D, "eigen decomposition failed"
    return ed


# ---------------------------------------------------------------------------
# integer matrices diagonalized by P


def _row_kills(row: Sequence[QuadInt], v: Tuple[int, int]) -> bool:
    return (row[0] * v[0] + row[1] * v[1]).is_zero()


def diag_integer_matrix_search(M, bound: int = 50, P: Optional[QMatrix] = None
                               ) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Look for an integer M' with nonzero columns and P M' diagonal.

    Column j of M' must be annihilated by the off-diagonal row of P, so the
    two columns are searched independently over [-bound, bound]^2.
    """
    P = P if P is not None else eigen_data(M).P
    grid = [(x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1) if (x, y) != (0, 0)]
    col1 = next((v for v in grid if _row_kills(P[1], v)), None)
    if col1 is None:
        return None
    col2 = next((v for v in grid if _row_kills(P[0], v)), None)
    if col2 is None:
        return None
    return ((col1[0], col2[0]), (col1[1], col2[1]))


# ---------------------------------------------------------------------------
# formal conjugation by diag(mu, 1/mu)

Laurent = Dict[int, QuadInt]


def _l_add(a: Laurent, b: Laurent) -> Laurent:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, QuadInt(0)) + v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _l_mul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, QuadInt(0)) + x * y
    return {k: v for k, v in out.items() if not v.is_zero()}


def _lmat_mul(A, B):
    return [[_l_add(_l_mul(A[i][0], B[0][j]), _l_mul(A[i][1], B[1][j])) for j in range(2)] for i in range(2)]


def _const(x) -> Laurent:
    x = x if isinstance(x, QuadInt) else QuadInt(x)
    return {} if x.is_zero() else {0: x}


def int_matrix_power(M, a: int):
    M = _as_int_matrix(M)
    out = _mat_q(((1, 0), (0, 1)))
    base = _mat_q(M) if a >= 0 else qmat_inv(_mat_q(M))
    for _ in range(abs(a)):
        out = qmat_mul(out, base)
    return out


def verify_torus_conjugation(M, a: int) -> bool:
    """P~ M^a P~^-1 == diag(e^{lam a}, e^{-lam a}) with P~ = diag(mu, 1/mu) P."""
    ed = eigen_data(M)
    Pt = [[{1: x} if not x.is_zero() else {} for x in ed.P[0]],
          [{-1: x} if not x.is_zero() else {} for x in ed.P[1]]]
    Pinv = qmat_inv(ed.P)
    Pt_inv = [[{-1: Pinv[0][0]} if not Pinv[0][0].is_zero() else {}, {1: Pinv[0][1]} if not Pinv[0][1].is_zero() else {}],
              [{-1: Pinv[1][0]} if not Pinv[1][0].is_zero() else {}, {1: Pinv[1][1]} if not Pinv[1][1].is_zero() else {}]]
    Ma = [[_const(x) for x in row] for row in int_matrix_power(M, a)]
    lhs = _lmat_mul(_lmat_mul(Pt, Ma), Pt_inv)
    e1, e2 = ed.eigenvalues
    rhs = [[_const(e1 ** a), {}], [{}, _const(e2 ** a)]]
    return lhs == rhs


# ---------------------------------------------------------------------------
# characters on the lattice


def character_trivial(c: Character, m: ModelManifold) -> bool:
    """Whether exp(sum c_w x_w) is 1 on every lattice translation.

    A nonzero coefficient passes only if c_w * period_w lies in 2*pi*i*Z; with
    lam and pi independent this means c_w = i r lam^e, the period carries
    (2 pi)^1, the lam powers cancel, and r times the rational factor is an
    integer.
    """
    if c.is_trivial():
        return True
    lat = m.lattice
    for w, cw in c.exponent:
        if lat is None or w not in lat.periods:
            raise LatticeError(f"direction {w!r} has no lattice period in {m.name}")
        per = lat.periods[w]
        mono = cw.monomial()
        if mono is None:
            return False
        coef, imaginary, exps = mono
        if not imaginary or any(exps[1:]):
            return False
        if per.two_pi_power != 1 or exps[0] + per.lam_power != 0:
            return False
        if (coef * per.coefficient).denominator != 1:
            return False
    return True


def admissible_characters(m: ModelManifold) -> List[Character]:
    return [ch for ch in m.weight_candidates() if character_trivial(ch, m)]


# ---------------------------------------------------------------------------
# lattice bundle


def _eigen_or_identity(M) -> Tuple[QuadInt, QuadInt]:
    M = _as_int_matrix(M)
    if M in (((1, 0), (0, 1)), ((-1, 0), (0, -1))):
        return QuadInt(M[0][0]), QuadInt(M[0][0])
    return eigen_data(M).eigenvalues


def recombination_matrix(X: QMatrix, D: QMatrix) -> QMatrix:
    """X^-1 D X: the change of generators induced by r0 -> r0 - 1."""
    return qmat_mul(qmat_mul(qmat_inv(X), D), X)


def _is_unimodular_integer(A: QMatrix) -> bool:
    if any(not x.is_rational() or x.a.denominator != 1 for row in A for x in row):
        return False
    return abs(qmat_det(A).a) == 1


def verify_lattice_bundle(m: ModelManifold) -> bool:
    """Span_Z invariance of every matrix-generated lattice under r0 -> r0 - 1.

    The generators are the columns of a lattice matrix X whose rows are
    scaled by e^{mult * lam}; invariance means X^-1 D X is an integer
    unimodular matrix.
    """
    lat = m.lattice
    if lat is None:
        raise LatticeError(f"{m.name} has no lattice data")
    mu1, mu2 = _eigen_or_identity(lat.M)
    groups: Dict[Tuple[str, Tuple[str, ...]], Dict[int, int]] = {}
    for act in lat.action.values():
        if act.matrix:
            groups.setdefault((act.matrix, act.variables), {})[act.row] = act.mult
    if not groups:
        groups[("P", ())] = {1: 1, 2: -1}
    for (name, _), mults in groups.items():
        X = lat.matrices[name]
        scale = []
        for r in (1, 2):
            k = mults.get(r, 0)
            scale.append(mu1 ** k if k >= 0 else mu2 ** (-k))
        z = QuadInt(0)
        D = ((scale[0], z), (z, scale[1]))
        try:
            A = recombination_matrix(X, D)
        except ZeroDivisionError:
            return False
        if not _is_unimodular_integer(A):
            return False
    return True


# ---------------------------------------------------------------------------
# leaf closure


@dataclass(frozen=True)
class ClosureVerdict:
    kind: str  # closed_iff | never_closed | always_closed
    condition: Tuple[str, ...] = ()
    stabilizer_rank: int = 0
    notes: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind not in ("closed_iff", "never_closed", "always_closed"):
            raise ValueError(f"bad verdict kind {self.kind!r}")
        if bool(self.condition) != (self.kind == "closed_iff"):
            raise ValueError("condition must be nonempty exactly for closed_iff")

    def __str__(self):
        if self.kind == "closed_iff":
            return "closed iff " + " = ".join(self.condition) + " = 0"
        return self.kind.replace("_", " ")


def _offset_conditions(lat: LatticeSpec, act, variables: List[str]) -> List[List[Fraction]]:
    """Rational linear conditions on the lattice variables saying offset = 0."""
    if act.variable:
        row = [Fraction(0)] * len(variables)
        row[variables.index(act.variable)] = Fraction(1)
        return [row]
    X = lat.matrices[act.matrix]
    coeffs = X[act.row - 1]
    rat = [Fraction(0)] * len(variables)
    irr = [Fraction(0)] * len(variables)
    for v, p in zip(act.variables, coeffs):
        rat[variables.index(v)] += p.a
        irr[variables.index(v)] += p.b
    return [r for r in (rat, irr) if any(r)]


def _rank(rows: List[List[Fraction]]) -> int:
    return rank([[Scalar(x) for x in r] for r in rows]) if rows else 0


def classify_leaf_closure(m: ModelManifold, foliation_id: str,
                          multiplier_variable: str = "a") -> ClosureVerdict:
    """Decide which leaves of a foliation are closed.

    A leaf is closed iff a rank-3 sublattice preserves it.  Fixed coordinates
    with trivial multiplier force their offsets to vanish.  A fixed coordinate
    scaled by e^{k lam a} needs its leaf parameter to vanish unless the other
    conditions already force a = 0 (iterating a lattice element scales the
    parameter without bound).  Fixed points of individual affine generators
    are not considered.
    """
    if foliation_id not in m.foliations:
        raise LatticeError(f"unknown foliation {foliation_id!r} for {m.name}")
    fol = m.foliations[foliation_id]
    lat = m.lattice
    if lat is None or not fol.fixed:
        raise LatticeError(f"{foliation_id} has no declared leaf action")
    variables = lat.variables()
    missing = [c for c in fol.fixed if c not in lat.action]
    if missing:
        raise LatticeError(f"no lattice action for coordinates {missing}")
    conds: List[List[Fraction]] = []
    for c in fol.fixed:
        if lat.action[c].mult == 0:
            conds += _offset_conditions(lat, lat.action[c], variables)

    def forces_multiplier() -> bool:
        if multiplier_variable not in variables:
            return True
        e = [Fraction(0)] * len(variables)
        e[variables.index(multiplier_variable)] = Fraction(1)
        return _rank(conds + [e]) == _rank(conds)

    a_zero = forces_multiplier()
    forced: List[str] = []
    notes: List[str] = []
    for c in fol.fixed:
        act = lat.action[c]
        if act.mult == 0:
            continue
        if not a_zero:
            forced.append(fol.parameters[c])
            notes.append(f"{c} is scaled by e^({act.mult}*lam*{multiplier_variable}): {fol.parameters[c]} = 0")
        conds += _offset_conditions(lat, act, variables)
    stab = len(variables) - _rank(conds)
    if stab < 3:
        return ClosureVerdict("never_closed", (), stab, tuple(notes))
    if forced:
        return ClosureVerdict("closed_iff", tuple(sorted(forced)), stab, tuple(notes))
    return ClosureVerdict("always_closed", (), stab, tuple(notes))
