"""Algebraic special Lagrangian conditions for constant 3-plane distributions.

A distribution V_a = sum_j A[a][j] E_j (a = 1, 2, 3) is encoded by its 3x6
coefficient matrix, whose entries are numbered x1..x18 row-major.  The SLag
system of phase theta asks omega and Im(e^{-i theta} Omega) to vanish on the
three rows.
"""

from __future__ import annotations

import ast
import re
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exterior import WeightedForm, evaluate
from .linalg import rank
from .model import ModelManifold, bracket, format_vector
from .parse import ParseError, parse_scalar
from .scalars import I, ONE, ZERO, Scalar, ScalarLike, as_scalar

PHASES = ("0", "-pi/2")


class SlagError(ValueError):
    pass


class DegenerateDistribution(UserWarning):
    pass


# ---------------------------------------------------------------------------
# polynomials in x1..x18


class Poly:
    """Polynomial in x1..x18 with Scalar coefficients; monomials are sorted index tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, ...], Scalar]] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @staticmethod
    def var(k: int) -> "Poly":
        return Poly({(k,): ONE})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return Poly(out)

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_scalar(other)
            return Poly({k: v * c for k, v in self.terms.items()})
        out: Dict[Tuple[int, ...], Scalar] = {}
        for a, u in self.terms.items():
            for b, w in other.terms.items():
                key = tuple(sorted(a + b))
                out[key] = out[key] + u * w if key in out else u * w
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    @staticmethod
    def parse(text: str) -> "Poly":
        """Parse ``x1*x10 - 3*x4*x7 + ...``; stray ``+ +`` and ``+ -`` are tolerated."""
        try:
            tree = ast.parse(re.sub(r"\s+", " ", text).strip(), mode="eval").body
        except SyntaxError as exc:
            raise ParseError(f"bad polynomial {text!r}: {exc.msg}") from None

        def ev(node) -> "Poly":
            if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult)):
                a, b = ev(node.left), ev(node.right)
                return a + b if isinstance(node.op, ast.Add) else a - b if isinstance(node.op, ast.Sub) else a * b
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
                v = ev(node.operand)
                return -v if isinstance(node.op, ast.USub) else v
            if isinstance(node, ast.Name) and re.fullmatch(r"x\d+", node.id):
                return Poly.var(int(node.id[1:]))
            return Poly({(): parse_scalar(ast.unparse(node))})

        return ev(tree)

    def evaluate(self, values: Sequence[Scalar]) -> Scalar:
        acc = ZERO
        for mono, c in self.terms.items():
            t = c
            for k in mono:
                t = t * values[k - 1]
                if t.is_zero():
                    break
            acc = acc + t
        return acc

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            body = "*".join(f"x{k}" for k in mono)
            s = str(c)
            if s == "1":
                term, neg = body, False
            elif s == "-1":
                term, neg = body, True
            elif s.startswith("-") and " " not in s:
                term, neg = f"{s[1:]}*{body}", True
            else:
                term, neg = (f"({s})*{body}" if " " in s else f"{s}*{body}"), False
            parts.append((neg, term))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, term in parts[1:]:
            out += (" - " if neg else " + ") + term
        return out

    __repr__ = __str__


def _generic_rows() -> List[List[Poly]]:
    return [[Poly.var(6 * a + j + 1) for j in range(6)] for a in range(3)]


def _det(m: List[List[Poly]]) -> Poly:
    if len(m) == 1:
        return m[0][0]
    out = Poly()
    for c in range(len(m)):
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        term = m[0][c] * _det(minor)
        out = out + term if c % 2 == 0 else out - term
    return out


def _pair(f: WeightedForm, rows: Sequence[Sequence[Poly]]) -> Poly:
    """f(V_1, ..., V_k) for an invariant k-form via the determinant pairing."""
    out = Poly()
    for (ch, idx), c in f.terms.items():
        if not ch.is_trivial():
            raise SlagError("SLag system needs invariant forms")
        sub = [[row[i - 1] for i in idx] for row in rows]
        out = out + _det(sub) * c
    return out


# ---------------------------------------------------------------------------
# systems


@dataclass(frozen=True)
class DistributionMatrix:
    rows: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.rows) != 3 or any(len(r) != 6 for r in self.rows):
            raise SlagError("a distribution matrix has 3 rows of 6 entries")

    @staticmethod
    def of(rows: Sequence[Sequence[ScalarLike]]) -> "DistributionMatrix":
        try:
            return DistributionMatrix(tuple(tuple(as_scalar(x) for x in r) for r in rows))
        except TypeError as exc:
            raise SlagError(str(exc)) from None

    @staticmethod
    def axis(triple: Sequence[int], dim: int = 6) -> "DistributionMatrix":
        return DistributionMatrix.of([[1 if j == t else 0 for j in range(1, dim + 1)] for t in triple])

    @staticmethod
    def parse(text: str) -> "DistributionMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if len(lines) != 3:
            raise ParseError(f"expected 3 rows, got {len(lines)}")
        rows = []
        for ln in lines:
            cells = ln.replace(",", " ").split()
            if len(cells) != 6:
                raise ParseError(f"expected 6 entries per row, got {len(cells)}")
            rows.append([parse_scalar(c) for c in cells])
        return DistributionMatrix.of(rows)

    def rank(self) -> int:
        return rank([list(r) for r in self.rows])

    def flat(self) -> List[Scalar]:
        return [x for r in self.rows for x in r]


@dataclass(frozen=True)
class SlagSystem:
    equations: Tuple[Poly, Poly, Poly, Poly]
    phase: str
    model: str = ""

    def degrees(self) -> Tuple[int, ...]:
        return tuple(p.degree() for p in self.equations)

    def __str__(self):
        return "\n".join(f"{p} = 0" for p in self.equations)


def phase_form(m: ModelManifold, phase: str) -> WeightedForm:
    """Im(e^{-i theta} Omega) for the tagged phase."""
    if phase == "0":
        return m.Omega.imag_part()
    if phase == "-pi/2":
        return m.Omega.scale(I).imag_part()
    raise SlagError(f"unsupported phase {phase!r}; use one of {PHASES}")


def build_system(m: ModelManifold, phase: str = "0") -> SlagSystem:
    if m.dim != 6:
        raise SlagError("the SLag system is defined for 6-dimensional models")
    rows = _generic_rows()
    om = m.omega
    eqs = [_pair(om, [rows[a], rows[b]]) for a, b in ((0, 1), (0, 2), (1, 2))]
    eqs.append(_pair(phase_form(m, phase), rows))
    return SlagSystem(tuple(eqs), phase, m.name)


def eval_system(s: SlagSystem, A: DistributionMatrix) -> Tuple[Scalar, ...]:
    if A.rank() < 3:
        warnings.warn("degenerate distribution: rank < 3", DegenerateDistribution, stacklevel=2)
    vals = A.flat()
    return tuple(p.evaluate(vals) for p in s.equations)


def residuals_direct(m: ModelManifold, A: DistributionMatrix, phase: str = "0") -> Tuple[Scalar, ...]:
    """Same residuals computed with evaluate() instead of the polynomial system."""
    r = [list(x) for x in A.rows]
    return (evaluate(m.omega, [r[0], r[1]]), evaluate(m.omega, [r[0], r[2]]),
            evaluate(m.omega, [r[1], r[2]]), evaluate(phase_form(m, phase), r))


# ---------------------------------------------------------------------------
# involutivity


@dataclass(frozen=True)
class Involutivity:
    involutive: bool
    offending: Tuple[Tuple[Tuple[int, int], Tuple[Scalar, ...]], ...] = ()

    def __bool__(self):
        return self.involutive

    def describe(self) -> str:
        if self.involutive:
            return "involutive"
        return "; ".join(f"[E_{j}, E_{k}] = {format_vector(v)}" for (j, k), v in self.offending)


def involutive(m: ModelManifold, triple: Sequence[int]) -> Involutivity:
    triple = tuple(triple)
    if len(set(triple)) != len(triple) or any(not 1 <= t <= m.dim for t in triple):
        raise SlagError(f"bad index triple {triple}")
    span = set(triple)
    bad = []
    for j, k in combinations(sorted(triple), 2):
        v = bracket(m, j, k)
        if any(not x.is_zero() for a, x in enumerate(v, start=1) if a not in span):
            bad.append(((j, k), tuple(v)))
    return Involutivity(not bad, tuple(bad))


def involutive_matrix(m: ModelManifold, A: DistributionMatrix) -> bool:
    """Constant-coefficient involutivity: every [V_a, V_b] lies in span(V)."""
    rows = [list(r) for r in A.rows]
    base = rank(rows)
    for a, b in combinations(range(3), 2):
        v = [ZERO] * m.dim
        for i, x in enumerate(rows[a], start=1):
            for j, y in enumerate(rows[b], start=1):
                if x.is_zero() or y.is_zero() or i == j:
                    continue
                br = bracket(m, i, j)
                v = [s + x * y * t for s, t in zip(v, br)]
        if rank(rows + [v]) > base:
            return False
    return True


# ---------------------------------------------------------------------------
# axis scan


@dataclass(frozen=True)
class AxisResult:
    triple: Tuple[int, int, int]
    involutivity: Involutivity

    @property
    def label(self) -> str:
        return "".join(str(t) for t in self.triple)


def axis_is_slag(m: ModelManifold, triple: Sequence[int], phase: str = "0",
                 system: Optional[SlagSystem] = None) -> bool:
    s = system or build_system(m, phase)
    for order in (tuple(triple), tuple(reversed(tuple(triple)))):
        if all(r.is_zero() for r in eval_system(s, DistributionMatrix.axis(order, m.dim))):
            return True
    return False


def scan_axis(m: ModelManifold, phase: str = "0") -> List[AxisResult]:
    s = build_system(m, phase)
    out = []
    for t in combinations(range(1, m.dim + 1), 3):
        if axis_is_slag(m, t, phase, s):
            out.append(AxisResult(t, involutive(m, t)))
    return out
