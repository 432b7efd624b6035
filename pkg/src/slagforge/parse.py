"""Safe parsers for scalar expressions, form literals and quadratic numbers.

Scalars:  ``-3*lam``, ``1/2*lam**2``, ``(2 - lam)*i``.
Forms:    ``e(2*x)*t[1,4] + lam*t[2,5]``; ``*`` between two forms is the wedge.
QuadInts: ``2 + sqrt(3)``, ``-1/2*sqrt(5)``.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Dict, Iterable, Optional

from .exterior import Character, WeightedForm
from .scalars import I, PARAMETERS, MalformedScalar, QuadInt, Scalar


class ParseError(ValueError):
    pass


class _Exponent:
    """Linear combination of weight directions (argument of ``e(...)``)."""

    def __init__(self, coeffs: Dict[str, Scalar]):
        self.coeffs = coeffs

    def combine(self, other: "_Exponent", sign: int) -> "_Exponent":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, Scalar(0)) + c * sign
        return _Exponent(out)

    def scale(self, c: Scalar) -> "_Exponent":
        return _Exponent({w: v * c for w, v in self.coeffs.items()})


def _parse_tree(text: str):
    text = text.strip().replace("^", "**").replace("−", "-")
    if not text:
        raise ParseError("empty expression")
    try:
        return ast.parse(text, mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None


def _int_const(node) -> int:
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_const(node.operand)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    raise ParseError("expected an integer")


class _Evaluator:
    def __init__(self, directions: Iterable[str] = (), allow_forms: bool = True):
        self.directions = set(directions)
        self.allow_forms = allow_forms

    def ev(self, node):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ParseError(f"only integer literals are allowed, got {node.value!r}")
            return Scalar(node.value)
        if isinstance(node, ast.Name):
            if node.id in ("i", "I"):
                return I
            if node.id in PARAMETERS:
                return Scalar.param(node.id)
            if node.id in self.directions:
                return _Exponent({node.id: Scalar(1)})
            raise ParseError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp):
            v = self.ev(node.operand)
            if isinstance(node.op, ast.USub):
                return v.scale(Scalar(-1)) if isinstance(v, _Exponent) else -v
            if isinstance(node.op, ast.UAdd):
                return v
            raise ParseError("unsupported unary operator")
        if isinstance(node, ast.BinOp):
            return self.binop(node)
        if isinstance(node, ast.Subscript):
            if not self.allow_forms or not (isinstance(node.value, ast.Name) and node.value.id == "t"):
                raise ParseError("unexpected subscript")
            sl = node.slice
            elts = sl.elts if isinstance(sl, ast.Tuple) else [sl]
            idx = tuple(_int_const(e) for e in elts)
            if any(a < 1 for a in idx):
                raise ParseError("coframe indices start at 1")
            return WeightedForm.mono(*idx) if len(set(idx)) == len(idx) else WeightedForm.zero()
        if isinstance(node, ast.Call):
            if not (isinstance(node.func, ast.Name) and node.func.id == "e" and len(node.args) == 1):
                raise ParseError("only e(...) calls are allowed")
            if not self.allow_forms:
                raise ParseError("characters are not allowed here")
            arg = self.ev(node.args[0])
            if isinstance(arg, Scalar) and arg.is_zero():
                return WeightedForm.const(1)
            if not isinstance(arg, _Exponent):
                raise ParseError("e(...) needs a linear combination of weight directions")
            return WeightedForm.const(1, Character(arg.coeffs))
        raise ParseError(f"unsupported syntax: {ast.dump(node)[:40]}")

    def binop(self, node):
        op = node.op
        if isinstance(op, ast.Pow):
            base = self.ev(node.left)
            k = _int_const(node.right)
            if isinstance(base, Scalar):
                return base ** k
            if isinstance(base, WeightedForm) and k >= 0:
                return base.power(k)
            raise ParseError("bad power")
        a, b = self.ev(node.left), self.ev(node.right)
        if isinstance(op, (ast.Add, ast.Sub)):
            sign = 1 if isinstance(op, ast.Add) else -1
            if isinstance(a, _Exponent) and isinstance(b, _Exponent):
                return a.combine(b, sign)
            if isinstance(a, _Exponent) or isinstance(b, _Exponent):
                raise ParseError("cannot add a direction to a scalar")
            return a + b if sign > 0 else a - b
        if isinstance(op, ast.Mult):
            if isinstance(a, _Exponent) and isinstance(b, Scalar):
                return a.scale(b)
            if isinstance(b, _Exponent) and isinstance(a, Scalar):
                return b.scale(a)
            if isinstance(a, _Exponent) or isinstance(b, _Exponent):
                raise ParseError("exponents must be linear in the directions")
            return a * b
        if isinstance(op, ast.Div):
            if not isinstance(b, Scalar):
                raise ParseError("can only divide by a scalar")
            if b.is_zero():
                raise MalformedScalar("division by zero")
            if isinstance(a, _Exponent):
                return a.scale(b.inverse())
            if isinstance(a, WeightedForm):
                return a.scale(b.inverse())
            return a / b
        raise ParseError("unsupported operator")


def parse_scalar(text: str) -> Scalar:
    v = _Evaluator(allow_forms=False).ev(_parse_tree(str(text)))
    if not isinstance(v, Scalar):
        raise ParseError(f"{text!r} is not a scalar")
    return v


def parse_form(text: str, directions: Iterable[str] = ()) -> WeightedForm:
    v = _Evaluator(directions).ev(_parse_tree(str(text)))
    if isinstance(v, Scalar):
        return WeightedForm.const(v)
    if not isinstance(v, WeightedForm):
        raise ParseError(f"{text!r} is not a form")
    return v


def parse_character(text: str, directions: Iterable[str]) -> Character:
    """Parse an exponent like ``-i*lam*y`` into a Character."""
    v = _Evaluator(directions, allow_forms=False).ev(_parse_tree(str(text)))
    if isinstance(v, Scalar) and v.is_zero():
        return Character()
    if not isinstance(v, _Exponent):
        raise ParseError(f"{text!r} is not a linear exponent")
    return Character(v.coeffs)


def parse_quad(text, D: Optional[int] = None) -> QuadInt:
    """Parse an element of Q(sqrt D): integers, /, +, -, *, sqrt(n)."""
    if isinstance(text, int):
        return QuadInt(text)

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return QuadInt(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt":
            return QuadInt.sqrt(_int_const(node.args[0]))
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ParseError(f"bad quadratic number {text!r}")

    q = ev(_parse_tree(str(text)))
    if D is not None and q.D is not None and q.D != D:
        raise ParseError(f"{text!r} is not in Q(sqrt {D})")
    return q


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except ValueError:
        raise ParseError(f"not a rational number: {text!r}") from None
