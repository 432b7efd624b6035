"""Exact scalars: Gaussian-rational functions in the formal parameters, and
elements of a single real quadratic field Q(sqrt D).

A :class:`Scalar` is stored as ``(P + i*Q) / R`` where ``P``, ``Q``, ``R`` are
polynomials with rational coefficients in the global parameters, ``R`` is
monic in lex order and ``gcd(P, Q, R) = 1``.  That form is unique, so
equality and hashing are syntactic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Tuple, Union

import flint

# One parameter list for the whole session.  ``lam`` is the Nakamura
# exponent, ``tau`` the imaginary lattice period and ``v`` a fiber volume.
PARAMETERS: Tuple[str, ...] = ("lam", "tau", "v")
_CTX = flint.fmpq_mpoly_ctx.get(PARAMETERS, "lex")
_NVARS = len(PARAMETERS)
_POLY_ZERO = _CTX.from_dict({})
_POLY_ONE = _CTX.from_dict({(0,) * _NVARS: 1})


class MalformedScalar(ValueError):
    """Raised for a zero denominator or an unparsable scalar."""


def _const_poly(q) -> "flint.fmpq_mpoly":
    if q == 0:
        return _POLY_ZERO
    return _CTX.from_dict({(0,) * _NVARS: flint.fmpq(q.numerator, q.denominator)
                           if isinstance(q, Fraction) else q})


def _fmpq_to_fraction(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _canon(re, im, den) -> "Scalar":
    if re.is_zero() and im.is_zero():
        return ZERO
    if den.is_zero():
        raise MalformedScalar("zero denominator")
    if not den.is_constant():
        g = den.gcd(re)
        if not g.is_one():
            g = g.gcd(im)
            if not g.is_one():
                re, im, den = re / g, im / g, den / g
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / flint.fmpq(lc)
        re, im, den = re * inv, im * inv, den * inv
    s = object.__new__(Scalar)
    s._re, s._im, s._den, s._hash = re, im, den, None
    return s


class Scalar:
    """Element of Q(i)(lam, tau, v) in canonical form."""

    __slots__ = ("_re", "_im", "_den", "_hash")

    def __init__(self, value: Union[int, Fraction, "Scalar"] = 0):
        if isinstance(value, Scalar):
            self._re, self._im, self._den = value._re, value._im, value._den
        elif isinstance(value, (int, Fraction)):
            self._re, self._im, self._den = _const_poly(Fraction(value)), _POLY_ZERO, _POLY_ONE
        else:
            raise TypeError(f"cannot make a Scalar from {type(value).__name__}")
        self._hash = None

    # construction helpers
    @staticmethod
    def param(name: str) -> "Scalar":
        if name not in PARAMETERS:
            raise MalformedScalar(f"unknown parameter {name!r}")
        exps = [0] * _NVARS
        exps[PARAMETERS.index(name)] = 1
        return _canon(_CTX.from_dict({tuple(exps): 1}), _POLY_ZERO, _POLY_ONE)

    @staticmethod
    def complex(re: Union[int, Fraction], im: Union[int, Fraction]) -> "Scalar":
        return _canon(_const_poly(Fraction(re)), _const_poly(Fraction(im)), _POLY_ONE)

    # structure
    @property
    def numerator(self) -> Tuple[object, object]:
        return self._re, self._im

    @property
    def denominator(self):
        return self._den

    def is_zero(self) -> bool:
        return self._re.is_zero() and self._im.is_zero()

    def is_real(self) -> bool:
        return self._im.is_zero()

    def is_constant(self) -> bool:
        return self._re.is_constant() and self._im.is_constant() and self._den.is_constant()

    def is_rational(self) -> bool:
        return self.is_real() and self.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return _fmpq_to_fraction(self._re.leading_coefficient()) if not self._re.is_zero() else Fraction(0)

    def to_gaussian(self) -> Tuple[Fraction, Fraction]:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        re = _fmpq_to_fraction(self._re.leading_coefficient()) if not self._re.is_zero() else Fraction(0)
        im = _fmpq_to_fraction(self._im.leading_coefficient()) if not self._im.is_zero() else Fraction(0)
        return re, im

    def real(self) -> "Scalar":
        return _canon(self._re, _POLY_ZERO, self._den)

    def imag(self) -> "Scalar":
        return _canon(self._im, _POLY_ZERO, self._den)

    def conjugate(self) -> "Scalar":
        if self._im.is_zero():
            return self
        return _canon(self._re, -self._im, self._den)

    def monomial(self) -> Optional[Tuple[Fraction, bool, Tuple[int, ...]]]:
        """``(c, imaginary, exponents)`` if self = c * i^imaginary * prod p^e, else None."""
        if self.is_zero():
            return None
        if not self._re.is_zero() and not self._im.is_zero():
            return None
        num, imaginary = (self._im, True) if self._re.is_zero() else (self._re, False)
        nt, dt = num.to_dict(), self._den.to_dict()
        if len(nt) != 1 or len(dt) != 1:
            return None
        (ne, nc), = nt.items()
        (de, dc), = dt.items()
        exps = tuple(a - b for a, b in zip(ne, de))
        return _fmpq_to_fraction(nc) / _fmpq_to_fraction(dc), imaginary, exps

    def subs(self, values: Mapping[str, Union[int, Fraction]]) -> "Scalar":
        """Substitute rational values for parameters."""
        fv = {k: flint.fmpq(Fraction(v).numerator, Fraction(v).denominator) for k, v in values.items()}
        den = self._den.subs(fv)
        if den.is_zero():
            raise MalformedScalar(f"denominator of {self} vanishes at {dict(values)}")
        return _canon(self._re.subs(fv), self._im.subs(fv), den)

    # arithmetic
    @staticmethod
    def _lift(other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other)
        return None

    def __add__(self, other):
        o = Scalar._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self._den == o._den:
            return _canon(self._re + o._re, self._im + o._im, self._den)
        g = self._den.gcd(o._den)
        a, b = o._den / g, self._den / g
        return _canon(self._re * a + o._re * b, self._im * a + o._im * b, self._den * a)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return _canon(-self._re, -self._im, self._den)

    def __sub__(self, other):
        o = Scalar._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Scalar._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = Scalar._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ZERO
        if self._im.is_zero() and o._im.is_zero():
            re, im = self._re * o._re, _POLY_ZERO
        elif o._im.is_zero():
            re, im = self._re * o._re, self._im * o._re
        elif self._im.is_zero():
            re, im = self._re * o._re, self._re * o._im
        else:
            re = self._re * o._re - self._im * o._im
            im = self._re * o._im + self._im * o._re
        return _canon(re, im, self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        if self._im.is_zero():
            return _canon(self._den, _POLY_ZERO, self._re)
        norm = self._re * self._re + self._im * self._im
        return _canon(self._den * self._re, -(self._den * self._im), norm)

    def __truediv__(self, other):
        o = Scalar._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = Scalar._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison and display
    def __eq__(self, other):
        o = Scalar._lift(other)
        if o is None:
            return NotImplemented
        return self._re == o._re and self._im == o._im and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self._re), str(self._im), str(self._den)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        multi = False
        if self._im.is_zero():
            num = str(self._re)
            multi = len(self._re.to_dict()) > 1
        else:
            im = _imag_str(self._im)
            if self._re.is_zero():
                num = im
                multi = False
            else:
                num = f"{self._re} - {im[1:]}" if im.startswith("-") else f"{self._re} + {im}"
                multi = True
        if self._den.is_one():
            return num
        den = str(self._den)
        if len(self._den.to_dict()) > 1 or "*" in den:
            den = f"({den})"
        return f"({num})/{den}" if multi else f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({self})"


def _imag_str(p) -> str:
    s = str(p)
    if s == "1":
        return "i"
    if s == "-1":
        return "-i"
    if len(p.to_dict()) > 1:
        return f"i*({s})"
    return f"{s}*i"


ZERO = object.__new__(Scalar)
ZERO._re, ZERO._im, ZERO._den, ZERO._hash = _POLY_ZERO, _POLY_ZERO, _POLY_ONE, None
ONE = Scalar(1)
I = Scalar.complex(0, 1)
LAM = Scalar.param("lam")
TAU = Scalar.param("tau")
V = Scalar.param("v")

ScalarLike = Union[Scalar, int, Fraction]


def as_scalar(x: ScalarLike) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    raise TypeError(f"not a scalar: {x!r}")


def normalize(numerator: ScalarLike, denominator: ScalarLike = 1) -> Scalar:
    """Canonical form of ``numerator / denominator``.

    >>> str(normalize(2 * LAM, 2))
    'lam'
    >>> str(normalize(LAM**2 - LAM, LAM))
    'lam - 1'
    """
    num, den = as_scalar(numerator), as_scalar(denominator)
    if den.is_zero():
        raise MalformedScalar("zero denominator")
    return num / den


# ---------------------------------------------------------------------------
# real quadratic field


@dataclass(frozen=True)
class SqrtCheck:
    is_square: bool
    root: Optional[int]       # k with n = k^2, when is_square
    squarefree: Optional[int]  # D with n = coefficient^2 * D, otherwise
    coefficient: Optional[int]


def _squarefree_part(n: int) -> Tuple[int, int]:
    """n = c^2 * D with D square-free; returns (c, D).  n > 0."""
    c, d, p = 1, n, 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            c *= p
        p += 1 if p == 2 else 2
    return c, d


def quad_sqrt_check(n: int) -> SqrtCheck:
    """Decide whether ``n`` is a perfect square.

    >>> quad_sqrt_check(12)
    SqrtCheck(is_square=False, root=None, squarefree=3, coefficient=2)
    """
    if n >= 0:
        k = math.isqrt(n)
        if k * k == n:
            return SqrtCheck(True, k, None, None)
        c, d = _squarefree_part(n)
        return SqrtCheck(False, None, d, c)
    c, d = _squarefree_part(-n)
    return SqrtCheck(False, None, -d, c)


class QuadInt:
    """a + b*sqrt(D) with rational a, b and square-free D > 1.

    ``D`` may be None for a plain rational; it is adopted from the other
    operand on mixing.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: Optional[int] = None):
        a, b = Fraction(a), Fraction(b)
        if D is not None:
            if D <= 1 or _squarefree_part(D)[1] != D:
                raise ValueError(f"D must be square-free and > 1, got {D}")
        elif b != 0:
            raise ValueError("irrational part needs D")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    def __setattr__(self, key, value):
        raise AttributeError("QuadInt is immutable")

    @staticmethod
    def sqrt(n: int) -> "QuadInt":
        chk = quad_sqrt_check(n)
        if chk.is_square:
            return QuadInt(chk.root)
        if chk.squarefree < 0:
            raise ValueError("negative radicand")
        return QuadInt(0, chk.coefficient, chk.squarefree)

    def _join(self, other) -> Tuple["QuadInt", int]:
        if isinstance(other, (int, Fraction)):
            other = QuadInt(other)
        if not isinstance(other, QuadInt):
            raise TypeError
        if self.D is not None and other.D is not None and self.D != other.D:
            raise ValueError(f"mixing Q(sqrt {self.D}) and Q(sqrt {other.D})")
        return other, self.D if self.D is not None else other.D

    def _mk(self, a, b, D):
        return QuadInt(a, b, D if b != 0 or D is not None else None)

    def __add__(self, other):
        try:
            o, D = self._join(other)
        except TypeError:
            return NotImplemented
        return self._mk(self.a + o.a, self.b + o.b, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        try:
            o, D = self._join(other)
        except TypeError:
            return NotImplemented
        return self._mk(self.a - o.a, self.b - o.b, D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o, D = self._join(other)
        except TypeError:
            return NotImplemented
        d = D or 0
        return self._mk(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadInt":
        return QuadInt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - (self.D or 0) * self.b * self.b

    def inverse(self) -> "QuadInt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero QuadInt")
        c = self.conjugate()
        return QuadInt(c.a / n, c.b / n, self.D)

    def __truediv__(self, other):
        try:
            o, _ = self._join(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o, _ = self._join(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadInt(1, 0, self.D)
        for _ in range(n):
            out = out * self
        return out

    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(D)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with D b^2
        diff = self.a * self.a - self.D * self.b * self.b
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D or 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadInt):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.a == other.a and self.b == other.b and self.D == other.D

    def __hash__(self):
        return hash((self.a, self.b, self.D if self.b else None))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.D})"
        b = self.b
        bpart = rad if b == 1 else (f"-{rad}" if b == -1 else f"{b}*{rad}")
        if self.a == 0:
            return bpart
        sign = "-" if b < 0 else "+"
        babs = abs(b)
        bpart = rad if babs == 1 else f"{babs}*{rad}"
        return f"{self.a} {sign} {bpart}"

    def __repr__(self):
        return f"QuadInt({self})"
