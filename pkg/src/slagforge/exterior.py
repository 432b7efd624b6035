"""Weighted invariant exterior calculus.

A form is a finite sum of ``character * scalar * theta^I`` where ``I`` is a
strictly ascending tuple of coframe indices (1-based) and the character is
``exp(sum c_w x_w)`` over the model's weight directions.  Each weight
direction ``w`` has a closed coframe element ``theta^{delta(w)} = dx_w``.

Functions that need structure (``d``, ``bidegree_split``, ``lefschetz_dual``)
take a model; everything else is model-free.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalars import I, ONE, ZERO, Scalar, ScalarLike, as_scalar

Index = Tuple[int, ...]


class ExteriorError(ValueError):
    pass


# ---------------------------------------------------------------------------
# characters


class Character:
    """Formal exponential ``exp(sum c_w x_w)``; multiplication adds exponents."""

    __slots__ = ("exponent", "_hash")

    def __init__(self, exponent: Optional[Mapping[str, ScalarLike]] = None):
        items = []
        for w, c in (exponent or {}).items():
            c = as_scalar(c)
            if not c.is_zero():
                items.append((w, c))
        self.exponent: Tuple[Tuple[str, Scalar], ...] = tuple(sorted(items, key=lambda t: t[0]))
        self._hash = hash(self.exponent)

    def coefficient(self, w: str) -> Scalar:
        for name, c in self.exponent:
            if name == w:
                return c
        return ZERO

    def directions(self) -> List[str]:
        return [w for w, _ in self.exponent]

    def is_trivial(self) -> bool:
        return not self.exponent

    def __mul__(self, other: "Character") -> "Character":
        if not other.exponent:
            return self
        if not self.exponent:
            return other
        acc: Dict[str, Scalar] = dict(self.exponent)
        for w, c in other.exponent:
            acc[w] = acc.get(w, ZERO) + c
        return Character(acc)

    def __pow__(self, k: int) -> "Character":
        return Character({w: c * k for w, c in self.exponent})

    def inverse(self) -> "Character":
        return self ** -1

    def conjugate(self) -> "Character":
        return Character({w: c.conjugate() for w, c in self.exponent})

    def __eq__(self, other):
        return isinstance(other, Character) and self.exponent == other.exponent

    def __hash__(self):
        return self._hash

    def exponent_str(self) -> str:
        parts = []
        for w, c in self.exponent:
            s = str(c)
            if s == "1":
                parts.append(w)
            elif s == "-1":
                parts.append(f"-{w}")
            else:
                parts.append(f"({s})*{w}" if (" " in s and not s.startswith("(")) else f"{s}*{w}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return "1" if not self.exponent else f"e({self.exponent_str()})"

    __repr__ = __str__


TRIVIAL = Character()


# ---------------------------------------------------------------------------
# monomial algebra


@lru_cache(maxsize=None)
def merge(a: Index, b: Index) -> Tuple[int, Index]:
    """theta^a ^ theta^b = sign * theta^c; sign 0 if they overlap."""
    if set(a) & set(b):
        return 0, ()
    seq = list(a) + list(b)
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


@lru_cache(maxsize=None)
def sort_sign(seq: Tuple[int, ...]) -> Tuple[int, Index]:
    """Sign and sorted tuple for a not-necessarily-ascending index word."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def _interior_mono(a: int, idx: Index) -> Tuple[int, Index]:
    if a not in idx:
        return 0, ()
    r = idx.index(a)
    return (-1 if r % 2 else 1), idx[:r] + idx[r + 1:]


Key = Tuple[Character, Index]


class WeightedForm:
    """Finite sum of character * scalar * theta^I with pruned zero terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Key, ScalarLike]] = None):
        clean: Dict[Key, Scalar] = {}
        for (ch, idx), c in (terms or {}).items():
            c = as_scalar(c)
            if c.is_zero():
                continue
            idx = tuple(idx)
            if list(idx) != sorted(set(idx)):
                s, idx2 = sort_sign(idx)
                if s == 0:
                    continue
                c, idx = c * s, idx2
            key = (ch, idx)
            v = clean.get(key)
            v = c if v is None else v + c
            if v.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = v
        self.terms = clean

    @staticmethod
    def _raw(terms: Dict[Key, Scalar]) -> "WeightedForm":
        f = object.__new__(WeightedForm)
        f.terms = terms
        return f

    # constructors
    @staticmethod
    def mono(*idx: int, coeff: ScalarLike = 1, char: Character = TRIVIAL) -> "WeightedForm":
        return WeightedForm({(char, tuple(idx)): coeff})

    @staticmethod
    def const(c: ScalarLike, char: Character = TRIVIAL) -> "WeightedForm":
        return WeightedForm({(char, ()): c})

    @staticmethod
    def zero() -> "WeightedForm":
        return WeightedForm._raw({})

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> List[int]:
        return sorted({len(idx) for _, idx in self.terms})

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ExteriorError(f"form is not homogeneous: degrees {ds}")
        return ds[0] if ds else 0

    def characters(self) -> List[Character]:
        return sorted({ch for ch, _ in self.terms}, key=str)

    def coefficient(self, idx: Sequence[int], char: Character = TRIVIAL) -> Scalar:
        s, key = sort_sign(tuple(idx))
        if s == 0:
            return ZERO
        return self.terms.get((char, key), ZERO) * s

    def component(self, degree: int) -> "WeightedForm":
        return WeightedForm._raw({k: v for k, v in self.terms.items() if len(k[1]) == degree})

    def by_character(self) -> Dict[Character, "WeightedForm"]:
        out: Dict[Character, Dict[Key, Scalar]] = {}
        for (ch, idx), c in self.terms.items():
            out.setdefault(ch, {})[(ch, idx)] = c
        return {ch: WeightedForm._raw(t) for ch, t in out.items()}

    # linear structure
    def __add__(self, other: "WeightedForm") -> "WeightedForm":
        if not isinstance(other, WeightedForm):
            if isinstance(other, (Scalar, int)) or hasattr(other, "numerator"):
                other = WeightedForm.const(other)
            else:
                return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
        return WeightedForm._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return WeightedForm._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: ScalarLike) -> "WeightedForm":
        c = as_scalar(c)
        if c.is_zero():
            return WeightedForm.zero()
        if c == ONE:
            return self
        return WeightedForm._raw({k: v * c for k, v in self.terms.items()})

    def times_character(self, ch: Character) -> "WeightedForm":
        return WeightedForm._raw({(c0 * ch, idx): v for (c0, idx), v in self.terms.items()})

    def wedge(self, other: "WeightedForm") -> "WeightedForm":
        out: Dict[Key, Scalar] = {}
        for (c1, i1), v1 in self.terms.items():
            for (c2, i2), v2 in other.terms.items():
                s, idx = merge(i1, i2)
                if s == 0:
                    continue
                key = (c1 * c2, idx)
                v = v1 * v2 if s > 0 else -(v1 * v2)
                prev = out.get(key)
                v = v if prev is None else prev + v
                if v.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = v
        return WeightedForm._raw(out)

    def __mul__(self, other):
        if isinstance(other, WeightedForm):
            return self.wedge(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def power(self, k: int) -> "WeightedForm":
        out = WeightedForm.const(1)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def conjugate(self) -> "WeightedForm":
        return WeightedForm({(ch.conjugate(), idx): c.conjugate() for (ch, idx), c in self.terms.items()})

    def real_part(self) -> "WeightedForm":
        return (self + self.conjugate()).scale(Scalar(1) / 2)

    def imag_part(self) -> "WeightedForm":
        return (self - self.conjugate()).scale(Scalar(1) / (2 * I))

    def map_coefficients(self, fn) -> "WeightedForm":
        return WeightedForm({k: fn(v) for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = WeightedForm.const(other)
        if not isinstance(other, WeightedForm):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> List[Tuple[Character, Index, Scalar]]:
        return sorted(((ch, idx, c) for (ch, idx), c in self.terms.items()),
                      key=lambda t: (len(t[1]), t[1], str(t[0])))

    def __str__(self):
        """Form-literal syntax, e.g. ``(2 - lam)*e(2*x)*t[1,2]``."""
        if not self.terms:
            return "0"
        parts = []
        for ch, idx, c in self.sorted_terms():
            cs = str(c)
            if " " in cs and not (cs.startswith("(") and cs.endswith(")") and cs.count("(") == 1):
                cs = f"({cs})"
            sign = ""
            if cs.startswith("-"):
                sign, cs = "-", cs[1:]
            pieces = [] if cs == "1" and (idx or not ch.is_trivial()) else [cs]
            if not ch.is_trivial():
                pieces.append(str(ch))
            if idx:
                pieces.append("t[" + ",".join(map(str, idx)) + "]")
            parts.append(sign + "*".join(pieces))
        return " + ".join(parts).replace("+ -", "- ")

    def pretty(self) -> str:
        """theta-index notation, e.g. ``(2 - lam) e^{2*x} θ^{12}``."""
        if not self.terms:
            return "0"
        parts = []
        for ch, idx, c in self.sorted_terms():
            cs = str(c)
            bits = []
            if cs == "-1" and idx:
                bits.append("-")
            elif cs != "1" or not idx:
                bits.append(f"({cs})" if " " in cs else cs)
            if not ch.is_trivial():
                bits.append("e^{" + ch.exponent_str() + "}")
            if idx:
                bits.append("θ^{" + "".join(map(str, idx)) + "}" if max(idx) < 10
                            else "θ^{" + ",".join(map(str, idx)) + "}")
            s = " ".join(bits)
            if s.startswith("- "):
                s = "-" + s[2:]
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"WeightedForm({self})"


def theta(*idx: int) -> WeightedForm:
    return WeightedForm.mono(*idx)


# ---------------------------------------------------------------------------
# model-free operators


def interior(vec: Sequence[ScalarLike], f: WeightedForm) -> WeightedForm:
    """Contraction iota_X f with X = sum vec[a-1] E_a (first slot)."""
    vec = [as_scalar(x) for x in vec]
    out: Dict[Key, Scalar] = {}
    for (ch, idx), c in f.terms.items():
        for a in idx:
            xa = vec[a - 1] if a - 1 < len(vec) else ZERO
            if xa.is_zero():
                continue
            s, rest = _interior_mono(a, idx)
            key = (ch, rest)
            v = c * xa * s
            prev = out.get(key)
            out[key] = v if prev is None else prev + v
    return WeightedForm(out)


def unit_vector(a: int, dim: int) -> List[Scalar]:
    return [ONE if b == a else ZERO for b in range(1, dim + 1)]


def evaluate(f: WeightedForm, vectors: Sequence[Sequence[ScalarLike]]) -> Scalar:
    """f(V_1, ..., V_k) for frame-coefficient rows V_r (determinant pairing)."""
    vectors = [[as_scalar(x) for x in v] for v in vectors]
    degs = f.degrees()
    if f.is_zero():
        return ZERO
    if degs != [len(vectors)]:
        raise ExteriorError(f"degree mismatch: form of degree {degs}, {len(vectors)} vectors")
    total = ZERO
    for (ch, idx), c in f.terms.items():
        if not ch.is_trivial():
            raise ExteriorError("evaluation of a weighted form needs a point")
        total = total + c * _det([[v[a - 1] for a in idx] for v in vectors])
    return total


def _det(m: List[List[Scalar]]) -> Scalar:
    n = len(m)
    if n == 0:
        return ONE
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ZERO
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def hodge_star(f: WeightedForm, indices: Sequence[int]) -> WeightedForm:
    """Riemannian Hodge star for the orthonormal coframe on ``indices``.

    Orientation is theta^{indices} in ascending order.  Terms using indices
    outside the set are rejected.
    """
    full = tuple(sorted(indices))
    out: Dict[Key, Scalar] = {}
    for (ch, idx), c in f.terms.items():
        if not set(idx) <= set(full):
            raise ExteriorError(f"theta^{idx} is not supported on {full}")
        comp = tuple(a for a in full if a not in idx)
        s, _ = sort_sign(idx + comp)
        out[(ch, comp)] = c * s
    return WeightedForm(out)


def restrict(f: WeightedForm, indices: Iterable[int]) -> WeightedForm:
    """Pull back to a leaf: drop every term with a leg outside ``indices``."""
    keep = set(indices)
    return WeightedForm._raw({k: v for k, v in f.terms.items() if set(k[1]) <= keep})


def pullback(f: WeightedForm, images: Mapping[int, WeightedForm],
             char_map=None) -> WeightedForm:
    """Substitute theta^a -> images[a] (1-forms, possibly weighted).

    ``char_map`` optionally rewrites characters (callable Character -> Character).
    """
    out = WeightedForm.zero()
    for (ch, idx), c in f.terms.items():
        term = WeightedForm.const(c, char_map(ch) if char_map else ch)
        for a in idx:
            if a not in images:
                raise ExteriorError(f"no image for coframe index {a}")
            term = term.wedge(images[a])
        out = out + term
    return out


# ---------------------------------------------------------------------------
# model-dependent operators


def _structure_form(m, i: int) -> WeightedForm:
    cache = m._cache.setdefault("dtheta", {})
    if i not in cache:
        if not 1 <= i <= m.dim:
            raise ExteriorError(f"unknown coframe index {i}")
        cache[i] = WeightedForm({(TRIVIAL, jk): c for jk, c in m.structure.get(i, {}).items()})
    return cache[i]


def _d_mono(m, idx: Index) -> WeightedForm:
    cache = m._cache.setdefault("dmono", {})
    if idx not in cache:
        out = WeightedForm.zero()
        for r, a in enumerate(idx):
            da = _structure_form(m, a)
            if da.is_zero():
                continue
            left, right = WeightedForm.mono(*idx[:r]), WeightedForm.mono(*idx[r + 1:])
            term = left.wedge(da).wedge(right)
            out = out + (term if r % 2 == 0 else -term)
        cache[idx] = out
    return cache[idx]


def d(f: WeightedForm, m) -> WeightedForm:
    """Exterior derivative using the model's structure equations."""
    acc: Dict[Key, Scalar] = {}

    def add(key, v):
        prev = acc.get(key)
        acc[key] = v if prev is None else prev + v

    for (ch, idx), c in f.terms.items():
        for w, cw in ch.exponent:
            if w not in m.weight_directions:
                raise ExteriorError(f"character direction {w!r} is not a weight direction")
            s, new = merge((m.weight_directions[w],), idx)
            if s:
                add((ch, new), c * cw * s)
        for (_, j), v in _d_mono(m, idx).terms.items():
            add((ch, j), c * v)
    return WeightedForm(acc)


# complex coframe --------------------------------------------------------


def complex_pairs(J: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Pairs (h, h~) with J E_h = +E_{h~}; phi = theta^h + i theta^{h~} is (1,0)."""
    return [(h, t) for h, (s, t) in enumerate(J, start=1) if s > 0]


def _complex_images(J) -> Tuple[Dict[int, WeightedForm], Dict[int, WeightedForm], int]:
    """theta -> phi images and phi -> theta images.  phi_k has index k,
    conj(phi_k) has index n + k."""
    pairs = complex_pairs(J)
    n = len(pairs)
    half, half_i = Scalar(1) / 2, Scalar(1) / (2 * I)
    to_phi: Dict[int, WeightedForm] = {}
    to_theta: Dict[int, WeightedForm] = {}
    for k, (h, t) in enumerate(pairs, start=1):
        to_phi[h] = WeightedForm({(TRIVIAL, (k,)): half, (TRIVIAL, (n + k,)): half})
        to_phi[t] = WeightedForm({(TRIVIAL, (k,)): half_i, (TRIVIAL, (n + k,)): -half_i})
        to_theta[k] = WeightedForm({(TRIVIAL, (h,)): 1, (TRIVIAL, (t,)): I})
        to_theta[n + k] = WeightedForm({(TRIVIAL, (h,)): 1, (TRIVIAL, (t,)): -I})
    return to_phi, to_theta, n


def _complex_data(m, J=None):
    J = J if J is not None else m.J
    key = ("cplx", tuple(J))
    if key not in m._cache:
        m._cache[key] = _complex_images(J)
    return m._cache[key]


def to_complex_basis(f: WeightedForm, m, J=None) -> WeightedForm:
    """Rewrite f in the (phi, phi-bar) coframe: index k is phi_k, n+k is its conjugate."""
    to_phi, _, _ = _complex_data(m, J)
    return pullback(f, to_phi)


def from_complex_basis(f: WeightedForm, m, J=None) -> WeightedForm:
    _, to_theta, _ = _complex_data(m, J)
    return pullback(f, to_theta)


def bidegree_split(f: WeightedForm, m, J=None) -> Dict[Tuple[int, int], WeightedForm]:
    """Components of f by (p, q) type with respect to J."""
    _, _, n = _complex_data(m, J)
    mono_cache = m._cache.setdefault(("split", tuple(J if J is not None else m.J)), {})
    out: Dict[Tuple[int, int], WeightedForm] = {}
    for (ch, idx), c in f.terms.items():
        if idx not in mono_cache:
            parts: Dict[Tuple[int, int], WeightedForm] = {}
            g = to_complex_basis(WeightedForm.mono(*idx), m, J)
            for (_, cidx), cc in g.terms.items():
                p = sum(1 for a in cidx if a <= n)
                pq = (p, len(cidx) - p)
                back = from_complex_basis(WeightedForm.mono(*cidx), m, J).scale(cc)
                parts[pq] = parts[pq] + back if pq in parts else back
            mono_cache[idx] = parts
        for pq, g in mono_cache[idx].items():
            piece = g.times_character(ch).scale(c)
            out[pq] = out[pq] + piece if pq in out else piece
    return {pq: g for pq, g in out.items() if not g.is_zero()}


def del_(f: WeightedForm, m, J=None) -> WeightedForm:
    out = WeightedForm.zero()
    for (p, q), g in bidegree_split(f, m, J).items():
        dg = bidegree_split(d(g, m), m, J)
        out = out + dg.get((p + 1, q), WeightedForm.zero())
    return out


def delbar(f: WeightedForm, m, J=None) -> WeightedForm:
    out = WeightedForm.zero()
    for (p, q), g in bidegree_split(f, m, J).items():
        dg = bidegree_split(d(g, m), m, J)
        out = out + dg.get((p, q + 1), WeightedForm.zero())
    return out


def apply_J(vec: Sequence[ScalarLike], J) -> List[Scalar]:
    """J on a frame vector: J E_h = s_h E_{h~}."""
    out = [ZERO] * len(J)
    for h, (s, t) in enumerate(J, start=1):
        x = as_scalar(vec[h - 1])
        if not x.is_zero():
            out[t - 1] = out[t - 1] + x * s
    return out


# Lefschetz ----------------------------------------------------------------


def poisson_bivector(omega: WeightedForm, dim: int) -> List[List[Scalar]]:
    """P = -W^{-1} where W_ab = omega(E_a, E_b); Lambda = 1/2 sum P^{ab} i_b i_a."""
    from .linalg import rref

    if any(not ch.is_trivial() for ch in omega.characters()) or omega.degrees() != [2]:
        raise ExteriorError("omega must be an invariant 2-form")
    W = [[ZERO] * dim for _ in range(dim)]
    for (_, (a, b)), c in omega.terms.items():
        W[a - 1][b - 1] = W[a - 1][b - 1] + c
        W[b - 1][a - 1] = W[b - 1][a - 1] - c
    aug = [W[r] + [ONE if c == r else ZERO for c in range(dim)] for r in range(dim)]
    red, piv = rref(aug)
    if piv[:dim] != list(range(dim)):
        raise ExteriorError("degenerate omega")
    inv = [row[dim:] for row in red]
    return [[-x for x in row] for row in inv]


def lefschetz_L(f: WeightedForm, m) -> WeightedForm:
    return m.omega.wedge(f)


def lefschetz_lambda(f: WeightedForm, m) -> WeightedForm:
    key = "poisson"
    if key not in m._cache:
        m._cache[key] = poisson_bivector(m.omega, m.dim)
    P = m._cache[key]
    dim = m.dim
    out = WeightedForm.zero()
    half = Scalar(1) / 2
    for a in range(1, dim + 1):
        ia = interior(unit_vector(a, dim), f)
        if ia.is_zero():
            continue
        for b in range(1, dim + 1):
            pab = P[a - 1][b - 1]
            if pab.is_zero():
                continue
            out = out + interior(unit_vector(b, dim), ia).scale(pab * half)
    return out


def lefschetz_dual(f: WeightedForm, m) -> WeightedForm:
    """d^Lambda = d Lambda - Lambda d."""
    return d(lefschetz_lambda(f, m), m) - lefschetz_lambda(d(f, m), m)


def basis_monomials(dim: int, k: int) -> List[Index]:
    return list(combinations(range(1, dim + 1), k))
