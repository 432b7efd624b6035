"""Finite weighted Chevalley-Eilenberg complexes and their cohomologies.

Cochains are forms chi * theta^I where chi runs over a finite set of
characters (lattice-trivial ones by default).  d preserves the character, so
every computation splits into independent character blocks.  All ranks are
exact over the scalar field.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from . import exterior as ext
from .exterior import Character, WeightedForm
from .lattice import admissible_characters
from .linalg import nullspace, rank, row_basis, transpose
from .model import ModelError, ModelManifold, Polarization
from .scalars import ZERO, Scalar

Index = Tuple[int, ...]
Vector = List[Scalar]


class CohomologyError(ValueError):
    pass


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SLAGFORGE_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class CohomologyTable:
    kind: str
    model: str
    dims: Dict[Hashable, int]
    representatives: Dict[Hashable, Tuple[WeightedForm, ...]] = field(default_factory=dict)
    characters: Tuple[Character, ...] = ()

    def __getitem__(self, grade) -> int:
        return self.dims.get(grade, 0)

    def betti(self) -> Tuple[int, ...]:
        top = max(k for k in self.dims if isinstance(k, int))
        return tuple(self.dims.get(k, 0) for k in range(top + 1))

    def diamond(self) -> List[Tuple[int, ...]]:
        """Rows by total degree, each listed from (k, 0) down to (0, k)."""
        n = max(p for p, _ in self.dims)
        rows = []
        for k in range(2 * n + 1):
            rows.append(tuple(self.dims.get((p, k - p), 0)
                              for p in range(min(k, n), max(0, k - n) - 1, -1)))
        return rows

    def to_json(self) -> dict:
        def key(g):
            return str(g) if isinstance(g, int) else f"{g[0]},{g[1]}"
        return {
            "kind": self.kind,
            "model": self.model,
            "characters": [str(c) for c in self.characters],
            "dims": {key(g): v for g, v in sorted(self.dims.items())},
            "representatives": {key(g): [str(f) for f in fs]
                                for g, fs in sorted(self.representatives.items())},
        }

    def __str__(self):
        lines = [f"{self.kind} cohomology of {self.model}"]
        if all(isinstance(g, int) for g in self.dims):
            for k in sorted(self.dims):
                reps = ", ".join(f.pretty() for f in self.representatives.get(k, ()))
                lines.append(f"  H^{k}  dim {self.dims[k]:>2}  <{reps}>")
            return "\n".join(lines)
        n = max(p for p, _ in self.dims)
        lines.append(f"  {'(p,q)':<28} {'dims':<12} representatives")
        for k in range(2 * n + 1):
            grades = [(p, k - p) for p in range(min(k, n), max(0, k - n) - 1, -1)]
            label = ", ".join(f"({p},{q})" for p, q in grades)
            dims = ",".join(str(self.dims.get(g, 0)) for g in grades)
            reps = "; ".join(
                ", ".join(f.pretty() for f in self.representatives.get(g, ())) or "0"
                for g in grades)
            lines.append(f"  {label:<28} {dims:<12} {reps}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# linear algebra on a character block


class _Block:
    """Coordinates for chi * Lambda^k with the theta-monomial basis."""

    def __init__(self, m: ModelManifold, ch: Character):
        self.m, self.ch = m, ch
        self.basis = {k: ext.basis_monomials(m.dim, k) for k in range(m.dim + 1)}
        self.pos = {k: {idx: i for i, idx in enumerate(b)} for k, b in self.basis.items()}

    def form(self, k: int, vec: Sequence[Scalar]) -> WeightedForm:
        return WeightedForm({(self.ch, idx): c for idx, c in zip(self.basis[k], vec)
                             if not c.is_zero()})

    def vector(self, k: int, f: WeightedForm) -> Vector:
        out = [ZERO] * len(self.basis[k])
        for (ch, idx), c in f.terms.items():
            if ch != self.ch or len(idx) != k:
                raise CohomologyError("form leaves its character block or degree")
            out[self.pos[k][idx]] = c
        return out

    def mono(self, idx: Index) -> WeightedForm:
        return WeightedForm.mono(*idx, char=self.ch)

    def images(self, op: Callable[[WeightedForm], WeightedForm], src: Sequence[WeightedForm],
               k_out: int) -> List[Vector]:
        return [self.vector(k_out, op(f)) for f in src]


def _kernel(src_vectors: List[Vector], images: List[Vector]) -> List[Vector]:
    """Vectors in span(src) killed by the map src_i -> images_i."""
    if not src_vectors:
        return []
    if not images or not images[0]:
        return row_basis(src_vectors)
    combos = nullspace(transpose(images), len(images))
    n = len(src_vectors[0])
    out = []
    for c in combos:
        v = [ZERO] * n
        for ci, s in zip(c, src_vectors):
            if not ci.is_zero():
                v = [a + ci * b for a, b in zip(v, s)]
        out.append(v)
    return row_basis(out) if out else []


def _restrict_support(vectors: List[Vector], allowed: set) -> List[Vector]:
    """span(vectors) intersected with the coordinate subspace on ``allowed``."""
    if not vectors:
        return []
    outside = [j for j in range(len(vectors[0])) if j not in allowed]
    if not outside:
        return row_basis(vectors)
    cols = [[v[j] for j in outside] for v in vectors]
    combos = nullspace(transpose(cols), len(vectors))
    out = []
    for c in combos:
        v = [ZERO] * len(vectors[0])
        for ci, s in zip(c, vectors):
            if not ci.is_zero():
                v = [a + ci * b for a, b in zip(v, s)]
        out.append(v)
    return row_basis(out) if out else []


def _quotient(K: List[Vector], B: List[Vector]) -> List[Vector]:
    """Complement representatives of span(B) in span(K + B) drawn from K."""
    chosen = row_basis(B) if B else []
    r = len(chosen)
    reps = []
    for v in row_basis(K) if K else []:
        if rank(chosen + [v]) > r:
            chosen.append(v)
            reps.append(v)
            r += 1
    return reps


# ---------------------------------------------------------------------------
# weighted complex


class WeightedComplex:
    """Direct sum over characters of chi * Lambda^* g^*, with d and friends."""

    def __init__(self, m: ModelManifold, characters: Optional[Sequence[Character]] = None):
        self.model = m
        self.characters: Tuple[Character, ...] = tuple(
            characters if characters is not None else admissible_characters(m))
        self.blocks = {ch: _Block(m, ch) for ch in self.characters}

    def d_matrix(self, ch: Character, k: int) -> List[Vector]:
        """Rows are d of the degree-k basis monomials."""
        b = self.blocks[ch]
        return b.images(lambda f: ext.d(f, self.model), [b.mono(i) for i in b.basis[k]], k + 1)

    def check_d_squared(self) -> bool:
        for ch, b in self.blocks.items():
            for k in range(self.model.dim - 1):
                for idx in b.basis[k]:
                    if not ext.d(ext.d(b.mono(idx), self.model), self.model).is_zero():
                        return False
        return True

    def block_betti(self, ch: Character) -> Tuple[Tuple[int, ...], Dict[int, List[WeightedForm]]]:
        b = self.blocks[ch]
        dim = self.model.dim
        ranks = [rank(self.d_matrix(ch, k)) if k < dim else 0 for k in range(dim + 1)]
        betti, reps = [], {}
        for k in range(dim + 1):
            n = len(b.basis[k])
            betti.append(n - ranks[k] - (ranks[k - 1] if k else 0))
        for k in range(dim + 1):
            if not betti[k]:
                continue
            src = [[ZERO] * i + [b.vector(k, b.mono(idx))[i]] + [ZERO] * (len(b.basis[k]) - i - 1)
                   for i, idx in enumerate(b.basis[k])]
            Z = _kernel(src, self.d_matrix(ch, k)) if k < dim else row_basis(src)
            B = row_basis(self.d_matrix(ch, k - 1)) if k else []
            B = [v for v in B if any(not x.is_zero() for x in v)]
            reps[k] = [b.form(k, v) for v in _quotient(Z, B)]
        return tuple(betti), reps


def de_rham(m: ModelManifold, characters: Optional[Sequence[Character]] = None) -> CohomologyTable:
    cx = WeightedComplex(m, characters)
    results = _map(cx.block_betti, cx.characters)
    dims = {k: 0 for k in range(m.dim + 1)}
    reps: Dict[int, List[WeightedForm]] = {k: [] for k in range(m.dim + 1)}
    for betti, r in results:
        for k, bk in enumerate(betti):
            dims[k] += bk
        for k, fs in r.items():
            reps[k].extend(fs)
    return CohomologyTable("de Rham", m.name, dims, {k: tuple(v) for k, v in reps.items()},
                           cx.characters)


# ---------------------------------------------------------------------------
# Dolbeault h^{1,0}


def _dolbeault_J(m: ModelManifold):
    J = m.dolbeault_J if m.dolbeault_J is not None else m.J
    if m.kind != "complex" and m.dolbeault_J is None:
        raise CohomologyError(f"{m.name} has no complex structure for Dolbeault cohomology")
    return J


def _type_basis(m: ModelManifold, J, p: int, q: int) -> List[WeightedForm]:
    """Invariant (p,q)-forms phi^I ^ conj(phi)^K written in the theta coframe."""
    n = m.n
    out = []
    for I_ in combinations(range(1, n + 1), p):
        for K in combinations(range(n + 1, 2 * n + 1), q):
            out.append(ext.from_complex_basis(WeightedForm.mono(*(I_ + K)), m, J))
    return out


def dolbeault_h10(m: ModelManifold, characters: Optional[Sequence[Character]] = None,
                  with_representatives: bool = False):
    """dim ker(dbar) on weighted (1,0)-forms, summed over admissible characters."""
    J = _dolbeault_J(m)
    cx = WeightedComplex(m, characters)
    base = _type_basis(m, J, 1, 0)
    total, reps = 0, []
    for ch, b in cx.blocks.items():
        src = [f.times_character(ch) for f in base]
        vecs = [b.vector(1, f) for f in src]
        imgs = b.images(lambda f: ext.delbar(f, m, J), src, 2)
        K = _kernel(vecs, imgs)
        total += len(K)
        reps.extend(b.form(1, v) for v in K)
    return (total, reps) if with_representatives else total


# ---------------------------------------------------------------------------
# refined Bott-Chern and Tseng-Yau


def polarized_characters(m: ModelManifold, pol: Polarization,
                         characters: Optional[Sequence[Character]] = None) -> List[Character]:
    """Characters depending only on base directions."""
    chars = characters if characters is not None else admissible_characters(m)
    base = set(pol.base)
    return [c for c in chars if all(m.weight_directions[w] in base for w in c.directions())]


def _resolve_polarization(m: ModelManifold, polarization) -> Polarization:
    if isinstance(polarization, Polarization):
        return polarization
    if polarization is None:
        try:
            return Polarization.of(m)
        except ModelError as exc:
            raise CohomologyError(str(exc)) from None
    fiber, base = polarization
    return Polarization(tuple(fiber), tuple(base))


def _grades(n: int):
    return [(p, q) for p in range(n + 1) for q in range(n + 1)]


def refined_bott_chern(m: ModelManifold, polarization=None,
                       characters: Optional[Sequence[Character]] = None) -> CohomologyTable:
    """ker d / im(del delbar) on B-polarized (p,q)-forms (complex type, base coefficients)."""
    pol = _resolve_polarization(m, polarization)
    J = _dolbeault_J(m)
    chars = polarized_characters(m, pol, characters)
    cx = WeightedComplex(m, chars)
    n = m.n
    types = {pq: _type_basis(m, J, *pq) for pq in _grades(n)}

    def block(ch):
        b = cx.blocks[ch]
        dims, reps = {}, {}
        for (p, q), base in types.items():
            k = p + q
            src = [f.times_character(ch) for f in base]
            vecs = [b.vector(k, f) for f in src]
            K = _kernel(vecs, b.images(lambda f: ext.d(f, m), src, k + 1)) if k < m.dim else row_basis(vecs)
            Bimg: List[Vector] = []
            if p and q:
                lower = [f.times_character(ch) for f in types[(p - 1, q - 1)]]
                Bimg = b.images(lambda f: ext.del_(ext.delbar(f, m, J), m, J), lower, k)
                Bimg = [v for v in Bimg if any(not x.is_zero() for x in v)]
            R = _quotient(K, Bimg)
            dims[(p, q)] = len(R)
            reps[(p, q)] = [b.form(k, v) for v in R]
        return dims, reps

    return _collect("refined Bott-Chern", m, chars, _map(block, chars), n)


def refined_tseng_yau(m: ModelManifold, polarization=None,
                      characters: Optional[Sequence[Character]] = None) -> CohomologyTable:
    """ker(d + d^Lambda) / im(d d^Lambda) on polarized forms graded (base legs, fiber legs)."""
    pol = _resolve_polarization(m, polarization)
    try:
        ext.poisson_bivector(m.omega, m.dim)
    except ext.ExteriorError as exc:
        raise CohomologyError(str(exc)) from None
    chars = polarized_characters(m, pol, characters)
    cx = WeightedComplex(m, chars)
    n = m.n

    def dL(f):
        return ext.lefschetz_dual(f, m)

    def block(ch):
        b = cx.blocks[ch]
        dims, reps = {}, {}
        for k in range(m.dim + 1):
            monos = b.basis[k]
            full = [b.mono(idx) for idx in monos]
            ddl = [v for v in b.images(lambda f: ext.d(dL(f), m), full, k)
                   if any(not x.is_zero() for x in v)]
            for p in range(n + 1):
                q = k - p
                if not 0 <= q <= n:
                    continue
                cols = {i for i, idx in enumerate(monos) if pol.grading(idx) == (p, q)}
                src = [full[i] for i in sorted(cols)]
                vecs = [b.vector(k, f) for f in src]
                if not vecs:
                    dims[(p, q)], reps[(p, q)] = 0, []
                    continue
                imgs = []
                dv = b.images(lambda f: ext.d(f, m), src, k + 1) if k < m.dim else None
                lv = b.images(dL, src, k - 1) if k > 0 else None
                for i in range(len(src)):
                    row = (dv[i] if dv else []) + (lv[i] if lv else [])
                    imgs.append(row)
                K = _kernel(vecs, imgs) if imgs and imgs[0] else row_basis(vecs)
                R = _quotient(K, _restrict_support(ddl, cols))
                dims[(p, q)] = len(R)
                reps[(p, q)] = [b.form(k, v) for v in R]
        return dims, reps

    return _collect("refined Tseng-Yau", m, chars, _map(block, chars), n)


def _collect(kind, m, chars, results, n) -> CohomologyTable:
    dims = {g: 0 for g in _grades(n)}
    reps: Dict[Tuple[int, int], List[WeightedForm]] = {g: [] for g in _grades(n)}
    for bd, br in results:
        for g, v in bd.items():
            dims[g] += v
            reps[g].extend(br[g])
    return CohomologyTable(kind, m.name, dims, {g: tuple(v) for g, v in reps.items()}, tuple(chars))


# ---------------------------------------------------------------------------
# mirror diamonds


@dataclass(frozen=True)
class DiamondCheck:
    symplectic: str
    complex: str
    mismatches: Tuple[Tuple[Tuple[int, int], int, int], ...]
    tseng_yau: CohomologyTable
    bott_chern: CohomologyTable

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def __str__(self):
        head = f"h_TY^(p,q)({self.symplectic}) = h_BC^(n-p,q)({self.complex}): "
        if self.ok:
            return head + "pass"
        bad = ", ".join(f"({p},{q}): {a} != {b}" for (p, q), a, b in self.mismatches)
        return head + "FAIL " + bad


def mirror_diamond_check(x: ModelManifold, x_check: ModelManifold) -> DiamondCheck:
    ty = refined_tseng_yau(x)
    bc = refined_bott_chern(x_check)
    n = x.n
    bad = tuple(((p, q), ty[(p, q)], bc[(n - p, q)]) for p, q in _grades(n)
                if ty[(p, q)] != bc[(n - p, q)])
    return DiamondCheck(x.name, x_check.name, bad, ty, bc)
