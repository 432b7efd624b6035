"""Invariant data of compact quotients of Lie groups.

A :class:`ModelManifold` bundles structure equations, an (almost) complex
structure, the Hermitian/symplectic form ``omega``, the volume form
``Omega``, weight directions for twisted forms, and lattice metadata.
Builtins live in ``models/*.toml``; the same format is accepted from disk.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from . import exterior as ext
from .exterior import TRIVIAL, Character, WeightedForm
from .parse import ParseError, parse_character, parse_form, parse_quad, parse_rational
from .scalars import I, ZERO, QuadInt, Scalar

BUILTINS = ("iwasawa", "nakamura_cs", "nakamura_cp", "nakamura_cs_mirror", "nakamura_cp_mirror")
_MODEL_DIR = Path(__file__).with_name("models")


class ModelError(ValueError):
    """Malformed or unknown model."""


# ---------------------------------------------------------------------------
# lattice metadata

# unit name -> (rational factor, power of 2*pi, power of lam)
UNITS: Dict[str, Tuple[Fraction, int, int]] = {
    "1": (Fraction(1), 0, 0),
    "lam": (Fraction(1), 0, 1),
    "2pi": (Fraction(1), 1, 0),
    "pi": (Fraction(1, 2), 1, 0),
    "1/pi": (Fraction(2), -1, 0),
    "2pi/lam": (Fraction(1), 1, -1),
    "lam/2pi": (Fraction(1), -1, 1),
}


@dataclass(frozen=True)
class Period:
    """Translation length ``q * unit`` of a weight direction under the lattice.

    The value is ``coefficient * (2 pi)^two_pi_power * lam^lam_power``; lam and
    pi are treated as independent transcendentals.
    """

    q: Fraction
    unit: str = "1"

    def __post_init__(self):
        if self.unit not in UNITS:
            raise ModelError(f"unknown period unit {self.unit!r}; expected one of {sorted(UNITS)}")
        if self.q == 0:
            raise ModelError("period must be nonzero")

    @property
    def coefficient(self) -> Fraction:
        return self.q * UNITS[self.unit][0]

    @property
    def two_pi_power(self) -> int:
        return UNITS[self.unit][1]

    @property
    def lam_power(self) -> int:
        return UNITS[self.unit][2]

    def inverse(self) -> "Period":
        inv_unit = {"1": "1", "lam": None, "2pi": None, "pi": "1/pi", "1/pi": "pi",
                    "2pi/lam": "lam/2pi", "lam/2pi": "2pi/lam"}[self.unit]
        if inv_unit is None:
            raise ModelError(f"cannot invert a period in unit {self.unit!r}")
        return Period(1 / self.q, inv_unit)

    def __str__(self):
        q = "" if self.q == 1 else f"{self.q}*"
        return f"{q}{self.unit}" if self.unit != "1" else str(self.q)


@dataclass(frozen=True)
class CoordAction:
    """Action of a lattice element on one coordinate.

    The multiplier is ``e^{mult * lam * a}``; the offset is a single lattice
    variable or a row of a 2x2 lattice matrix applied to two variables.
    """

    mult: int = 0
    variable: Optional[str] = None
    matrix: Optional[str] = None
    row: int = 0
    variables: Tuple[str, ...] = ()

    def offset_variables(self) -> Tuple[str, ...]:
        return (self.variable,) if self.variable else self.variables


@dataclass(frozen=True)
class LatticeSpec:
    M: Tuple[Tuple[int, int], Tuple[int, int]]
    matrices: Mapping[str, Tuple[Tuple[QuadInt, QuadInt], Tuple[QuadInt, QuadInt]]]
    periods: Mapping[str, Period]
    tau_direction: Optional[str]
    coordinates: Tuple[str, ...] = ()
    action: Mapping[str, CoordAction] = field(default_factory=dict)

    @property
    def P(self):
        return self.matrices["P"]

    @property
    def q(self) -> Optional[Fraction]:
        if self.tau_direction is None:
            return None
        return self.periods[self.tau_direction].q

    def variables(self) -> List[str]:
        seen: List[str] = []
        for c in self.coordinates:
            a = self.action.get(c)
            for v in a.offset_variables() if a else ():
                if v not in seen:
                    seen.append(v)
        return seen


def _mat_q(rows) -> Tuple[Tuple[QuadInt, QuadInt], Tuple[QuadInt, QuadInt]]:
    return tuple(tuple(x if isinstance(x, QuadInt) else QuadInt(x) for x in r) for r in rows)


def qmat_mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(2)), QuadInt(0)) for j in range(2))
                 for i in range(2))


def qmat_det(a) -> QuadInt:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def qmat_inv(a):
    det = qmat_det(a)
    if det.is_zero():
        raise ZeroDivisionError("singular matrix")
    inv = det.inverse()
    return ((a[1][1] * inv, -a[0][1] * inv), (-a[1][0] * inv, a[0][0] * inv))


def qmat_transpose(a):
    return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))


SWAP = _mat_q(((0, 1), (1, 0)))


# ---------------------------------------------------------------------------
# foliations


@dataclass(frozen=True)
class Foliation:
    name: str
    triple: Tuple[int, int, int]
    fixed: Tuple[str, ...] = ()

    @property
    def parameters(self) -> Dict[str, str]:
        """Fixed coordinate -> leaf parameter name (A, B, C in coordinate order)."""
        return {c: "ABC"[k] for k, c in enumerate(self.fixed)}


# ---------------------------------------------------------------------------
# the model


@dataclass(frozen=True)
class Polarization:
    """Fiber/base split of the coframe indices of a Lagrangian torus fibration."""

    fiber: Tuple[int, ...]
    base: Tuple[int, ...]

    def __post_init__(self):
        f, b = set(self.fiber), set(self.base)
        if f & b or len(f) != len(self.fiber) or len(b) != len(self.base):
            raise ModelError("polarization fiber and base must be disjoint index sets")
        if len(f) != len(b) or f | b != set(range(1, len(f) + len(b) + 1)):
            raise ModelError("polarization must split 1..2n into two halves")

    @property
    def dim(self) -> int:
        return 2 * len(self.fiber)

    def grading(self, idx: Sequence[int]) -> Tuple[int, int]:
        """(base legs, fiber legs) of a coframe monomial."""
        nb = sum(1 for a in idx if a in self.base)
        return nb, len(idx) - nb

    @staticmethod
    def of(m: "ModelManifold") -> "Polarization":
        raw = m.fibration.get("polarization") if m.fibration else None
        if not raw:
            raise ModelError(f"{m.name} declares no polarization")
        return Polarization(tuple(int(a) for a in raw["fiber"]), tuple(int(a) for a in raw["base"]))


def _signed_involution(raw: Sequence[int], dim: int) -> Tuple[Tuple[int, int], ...]:
    if len(raw) != dim:
        raise ModelError(f"J needs {dim} entries, got {len(raw)}")
    out = []
    for v in raw:
        v = int(v)
        if v == 0 or abs(v) > dim:
            raise ModelError(f"bad J entry {v}")
        out.append((1 if v > 0 else -1, abs(v)))
    return tuple(out)


def j_squared_is_minus_one(J: Sequence[Tuple[int, int]]) -> bool:
    for h, (s, t) in enumerate(J, start=1):
        s2, t2 = J[t - 1]
        if t2 != h or s * s2 != -1:
            return False
    return True


@dataclass(frozen=True, eq=False)
class ModelManifold:
    name: str
    dim: int
    structure: Mapping[int, Mapping[Tuple[int, int], Scalar]]
    J: Tuple[Tuple[int, int], ...]
    omega: WeightedForm
    Omega: WeightedForm
    kind: str = "complex"
    description: str = ""
    dolbeault_J: Optional[Tuple[Tuple[int, int], ...]] = None
    weight_directions: Mapping[str, int] = field(default_factory=dict)
    weight_generators: Tuple[Character, ...] = ()
    weight_multipliers: Tuple[int, ...] = (0,)
    lattice: Optional[LatticeSpec] = None
    foliations: Mapping[str, Foliation] = field(default_factory=dict)
    fibration: Mapping[str, object] = field(default_factory=dict)
    source: Mapping[str, object] = field(default_factory=dict, repr=False)
    _cache: Dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.dim // 2

    @property
    def complex_structure(self):
        return self.J

    @property
    def hermitian_form(self) -> WeightedForm:
        return self.omega

    @property
    def volume_form(self) -> WeightedForm:
        return self.Omega

    @property
    def structure_constants(self) -> Dict[Tuple[int, int, int], Scalar]:
        """f^i_{jk} keyed by (i, j, k), j < k."""
        return {(i, j, k): c for i, row in self.structure.items() for (j, k), c in row.items()}

    def structure_form(self, i: int) -> WeightedForm:
        return ext.d(WeightedForm.mono(i), self)

    def weight_candidates(self) -> List[Character]:
        gens = self.weight_generators
        if not gens:
            return [TRIVIAL]
        out: List[Character] = []
        for ks in product(self.weight_multipliers, repeat=len(gens)):
            ch = TRIVIAL
            for g, k in zip(gens, ks):
                ch = ch * (g ** k)
            if ch not in out:
                out.append(ch)
        return out

    def with_period(self, direction: str, q, unit: Optional[str] = None) -> "ModelManifold":
        if self.lattice is None or direction not in self.lattice.periods:
            raise ModelError(f"{self.name} has no period for direction {direction!r}")
        old = self.lattice.periods[direction]
        periods = dict(self.lattice.periods)
        periods[direction] = Period(Fraction(q), unit or old.unit)
        return replace(self, lattice=replace(self.lattice, periods=periods))

    def with_tau(self, q, unit: Optional[str] = None) -> "ModelManifold":
        """Same model with the tau-direction period set to ``q`` (in its unit)."""
        if self.lattice is None or self.lattice.tau_direction is None:
            raise ModelError(f"{self.name} has no tau parameter")
        return self.with_period(self.lattice.tau_direction, q, unit)

    def with_lattice_matrix(self, name: str, value) -> "ModelManifold":
        mats = dict(self.lattice.matrices)
        mats[name] = _mat_q(value)
        return replace(self, lattice=replace(self.lattice, matrices=mats))

    def __repr__(self):
        return f"ModelManifold({self.name!r})"


# ---------------------------------------------------------------------------
# checks


def brackets(m: ModelManifold) -> Dict[Tuple[int, int], List[Scalar]]:
    """[E_j, E_k] = -sum_i f^i_{jk} E_i for j < k, as frame-coefficient rows."""
    out: Dict[Tuple[int, int], List[Scalar]] = {}
    for j in range(1, m.dim + 1):
        for k in range(j + 1, m.dim + 1):
            vec = [ZERO] * m.dim
            for i, row in m.structure.items():
                c = row.get((j, k))
                if c is not None and not c.is_zero():
                    vec[i - 1] = -c
            out[(j, k)] = vec
    return out


def bracket(m: ModelManifold, j: int, k: int) -> List[Scalar]:
    if j == k:
        return [ZERO] * m.dim
    if j < k:
        return brackets(m)[(j, k)]
    return [-x for x in brackets(m)[(k, j)]]


def format_vector(vec: Sequence[Scalar], symbol: str = "E") -> str:
    f = WeightedForm({(TRIVIAL, (a,)): c for a, c in enumerate(vec, start=1)})
    if f.is_zero():
        return "0"
    return re.sub(r"θ\^\{?(\d+)\}?", symbol + r"_\1", f.pretty())


def _omega_j_invariant(m: ModelManifold) -> bool:
    """omega(J E_a, J E_b) == omega(E_a, E_b) on all frame pairs."""
    for a in range(1, m.dim + 1):
        for b in range(a + 1, m.dim + 1):
            (sa, ta), (sb, tb) = m.J[a - 1], m.J[b - 1]
            sign, idx = ext.sort_sign((ta, tb))
            if m.omega.coefficient(idx) * (sign * sa * sb) != m.omega.coefficient((a, b)):
                return False
    return True


def norm_omega_squared(m: ModelManifold) -> Scalar:
    """|Omega|^2 from |Omega|^2 omega^n/n! = (i^{n^2}/2^n) Omega ^ conj(Omega)."""
    n = m.n
    top = tuple(range(1, m.dim + 1))
    vol = m.omega.power(n).coefficient(top)
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    oo = m.Omega.wedge(m.Omega.conjugate()).coefficient(top)
    if vol.is_zero():
        raise ModelError("omega is degenerate")
    return (I ** (n * n)) * oo * fact / (vol * (2 ** n))


@dataclass
class ConsistencyReport:
    model: str
    checks: Dict[str, Tuple[bool, str]]

    @property
    def ok(self) -> bool:
        return all(v for v, _ in self.checks.values())

    def failures(self) -> List[str]:
        return [k for k, (v, _) in self.checks.items() if not v]

    def __str__(self):
        w = max(len(k) for k in self.checks)
        lines = [f"consistency of {self.model}"]
        for k, (v, detail) in self.checks.items():
            lines.append(f"  {k:<{w}}  {'pass' if v else 'FAIL'}  {detail}".rstrip())
        return "\n".join(lines)


def consistency_report(m: ModelManifold) -> ConsistencyReport:
    chk: Dict[str, Tuple[bool, str]] = {}
    bad = [i for i in range(1, m.dim + 1) if not ext.d(m.structure_form(i), m).is_zero()]
    chk["d^2 = 0"] = (not bad, f"fails on theta^{bad}" if bad else "")
    chk["J^2 = -1"] = (j_squared_is_minus_one(m.J), "")
    chk["omega J-invariant"] = (_omega_j_invariant(m), "")
    split = ext.bidegree_split(m.Omega, m)
    chk[f"Omega of type ({m.n},0)"] = (set(split) <= {(m.n, 0)} and bool(split), str(sorted(split)))
    open_dirs = [w for w, i in m.weight_directions.items() if not m.structure_form(i).is_zero()]
    chk["weight directions closed"] = (not open_dirs, ", ".join(open_dirs))
    dO = ext.d(m.Omega, m)
    if m.kind == "symplectic":
        dw1 = ext.d(m.omega, m)
        chk["d omega = 0"] = (dw1.is_zero(), "" if dw1.is_zero() else dw1.pretty())
        dre = dO.real_part()
        chk["d Re Omega = 0"] = (dre.is_zero(), "" if dre.is_zero() else dre.pretty())
    else:
        chk["d Omega = 0"] = (dO.is_zero(), "" if dO.is_zero() else dO.pretty())
    dw = ext.d(m.omega.power(m.n - 1), m)
    chk["balanced: d omega^{n-1} = 0"] = (dw.is_zero(), "" if dw.is_zero() else dw.pretty())
    # an invariant |Omega|^2 is constant on the quotient
    try:
        nrm = norm_omega_squared(m)
        chk["conformally balanced: d(|Omega| omega^{n-1}) = 0"] = (
            not nrm.is_zero() and dw.is_zero(), f"|Omega|^2 = {nrm}")
    except ModelError as exc:
        chk["conformally balanced: d(|Omega| omega^{n-1}) = 0"] = (False, str(exc))
    if m.lattice is not None:
        chk["lattice"] = lattice_check(m.lattice)
    return ConsistencyReport(m.name, chk)


def lattice_check(lat: LatticeSpec) -> Tuple[bool, str]:
    M = lat.M
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if det != 1:
        return False, f"det M = {det}"
    if M in (((1, 0), (0, 1)), ((-1, 0), (0, -1))):
        return True, "M = +-I"
    P = lat.matrices.get("P")
    if P is None:
        return False, "no P"
    try:
        D = qmat_mul(qmat_mul(P, _mat_q(M)), qmat_inv(P))
    except ZeroDivisionError:
        return False, "P singular"
    if not (D[0][1].is_zero() and D[1][0].is_zero()):
        return False, "P M P^-1 is not diagonal"
    return True, f"P M P^-1 = diag({D[0][0]}, {D[1][1]})"


# ---------------------------------------------------------------------------
# loading


def _eigen_P(M) -> Tuple[Tuple[QuadInt, QuadInt], Tuple[QuadInt, QuadInt]]:
    from .lattice import eigen_data

    return eigen_data(M).P


def _parse_matrix(spec, M, mats):
    if isinstance(spec, str):
        if spec == "eigen":
            return _eigen_P(M)
        if spec == "inverse_transpose":
            return qmat_transpose(qmat_inv(mats["P"]))
        if spec == "dual":
            return qmat_mul(SWAP, qmat_transpose(qmat_inv(mats["P"])))
        raise ModelError(f"unknown matrix keyword {spec!r}")
    try:
        return _mat_q([[parse_quad(str(x)) for x in row] for row in spec])
    except (ParseError, ValueError, TypeError) as exc:
        raise ModelError(f"bad lattice matrix: {exc}") from None


def _parse_lattice(raw: Mapping) -> LatticeSpec:
    try:
        M = tuple(tuple(int(x) for x in row) for row in raw["M"])
    except (KeyError, TypeError, ValueError):
        raise ModelError("lattice needs an integer 2x2 matrix M") from None
    if len(M) != 2 or any(len(r) != 2 for r in M):
        raise ModelError("M must be 2x2")
    mats: Dict[str, object] = {}
    spec = dict(raw.get("matrices", {"P": "eigen"}))
    for name in ["P"] + [k for k in spec if k != "P"]:
        if name in spec:
            mats[name] = _parse_matrix(spec[name], M, mats)
    periods = {}
    for w, p in raw.get("periods", {}).items():
        try:
            periods[w] = Period(parse_rational(p.get("q", "1")), p.get("unit", "1"))
        except (ParseError, AttributeError) as exc:
            raise ModelError(f"bad period for {w}: {exc}") from None
    action = {}
    for c, a in raw.get("action", {}).items():
        off = a.get("offset")
        mult = int(a.get("mult", 0))
        if isinstance(off, str):
            action[c] = CoordAction(mult=mult, variable=off)
        elif isinstance(off, list) and len(off) == 4:
            if off[0] not in mats:
                raise ModelError(f"action of {c} uses unknown matrix {off[0]!r}")
            action[c] = CoordAction(mult=mult, matrix=off[0], row=int(off[1]), variables=(off[2], off[3]))
        else:
            raise ModelError(f"bad action for coordinate {c}")
    tau_dir = raw.get("tau_direction")
    if tau_dir is not None and tau_dir not in periods:
        raise ModelError(f"tau direction {tau_dir!r} has no period")
    return LatticeSpec(M=M, matrices=mats, periods=periods, tau_direction=tau_dir,
                       coordinates=tuple(raw.get("coordinates", ())), action=action)


def _structure_from_forms(raw: Mapping, dim: int, directions) -> Dict[int, Dict[Tuple[int, int], Scalar]]:
    out: Dict[int, Dict[Tuple[int, int], Scalar]] = {}
    for key, text in raw.items():
        try:
            i = int(key)
        except ValueError:
            raise ModelError(f"structure key {key!r} is not a coframe index") from None
        if not 1 <= i <= dim:
            raise ModelError(f"structure index {i} out of range")
        f = _form(text, (), f"d theta^{i}")
        if f.is_zero():
            continue
        if f.degrees() != [2] or any(not ch.is_trivial() for ch in f.characters()):
            raise ModelError(f"d theta^{i} must be an invariant 2-form")
        for (_, jk), c in f.terms.items():
            if max(jk) > dim:
                raise ModelError(f"index out of range in d theta^{i}")
        out[i] = {jk: c for (_, jk), c in f.terms.items()}
    return out


def _form(text, directions, what) -> WeightedForm:
    try:
        return parse_form(str(text), directions)
    except (ParseError, ValueError) as exc:
        raise ModelError(f"cannot parse {what}: {exc}") from None


def model_from_dict(raw: Mapping) -> ModelManifold:
    try:
        name = str(raw["name"])
        dim = int(raw["dim"])
    except (KeyError, ValueError, TypeError):
        raise ModelError("model needs 'name' and integer 'dim'") from None
    if dim <= 0 or dim % 2:
        raise ModelError("dim must be a positive even integer")
    w = raw.get("weights", {})
    directions = {k: int(v) for k, v in w.get("directions", {}).items()}
    structure = _structure_from_forms(raw.get("structure", {}), dim, directions)
    J = _signed_involution(raw.get("J", [k + dim // 2 if k <= dim // 2 else -(k - dim // 2)
                                         for k in range(1, dim + 1)]), dim)
    if not j_squared_is_minus_one(J):
        raise ModelError("J is not a signed involution with J^2 = -1")
    dJ = raw.get("dolbeault_J")
    dolbeault_J = _signed_involution(dJ, dim) if dJ is not None else None
    omega = _form(raw.get("omega", "0"), (), "omega")
    Omega = _form(raw.get("Omega", "0"), (), "Omega")
    for idx in directions.values():
        if structure.get(idx):
            raise ModelError(f"weight direction on non-closed coframe element theta^{idx}")
    try:
        gens = tuple(parse_character(g, directions) for g in w.get("generators", []))
    except ParseError as exc:
        raise ModelError(f"bad weight generator: {exc}") from None
    mults = tuple(int(k) for k in w.get("multipliers", [0]))
    lattice = _parse_lattice(raw["lattice"]) if "lattice" in raw else None
    fols = {}
    for fname, fd in raw.get("foliations", {}).items():
        triple = tuple(int(x) for x in fd["triple"])
        if len(set(triple)) != 3 or any(not 1 <= a <= dim for a in triple):
            raise ModelError(f"foliation {fname} needs three distinct indices")
        fols[fname] = Foliation(fname, tuple(sorted(triple)), tuple(fd.get("fixed", ())))
    return ModelManifold(
        name=name, dim=dim, structure=structure, J=J, omega=omega, Omega=Omega,
        kind=str(raw.get("kind", "complex")), description=str(raw.get("description", "")),
        dolbeault_J=dolbeault_J, weight_directions=directions, weight_generators=gens,
        weight_multipliers=mults, lattice=lattice, foliations=fols,
        fibration=dict(raw.get("fibration", {})), source=dict(raw),
    )


def load_model_text(text: str) -> ModelManifold:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ModelError(f"invalid model file: {exc}") from None
    return model_from_dict(raw)


def load_model_file(path: Union[str, Path]) -> ModelManifold:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read model file: {exc}") from None
    return load_model_text(text)


@lru_cache(maxsize=None)
def _builtin_cached(name: str) -> ModelManifold:
    return load_model_file(_MODEL_DIR / f"{name}.toml")


def builtin(name: str) -> ModelManifold:
    if name not in BUILTINS:
        raise ModelError(f"unknown model {name!r}; builtins are {', '.join(BUILTINS)}")
    return _builtin_cached(name)


def abelian(dim: int = 6) -> ModelManifold:
    """Flat torus with the standard Hermitian structure."""
    n = dim // 2
    omega = sum((WeightedForm.mono(k, k + n) for k in range(1, n + 1)), WeightedForm.zero())
    Omega = WeightedForm.const(1)
    for k in range(1, n + 1):
        Omega = Omega.wedge(WeightedForm.mono(k) + WeightedForm.mono(k + n).scale(I))
    J = tuple((1, k + n) if k <= n else (-1, k - n) for k in range(1, dim + 1))
    lat = LatticeSpec(M=((1, 0), (0, 1)), matrices={"P": _mat_q(((1, 0), (0, 1)))},
                      periods={}, tau_direction=None)
    return ModelManifold(name="abelian", dim=dim, structure={}, J=J, omega=omega, Omega=Omega,
                         lattice=lat, description="flat torus")


def show(m: ModelManifold) -> str:
    lines = [f"{m.name} ({m.kind}, dim {m.dim})"]
    if m.description:
        lines.append(f"  {m.description}")
    lines.append("structure equations:")
    for i in range(1, m.dim + 1):
        lines.append(f"  dθ^{i} = {m.structure_form(i).pretty()}")
    lines.append("brackets:")
    nz = [(jk, v) for jk, v in brackets(m).items() if any(not x.is_zero() for x in v)]
    for (j, k), v in nz:
        lines.append(f"  [E_{j}, E_{k}] = {format_vector(v)}")
    if not nz:
        lines.append("  all zero")
    js = ", ".join(f"JE_{h} = {'' if s > 0 else '-'}E_{t}" for h, (s, t) in enumerate(m.J, start=1))
    lines.append(f"J: {js}")
    lines.append(f"omega = {m.omega.pretty()}")
    lines.append(f"Omega = {m.Omega.pretty()}")
    if m.lattice is not None:
        lat = m.lattice
        lines.append(f"lattice: M = {[list(r) for r in lat.M]}")
        for name, mat in lat.matrices.items():
            lines.append(f"  {name} = [[{mat[0][0]}, {mat[0][1]}], [{mat[1][0]}, {mat[1][1]}]]")
        for w, p in lat.periods.items():
            lines.append(f"  period of {w}: {p}")
    if m.foliations:
        lines.append("foliations: " + ", ".join(m.foliations))
    return "\n".join(lines)
