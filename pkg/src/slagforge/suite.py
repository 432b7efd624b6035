"""Reproduction battery: every reference computation, checked exactly.

Each criterion returns a list of :class:`Check`.  Checks flagged
``known_gap`` are reference values the engine does not reproduce; they are
reported as failures, never skipped.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import cohomology as coh
from . import deform, lattice, mirror, slag
from . import exterior as ext
from .exterior import Character, WeightedForm
from .model import BUILTINS, ModelManifold, bracket, builtin, norm_omega_squared
from .parse import parse_form
from .scalars import LAM, ONE, ZERO, QuadInt, Scalar, quad_sqrt_check


@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""
    known_gap: bool = False


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: List[Check]
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        bad = [c.label for c in self.checks if not c.ok]
        tail = f" (failing: {'; '.join(bad)})" if bad else ""
        return f"[{status}] {self.number:>2}. {self.title}{tail}"

    def to_json(self) -> dict:
        return {"number": self.number, "title": self.title, "ok": self.ok,
                "seconds": round(self.seconds, 3),
                "checks": [{"label": c.label, "ok": c.ok, "detail": c.detail,
                            "known_gap": c.known_gap} for c in self.checks]}


def _check(label: str, got, want, known_gap: bool = False) -> Check:
    ok = got == want
    return Check(label, ok, "" if ok else f"got {got!r}, expected {want!r}", known_gap)


# ---------------------------------------------------------------------------
# reference data

SCAN = {"0": {(1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5)},
        "-pi/2": {(4, 5, 6), (2, 3, 4), (1, 3, 5), (1, 2, 6)}}

SLAG_SYSTEM = (
    "x1*x10 - x4*x7 + x2*x11 - x5*x8 + x3*x12 - x6*x9",
    "x1*x16 - x4*x13 + x2*x17 - x5*x14 + x3*x18 - x6*x15",
    "x7*x16 - x10*x13 + x8*x17 - x11*x14 + x9*x18 - x12*x15",
    "x1*x8*x18 - x1*x12*x14 - x2*x7*x18 + x2*x12*x13 + x6*x7*x14 - x6*x8*x13"
    " - x1*x9*x17 + x1*x11*x15 + x3*x7*x17 - x3*x11*x13 - x5*x7*x15 + x5*x9*x13"
    " + x2*x9*x16 - x2*x10*x15 - x3*x8*x16 + x3*x10*x14 + x4*x8*x15 - x4*x9*x14"
    " - x4*x11*x18 + x4*x12*x17 + x5*x10*x18 - x5*x12*x16 - x6*x10*x17 + x6*x11*x16",
)

# nonzero brackets [E_j, E_k] as {target: coefficient}
BRACKETS = {
    "iwasawa": {(1, 2): {3: ONE}, (1, 5): {6: ONE}, (2, 4): {6: -ONE}, (4, 5): {3: -ONE}},
    "nakamura_cs": {(1, 2): {2: LAM}, (1, 3): {3: -LAM}, (1, 5): {5: LAM}, (1, 6): {6: -LAM}},
}

DERHAM_CS = {
    0: [()], 1: [(1,), (4,)], 2: [(1, 4), (3, 5), (2, 6), (2, 3), (5, 6)],
    3: [(1, 3, 5), (1, 2, 6), (1, 2, 3), (1, 5, 6), (3, 4, 5), (2, 4, 6), (2, 3, 4), (4, 5, 6)],
    4: [(2, 3, 5, 6), (1, 2, 4, 6), (1, 3, 4, 5), (1, 4, 5, 6), (1, 2, 3, 4)],
    5: [(2, 3, 4, 5, 6), (1, 2, 3, 5, 6)], 6: [(1, 2, 3, 4, 5, 6)],
}

TY_CS_MIRROR = [(1,), (1, 1), (1, 3, 1), (1, 3, 3, 1), (1, 3, 1), (1, 1), (1,)]
TY_CS_MIRROR_REPS = {
    (0, 0): ["1"], (1, 0): ["t[1]"], (0, 1): ["t[4]"],
    (2, 0): ["t[5,6]"], (1, 1): ["t[1,4]", "t[3,5]", "t[2,6]"], (0, 2): ["t[2,3]"],
    (3, 0): ["t[1,5,6]"], (2, 1): ["t[1,3,5]", "t[1,2,6]", "t[4,5,6]"],
    (1, 2): ["t[1,2,3]", "t[3,4,5]", "t[2,4,6]"], (0, 3): ["t[2,3,4]"],
    (3, 1): ["t[1,4,5,6]"], (2, 2): ["t[2,3,5,6]", "t[1,2,4,6]", "t[1,3,4,5]"],
    (1, 3): ["t[1,2,3,4]"], (3, 2): ["t[1,2,3,5,6]"], (2, 3): ["t[2,3,4,5,6]"],
    (3, 3): ["t[1,2,3,4,5,6]"],
}
TY_CP_MIRROR_INT = [(1,), (1, 1), (0, 3, 0), (0, 0, 0, 0), (0, 3, 0), (1, 1), (1,)]
TY_CP_MIRROR_GENERIC = [(1,), (1, 1), (0, 2, 0), (0, 0, 0, 0), (0, 2, 0), (1, 1), (1,)]
BETTI_CP_PAIR = {"nakamura_cp_mirror": (1, 2, 3, 4, 3, 2, 1), "nakamura_cp": (1, 2, 5, 8, 5, 2, 1)}

CLOSURE = {
    "L123": ("closed_iff", ("B", "C")), "L156": ("closed_iff", ("A", "B")),
    "L246": ("never_closed", ()), "L345": ("never_closed", ()),
    "L135": ("never_closed", ()), "L126": ("never_closed", ()),
    "L234": ("always_closed", ()), "L456": ("always_closed", ()),
}

FT_CS = "-v*(t[1] + i*t[4])*(e(lam*r0)*t[2] + i*e(-lam*r0)*t[5])*(e(-lam*r0)*t[3] + i*e(lam*r0)*t[6])"
MIRROR_OMEGA = "i*v*(t[1] + i*t[4])*(t[3] + i*t[5])*(t[2] + i*t[6])"
RHO_CS = "1/2*lam^2*t[1,2,4,5] - 1/2*lam^2*t[1,3,4,6]"
RHO_CP_COMPLEX = "-1/8*(t[1,4,2,5] + t[1,4,3,6])"  # phi^k at k, conj(phi^k) at 3+k


def _set(forms: Sequence[WeightedForm]) -> set:
    return {str(f) for f in forms}


def _mono_set(texts) -> set:
    return {str(parse_form(t)) for t in texts}


# ---------------------------------------------------------------------------
# criteria


def c1_scan() -> List[Check]:
    out = []
    for name in ("iwasawa", "nakamura_cs"):
        m = builtin(name)
        for phase, want in SCAN.items():
            got = {r.triple for r in slag.scan_axis(m, phase)}
            out.append(_check(f"{name} phase {phase}", got, want))
    return out


def c2_system() -> List[Check]:
    s = slag.build_system(builtin("iwasawa"), "0")
    return [_check(f"equation {k + 1}", s.equations[k], slag.Poly.parse(t))
            for k, t in enumerate(SLAG_SYSTEM)]


def c3_involutive() -> List[Check]:
    out = []
    for name, table in BRACKETS.items():
        m = builtin(name)
        inv = {r.label: bool(r.involutivity) for r in slag.scan_axis(m, "0")}
        out.append(_check(f"{name} phase-0 triples involutive", inv,
                          {"123": True, "156": True, "246": True, "345": True}))
        got = {}
        for j in range(1, 7):
            for k in range(j + 1, 7):
                v = bracket(m, j, k)
                nz = {t: c for t, c in enumerate(v, start=1) if not c.is_zero()}
                if nz:
                    got[(j, k)] = nz
        out.append(_check(f"{name} brackets", got, table))
    return out


def _zero_order(sysm: deform.DeformSystem) -> Dict[Tuple[int, int], Scalar]:
    return {(n, key[1]): c for n, eq in enumerate(sysm.equations) for key, c in eq.items() if key[0] == "a"}


def c4_deform() -> List[Check]:
    cases = [
        ("iwasawa", (1, 2, 3), "signed", {(3, 2): ONE, (4, 1): -ONE}),
        ("nakamura_cs", (1, 2, 3), "signed", {(2, 2): LAM, (3, 3): -LAM}),
        ("nakamura_cs", (1, 5, 6), "index", {(2, 5): -3 * LAM, (3, 6): 3 * LAM}),
    ]
    out = []
    for name, t, conv, want in cases:
        m = builtin(name)
        s = deform.generate(m, t, conv)
        zo = {(n + 1, r): c for (n, r), c in _zero_order(s).items()}
        lab = "".join(map(str, t))
        out.append(_check(f"{name} {lab} zero-order terms", zo, want))
        out.append(_check(f"{name} {lab} invariant solutions", deform.invariant_solution_dim(m, t, conv), 1))
    return out


def _component(f: WeightedForm, idx: Tuple[int, ...]) -> WeightedForm:
    return WeightedForm({(ch, ()): c for (ch, i), c in f.terms.items() if i == idx})


def deform_oracle_agrees(m: ModelManifold, triple: Tuple[int, int, int], convention: str,
                         rng: random.Random) -> bool:
    """Evaluate the generated system on alpha_r = a_r e^{chi_r} and compare with
    the exterior engine applied to alpha = sum alpha_r theta^r."""
    L = tuple(sorted(triple))
    chars = m.weight_candidates()
    data = {r: (random_scalar(rng), rng.choice(chars)) for r in L}
    alpha = WeightedForm.zero()
    for r, (a, ch) in data.items():
        alpha = alpha + WeightedForm.mono(r, coeff=a, char=ch)
    top = ext.restrict(ext.d(ext.hodge_star(alpha, L), m), L)
    two = ext.restrict(ext.d(alpha, m), L)
    domega = ext.d(m.omega, m)
    for r, (a, ch) in data.items():
        sgn, t = m.J[r - 1]
        vec = [ZERO] * m.dim
        vec[t - 1] = Scalar(sgn if convention == "signed" else 1)
        two = two - ext.restrict(ext.interior(vec, domega), L).times_character(ch).scale(a)
    values: Dict[tuple, WeightedForm] = {}
    for r, (a, ch) in data.items():
        values[("a", r)] = WeightedForm.const(a, ch)
        for e in L:
            rate = sum((c for w, c in ch.exponent if m.weight_directions.get(w) == e), ZERO)
            values[("E", e, r)] = WeightedForm.const(a * rate, ch)
    sysm = deform.generate(m, L, convention)
    i, j, k = L
    targets = [_component(top, L)] + [_component(two, p) for p in ((i, j), (i, k), (j, k))]
    for eq, want in zip(sysm.equations, targets):
        got = WeightedForm.zero()
        for key, c in eq.items():
            got = got + values[key].scale(c)
        if got != want:
            return False
    return True


def c5_oracle() -> List[Check]:
    out = []
    rng = random.Random(5)
    for name in BUILTINS:
        m = builtin(name)
        for phase in slag.PHASES:
            for r in slag.scan_axis(m, phase):
                if not r.involutivity:
                    continue
                ok = all(deform_oracle_agrees(m, r.triple, conv, rng)
                         for conv in deform.J_CONVENTIONS for _ in range(3))
                out.append(Check(f"{name} {r.label} direct expansion", ok))
                cc = deform.cross_check(m, r.triple)
                if not cc.applicable:
                    continue
                out.append(Check(f"{name} {r.label} statement form", cc.agrees["statement"]))
                confined = all(n == 3 and key == ("a", r.triple[2]) for n, key, _, _ in cc.differences["proof"])
                out.append(Check(f"{name} {r.label} proof-form deviation confined", confined))
    return out


def c6_topology() -> List[Check]:
    cs, iw = builtin("nakamura_cs"), builtin("iwasawa")
    got = {t: deform.leaf_betti1(cs, t) for t in
           [(1, 2, 3), (1, 5, 6), (1, 3, 5), (1, 2, 6), (2, 4, 6), (3, 4, 5), (2, 3, 4), (4, 5, 6)]}
    want = {(1, 2, 3): 1, (1, 5, 6): 1, (1, 3, 5): 1, (1, 2, 6): 1,
            (2, 4, 6): 3, (3, 4, 5): 3, (2, 3, 4): 3, (4, 5, 6): 3}
    giw = {t: deform.leaf_betti1(iw, t) for t in [(1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5)]}
    return [_check("nakamura_cs b1", got, want), _check("iwasawa b1", giw, {t: 2 for t in giw})]


def c7_closure() -> List[Check]:
    m = builtin("nakamura_cs")
    out = []
    for fid, (kind, cond) in CLOSURE.items():
        v = lattice.classify_leaf_closure(m, fid)
        out.append(_check(fid, (v.kind, tuple(sorted(v.condition))), (kind, cond)))
    return out


def c8_numbers() -> List[Check]:
    M = [[2, 3], [1, 2]]
    ed = lattice.eigen_data(M)
    sq = quad_sqrt_check(12)
    return [
        _check("Tr^2 - 4", ed.discriminant, 12),
        _check("12 is not a square", sq.is_square, False),
        _check("eigenvalues", ed.eigenvalues, (QuadInt(2, 1, 3), QuadInt(2, -1, 3))),
        _check("no M' up to 50", lattice.diag_integer_matrix_search(M, 50), None),
        _check("torus conjugation a=0..3", [lattice.verify_torus_conjugation(M, a) for a in range(4)], [True] * 4),
    ]


def c9_derham() -> List[Check]:
    cs = builtin("nakamura_cs")
    t = coh.de_rham(cs)
    out = [_check("nakamura_cs Betti numbers", t.betti(), (1, 2, 5, 8, 5, 2, 1))]
    want = {k: {str(WeightedForm.mono(*idx)) for idx in v} for k, v in DERHAM_CS.items()}
    got = {k: _set(t.representatives.get(k, ())) for k in want}
    out.append(_check("nakamura_cs representatives", got, want))
    closed = all(ext.d(WeightedForm.mono(*idx), cs).is_zero() for v in DERHAM_CS.values() for idx in v)
    out.append(Check("representatives are closed", closed))
    for name, b in BETTI_CP_PAIR.items():
        out.append(_check(f"Betti numbers of {name}", coh.de_rham(builtin(name)).betti(), b))
    b2 = (coh.de_rham(builtin("nakamura_cp_mirror")).betti()[2], coh.de_rham(builtin("nakamura_cp")).betti()[2])
    out.append(_check("b2 certifies non-diffeomorphic", b2, (3, 5)))
    out.append(_check("h10 nakamura_cs, q in Z", coh.dolbeault_h10(cs), 3))
    out.append(_check("h10 nakamura_cs, q not in Z", coh.dolbeault_h10(cs.with_tau(Fraction(1, 2))), 1))
    pair = (coh.dolbeault_h10(cs), coh.dolbeault_h10(builtin("nakamura_cs_mirror")))
    out.append(_check("h10 of the mirror pair", pair, (3, 1)))
    return out


def c10_refined() -> List[Check]:
    ty = coh.refined_tseng_yau(builtin("nakamura_cs_mirror"))
    out = [_check("TY diamond of nakamura_cs_mirror", ty.diamond(), TY_CS_MIRROR)]
    reps = {g: _set(fs) for g, fs in ty.representatives.items() if fs}
    out.append(_check("TY representatives of nakamura_cs_mirror", reps, {g: _mono_set(v) for g, v in TY_CS_MIRROR_REPS.items()}))
    cpm = builtin("nakamura_cp_mirror")
    out.append(_check("TY diamond of nakamura_cp_mirror, integral tau", coh.refined_tseng_yau(cpm).diamond(), TY_CP_MIRROR_INT, known_gap=True))
    out.append(_check("TY diamond of nakamura_cp_mirror, generic tau", coh.refined_tseng_yau(cpm.with_tau(2)).diamond(), TY_CP_MIRROR_GENERIC, known_gap=True))
    chk = coh.mirror_diamond_check(builtin("nakamura_cs_mirror"), builtin("nakamura_cs"))
    out.append(Check("mirror diamond on the CS pair", chk.ok, str(chk)))
    return out


def c11_mirror() -> List[Check]:
    cs, mir, cp = builtin("nakamura_cs"), builtin("nakamura_cs_mirror"), builtin("nakamura_cp")
    ft = mirror.fourier_mukai(mirror.exp_form(mirror.to_chart(cs, cs.omega).scale(2)))
    out = [_check("FT(e^{2 omega-check})", ft, mirror.parse_chart_form(mir, FT_CS)),
           _check("FT output on the mirror coframe", mirror.from_chart(mir, ft), parse_form(MIRROR_OMEGA))]
    rcs, rcp = mirror.susy_check(cs, "IIB"), mirror.susy_check(cp, "IIB")
    out.append(_check("F on nakamura_cs", rcs.F, Scalar(8)))
    out.append(_check("F on nakamura_cp", rcp.F, Scalar(8)))
    out.append(_check("rho_B on nakamura_cs", rcs.rho, parse_form(RHO_CS), known_gap=True))
    out.append(_check("rho_B on nakamura_cp", rcp.rho_complex, parse_form(RHO_CP_COMPLEX)))
    ra = mirror.susy_check(mir, "IIA", Omega=mirror.from_chart(mir, ft))
    out.append(Check("IIA on the dual with the FT-produced Omega", ra.ok, str(ra)))
    Fc = mirror.susy_check(mir, "IIA").F
    out.append(_check("F-check * F at unit fiber volume", (Fc * rcs.F).subs({"v": 1}), Scalar(64)))
    for name in BUILTINS:
        m = builtin(name)
        om2 = m.omega.power(2)
        out.append(Check(f"{name} d(omega^2) = 0", ext.d(om2, m).is_zero()))
        # |Omega|^2 is a Scalar, hence constant on X
        nrm = norm_omega_squared(m)
        out.append(Check(f"{name} d(|Omega|^2 omega^2) = 0", ext.d(om2.scale(nrm), m).is_zero()))
        if m.kind == "complex":
            out.append(Check(f"{name} d Omega = 0", ext.d(m.Omega, m).is_zero()))
        else:
            out.append(Check(f"{name} d Re Omega = 0", ext.d(m.Omega.real_part(), m).is_zero()))
            out.append(Check(f"{name} d Omega = 0", ext.d(m.Omega, m).is_zero(), known_gap=True))
    return out


# ---------------------------------------------------------------------------
# randomized properties


def random_scalar(rng: random.Random, params: bool = True) -> Scalar:
    re_, im_ = Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    s = Scalar.complex(re_, im_)
    if params and rng.random() < 0.3:
        s = s + LAM * rng.randint(-3, 3)
    return s


def random_form(rng: random.Random, m: ModelManifold, k: int, chars: Sequence[Character] = (),
                terms: int = 3) -> WeightedForm:
    out = WeightedForm.zero()
    basis = ext.basis_monomials(m.dim, k)
    for _ in range(terms):
        ch = rng.choice(list(chars)) if chars else Character()
        out = out + WeightedForm.mono(*rng.choice(basis), coeff=random_scalar(rng), char=ch)
    return out


def _vec_bracket(m: ModelManifold, u, w) -> List[Scalar]:
    out = [ZERO] * m.dim
    for j, a in enumerate(u, start=1):
        if a.is_zero():
            continue
        for k, b in enumerate(w, start=1):
            if b.is_zero() or j == k:
                continue
            out = [x + a * b * y for x, y in zip(out, bracket(m, j, k))]
    return out


def _prop_d2(rng, m, chars):
    f = random_form(rng, m, rng.randint(0, m.dim - 2), chars)
    return ext.d(ext.d(f, m), m).is_zero()


def _prop_jacobi(rng, m, chars):
    vs = [[random_scalar(rng, False) if rng.random() < 0.5 else ZERO for _ in range(m.dim)] for _ in range(3)]
    a, b, c = vs
    t1 = _vec_bracket(m, a, _vec_bracket(m, b, c))
    t2 = _vec_bracket(m, b, _vec_bracket(m, c, a))
    t3 = _vec_bracket(m, c, _vec_bracket(m, a, b))
    return all((x + y + z).is_zero() for x, y, z in zip(t1, t2, t3))


def _prop_leibniz(rng, m, chars):
    p = rng.randint(0, 3)
    a = random_form(rng, m, p, chars)
    b = random_form(rng, m, rng.randint(0, 6 - p), chars)
    lhs = ext.d(a.wedge(b), m)
    rhs = ext.d(a, m).wedge(b) + a.wedge(ext.d(b, m)).scale(-1 if p % 2 else 1)
    return lhs == rhs


def _prop_star(rng, m, chars):
    N = rng.randint(1, 6)
    idx = sorted(rng.sample(range(1, 7), N))
    k = rng.randint(0, N)
    f = WeightedForm.zero()
    for _ in range(3):
        mono = tuple(sorted(rng.sample(idx, k)))
        f = f + WeightedForm.mono(*mono, coeff=random_scalar(rng))
    return ext.hodge_star(ext.hodge_star(f, idx), idx) == f.scale((-1) ** (k * (N - k)))


def _prop_ddbar(rng, m, chars):
    f = random_form(rng, m, rng.randint(0, 4), chars, terms=2)
    return (ext.del_(ext.delbar(f, m), m) + ext.delbar(ext.del_(f, m), m)).is_zero()


def _prop_fm(rng, m, chars):
    f, g = random_form(rng, m, rng.randint(0, 6), chars), random_form(rng, m, rng.randint(0, 6), chars)
    a, b = random_scalar(rng), random_scalar(rng)
    ft = mirror.fourier_mukai
    return ft(f.scale(a) + g.scale(b)) == ft(f).scale(a) + ft(g).scale(b)


def _prop_field(rng, m, chars):
    a, b, c = random_scalar(rng), random_scalar(rng), random_scalar(rng)
    ok = (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
    ok = ok and a + b == b + a and a * b == b * a and a + ZERO == a and a * ONE == a and (a - a).is_zero()
    if not a.is_zero():
        ok = ok and a * (ONE / a) == ONE
    return ok


PROPERTIES: Dict[str, Tuple[Callable, Tuple[str, ...]]] = {
    "d^2 = 0": (_prop_d2, BUILTINS),
    "Jacobi": (_prop_jacobi, BUILTINS),
    "Leibniz": (_prop_leibniz, BUILTINS),
    "** = (-1)^{k(N-k)}": (_prop_star, ("iwasawa",)),
    "del dbar = -dbar del": (_prop_ddbar, ("iwasawa", "nakamura_cs", "nakamura_cp")),
    "FM linearity": (_prop_fm, ("nakamura_cs",)),
    "field axioms": (_prop_field, ("iwasawa",)),
}


def run_property(name: str, samples: int = 500, seed: int = 0) -> Tuple[int, int]:
    """(failures, samples) for one randomized property."""
    fn, models = PROPERTIES[name]
    rng = random.Random(f"{name}:{seed}")
    fails = 0
    for _ in range(samples):
        m = builtin(rng.choice(models))
        chars = lattice.admissible_characters(m) if name != "FM linearity" else \
            [Character(), Character({"r0": LAM}), Character({"r0": -2 * LAM})]
        if not fn(rng, m, chars):
            fails += 1
    return fails, samples


def c12_properties(samples: int = 500) -> List[Check]:
    out = []
    for name in PROPERTIES:
        fails, n = run_property(name, samples)
        out.append(Check(f"{name} ({n} samples)", fails == 0, f"{fails} failures" if fails else ""))
    return out


CRITERIA: List[Tuple[int, str, Callable[[], List[Check]]]] = [
    (1, "SLag axis scan", c1_scan),
    (2, "algebraic SLag system", c2_system),
    (3, "involutivity and brackets", c3_involutive),
    (4, "deformation systems", c4_deform),
    (5, "deformation oracle", c5_oracle),
    (6, "leaf b1", c6_topology),
    (7, "leaf closure", c7_closure),
    (8, "number theory of M", c8_numbers),
    (9, "de Rham and h10 tables", c9_derham),
    (10, "refined diamonds", c10_refined),
    (11, "Fourier-Mukai and supersymmetry", c11_mirror),
    (12, "property suites", c12_properties),
]


def run(numbers: Optional[Sequence[int]] = None, samples: int = 500) -> List[CriterionResult]:
    out = []
    for n, title, fn in CRITERIA:
        if numbers and n not in numbers:
            continue
        t0 = time.perf_counter()
        checks = fn(samples) if n == 12 else fn()
        out.append(CriterionResult(n, title, checks, time.perf_counter() - t0))
    return out
