"""SYZ-style mirror operations on Lagrangian torus fibrations.

Forms on a fibration are written in a chart of action-angle coordinates:
indices ``1..n`` are the fiber coframe and ``n+1..2n`` the base coframe
``dr_i``.  The Fourier-Mukai transform takes a form in ``d theta-check_i``,
``dr_i`` and integrates ``P(f) ^ exp(sum d theta-check_i ^ d theta_i)`` over
the theta-check fiber, where ``P`` multiplies a form with ``k`` fiber legs by
``(i/2)^k``.  The result is written in ``d theta_i``, ``dr_i`` on the same
index slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Dict, Mapping, Optional, Tuple

from . import exterior as ext
from .exterior import Character, WeightedForm
from .model import ModelError, ModelManifold, Period, Polarization, builtin
from .parse import ParseError, parse_form
from .scalars import I, ONE, V, Scalar, ScalarLike, as_scalar

__all__ = [
    "MirrorError", "Polarization", "chart_polarization", "polarization_switch", "exp_form",
    "fourier_mukai", "Chart", "chart", "to_chart", "from_chart", "DualResult", "dual_model",
    "SusyReport", "susy_check", "norm_squared", "parse_chart_form", "SUSY_TYPES",
]

SUSY_TYPES = ("IIA", "IIB")


class MirrorError(ValueError):
    pass


def chart_polarization(n: int = 3) -> Polarization:
    return Polarization(tuple(range(1, n + 1)), tuple(range(n + 1, 2 * n + 1)))


def _check_support(f: WeightedForm, pol: Polarization) -> None:
    for _, idx in f.terms:
        if idx and max(idx) > pol.dim:
            raise MirrorError(f"form has leg theta^{max(idx)} outside the {pol.dim}-dimensional chart")


def polarization_switch(f: WeightedForm, pol: Polarization) -> WeightedForm:
    """Multiply each term by (i/2)^(number of fiber legs)."""
    _check_support(f, pol)
    half_i = I / 2
    out: Dict = {}
    for (ch, idx), c in f.terms.items():
        k = pol.grading(idx)[1]
        out[(ch, idx)] = c * half_i ** k if k else c
    return WeightedForm(out)


def exp_form(f: WeightedForm) -> WeightedForm:
    """exp of an even form, truncated where the powers vanish."""
    if any(len(idx) % 2 for _, idx in f.terms):
        raise MirrorError("exp needs an even form")
    out = WeightedForm.const(1)
    term = WeightedForm.const(1)
    k = 0
    while True:
        k += 1
        term = term.wedge(f).scale(Scalar(1) / k)
        if term.is_zero():
            return out
        out = out + term


def fourier_mukai(f: WeightedForm, pol: Optional[Polarization] = None,
                  fiber_volume: ScalarLike = V, orientation: int = 1, n: int = 3) -> WeightedForm:
    """Fiber integral of P(f) ^ exp(sum d theta-check ^ d theta).

    The mirror fiber legs ``d theta_i`` are indexed ``2n+1..3n`` while the
    theta-check legs are integrated out, then renamed onto the fiber slots.
    """
    pol = pol or chart_polarization(n)
    if orientation not in (1, -1):
        raise MirrorError("orientation must be +1 or -1")
    fib = tuple(sorted(pol.fiber))
    D = pol.dim
    dual = {D + k + 1: a for k, a in enumerate(fib)}
    kernel = WeightedForm.zero()
    for k, a in enumerate(fib):
        kernel = kernel + WeightedForm.mono(a, D + k + 1)
    g = polarization_switch(f, pol).wedge(exp_form(kernel))
    vol = as_scalar(fiber_volume) * orientation
    out: Dict = {}
    for (ch, idx), c in g.terms.items():
        if not set(fib) <= set(idx):
            continue
        rest = tuple(a for a in idx if a not in fib)
        s, _ = ext.sort_sign(fib + rest)
        renamed = tuple(dual.get(a, a) for a in rest)
        s2, key = ext.sort_sign(renamed)
        k = (ch, key)
        v = c * vol * (s * s2)
        out[k] = out[k] + v if k in out else v
    return WeightedForm(out)


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class Chart:
    """Coframe of a model expressed in chart coordinates."""

    model: str
    coordinates: Tuple[str, ...]
    images: Tuple[WeightedForm, ...]
    base_direction: Mapping[str, str]
    texts: Tuple[str, ...] = ()

    @property
    def chart_directions(self) -> Dict[str, int]:
        return {c: self.coordinates.index(c) + 1 for c in self.base_direction}

    def remap(self) -> Dict[str, str]:
        return {f"d{c}": t for c, t in zip(self.coordinates, self.texts)}


def _rename(ch: Character, mapping: Mapping[str, str]) -> Character:
    return Character({mapping.get(w, w): c for w, c in ch.exponent})


def chart(m: ModelManifold) -> Chart:
    raw = (m.fibration or {}).get("chart")
    if not raw:
        raise MirrorError(f"{m.name} declares no fibration chart")
    coords = tuple(raw["coordinates"])
    texts = tuple(raw["images"])
    if len(coords) != m.dim or len(texts) != m.dim:
        raise MirrorError("chart needs one image per coframe index")
    base = dict(raw.get("base_direction", {}))
    images = []
    for t in texts:
        try:
            img = parse_form(t, m.weight_directions)
        except (ParseError, ValueError) as exc:
            raise MirrorError(f"bad chart image {t!r}: {exc}") from None
        if len(img.terms) != 1 or img.degrees() != [1]:
            raise MirrorError(f"chart image {t!r} must be a single weighted coframe element")
        images.append(img)
    return Chart(m.name, coords, tuple(images), base, texts)


def to_chart(m: ModelManifold, f: WeightedForm) -> WeightedForm:
    """Rewrite a model form in chart coordinates."""
    c = chart(m)
    back = {v: k for k, v in c.base_direction.items()}
    inverse: Dict[int, WeightedForm] = {}
    for k, img in enumerate(c.images, start=1):
        ((ch, (a,)), s), = img.terms.items()
        inverse[a] = WeightedForm.mono(k, coeff=ONE / s, char=_rename(ch ** -1, back))
    return ext.pullback(f, inverse, lambda ch: _rename(ch, back))


def from_chart(m: ModelManifold, f: WeightedForm) -> WeightedForm:
    """Rewrite a chart form on the model coframe."""
    c = chart(m)
    images = dict(enumerate(c.images, start=1))
    return ext.pullback(f, images, lambda ch: _rename(ch, c.base_direction))


def parse_chart_form(m: ModelManifold, text: str) -> WeightedForm:
    try:
        return parse_form(text, chart(m).chart_directions)
    except (ParseError, ValueError) as exc:
        raise MirrorError(f"cannot parse chart form: {exc}") from None


# ---------------------------------------------------------------------------
# dual models


@dataclass(frozen=True)
class DualResult:
    source: str
    foliation: str
    model: ModelManifold
    remap: Dict[str, str]
    lattice: str
    omega_transported: Optional[bool] = None

    def __str__(self):
        lines = [f"dual of {self.source} along {self.foliation}: {self.model.name}",
                 f"lattice: {self.lattice}"]
        for k, v in self.remap.items():
            lines.append(f"  {k} -> {v}")
        if self.omega_transported is not None:
            lines.append(f"symplectic form transported: {self.omega_transported}")
        return "\n".join(lines)


def dual_model(m: ModelManifold, foliation_id: str) -> DualResult:
    fib = m.fibration or {}
    if not fib:
        raise MirrorError(f"{m.name} declares no torus fibration")
    if foliation_id not in m.foliations:
        raise MirrorError(f"unknown foliation {foliation_id!r} on {m.name}")
    if foliation_id not in (fib.get("fiber"), fib.get("section")):
        raise MirrorError(f"{foliation_id} is not the torus fiber or section of {m.name}")
    try:
        dual = builtin(str(fib["dual"]))
    except (KeyError, ModelError) as exc:
        raise MirrorError(f"no dual model: {exc}") from None
    lat = m.lattice
    if lat is not None and lat.tau_direction and dual.lattice is not None and dual.lattice.tau_direction:
        try:
            per: Period = lat.periods[lat.tau_direction].inverse()
        except ModelError as exc:
            raise MirrorError(str(exc)) from None
        dual = dual.with_period(dual.lattice.tau_direction, per.q, per.unit)
    remap: Dict[str, str] = {}
    transported = None
    if (dual.fibration or {}).get("chart"):
        c = chart(dual)
        remap = c.remap()
        n = dual.n
        std = WeightedForm.zero()
        for k in range(1, n + 1):
            std = std + WeightedForm.mono(k, n + k)
        transported = from_chart(dual, std) == dual.omega
    desc = dual.description.split("lattice", 1)
    lattice = ("lattice" + desc[1]).strip() if len(desc) == 2 else dual.description
    if dual.lattice is not None:
        lattice += "; periods " + ", ".join(f"{w}: {p}" for w, p in dual.lattice.periods.items())
    return DualResult(m.name, foliation_id, dual, remap, lattice, transported)


# ---------------------------------------------------------------------------
# supersymmetry


def _top(f: WeightedForm, dim: int) -> Scalar:
    top = tuple(range(1, dim + 1))
    for (ch, idx), c in f.terms.items():
        if idx == top and not ch.is_trivial():
            raise MirrorError("top-degree form is not invariant")
    return f.coefficient(top)


def norm_squared(omega: WeightedForm, Omega: WeightedForm, n: int) -> Scalar:
    """|Omega|^2 with |Omega|^2 omega^n/n! = (i^{n^2}/2^n) Omega ^ conj(Omega)."""
    vol = _top(omega.power(n), 2 * n)
    if vol.is_zero():
        raise MirrorError("omega is degenerate")
    oo = _top(Omega.wedge(Omega.conjugate()), 2 * n)
    return I ** (n * n) * oo * factorial(n) / (vol * 2 ** n)


@dataclass
class SusyReport:
    model: str
    kind: str
    residuals: Dict[str, WeightedForm]
    F: Optional[Scalar]
    rho: Optional[WeightedForm]
    norm_squared: Optional[Scalar]
    rho_complex: Optional[WeightedForm] = None

    @property
    def checks(self) -> Dict[str, bool]:
        out = {k: r.is_zero() for k, r in self.residuals.items()}
        out["F constant and nonzero"] = self.F is not None and not self.F.is_zero()
        return out

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "model": self.model, "type": self.kind, "ok": self.ok,
            "residuals": {k: str(r) for k, r in self.residuals.items()},
            "F": None if self.F is None else str(self.F),
            "norm_squared": None if self.norm_squared is None else str(self.norm_squared),
            "rho": None if self.rho is None else str(self.rho),
            "rho_complex": None if self.rho_complex is None else str(self.rho_complex),
        }

    def __str__(self):
        lines = [f"{self.kind} supersymmetry on {self.model}: {'ok' if self.ok else 'FAILED'}"]
        for k, v in self.checks.items():
            lines.append(f"  {'ok  ' if v else 'FAIL'} {k}")
        if self.F is not None:
            lines.append(f"  F = {self.F}")
        if self.norm_squared is not None:
            lines.append(f"  |Omega|^2 = {self.norm_squared}")
        if self.rho is not None:
            lines.append(f"  rho = {self.rho.pretty()}")
        if self.rho_complex is not None:
            lines.append(f"  rho (complex coframe) = {format_complex(self.rho_complex)}")
        return "\n".join(lines)


_BAR = "\u0304"


def format_complex(f: WeightedForm, n: int = 3) -> str:
    """Render a form in the complex coframe (phi^k at k, its conjugate at n+k)
    as phi^{1 1b 2 2b ...}, each holomorphic leg followed by its conjugate."""
    parts = []
    for (ch, idx), c in sorted(f.terms.items(), key=lambda t: t[0][1]):
        order = sorted(idx, key=lambda a: (a - 1) % n * 2 + (a > n))
        sign, _ = ext.sort_sign(tuple(order))
        label = "".join(str((a - 1) % n + 1) + (_BAR if a > n else "") for a in order)
        weight = "" if ch.is_trivial() else f" e^({ch.exponent_str()})"
        parts.append(f"({c * sign}){weight} φ^{{{label}}}")
    return " + ".join(parts) if parts else "0"


def susy_check(m: ModelManifold, kind: str, Omega: Optional[WeightedForm] = None,
               omega: Optional[WeightedForm] = None) -> SusyReport:
    """Check the type IIA or IIB system and return the source term rho.

    IIB: d Omega = 0, d(omega^{n-1}) = 0, rho = 2i del delbar(F^{-1} omega).
    IIA: d omega = 0, d Re Omega = 0, rho = d d^Lambda(F Im Omega).
    Both need a constant F with Omega ^ conj(Omega) = c_n F omega^n / n!,
    where c_n = (-1)^{n(n-1)/2} (-i)^n (so c_3 = -i and F = 8 on flat C^3).
    A non-constant F is reported, not raised.
    """
    if kind not in SUSY_TYPES:
        raise MirrorError(f"unknown supersymmetry type {kind!r}; use IIA or IIB")
    Om = m.Omega if Omega is None else Omega
    om = m.omega if omega is None else omega
    n = m.n
    if kind == "IIB":
        residuals = {"d Omega": ext.d(Om, m), f"d(omega^{n - 1})": ext.d(om.power(n - 1), m)}
    else:
        residuals = {"d omega": ext.d(om, m), "d Re Omega": ext.d(Om.real_part(), m)}
    top_oo = Om.wedge(Om.conjugate())
    vol = om.power(n).scale(Scalar(1) / factorial(n))
    F = None
    invariant = all(ch.is_trivial() for ch, _ in top_oo.terms) and all(ch.is_trivial() for ch, _ in vol.terms)
    if invariant and not vol.is_zero():
        F = _top(top_oo, m.dim) / (_top(vol, m.dim) * _c(n))
    rho = rho_c = nsq = None
    if F is not None and not F.is_zero():
        nsq = norm_squared(om, Om, n)
        if kind == "IIB":
            rho = ext.del_(ext.delbar(om.scale(ONE / F), m), m).scale(2 * I)
            rho_c = ext.to_complex_basis(rho, m)
        else:
            rho = ext.d(ext.lefschetz_dual(Om.imag_part().scale(F), m), m)
    return SusyReport(m.name, kind, residuals, F, rho, nsq, rho_c)


def _c(n: int) -> Scalar:
    return (-I) ** n * (-1) ** (n * (n - 1) // 2)
