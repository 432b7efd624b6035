"""Command-line front end.

Exit codes: 0 success, 1 domain error (non-involutive triple, unknown
foliation, failed check), 2 usage or parse error (including unknown models).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from . import cohomology as coh
from . import deform, lattice, mirror, slag, suite
from .cohomology import CohomologyError
from .deform import DeformError
from .exterior import ExteriorError
from .lattice import LatticeError
from .mirror import MirrorError
from .model import BUILTINS, ModelError, ModelManifold, brackets, builtin, load_model_file, show
from .parse import ParseError, parse_form, parse_rational
from .slag import SlagError

JSON_SCHEMA = 1


class UsageError(Exception):
    """Bad input: exit code 2."""


class DomainError(Exception):
    """Well-formed request with a negative mathematical answer: exit code 1."""


# ---------------------------------------------------------------------------
# helpers


def _load(args) -> ModelManifold:
    try:
        if getattr(args, "model_file", None):
            m = load_model_file(args.model_file)
        elif getattr(args, "model", None):
            m = builtin(args.model)
        else:
            raise UsageError(f"give a model name ({', '.join(BUILTINS)}) or --model-file")
        tau = getattr(args, "tau_mode", None)
        if tau is not None:
            m = m.with_tau(parse_rational(tau))
    except (ModelError, ParseError) as exc:
        raise UsageError(str(exc)) from None
    return m


def _triple(text: str) -> tuple:
    try:
        parts = [int(x) for x in text.replace(",", " ").split()] if not text.isdigit() else [int(c) for c in text]
    except ValueError:
        raise UsageError(f"bad index triple {text!r}") from None
    if len(parts) != 3:
        raise UsageError(f"bad index triple {text!r}")
    return tuple(parts)


def _vec(v) -> List[str]:
    return [str(x) for x in v]


# ---------------------------------------------------------------------------
# commands: each returns (text, json payload, exit code)


def cmd_model_show(args):
    m = _load(args)
    payload = {
        "name": m.name, "kind": m.kind, "dim": m.dim,
        "structure": {str(i): str(m.structure_form(i)) for i in range(1, m.dim + 1)},
        "brackets": {f"{j},{k}": _vec(v) for (j, k), v in brackets(m).items()
                     if any(not x.is_zero() for x in v)},
        "J": [s * t for s, t in m.J],
        "omega": str(m.omega), "Omega": str(m.Omega),
        "foliations": {k: list(f.triple) for k, f in m.foliations.items()},
    }
    return show(m), payload, 0


def cmd_slag_scan(args):
    m = _load(args)
    res = slag.scan_axis(m, args.phase)
    lines = [f"SLag axis distributions of {m.name} at phase {args.phase}:"]
    for r in res:
        lines.append(f"  {r.label}  {r.involutivity.describe()}")
    payload = {"model": m.name, "phase": args.phase,
               "triples": [{"triple": list(r.triple), "involutive": r.involutivity.involutive,
                            "witness": r.involutivity.describe()} for r in res]}
    return "\n".join(lines), payload, 0


def cmd_slag_system(args):
    m = _load(args)
    s = slag.build_system(m, args.phase)
    return str(s), {"model": m.name, "phase": s.phase, "equations": [str(p) for p in s.equations]}, 0


def cmd_slag_check(args):
    m = _load(args)
    try:
        with open(args.matrix, encoding="utf-8") as fh:
            A = slag.DistributionMatrix.parse(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read matrix file: {exc}") from None
    s = slag.build_system(m, args.phase)
    res = slag.eval_system(s, A)
    ok = all(r.is_zero() for r in res)
    inv = slag.involutive_matrix(m, A)
    text = "\n".join([f"residuals: {', '.join(str(r) for r in res)}",
                      f"special Lagrangian: {'yes' if ok else 'no'}",
                      f"involutive: {'yes' if inv else 'no'}"])
    payload = {"model": m.name, "phase": args.phase, "residuals": _vec(res), "slag": ok, "involutive": inv}
    return text, payload, 0 if ok else 1


def cmd_slag_involutive(args):
    m = _load(args)
    inv = slag.involutive(m, _triple(args.triple))
    return inv.describe(), {"model": m.name, "involutive": inv.involutive, "witness": inv.describe()}, \
        0 if inv.involutive else 1


def _deform_payload(m, s: deform.DeformSystem):
    return {"model": m.name, "triple": list(s.triple), "j_convention": s.j_convention,
            "labels": list(s.labels), "equations": [deform.format_linear(e) for e in s.equations]}


def _require_involutive(m, t):
    inv = slag.involutive(m, t)
    if not inv:
        raise DomainError(f"{t} is not involutive: {inv.describe()}")


def cmd_deform_system(args):
    m = _load(args)
    t = _triple(args.triple)
    _require_involutive(m, t)
    s = deform.generate(m, t, args.j_convention)
    text = "\n".join(f"[{lab}]  {deform.format_linear(e)} = 0" for lab, e in zip(s.labels, s.equations))
    return text, _deform_payload(m, s), 0


def cmd_deform_dim(args):
    m = _load(args)
    t = _triple(args.triple)
    _require_involutive(m, t)
    sols = deform.invariant_solutions(m, t, args.j_convention)
    text = f"invariant first-order deformations: {len(sols)}"
    return text, {"model": m.name, "triple": list(t), "dim": len(sols),
                  "basis": [_vec(v) for v in sols]}, 0


def cmd_deform_betti(args):
    m = _load(args)
    t = _triple(args.triple)
    b = deform.leaf_betti1(m, t)
    return f"b1 = {b}", {"model": m.name, "triple": list(t), "b1": b}, 0


def cmd_deform_crosscheck(args):
    m = _load(args)
    t = _triple(args.triple)
    cc = deform.cross_check(m, t)
    if not cc.applicable:
        return "closed form does not apply to this model", {"applicable": False}, 1
    lines = []
    for v, ok in cc.agrees.items():
        lines.append(f"{v}: {'agrees' if ok else 'differs'}")
        for n, key, a, b in cc.differences[v]:
            lines.append(f"  equation {n + 1}, {deform.format_linear({key: 1})}: direct {a}, closed form {b}")
    payload = {"applicable": True, "agrees": cc.agrees,
               "differences": {v: [{"equation": n + 1, "symbol": deform.format_linear({key: 1}),
                                    "direct": str(a), "closed_form": str(b)} for n, key, a, b in d]
                               for v, d in cc.differences.items()}}
    return "\n".join(lines), payload, 0


def cmd_lattice_classify(args):
    m = _load(args)
    if args.foliation not in m.foliations:
        raise DomainError(f"unknown foliation {args.foliation!r}; {m.name} has {', '.join(m.foliations)}")
    v = lattice.classify_leaf_closure(m, args.foliation)
    text = f"{args.foliation}: {v}" + "".join(f"\n  {n}" for n in v.notes)
    return text, {"model": m.name, "foliation": args.foliation, "kind": v.kind,
                  "condition": list(v.condition), "stabilizer_rank": v.stabilizer_rank}, 0


def _matrix_arg(text: str):
    try:
        a, b, c, d = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected m11,m12,m21,m22, got {text!r}") from None
    return [[a, b], [c, d]]


def cmd_lattice_eigen(args):
    ed = lattice.eigen_data(_matrix_arg(args.matrix))
    lines = [f"Tr^2 - 4 = {ed.discriminant} (not a square)",
             f"eigenvalues: {ed.eigenvalues[0]}, {ed.eigenvalues[1]}",
             f"P = [[{ed.P[0][0]}, {ed.P[0][1]}], [{ed.P[1][0]}, {ed.P[1][1]}]]"]
    payload = {"M": [list(r) for r in ed.M], "discriminant": ed.discriminant,
               "eigenvalues": [str(e) for e in ed.eigenvalues],
               "P": [[str(x) for x in row] for row in ed.P]}
    return "\n".join(lines), payload, 0


def cmd_lattice_search(args):
    M = _matrix_arg(args.matrix)
    w = lattice.diag_integer_matrix_search(M, args.bound)
    text = f"no integer M' with P M' diagonal up to bound {args.bound}" if w is None else f"witness M' = {w}"
    return text, {"M": M, "bound": args.bound, "witness": None if w is None else [list(r) for r in w]}, 0


def _cohomology_out(t: coh.CohomologyTable):
    payload = t.to_json()
    if all(isinstance(g, int) for g in t.dims):
        payload["betti"] = list(t.betti())
    else:
        payload["diamond"] = [list(r) for r in t.diamond()]
    return str(t), payload, 0


def cmd_cohomology(args):
    m = _load(args)
    kind = args.kind
    if kind == "derham":
        return _cohomology_out(coh.de_rham(m))
    if kind == "h10":
        h, reps = coh.dolbeault_h10(m, with_representatives=True)
        text = f"h^(1,0)({m.name}) = {h}" + "".join(f"\n  {f.pretty()}" for f in reps)
        return text, {"model": m.name, "h10": h, "representatives": [str(f) for f in reps]}, 0
    if kind == "bottchern":
        return _cohomology_out(coh.refined_bott_chern(m))
    return _cohomology_out(coh.refined_tseng_yau(m))


def cmd_cohomology_mirror(args):
    try:
        x, xc = builtin(args.x), builtin(args.x_check)
    except ModelError as exc:
        raise UsageError(str(exc)) from None
    chk = coh.mirror_diamond_check(x, xc)
    payload = {"symplectic": x.name, "complex": xc.name, "ok": chk.ok,
               "mismatches": [{"pq": list(pq), "tseng_yau": a, "bott_chern": b} for pq, a, b in chk.mismatches],
               "tseng_yau": chk.tseng_yau.to_json(), "bott_chern": chk.bott_chern.to_json()}
    return str(chk), payload, 0 if chk.ok else 1


def cmd_mirror_ft(args):
    m = _load(args)
    try:
        f = parse_form(args.form, m.weight_directions) if args.form else mirror.exp_form(m.omega.scale(2))
    except (ParseError, ValueError) as exc:
        raise UsageError(f"cannot parse form: {exc}") from None
    chart_in = mirror.to_chart(m, f)
    out = mirror.fourier_mukai(chart_in, n=m.n)
    lines = [f"input in chart coordinates: {chart_in}", f"FT: {out}"]
    payload: Dict[str, Any] = {"model": m.name, "input": str(f), "chart_input": str(chart_in), "ft": str(out)}
    dual_name = (m.fibration or {}).get("dual")
    if dual_name:
        dual = builtin(str(dual_name))
        if (dual.fibration or {}).get("chart"):
            on_dual = mirror.from_chart(dual, out)
            lines.append(f"on {dual.name}: {on_dual}")
            payload["dual"] = dual.name
            payload["on_dual"] = str(on_dual)
            payload["remap"] = mirror.chart(dual).remap()
    return "\n".join(lines), payload, 0


def cmd_mirror_dual(args):
    m = _load(args)
    r = mirror.dual_model(m, args.foliation)
    payload = {"source": r.source, "foliation": r.foliation, "dual": r.model.name,
               "periods": {w: str(p) for w, p in (r.model.lattice.periods.items() if r.model.lattice else [])},
               "lattice": r.lattice, "remap": r.remap, "omega_transported": r.omega_transported}
    return str(r), payload, 0


def cmd_mirror_susy(args):
    m = _load(args)
    rep = mirror.susy_check(m, args.type)
    return str(rep), rep.to_json(), 0 if rep.ok else 1


def cmd_suite(args):
    nums = [int(x) for x in args.only.split(",")] if args.only else None
    results = suite.run(nums, samples=args.samples)
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} criteria pass")
    payload = {"criteria": [r.to_json() for r in results]}
    return "\n".join(lines), payload, 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# parser


def _model_args(p: argparse.ArgumentParser, tau: bool = False) -> None:
    p.add_argument("model", nargs="?", help=f"builtin model ({', '.join(BUILTINS)})")
    p.add_argument("--model-file", help="model file in the declarative TOML format")
    if tau:
        p.add_argument("--tau-mode", metavar="Q", help="set the tau-direction period to Q (in its declared unit)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="slagforge", description="Special Lagrangian and mirror computations on solvmanifolds.")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--version", action="version", version=f"slagforge {__version__}")
    sub = ap.add_subparsers(dest="group", required=True)

    g = sub.add_parser("model").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("show")
    _model_args(p, tau=True)
    p.set_defaults(fn=cmd_model_show)

    g = sub.add_parser("slag").add_subparsers(dest="cmd", required=True)
    for name, fn in (("scan", cmd_slag_scan), ("system", cmd_slag_system)):
        p = g.add_parser(name)
        _model_args(p)
        p.add_argument("--phase", default="0", choices=slag.PHASES)
        p.set_defaults(fn=fn)
    p = g.add_parser("check")
    _model_args(p)
    p.add_argument("--matrix", required=True, help="file with 3 rows of 6 scalars")
    p.add_argument("--phase", default="0", choices=slag.PHASES)
    p.set_defaults(fn=cmd_slag_check)
    p = g.add_parser("involutive")
    _model_args(p)
    p.add_argument("triple")
    p.set_defaults(fn=cmd_slag_involutive)

    g = sub.add_parser("deform").add_subparsers(dest="cmd", required=True)
    for name, fn in (("system", cmd_deform_system), ("dim", cmd_deform_dim),
                     ("betti", cmd_deform_betti), ("crosscheck", cmd_deform_crosscheck)):
        p = g.add_parser(name)
        _model_args(p)
        p.add_argument("triple", help="e.g. 1,2,3 or 123")
        if name in ("system", "dim"):
            p.add_argument("--j-convention", default="signed", choices=deform.J_CONVENTIONS)
        p.set_defaults(fn=fn)

    g = sub.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("classify")
    _model_args(p, tau=True)
    p.add_argument("foliation")
    p.set_defaults(fn=cmd_lattice_classify)
    p = g.add_parser("eigen")
    p.add_argument("matrix", help="m11,m12,m21,m22")
    p.set_defaults(fn=cmd_lattice_eigen)
    p = g.add_parser("search-mprime")
    p.add_argument("--matrix", default="2,3,1,2")
    p.add_argument("--bound", type=int, default=50)
    p.set_defaults(fn=cmd_lattice_search)

    g = sub.add_parser("cohomology").add_subparsers(dest="cmd", required=True)
    for kind in ("derham", "h10", "bottchern", "tsengyau"):
        p = g.add_parser(kind)
        _model_args(p, tau=True)
        p.set_defaults(fn=cmd_cohomology, kind=kind)
    p = g.add_parser("mirror-check")
    p.add_argument("x", help="symplectic side")
    p.add_argument("x_check", help="complex side")
    p.set_defaults(fn=cmd_cohomology_mirror)

    g = sub.add_parser("mirror").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("ft")
    _model_args(p)
    p.add_argument("--form", help="form on the model coframe; default exp(2 omega)")
    p.set_defaults(fn=cmd_mirror_ft)
    p = g.add_parser("dual")
    _model_args(p, tau=True)
    p.add_argument("foliation")
    p.set_defaults(fn=cmd_mirror_dual)
    p = g.add_parser("susy")
    _model_args(p)
    p.add_argument("--type", required=True, choices=mirror.SUSY_TYPES)
    p.set_defaults(fn=cmd_mirror_susy)

    p = sub.add_parser("suite", aliases=["paper-suite"])
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--samples", type=int, default=500, help="instances per randomized property")
    p.set_defaults(fn=cmd_suite)
    return ap


_DOMAIN = (DomainError, SlagError, DeformError, LatticeError, MirrorError, CohomologyError, ExteriorError, ModelError)


def _join_negative_values(argv: List[str]) -> List[str]:
    # "--phase -pi/2" would otherwise parse -pi/2 as an option
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a == "--phase":
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(_join_negative_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    command = " ".join(x for x in (args.group, getattr(args, "cmd", None)) if x)
    try:
        text, payload, code = args.fn(args)
    except (UsageError, ParseError) as exc:
        _report(args, command, str(exc), 2, out, err)
        return 2
    except _DOMAIN as exc:
        _report(args, command, str(exc), 1, out, err)
        return 1
    if args.json:
        json.dump({"schema": JSON_SCHEMA, "version": __version__, "command": command,
                   "exit_code": code, "result": payload}, out, indent=2, default=str)
        out.write("\n")
    else:
        out.write(text + "\n")
    return code


def _report(args, command, message, code, out, err) -> None:
    if getattr(args, "json", False):
        json.dump({"schema": JSON_SCHEMA, "version": __version__, "command": command,
                   "exit_code": code, "error": message}, out, indent=2)
        out.write("\n")
    err.write(f"error: {message}\n")


def main() -> None:
    sys.exit(run())
