"""Command line front end: read documents, run one verification, write a JSON report.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
malformed input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from . import cstar_category as cc
from . import documents as docs
from . import gns_repr as gr
from . import krein_space as ks
from . import star_algebra as sa
from .errors import ConstructionError, InputError
from .involution import AdSymmetry
from .matrix_core import DEFAULT_TOL
from .report import Report

__all__ = ["COMMANDS", "build_parser", "emit_report", "main", "report_document", "run"]


# -- commands ------------------------------------------------------------------


def _space(args):
    space, J = docs.build_space(docs.load_document(args.input, "space"), args.tol)
    return space, J


def _algebra(args, need_symmetry=False):
    alg, alpha = docs.build_algebra(docs.load_document(args.input, "algebra"), args.tol)
    if alpha is None and need_symmetry:
        raise InputError("payload.symmetry: required for this command")
    return alg, alpha


def _category(args, path=None):
    return docs.build_category(docs.load_document(path or args.input, "category"), args.tol)


def cmd_check_space(args) -> Report:
    space, J = _space(args)
    report = Report("check-space")
    d = ks.canonical_decomposition(space, args.tol)
    for name, value in ks.decomposition_residuals(space, d).items():
        if name == "j_inner_positive":
            report.add_flag(name, value < -args.tol, detail=f"min eig {-value:.3e}")
        else:
            report.add(name, value, args.tol)
    if J is not None:
        r = ks.symmetry_residuals(space, J)
        report.add_flag("supplied_symmetry", ks.all_symmetry_check(space, J, args.tol), J,
                        detail=" ".join(f"{k}={v:.3e}" for k, v in sorted(r.items())))
    report.data.update(dim=space.dim, signature=list(d.signature))
    return report


def cmd_decompose(args) -> Report:
    space, J = _space(args)
    d = ks.canonical_decomposition(space, args.tol) if J is None else \
        ks.decomposition_from_symmetry(space, J, args.tol)
    report = Report("decompose")
    for name, value in ks.decomposition_residuals(space, d).items():
        if name == "j_inner_positive":
            report.add_flag(name, value < -args.tol, detail=f"min eig {-value:.3e}")
        else:
            report.add(name, value, args.tol)
    report.data.update(J=d.J, p_plus=d.p_plus, p_minus=d.p_minus, signature=list(d.signature))
    return report


def cmd_adjoint(args) -> Report:
    dom, _ = docs.build_space(docs.load_document(args.domain, "space"), args.tol)
    cod, _ = docs.build_space(docs.load_document(args.codomain, "space"), args.tol)
    T = docs.build_operator(docs.load_document(args.operator, "operator"))
    Tsharp = ks.krein_adjoint(T, dom, cod)
    rng = np.random.default_rng(args.seed)
    worst, wit = 0.0, None
    for _ in range(args.samples):
        x = rng.standard_normal(dom.dim) + 1j * rng.standard_normal(dom.dim)
        y = rng.standard_normal(cod.dim) + 1j * rng.standard_normal(cod.dim)
        lhs, rhs = cod.inner(T @ x, y), dom.inner(x, Tsharp @ y)
        r = abs(lhs - rhs) / (1.0 + abs(lhs))
        if r > worst:
            worst, wit = r, [x, y]
    report = Report("adjoint")
    report.add("adjoint_identity", worst, args.tol, wit)
    report.data.update(adjoint=Tsharp)
    return report


def cmd_check_algebra(args) -> Report:
    alg, alpha = _algebra(args)
    if alpha is None:
        report = sa.verify_cstar_algebra(alg, args.samples, args.tol, args.seed)
    else:
        report = sa.verify_krein_cstar(alg, alpha, args.samples, args.tol, args.seed)
    report.data.update(dim=alg.dim, ambient_dim=alg.ambient_dim)
    return report


def cmd_split(args) -> Report:
    alg, alpha = _algebra(args, need_symmetry=True)
    plus, minus = sa.even_odd_split(alg, alpha, args.tol)
    report = Report("split")
    report.add_flag("dimensions_add", plus.dim + minus.dim == alg.dim,
                    detail=f"{plus.dim}+{minus.dim} vs {alg.dim}")
    worst = 0.0
    for basis, sign in ((plus, 1), (minus, -1)):
        for b in basis.basis:
            worst = max(worst, float(np.linalg.norm(alpha(b) - sign * b, 2)))
    report.add("eigenspaces", worst, args.tol)
    report.data.update(dim_plus=plus.dim, dim_minus=minus.dim)
    return report


def cmd_twist(args) -> Report:
    alg, alpha = _algebra(args, need_symmetry=True)
    twisted = sa.twist_involution(alg, alpha, args.tol)
    report = sa.verify_cstar_algebra(twisted, args.samples, args.tol, args.seed)
    report.title = "twist"
    report.data.update(dim=twisted.dim)
    return report


def _hom_dims(cat) -> Dict[str, int]:
    labels = [o.label for o in cat.objects]
    return {f"{labels[s]}->{labels[d]}": cat.hom(s, d).dim for s, d in cat.pairs()}


def cmd_link(args) -> Report:
    alg, alpha = _algebra(args, need_symmetry=True)
    link, grading = cc.krein_link(alg, alpha, args.tol)
    report = cc.verify_krein_cstar_category(link, grading, args.samples, args.tol, args.seed)
    report.title = "link"
    report.data.update(hom_dims=_hom_dims(link))
    return report


def cmd_envelope(args) -> Report:
    doc = docs.load_document(args.input, ("algebra", "category"))
    if doc.kind == "algebra":
        alg, alpha = docs.build_algebra(doc, args.tol)
        if alpha is None:
            cat = cc.category_from_algebra(alg)
        else:
            link, grading = cc.krein_link(alg, alpha, args.tol)
            cat = cc.twist_category(link, grading, args.tol)
    else:
        cat, alpha = docs.build_category(doc, args.tol)
        if alpha is not None:
            cat = cc.twist_category(cat, alpha, args.tol)
    env, iota = cc.envelope(cat, args.tol)
    report = sa.verify_cstar_algebra(env, args.samples, args.tol, args.seed)
    report.title = "envelope"
    for c in cc.verify_star_functor(iota, args.tol, unital=False).checks:
        c.name = "iota_" + c.name
        report.checks.append(c)
    report.data.update(dim=env.dim, ambient_dim=env.ambient_dim,
                       center_dim=cc.envelope_center_dim(env, args.tol))
    return report


def cmd_check_category(args) -> Report:
    cat, _ = _category(args)
    report = cc.verify_cstar_category(cat, args.samples, args.tol, args.seed)
    report.data.update(hom_dims=_hom_dims(cat))
    return report


def cmd_check_krein_category(args) -> Report:
    cat, alpha = _category(args)
    if alpha is None:
        alpha = AdSymmetry.identity(cat.dims)
    report = cc.verify_krein_cstar_category(cat, alpha, args.samples, args.tol, args.seed)
    report.data.update(hom_dims=_hom_dims(cat))
    return report


def _state(args):
    state_doc = docs.load_document(args.state or args.input, "state")
    cat_doc = docs.load_document(args.category, "category") if args.category else None
    return docs.build_state(state_doc, cat_doc, args.tol)


def cmd_check_state(args) -> Report:
    state, _, _ = _state(args)
    return gr.verify_state(state, args.tol)


def cmd_gns(args) -> Report:
    state, cat, _ = _state(args)
    rep = gr.gns(state, args.tol)
    report = gr.verify_representation(rep, args.tol)
    report.title = "gns"
    labels = [o.label for o in cat.objects]
    report.data.update(
        dims={labels[a]: d for a, d in enumerate(rep.dims)},
        null_dims={f"{labels[s]}->{labels[d]}": rep.null_spaces[(s, d)].dim for s, d in cat.pairs()},
        pair_dims={f"{labels[s]}->{labels[d]}": v for (s, d), v in rep.pair_dims.items()},
    )
    return report


def _krein_report(title, rep) -> Report:
    report = rep.certificates
    report.title = title
    report.data.update(split=[list(p) for p in rep.split], dims=list(rep.dims), reduced=rep.reduced)
    return report


def cmd_represent_algebra(args) -> Report:
    alg, alpha = _algebra(args, need_symmetry=True)
    rep = gr.represent_krein_algebra(alg, alpha, args.tol, min(args.samples, 20), args.seed)
    return _krein_report("represent-algebra", rep)


def cmd_represent_category(args) -> Report:
    cat, alpha = _category(args)
    if alpha is None:
        raise InputError("payload.symmetry: required for this command")
    rep = gr.represent_krein_category(cat, alpha, args.tol, min(args.samples, 20), args.seed)
    return _krein_report("represent-category", rep)


def cmd_double(args) -> Report:
    cat, alpha = _category(args)
    if alpha is None:
        raise InputError("payload.symmetry: required for this command")
    doubled, grading = cc.doubling(cat, alpha, args.tol)
    report = cc.verify_krein_cstar_category(doubled, grading, args.samples, args.tol, args.seed)
    report.title = "double"
    report.data.update(hom_dims=_hom_dims(doubled))
    return report


COMMANDS: Dict[str, Callable] = {
    "check-space": cmd_check_space,
    "decompose": cmd_decompose,
    "adjoint": cmd_adjoint,
    "check-algebra": cmd_check_algebra,
    "split": cmd_split,
    "twist": cmd_twist,
    "link": cmd_link,
    "envelope": cmd_envelope,
    "check-category": cmd_check_category,
    "check-krein-category": cmd_check_krein_category,
    "check-state": cmd_check_state,
    "gns": cmd_gns,
    "represent-algebra": cmd_represent_algebra,
    "represent-category": cmd_represent_category,
    "double": cmd_double,
}

_INPUTS = {
    "adjoint": ("domain", "codomain", "operator"),
    "gns": ("category", "state", "input"),
    "check-state": ("category", "state", "input"),
}


# -- reports -------------------------------------------------------------------


def _digest(args) -> str:
    h = hashlib.sha256()
    for name in _INPUTS.get(args.command, ("input",)):
        path = getattr(args, name, None)
        if path:
            h.update(name.encode())
            h.update(Path(path).read_bytes())
    return h.hexdigest()


def report_document(report: Report, command: str, digest: str, duration=None) -> dict:
    return {
        "command": command,
        "inputs_digest": digest,
        "verdict": "pass" if report.passed else "fail",
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "residual": c.residual,
                "witness": docs.encode_value(c.witness),
                "detail": c.detail,
            }
            for c in report.checks
        ],
        "data": docs.encode_value(report.data),
        "duration_s": duration,
    }


def emit_report(document: dict, path: Optional[str] = None) -> None:
    """Write the key-sorted report to ``path`` or standard output."""
    text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"--report: cannot write {path} ({exc.strerror})") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--report", default=None, help="report path (default: stdout)")
    common.add_argument("--timing", action="store_true", help="record wall-clock duration")
    parser = argparse.ArgumentParser(prog="kreinlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "adjoint":
            p.add_argument("--domain", required=True)
            p.add_argument("--codomain", required=True)
            p.add_argument("--operator", required=True)
        elif name in ("gns", "check-state"):
            p.add_argument("--input", help="state document")
            p.add_argument("--state", help="state document (alias of --input)")
            p.add_argument("--category", help="category document overriding the state's reference")
        else:
            p.add_argument("--input", required=True)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command in ("gns", "check-state") and not (args.state or args.input):
        print(f"kreinlab {args.command}: --state or --input is required", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        try:
            report = COMMANDS[args.command](args)
        except ConstructionError as exc:
            report = Report(args.command)
            report.add_flag("construction", False, exc.witness, str(exc))
        duration = round(time.perf_counter() - start, 6) if args.timing else None
        emit_report(report_document(report, args.command, _digest(args), duration), args.report)
    except (InputError, OSError) as exc:
        print(f"kreinlab {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
