"""Library-side computations for every recorded oracle in fixtures/oracles.json.

Each function returns a value in the same JSON shape as the recorded oracle;
``compare`` walks both structures.
"""
import json
from pathlib import Path

import numpy as np

import kreinlab
from kreinlab import cli
from kreinlab import cstar_category as cc
from kreinlab import gns_repr as gr
from kreinlab import krein_space as ks
from kreinlab import matrix_core as mc
from kreinlab import star_algebra as sa
from kreinlab.documents import decode_matrix, encode_matrix
from kreinlab.involution import AdSymmetry

FIXTURES = Path(kreinlab.__file__).parent / "fixtures"


def load_oracles():
    return json.loads((FIXTURES / "oracles.json").read_text())["oracles"]


def unit(i, j, n=2):
    E = np.zeros((n, n), dtype=complex)
    E[i, j] = 1.0
    return E


E11, E12, E21, E22 = unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)
J = np.diag([1.0, -1.0]).astype(complex)
FLIP = np.array([[0, 1], [1, 0]], dtype=complex)
MINK = ks.KreinSpace(J)


def _span_matches(basis, mats):
    """Encode ``mats`` if they span exactly ``basis`` (else return the basis itself)."""
    other = mc.orthonormal_basis([decode_matrix(m) if isinstance(m, dict) else m for m in mats], basis.shape)
    if basis.same_span(other, 1e-12):
        return [encode_matrix(m) for m in mats]
    return [encode_matrix(b) for b in basis.basis]


def op_norm_jordan():
    return mc.op_norm(np.array([[1, 1], [0, 1]]))


def eig_flip():
    e = mc.herm_eig(FLIP)
    V = e.eigenvectors
    return {"eigenvalues": list(e.eigenvalues.real),
            "projectors": [encode_matrix(np.outer(V[:, k], V[:, k].conj())) for k in range(2)]}


def saturate_e12():
    return mc.saturate_span([E12], mc.ClosureRule(involution=mc.dagger)).dim


def saturate_diag():
    return mc.saturate_span([J], mc.ClosureRule(multiply=False, involution=None, unit=True)).dim


def canonical_flip():
    d = ks.canonical_decomposition(ks.KreinSpace(FLIP))
    return {"J": encode_matrix(d.J), "signature": list(d.signature), "p_plus": encode_matrix(d.p_plus)}


def _hyperbolic():
    ch, sh = np.cosh(1.0), np.sinh(1.0)
    S = np.array([[ch, sh], [sh, ch]], dtype=complex)
    return S, S @ J @ np.linalg.inv(S)


def hyperbolic_symmetry():
    S, Jh = _hyperbolic()
    return {"J": encode_matrix(Jh), "form_preserved_residual": float(np.abs(S.conj().T @ J @ S - J).max()),
            "is_symmetry": ks.all_symmetry_check(MINK, Jh)}


def krein_adjoint_e12():
    return encode_matrix(ks.krein_adjoint(E12, MINK, MINK))


def j_norm_flip():
    space = ks.KreinSpace(FLIP)
    return ks.j_norm(np.array([1, 0]), ks.decomposition_from_symmetry(space, FLIP), space)


def norm_equivalence_hyperbolic():
    _, Jh = _hyperbolic()
    return list(ks.norm_equivalence(MINK, J, Jh))


def algebra_e12():
    return sa.algebra_from_generators(2, [E12]).dim


def algebra_diag():
    return sa.algebra_from_generators(2, [J]).dim


def dagger_adJ_e12():
    alg = sa.full_matrix_algebra(2)
    alpha = AdSymmetry((J,))
    h = alpha(alg.star(E12)) @ E12
    report = sa.verify_krein_cstar(alg, alpha, samples=200)
    return {"alpha_xdag_x": encode_matrix(h), "norm_h": alg.norm(h), "norm_x_squared": alg.norm(E12) ** 2,
            "min_eigenvalue": float(np.linalg.eigvalsh(h).min()), "verdict": report.passed}


def krein_m2_identity_alpha():
    alg, alpha = sa.krein_operator_algebra(MINK)
    ident = AdSymmetry.identity([2])
    x_star_x = alg.star(E12) @ E12
    fail = sa.verify_krein_cstar(alg, ident, samples=0)
    return {"x_star_x": encode_matrix(x_star_x), "norm_x_star_x": alg.norm(x_star_x),
            "witness": encode_matrix(fail["positivity"].witness),
            "adJ_verdict": sa.verify_krein_cstar(alg, alpha).passed, "identity_verdict": fail.passed}


def split_m2():
    alg = sa.full_matrix_algebra(2)
    plus, minus = sa.even_odd_split(alg, AdSymmetry((J,)))
    return {"plus": _span_matches(plus, [E11, E22]), "minus": _span_matches(minus, [E12, E21])}


def twisted_e12():
    alg = sa.twist_involution(sa.full_matrix_algebra(2), AdSymmetry((J,)))
    return encode_matrix(alg.star(E12))


def category_krein_positivity():
    cat, _ = cc.krein_space_category([MINK])
    r = cc.verify_krein_cstar_category(cat, AdSymmetry.identity([2]), samples=0)
    w = r["axiom4_positivity"].witness
    return {"x_star_x": encode_matrix(cat.star(w, 0, 0) @ w), "witness": encode_matrix(w)}


def _two_spaces():
    return [MINK, ks.KreinSpace(np.diag([1.0, 1.0, -1.0]))]


def two_krein_spaces():
    cat, alpha = cc.krein_space_category(_two_spaces())
    bad = cc.verify_krein_cstar_category(cat, AdSymmetry.identity(cat.dims), samples=0)
    failing = [c.name for c in bad.failures()]
    return {"adJ_verdict": cc.verify_krein_cstar_category(cat, alpha).passed,
            "identity_failing_check": failing[-1] if failing else ""}


def twist_one_object():
    cat = cc.category_from_algebra(sa.full_matrix_algebra(2))
    tw = cc.twist_category(cat, AdSymmetry((J,)))
    return [encode_matrix(tw.star(unit(i, j), 0, 0)) for i in range(2) for j in range(2)]


def _diag_algebra(mats, n):
    basis = mc.orthonormal_basis(mats, (n, n))
    return sa.MatrixStarAlgebra(basis)


def linking_diag_antidiag():
    cat = cc.linking_category(_diag_algebra([E11, E22], 2), mc.orthonormal_basis([E12, E21], (2, 2)))
    env, _ = cc.envelope(cat)
    return {"dim": env.dim, "center_dim": cc.envelope_center_dim(env)}


def linking_scalar():
    one = np.eye(1, dtype=complex)
    cat = cc.linking_category(_diag_algebra([one], 1), mc.orthonormal_basis([one], (1, 1)))
    env, _ = cc.envelope(cat)
    return {"dim": env.dim, "center_dim": cc.envelope_center_dim(env)}


def krein_link_m2():
    alg, alpha = sa.krein_operator_algebra(MINK)
    link, grading = cc.krein_link(alg, alpha)
    return {"hom_dims": [link.hom(s, d).dim for s, d in link.pairs()],
            "verdict": cc.verify_krein_cstar_category(link, grading).passed}


def envelope_link_m2():
    alg, alpha = sa.krein_operator_algebra(MINK)
    link, grading = cc.krein_link(alg, alpha)
    env, _ = cc.envelope(cc.twist_category(link, grading))
    return {"dim": env.dim, "ambient_dim": env.ambient_dim}


def envelope_gns_functor():
    cat, alpha = cc.krein_space_category(_two_spaces())
    ctw = cc.twist_category(cat, alpha)
    rep = gr.gelfand_naimark(ctw, count_per_object=1)
    phi = gr.representation_functor(rep)
    src, tgt = cc.envelope(ctw), cc.envelope(phi.target)
    E = cc.envelope_functor(phi, src, tgt)
    return cc.factorization_residual(E, src[1], tgt[1], phi)


def doubling_two_krein():
    cat, alpha = cc.krein_space_category(_two_spaces(), labels=["A", "B"])
    d, _ = cc.doubling(cat, alpha)
    lab = [o.label for o in d.objects]
    even = {f"{a}{b}": d.hom(lab.index(a + "+"), lab.index(b + "+")).dim for a in "AB" for b in "AB"}
    odd = {f"{a}{b}": d.hom(lab.index(a + "+"), lab.index(b + "-")).dim for a in "AB" for b in "AB"}
    return {"even": even, "odd": odd}


def _m2():
    return cc.category_from_algebra(sa.full_matrix_algebra(2))


def state_e1():
    cat = _m2()
    w = gr.vector_state(cat, [np.array([1, 0])])
    G = gr._hom_gram(w, 0, 0)
    return {"gram_min_eigenvalue": float(np.linalg.eigvalsh(G).min()), "verdict": gr.verify_state(w).passed}


def state_trace():
    cat = _m2()
    w = gr.functional_state(cat, {(0, 0): np.eye(2) / 2})
    # basis of the full algebra is the matrix units in row-major order
    return {"gram": encode_matrix(gr._hom_gram(w, 0, 0)), "verdict": gr.verify_state(w).passed}


def state_x12():
    w = gr.functional_state(_m2(), {(0, 0): E12})
    failing = [c.name for c in gr.verify_state(w).failures()]
    return {"failing": [n for n in ("hermitian", "normalized") if n in failing]}


def gns_e1():
    cat = _m2()
    rep = gr.gns(gr.vector_state(cat, [np.array([1, 0])]))
    null = rep.null_spaces[(0, 0)]
    units = [unit(i, j) for i in range(2) for j in range(2)]
    vals = [float((rep.xi[0].conj() @ rep(u) @ rep.xi[0]).real) for u in units]
    return {"H_dim": rep.dims[0], "null_dim": null.dim, "null_span": _span_matches(null, [E12, E22]),
            "values": vals}


def gns_trace():
    rep = gr.gns(gr.trace_state(_m2()))
    return {"H_dim": rep.dims[0], "null_dim": rep.null_spaces[(0, 0)].dim}


def top_singular_state():
    x = np.array([[1, 1], [0, 1]], dtype=complex)
    alg = sa.algebra_from_generators(2, [x])
    cat = cc.category_from_algebra(alg)
    _, _, Vh = np.linalg.svd(x)
    w = gr.vector_state(cat, [Vh[0].conj()])
    return float(w(x.conj().T @ x).real)


def gn_full_23():
    rep = gr.gelfand_naimark(cc.full_operator_category([2, 3]))
    value, _ = gr.isometry_residual(rep, samples=100)
    return 0.0 if value <= 1e-12 else value


def gn_diag():
    alg = sa.algebra_from_generators(2, [J])
    cat = cc.category_from_algebra(alg)
    x = np.diag([2.0, -3.0]).astype(complex)
    norms = []
    for e in (np.array([1, 0]), np.array([0, 1])):
        rep = gr.gns(gr.vector_state(cat, [e]))
        norms.append(float(np.linalg.norm(rep(x), 2)))
    return norms


def represent_m2():
    alg, alpha = sa.krein_operator_algebra(MINK)
    rep = gr.represent_krein_algebra(alg, alpha)
    p, m = rep.split[0]
    return {"both_parts_nonzero": p > 0 and m > 0, "verdict": rep.certificates.passed}


def represent_two_krein():
    cat, alpha = cc.krein_space_category(_two_spaces())
    rep = gr.represent_krein_category(cat, alpha)
    return {"objects": len(rep.spaces), "verdict": rep.certificates.passed}


def _cli(argv, tmp):
    out = Path(tmp) / "report.json"
    code = cli.run(argv + ["--report", str(out)])
    return code, json.loads(out.read_text())


def cli_gns(tmp):
    code, rep = _cli(["gns", "--category", str(FIXTURES / "m2.json"), "--state", str(FIXTURES / "e1.json")], tmp)
    return {"exit": code, "H_dim": rep["data"]["dims"]["A"]}


def cli_k(tmp):
    code, rep = _cli(["check-krein-category", "--input", str(FIXTURES / "k.json")], tmp)
    names = [c["name"] for c in rep["checks"] if not c["passed"] and c["witness"] is not None]
    return {"exit": code, "failing": "axiom4_positivity" if "axiom4_positivity" in names else names}


def cli_minkowski(tmp):
    code, rep = _cli(["check-space", "--input", str(FIXTURES / "minkowski2.json")], tmp)
    return {"exit": code, "signature": rep["data"]["signature"]}


NEEDS_TMP = {"cli_gns", "cli_k", "cli_minkowski"}


def compare(expected, actual, atol=1e-12, path="value"):
    """Return a list of mismatch descriptions (empty when equal within ``atol``)."""
    if isinstance(expected, dict) and set(expected) == {"shape", "data"}:
        if not (isinstance(actual, dict) and set(actual) == {"shape", "data"}):
            return [f"{path}: expected a matrix"]
        A, B = decode_matrix(expected), decode_matrix(actual)
        if A.shape != B.shape:
            return [f"{path}: shape {A.shape} != {B.shape}"]
        err = float(np.abs(A - B).max()) if A.size else 0.0
        return [] if err <= atol else [f"{path}: max deviation {err:.3e}"]
    if isinstance(expected, dict):
        if not isinstance(actual, dict) or set(expected) != set(actual):
            return [f"{path}: keys differ"]
        return [m for k in expected for m in compare(expected[k], actual[k], atol, f"{path}.{k}")]
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(expected) != len(actual):
            return [f"{path}: length differs"]
        return [m for k, (e, a) in enumerate(zip(expected, actual)) for m in compare(e, a, atol, f"{path}[{k}]")]
    if isinstance(expected, bool) or isinstance(expected, str):
        return [] if expected == actual and type(expected) is type(actual) else [f"{path}: {actual!r} != {expected!r}"]
    if isinstance(expected, (int, float)):
        if isinstance(actual, bool) or not isinstance(actual, (int, float, np.integer, np.floating)):
            return [f"{path}: {actual!r} is not a number"]
        return [] if abs(float(expected) - float(actual)) <= atol else [f"{path}: {actual!r} != {expected!r}"]
    return [f"{path}: unsupported oracle type {type(expected).__name__}"]
