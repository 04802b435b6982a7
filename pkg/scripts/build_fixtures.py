"""Regenerate the bundled fixtures: CLI input documents and oracles.json.

Every oracle is a closed-form small-matrix computation done here with numpy
alone; this script deliberately does not import kreinlab, so the recorded
values are independent of the code they check.

    python3 scripts/build_fixtures.py
"""
import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "kreinlab" / "fixtures"


def c(z):
    z = complex(z)
    return [z.real, z.imag]


def mat(M):
    M = np.asarray(M, dtype=complex)
    return {"shape": list(M.shape), "data": [[c(z) for z in row] for row in M]}


def doc(kind, payload):
    return {"version": 1, "kind": kind, "payload": payload}


def unit(i, j, n=2):
    E = np.zeros((n, n))
    E[i, j] = 1.0
    return E


E11, E12, E21, E22 = unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)
J = np.diag([1.0, -1.0])
FLIP = np.array([[0.0, 1.0], [1.0, 0.0]])
CH, SH = np.cosh(1.0), np.sinh(1.0)
S_HYP = np.array([[CH, SH], [SH, CH]])


def rank(mats):
    return int(np.linalg.matrix_rank(np.array([np.asarray(m).reshape(-1) for m in mats])))


def power_norm(M, iters=200):
    """Square root of the top eigenvalue of M^dagger M by power iteration."""
    A = M.conj().T @ M
    v = np.ones(A.shape[0])
    for _ in range(iters):
        v = A @ v
        v = v / np.linalg.norm(v)
    return float(np.sqrt(v @ A @ v))


def oracles():
    out = []

    def add(oid, description, value):
        out.append({"id": oid, "description": description, "value": value})

    # matrix_core
    M = np.array([[1.0, 1.0], [0.0, 1.0]])
    add("op_norm_jordan", "operator norm of [[1,1],[0,1]]", power_norm(M))
    v_minus = np.array([1.0, -1.0]) / np.sqrt(2)
    v_plus = np.array([1.0, 1.0]) / np.sqrt(2)
    add("eig_flip", "eigenvalues and eigenprojectors of the flip",
        {"eigenvalues": [-1.0, 1.0],
         "projectors": [mat(np.outer(v_minus, v_minus)), mat(np.outer(v_plus, v_plus))]})
    products = [E12, E12.T, E12 @ E12.T, E12.T @ E12, np.eye(2)]
    add("saturate_e12", "span closure of {e12} with products, adjoint, unit", rank(products))
    add("saturate_diag", "span closure of {diag(1,-1)} with unit", rank([J, np.eye(2), J @ J]))

    # krein_space
    add("canonical_flip", "canonical decomposition of gram = flip",
        {"J": mat(FLIP), "signature": [1, 1], "p_plus": mat(np.outer(v_plus, v_plus))})
    J_hyp = S_HYP @ J @ np.linalg.inv(S_HYP)
    preserves = float(np.abs(S_HYP.T @ J @ S_HYP - J).max())
    add("hyperbolic_symmetry", "S diag(1,-1) S^-1 for hyperbolic S at t=1",
        {"J": mat(J_hyp), "form_preserved_residual": preserves, "is_symmetry": True})
    add("krein_adjoint_e12", "Krein adjoint of e12 on C^{1,1}", mat(J @ E12.T @ J))
    x = np.array([1.0, 0.0])
    add("j_norm_flip", "J-norm of (1,0) for gram = J = flip", float(np.sqrt(x @ FLIP @ FLIP @ x)))
    A = J @ J                      # gram J1 with J1 canonical
    B = J @ J_hyp
    w = np.sort(np.linalg.eigvals(np.linalg.solve(B, A)).real)
    add("norm_equivalence_hyperbolic", "(c, C) for canonical vs hyperbolic symmetry",
        [float(np.sqrt(w[0])), float(np.sqrt(w[-1]))])

    # star_algebra
    add("algebra_e12", "dimension of the *-algebra generated by e12", rank(products))
    add("algebra_diag", "dimension of the *-algebra generated by diag(1,-1)", rank([J, np.eye(2)]))
    h = (J @ E12.T @ J) @ E12
    add("dagger_adJ_e12", "M2 with adjoint and alpha = Ad J at x = e12",
        {"alpha_xdag_x": mat(h), "norm_h": power_norm(h), "norm_x_squared": power_norm(E12) ** 2,
         "min_eigenvalue": float(np.linalg.eigvalsh(h).min()), "verdict": False})
    x_star = J @ E12.T @ J
    add("krein_m2_identity_alpha", "M2 with Krein adjoint, alpha = identity, x = e12",
        {"x_star_x": mat(x_star @ E12), "norm_x_star_x": power_norm(x_star @ E12),
         "witness": mat(E12), "adJ_verdict": True, "identity_verdict": False})
    add("split_m2", "even/odd parts of M2 under Ad diag(1,-1)",
        {"plus": [mat(E11), mat(E22)], "minus": [mat(E12), mat(E21)]})
    add("twisted_e12", "twisted involution alpha(x^dagger) at x = e12", mat(J @ E12.T @ J))

    # cstar_category
    add("category_krein_positivity", "x* o x for the Krein category on diag(1,-1), x = e12",
        {"x_star_x": mat(x_star @ E12), "witness": mat(E12)})
    add("two_krein_spaces", "C^{1,1} and C^{2,1} with Ad of the canonical J family",
        {"adJ_verdict": True, "identity_failing_check": "axiom4_positivity"})
    units = [unit(i, j) for i in range(2) for j in range(2)]
    add("twist_one_object", "twisted involution of (M2, adjoint, Ad J) on matrix units",
        [mat(J @ u.T @ J) for u in units])

    def block_env(blocks):
        """Dimension and center dimension of a 2x2 block algebra, from explicit matrices."""
        mats = []
        for (i, j), span in blocks.items():
            n = span[0].shape[0]
            for s in span:
                E = np.zeros((2 * n, 2 * n))
                E[i * n:(i + 1) * n, j * n:(j + 1) * n] = s
                mats.append(E)
        k = len(mats)
        comm = np.array([[(a @ b - b @ a).reshape(-1) for a in mats] for b in mats])
        L = comm.transpose(0, 2, 1).reshape(-1, k)
        return rank(mats), k - int(np.linalg.matrix_rank(L))

    diag_span, anti_span = [E11, E22], [E12, E21]
    dim, center = block_env({(0, 0): diag_span, (1, 1): diag_span, (0, 1): anti_span, (1, 0): anti_span})
    add("linking_diag_antidiag", "envelope of [diagonal, antidiagonal]", {"dim": dim, "center_dim": center})
    one = [np.eye(1)]
    dim1, center1 = block_env({(0, 0): one, (1, 1): one, (0, 1): one, (1, 0): one})
    add("linking_scalar", "envelope of [C, C] in dimension 1", {"dim": dim1, "center_dim": center1})
    add("krein_link_m2", "hom dimensions of [A+, A-] for M2 with Krein adjoint and Ad J",
        {"hom_dims": [2, 2, 2, 2], "verdict": True})
    add("envelope_link_m2", "envelope of [A+, A-] for M2", {"dim": 4 * 2, "ambient_dim": 4})
    add("envelope_gns_functor", "factorization residual of E(pi) for the GNS functor", 0.0)
    p = {"A": (1, 1), "B": (2, 1)}
    even = {f"{a}{b}": p[a][0] * p[b][0] + p[a][1] * p[b][1] for a in p for b in p}
    odd = {f"{a}{b}": p[a][0] * p[b][1] + p[a][1] * p[b][0] for a in p for b in p}
    add("doubling_two_krein", "even and odd hom dimensions for C^{1,1}, C^{2,1}", {"even": even, "odd": odd})

    # gns_repr
    gram_e1 = np.array([[(u.T @ v)[0, 0] for v in units] for u in units])
    ker_e1 = 4 - int(np.linalg.matrix_rank(gram_e1))
    add("state_e1", "vector state at e1 on M2", {"gram_min_eigenvalue": float(np.linalg.eigvalsh(gram_e1).min()),
                                                 "verdict": True})
    gram_tr = np.array([[np.trace(u.T @ v) / 2 for v in units] for u in units])
    add("state_trace", "normalised trace on M2", {"gram": mat(gram_tr), "verdict": True})
    add("state_x12", "omega(x) = x_12 on M2", {"failing": ["hermitian", "normalized"]})
    add("gns_e1", "GNS of the vector state at e1",
        {"H_dim": int(np.linalg.matrix_rank(gram_e1)), "null_dim": ker_e1,
         "null_span": [mat(E12), mat(E22)], "values": [float(u[0, 0]) for u in units]})
    add("gns_trace", "GNS of the normalised trace", {"H_dim": int(np.linalg.matrix_rank(gram_tr)), "null_dim": 0})
    _, s, _ = np.linalg.svd(M)
    add("top_singular_state", "omega(x* x) at the top right singular vector of [[1,1],[0,1]]",
        float(power_norm(M) ** 2))
    add("gn_full_23", "isometry residual bound for the (2,3) full operator category", 0.0)
    add("gn_diag", "norms recovered by the coordinate states for x = diag(2,-3)", [2.0, 3.0])
    add("represent_m2", "Krein representation of M2 with Krein adjoint and Ad J",
        {"both_parts_nonzero": True, "verdict": True})
    add("represent_two_krein", "Krein representation of the (C^{1,1}, C^{2,1}) category",
        {"objects": 2, "verdict": True})

    # cli
    add("cli_gns", "gns --category m2.json --state e1.json", {"exit": 0, "H_dim": 2})
    add("cli_k", "check-krein-category --input k.json", {"exit": 1, "failing": "axiom4_positivity"})
    add("cli_minkowski", "check-space --input minkowski2.json", {"exit": 0, "signature": [1, 1]})
    return out


def documents():
    return {
        "minkowski2.json": doc("space", {"gram": mat(J)}),
        "flip.json": doc("space", {"gram": mat(FLIP), "symmetry": mat(FLIP)}),
        "hyperbolic.json": doc("space", {"gram": mat(J), "symmetry": mat(S_HYP @ J @ np.linalg.inv(S_HYP))}),
        "e12.json": doc("operator", {"matrix": mat(E12)}),
        "m2.json": doc("category", {
            "objects": [{"label": "A", "dim": 2}],
            "homs": [{"src": "A", "dst": "A", "generators": [mat(E12)]}],
            "involution": {"type": "adjoint"},
        }),
        "e1.json": doc("state", {"category": "m2.json", "vectors": {"A": [c(1), c(0)]}}),
        "trace.json": doc("state", {"category": "m2.json",
                                    "functionals": [{"src": "A", "dst": "A", "matrix": mat(np.eye(2) / 2)}]}),
        "x12.json": doc("state", {"category": "m2.json",
                                  "functionals": [{"src": "A", "dst": "A", "matrix": mat(E12)}]}),
        "k.json": doc("category", {
            "objects": [{"label": "K", "dim": 2, "gram": mat(J)}],
            "homs": [{"src": "K", "dst": "K", "generators": [mat(E12)]}],
            "involution": {"type": "krein"},
            "symmetry": {"type": "identity"},
        }),
        "k_adj.json": doc("category", {
            "objects": [{"label": "K", "dim": 2, "gram": mat(J)}],
            "homs": [{"src": "K", "dst": "K", "generators": [mat(E12)]}],
            "involution": {"type": "krein"},
            "symmetry": {"type": "ad", "matrices": {"K": mat(J)}},
        }),
        "m2_krein.json": doc("algebra", {
            "ambient_dim": 2,
            "generators": [mat(E12)],
            "involution": {"type": "krein", "gram": mat(J)},
            "symmetry": {"type": "ad", "matrix": mat(J)},
        }),
        "m2_dagger_adj.json": doc("algebra", {
            "ambient_dim": 2,
            "generators": [mat(E12)],
            "involution": {"type": "adjoint"},
            "symmetry": {"type": "ad", "matrix": mat(J)},
        }),
        "two_krein.json": doc("category", {
            "objects": [{"label": "A", "dim": 2, "gram": mat(J)},
                        {"label": "B", "dim": 3, "gram": mat(np.diag([1.0, 1.0, -1.0]))}],
            "homs": [{"src": "A", "dst": "B", "generators": [mat(np.ones((3, 2)))]},
                     {"src": "A", "dst": "A", "generators": [mat(E12)]},
                     {"src": "B", "dst": "B", "generators": [mat(unit(0, 2, 3)), mat(unit(0, 1, 3))]}],
            "involution": {"type": "krein"},
            "symmetry": {"type": "ad", "matrices": {"A": mat(J), "B": mat(np.diag([1.0, 1.0, -1.0]))}},
        }),
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, d in documents().items():
        (OUT / name).write_text(json.dumps(d, indent=2, sort_keys=True) + "\n")
    (OUT / "oracles.json").write_text(json.dumps({"oracles": oracles()}, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(documents()) + 1} files to {OUT}")


if __name__ == "__main__":
    main()
