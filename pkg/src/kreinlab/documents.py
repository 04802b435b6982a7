"""JSON documents for spaces, operators, algebras, categories and states.

Every document is ``{"version": 1, "kind": ..., "payload": {...}}``.  Complex
numbers are ``[re, im]`` pairs and matrices are
``{"shape": [rows, cols], "data": [[[re, im], ...], ...]}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .cstar_category import CategoryObject, OperatorCategory, category_from_generators
from .errors import InputError
from .gns_repr import CategoryState, functional_state, vector_state
from .involution import AdSymmetry, LinearSymmetry, SandwichInvolution
from .krein_space import KreinSpace, canonical_decomposition
from .matrix_core import DEFAULT_TOL
from .star_algebra import algebra_from_generators

__all__ = [
    "Document",
    "KINDS",
    "decode_matrix",
    "decode_vector",
    "encode_matrix",
    "encode_value",
    "encode_vector",
    "load_document",
    "parse_document",
    "build_space",
    "build_operator",
    "build_algebra",
    "build_category",
    "build_state",
]

VERSION = 1
KINDS = ("space", "operator", "algebra", "category", "state")


def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def encode_matrix(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"shape": list(M.shape), "data": [[_c(z) for z in row] for row in M]}


def encode_vector(v) -> list:
    return [_c(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def encode_value(obj):
    """JSON-ready form of report data and witnesses."""
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return encode_matrix(obj)
        if obj.ndim == 1:
            return encode_vector(obj)
        if obj.ndim == 0:
            return encode_value(obj.item())
        return [encode_value(x) for x in obj]
    if isinstance(obj, (list, tuple)):
        return [encode_value(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): encode_value(v) for k, v in obj.items()}
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _c(obj)
    return obj


def _scalar(z, path) -> complex:
    if isinstance(z, (int, float)) and not isinstance(z, bool):
        return complex(z)
    if isinstance(z, list) and len(z) == 2 and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in z):
        return complex(z[0], z[1])
    raise InputError(f"{path}: expected a number or [re, im] pair, got {z!r}")


def decode_matrix(obj, path="matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected an object with 'shape' and 'data'")
    for key in ("shape", "data"):
        if key not in obj:
            raise InputError(f"{path}.{key}: missing")
    shape = obj["shape"]
    if not (isinstance(shape, list) and len(shape) == 2 and all(isinstance(s, int) and s >= 0 for s in shape)):
        raise InputError(f"{path}.shape: expected [rows, cols] of non-negative integers")
    data = obj["data"]
    if not isinstance(data, list) or len(data) != shape[0]:
        raise InputError(f"{path}.data: expected {shape[0]} rows")
    M = np.zeros(shape, dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise InputError(f"{path}.data[{i}]: expected {shape[1]} entries")
        for j, z in enumerate(row):
            M[i, j] = _scalar(z, f"{path}.data[{i}][{j}]")
    if not np.all(np.isfinite(M)):
        raise InputError(f"{path}: entries must be finite")
    return M


def decode_vector(obj, path="vector") -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise InputError(f"{path}: expected a non-empty list of [re, im] pairs")
    return np.array([_scalar(z, f"{path}[{k}]") for k, z in enumerate(obj)], dtype=complex)


@dataclass
class Document:
    kind: str
    payload: Dict[str, Any]
    version: int = VERSION
    base: Optional[Path] = None

    def to_json(self) -> dict:
        return {"version": self.version, "kind": self.kind, "payload": self.payload}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _field(obj, key, path, types=None):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{path}.{key}: missing")
    val = obj[key]
    if types is not None and not isinstance(val, types):
        raise InputError(f"{path}.{key}: wrong type {type(val).__name__}")
    return val


def parse_document(obj, base=None, expect=None) -> Document:
    """Validate the envelope and the payload fields of a decoded JSON object."""
    if not isinstance(obj, dict):
        raise InputError("document: expected a JSON object")
    version = _field(obj, "version", "document", int)
    if version != VERSION:
        raise InputError(f"document.version: unsupported version {version}")
    kind = _field(obj, "kind", "document", str)
    if kind not in KINDS:
        raise InputError(f"document.kind: unknown kind {kind!r}")
    if expect is not None and kind not in ((expect,) if isinstance(expect, str) else expect):
        raise InputError(f"document.kind: expected {expect}, got {kind!r}")
    payload = _field(obj, "payload", "document", dict)
    doc = Document(kind, payload, version, None if base is None else Path(base))
    _VALIDATORS[kind](payload)
    return doc


def load_document(path, expect=None) -> Document:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_document(obj, path.parent, expect)


# -- payload validation ------------------------------------------------------


def _check_space(p):
    decode_matrix(_field(p, "gram", "payload"), "payload.gram")
    if "symmetry" in p:
        decode_matrix(p["symmetry"], "payload.symmetry")


def _check_operator(p):
    decode_matrix(_field(p, "matrix", "payload"), "payload.matrix")


def _check_involution(p, path, per_object=False):
    inv = _field(p, "involution", path, dict)
    kind = _field(inv, "type", f"{path}.involution", str)
    if kind not in ("adjoint", "krein"):
        raise InputError(f"{path}.involution.type: unknown involution {kind!r}")
    if kind == "krein" and not per_object:
        decode_matrix(_field(inv, "gram", f"{path}.involution"), f"{path}.involution.gram")
    return kind


def _check_algebra(p):
    n = _field(p, "ambient_dim", "payload", int)
    if n < 1:
        raise InputError("payload.ambient_dim: must be positive")
    gens = _field(p, "generators", "payload", list)
    for k, g in enumerate(gens):
        M = decode_matrix(g, f"payload.generators[{k}]")
        if M.shape != (n, n):
            raise InputError(f"payload.generators[{k}]: shape {list(M.shape)} != [{n}, {n}]")
    _check_involution(p, "payload")
    if "symmetry" in p:
        sym = _field(p, "symmetry", "payload", dict)
        kind = _field(sym, "type", "payload.symmetry", str)
        if kind == "ad":
            decode_matrix(_field(sym, "matrix", "payload.symmetry"), "payload.symmetry.matrix")
        elif kind == "linear":
            pairs = _field(sym, "pairs", "payload.symmetry", list)
            for k, pr in enumerate(pairs):
                if not isinstance(pr, list) or len(pr) != 2:
                    raise InputError(f"payload.symmetry.pairs[{k}]: expected [x, alpha(x)]")
                decode_matrix(pr[0], f"payload.symmetry.pairs[{k}][0]")
                decode_matrix(pr[1], f"payload.symmetry.pairs[{k}][1]")
        elif kind != "identity":
            raise InputError(f"payload.symmetry.type: unknown symmetry {kind!r}")


def _check_category(p):
    objs = _field(p, "objects", "payload", list)
    if not objs:
        raise InputError("payload.objects: at least one object required")
    labels = []
    inv = _check_involution(p, "payload", per_object=True)
    for k, o in enumerate(objs):
        path = f"payload.objects[{k}]"
        labels.append(_field(o, "label", path, str))
        d = _field(o, "dim", path, int)
        if d < 1:
            raise InputError(f"{path}.dim: must be positive")
        if inv == "krein":
            G = decode_matrix(_field(o, "gram", path), f"{path}.gram")
            if G.shape != (d, d):
                raise InputError(f"{path}.gram: shape {list(G.shape)} != [{d}, {d}]")
    if len(set(labels)) != len(labels):
        raise InputError("payload.objects: labels must be unique")
    for k, h in enumerate(_field(p, "homs", "payload", list)):
        path = f"payload.homs[{k}]"
        src, dst = _field(h, "src", path, str), _field(h, "dst", path, str)
        for key, lab in (("src", src), ("dst", dst)):
            if lab not in labels:
                raise InputError(f"{path}.{key}: unknown object {lab!r}")
        shape = (objs[labels.index(dst)]["dim"], objs[labels.index(src)]["dim"])
        for j, g in enumerate(_field(h, "generators", path, list)):
            M = decode_matrix(g, f"{path}.generators[{j}]")
            if M.shape != shape:
                raise InputError(f"{path}.generators[{j}]: shape {list(M.shape)} != {list(shape)}")
    if "symmetry" in p:
        sym = _field(p, "symmetry", "payload", dict)
        kind = _field(sym, "type", "payload.symmetry", str)
        if kind == "ad":
            mats = _field(sym, "matrices", "payload.symmetry", dict)
            for lab in labels:
                decode_matrix(_field(mats, lab, "payload.symmetry.matrices"), f"payload.symmetry.matrices.{lab}")
        elif kind != "identity":
            raise InputError(f"payload.symmetry.type: unknown symmetry {kind!r}")


def _check_state(p):
    _field(p, "category", "payload", str)
    has_f, has_v = "functionals" in p, "vectors" in p
    if has_f == has_v:
        raise InputError("payload: exactly one of 'functionals' or 'vectors' is required")
    if has_f:
        for k, f in enumerate(_field(p, "functionals", "payload", list)):
            path = f"payload.functionals[{k}]"
            _field(f, "src", path, str)
            _field(f, "dst", path, str)
            decode_matrix(_field(f, "matrix", path), f"{path}.matrix")
    else:
        vecs = _field(p, "vectors", "payload", dict)
        for lab, v in vecs.items():
            decode_vector(v, f"payload.vectors.{lab}")


_VALIDATORS = {
    "space": _check_space,
    "operator": _check_operator,
    "algebra": _check_algebra,
    "category": _check_category,
    "state": _check_state,
}


# -- builders ------------------------------------------------------------------


def build_space(doc: Document, tol=DEFAULT_TOL) -> Tuple[KreinSpace, Optional[np.ndarray]]:
    p = doc.payload
    space = KreinSpace(decode_matrix(p["gram"], "payload.gram"), tol)
    J = decode_matrix(p["symmetry"], "payload.symmetry") if "symmetry" in p else None
    return space, J


def build_operator(doc: Document) -> np.ndarray:
    return decode_matrix(doc.payload["matrix"], "payload.matrix")


def _krein_metric(G, S, tol):
    """``G S`` when it is positive definite, else ``|G|``."""
    if S is not None:
        M = G @ S
        H = 0.5 * (M + M.conj().T)
        scale = 1.0 + np.linalg.norm(M, 2)
        if np.linalg.norm(M - H, 2) <= tol * scale and np.linalg.eigvalsh(H)[0] > tol * scale:
            return H
    M = G @ canonical_decomposition(KreinSpace(G, tol), tol).J
    return 0.5 * (M + M.conj().T)


def build_algebra(doc: Document, tol=DEFAULT_TOL):
    """Returns ``(algebra, alpha)``; ``alpha`` is ``None`` without a symmetry field."""
    p = doc.payload
    n = p["ambient_dim"]
    gens = [decode_matrix(g, f"payload.generators[{k}]") for k, g in enumerate(p["generators"])]
    sym = p.get("symmetry")
    S = decode_matrix(sym["matrix"], "payload.symmetry.matrix") if sym and sym["type"] == "ad" else None
    if p["involution"]["type"] == "krein":
        G = decode_matrix(p["involution"]["gram"], "payload.involution.gram")
        if G.shape != (n, n):
            raise InputError(f"payload.involution.gram: shape {list(G.shape)} != [{n}, {n}]")
        space = KreinSpace(G, tol)
        alg = algebra_from_generators(n, gens, space, tol, metric=_krein_metric(space.gram, S, tol))
    else:
        alg = algebra_from_generators(n, gens, "adjoint", tol)
    alpha = None
    if sym is not None:
        if sym["type"] == "ad":
            if S.shape != (n, n):
                raise InputError(f"payload.symmetry.matrix: shape {list(S.shape)} != [{n}, {n}]")
            alpha = AdSymmetry((S,))
        elif sym["type"] == "identity":
            alpha = AdSymmetry.identity([n])
        else:
            pairs = [(decode_matrix(x, f"payload.symmetry.pairs[{k}][0]"),
                      decode_matrix(y, f"payload.symmetry.pairs[{k}][1]"))
                     for k, (x, y) in enumerate(sym["pairs"])]
            alpha = LinearSymmetry.from_pairs(alg.basis, pairs)
    return alg, alpha


def build_category(doc: Document, tol=DEFAULT_TOL):
    """Returns ``(category, alpha)``; ``alpha`` is ``None`` without a symmetry field."""
    p = doc.payload
    labels = [o["label"] for o in p["objects"]]
    dims = [o["dim"] for o in p["objects"]]
    sym = p.get("symmetry")
    Ss = None
    if sym and sym["type"] == "ad":
        Ss = []
        for lab, d in zip(labels, dims):
            S = decode_matrix(sym["matrices"][lab], f"payload.symmetry.matrices.{lab}")
            if S.shape != (d, d):
                raise InputError(f"payload.symmetry.matrices.{lab}: shape {list(S.shape)} != [{d}, {d}]")
            Ss.append(S)
    if p["involution"]["type"] == "krein":
        grams = [KreinSpace(decode_matrix(o["gram"], f"payload.objects[{k}].gram"), tol).gram
                 for k, o in enumerate(p["objects"])]
        metrics = [_krein_metric(G, None if Ss is None else Ss[k], tol) for k, G in enumerate(grams)]
        objs = [CategoryObject(l, d, m, G) for l, d, m, G in zip(labels, dims, metrics, grams)]
        involution = SandwichInvolution.krein(grams)
        tag = "krein"
    else:
        objs = [CategoryObject(l, d) for l, d in zip(labels, dims)]
        involution = SandwichInvolution.hilbert(dims)
        tag = "adjoint"
    gens: Dict[Tuple[int, int], list] = {}
    for k, h in enumerate(p["homs"]):
        key = (labels.index(h["src"]), labels.index(h["dst"]))
        gens.setdefault(key, []).extend(
            decode_matrix(g, f"payload.homs[{k}].generators[{j}]") for j, g in enumerate(h["generators"])
        )
    cat = category_from_generators(objs, gens, involution, tag, tol)
    alpha = None
    if sym is not None:
        alpha = AdSymmetry(tuple(Ss)) if Ss is not None else AdSymmetry.identity(dims)
    return cat, alpha


def build_state(doc: Document, category_doc: Optional[Document] = None, tol=DEFAULT_TOL):
    """Returns ``(state, category, alpha)``; the category path is relative to the state file."""
    p = doc.payload
    if category_doc is None:
        base = doc.base or Path(".")
        category_doc = load_document(base / p["category"], "category")
    cat, alpha = build_category(category_doc, tol)
    labels = [o.label for o in cat.objects]
    if "functionals" in p:
        funcs = {}
        for k, f in enumerate(p["functionals"]):
            for key in ("src", "dst"):
                if f[key] not in labels:
                    raise InputError(f"payload.functionals[{k}].{key}: unknown object {f[key]!r}")
            funcs[(labels.index(f["src"]), labels.index(f["dst"]))] = decode_matrix(
                f["matrix"], f"payload.functionals[{k}].matrix")
        state = functional_state(cat, funcs)
    else:
        vecs = p["vectors"]
        missing = [l for l in labels if l not in vecs]
        if missing:
            raise InputError(f"payload.vectors.{missing[0]}: missing")
        state = vector_state(cat, [decode_vector(vecs[l], f"payload.vectors.{l}") for l in labels])
    return state, cat, alpha
