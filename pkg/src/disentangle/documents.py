"""JSON documents for germs, equivariant complexes and multiple point diagrams.

Germ::

    {"n": 2, "N": 3, "components": ["x^2", "u1^2*x"], "parameters": []}

Equivariant complex, raw form (matrix entries are ints or "p/q" strings)::

    {"k": 2, "basis_sizes": [2, 2],
     "boundaries": [{"degree": 1, "entries": [[0, 0, -1], [1, 0, 1], ...]}],
     "generators": [[{"perm": [1, 0], "signs": [1, 1]}, {"perm": [1, 0]}]]}

Equivariant complex, simplicial form (one vertex permutation per adjacent
transposition, aligned with ``vertices``)::

    {"k": 2, "vertices": ["a", "b"], "simplices": [["a", "b"]], "action": [["b", "a"]]}

Diagram::

    {"kmax": 2, "levels": [null, {...}],
     "face_maps": [{"k": 2, "i": 1, "degree": 0, "entries": [...]},
                   {"k": 2, "i": 2, "vertex_map": [...]}],
     "phi": [{"k": 2, "degree": 0, "entries": [...]}],
     "profile": {"n": 2, "N": 3, "d": 1}}

``levels[0] = null`` stands for the one-point source model.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .bounds import GermProfile
from .equivariant import (ChainComplex, EquivariantComplex, SignedPermutation, SymmetricAction,
                          from_simplicial)
from .errors import DisentangleError, InputError
from .image_homology import MultiplePointDiagram
from .linalg import SparseMatrix
from .multipoint import MapGerm


def load_json(source) -> dict:
    """Read a UTF-8 JSON document from a path, a string or an already-parsed dict."""
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from None
    else:
        text = source
    if not text.strip():
        raise InputError("empty document")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    return doc


def _require(doc: dict, key: str, kind=None):
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"field {key!r} must be {kind.__name__ if isinstance(kind, type) else kind}")
    return value


def _entry_value(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"matrix entry {v!r} must be an int or a 'p/q' string")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational {v!r}") from None


def _matrix(rows: int, cols: int, entries) -> SparseMatrix:
    if not isinstance(entries, list):
        raise InputError("entries must be a list of [row, col, value] triplets")
    triplets = []
    for t in entries:
        if not (isinstance(t, list) and len(t) == 3 and isinstance(t[0], int) and isinstance(t[1], int)):
            raise InputError(f"bad triplet {t!r}")
        triplets.append((t[0], t[1], _entry_value(t[2])))
    try:
        return SparseMatrix.from_triplets(rows, cols, triplets)
    except DisentangleError as exc:
        raise InputError(str(exc)) from None


def _triplets(m: SparseMatrix) -> list:
    return [[i, j, int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"]
            for i, j, v in m.triplets()]


# germs

def germ_from_document(doc) -> MapGerm:
    doc = load_json(doc)
    n, N = _require(doc, "n", int), _require(doc, "N", int)
    comps = _require(doc, "components", list)
    params = doc.get("parameters", [])
    if not all(isinstance(c, str) for c in comps):
        raise InputError("components must be polynomial strings")
    return MapGerm.from_strings(n, N, comps, params)


def germ_to_document(germ: MapGerm) -> dict:
    doc = {"n": germ.n, "N": germ.N, "components": [str(c) for c in germ.components]}
    if germ.parameters:
        doc["parameters"] = list(germ.parameters)
    return doc


# equivariant complexes

def complex_from_document(doc, check: bool = True) -> EquivariantComplex:
    doc = load_json(doc)
    try:
        if "simplices" in doc:
            return _simplicial_from_document(doc, check)
        return _raw_from_document(doc, check)
    except InputError:
        raise
    except DisentangleError as exc:
        if check:
            raise
        raise InputError(str(exc)) from None


def _simplicial_from_document(doc: dict, check: bool) -> EquivariantComplex:
    vertices = _require(doc, "vertices", list)
    simplices = _require(doc, "simplices", list)
    action = doc.get("action", [])
    k = doc.get("k", len(action) + 1)
    return from_simplicial(vertices, simplices, action, k=k, check=check)


def _raw_from_document(doc: dict, check: bool) -> EquivariantComplex:
    sizes = _require(doc, "basis_sizes", list)
    if not sizes or not all(isinstance(s, int) and s >= 0 for s in sizes):
        raise InputError("basis_sizes must be a nonempty list of nonnegative ints")
    k = doc.get("k", 1)
    per_degree = {q: [] for q in range(1, len(sizes))}
    for b in doc.get("boundaries", []):
        q = _require(b, "degree", int)
        if q not in per_degree:
            raise InputError(f"boundary degree {q} outside 1..{len(sizes) - 1}")
        per_degree[q].extend(_require(b, "entries", list))
    boundaries = [_matrix(sizes[q - 1], sizes[q], per_degree[q]) for q in range(1, len(sizes))]
    gens = doc.get("generators", [])
    if len(gens) != k - 1:
        raise InputError(f"S_{k} needs {k - 1} generators, got {len(gens)}")
    matrices = []
    for g in gens:
        if len(g) != len(sizes):
            raise InputError("each generator needs one signed permutation per degree")
        mats = []
        for q, sp in enumerate(g):
            perm = _require(sp, "perm", list)
            signs = sp.get("signs", [1] * len(perm))
            if len(perm) != sizes[q] or len(signs) != sizes[q]:
                raise InputError(f"signed permutation in degree {q} has the wrong length")
            mats.append(_matrix(sizes[q], sizes[q], [[t, j, s] for j, (t, s) in enumerate(zip(perm, signs))]))
        matrices.append(mats)
    cx = ChainComplex(sizes, boundaries, check=check)
    return EquivariantComplex(cx, SymmetricAction(k, matrices), check=check)


def complex_to_document(ec: EquivariantComplex) -> dict:
    """Raw-form document of any equivariant complex."""
    cx = ec.complex
    gens = []
    for i in range(ec.k - 1):
        per = []
        for q in range(cx.top_degree + 1):
            sp = SignedPermutation.from_matrix(ec.generator(i, q))
            per.append({"perm": list(sp.targets), "signs": list(sp.signs)})
        gens.append(per)
    return {
        "k": ec.k,
        "basis_sizes": list(cx.basis_sizes),
        "boundaries": [{"degree": q, "entries": _triplets(cx.boundary(q))}
                       for q in range(1, cx.top_degree + 1)],
        "generators": gens,
    }


# diagrams

def diagram_from_document(doc, check: bool = True) -> MultiplePointDiagram:
    doc = load_json(doc)
    level_docs = _require(doc, "levels", list)
    kmax = doc.get("kmax", len(level_docs))
    if len(level_docs) != kmax:
        raise InputError(f"kmax = {kmax} but {len(level_docs)} levels given")
    levels = {}
    for k, ld in enumerate(level_docs, start=1):
        if ld is None:
            if k != 1:
                raise InputError("only level 1 may be null (the point)")
            levels[1] = EquivariantComplex.point()
            continue
        ld = dict(ld)
        ld.setdefault("k", k)
        if ld["k"] != k:
            raise InputError(f"level {k} declares k = {ld['k']}")
        levels[k] = complex_from_document(ld, check=check)

    def dims(k):
        return levels[k].complex

    faces: dict = {}
    for fm in doc.get("face_maps", []):
        k, i = _require(fm, "k", int), _require(fm, "i", int)
        if not (2 <= k <= kmax and 1 <= i <= k):
            raise InputError(f"face map ({k}, {i}) out of range")
        if "vertex_map" in fm:
            src, dst = levels[k].simplicial, levels[k - 1].simplicial
            if src is None or dst is None:
                raise InputError("vertex_map face maps need simplicial levels")
            vmap = fm["vertex_map"]
            if isinstance(vmap, list):
                if len(vmap) != len(src.vertices):
                    raise InputError("vertex_map length does not match the vertex list")
                vmap = dict(zip(src.vertices, vmap))
            try:
                faces[(k, i)] = src.chain_map(dst, vmap)
            except DisentangleError as exc:
                raise InputError(f"face map ({k}, {i}): {exc}") from None
            continue
        q = _require(fm, "degree", int)
        src, dst = dims(k), dims(k - 1)
        if not 0 <= q <= src.top_degree:
            raise InputError(f"face map degree {q} outside D^{k}")
        per = faces.setdefault((k, i), {})
        if not isinstance(per, dict):
            raise InputError(f"face map ({k}, {i}) given twice")
        per[q] = _matrix(dst.dim(q), src.dim(q), _require(fm, "entries", list))
    face_maps = {key: _fill(val, dims(key[0]), dims(key[0] - 1)) if isinstance(val, dict) else val
                 for key, val in faces.items()}

    phis: dict = {}
    for ph in doc.get("phi", []):
        k, q = _require(ph, "k", int), _require(ph, "degree", int)
        if not 2 <= k <= kmax or not 0 <= q <= dims(k).top_degree:
            raise InputError(f"phi entry ({k}, degree {q}) out of range")
        phis.setdefault(k, {})[q] = _matrix(dims(k - 1).dim(q), dims(k).dim(q), _require(ph, "entries", list))
    phi = {k: _fill(per, dims(k), dims(k - 1)) for k, per in phis.items()}
    return MultiplePointDiagram(levels, face_maps, phi)


def _fill(per_degree: dict, src: ChainComplex, dst: ChainComplex) -> list:
    return [per_degree.get(q, SparseMatrix.zeros(dst.dim(q), src.dim(q)))
            for q in range(src.top_degree + 1)]


def profile_from_document(doc) -> GermProfile | None:
    doc = load_json(doc)
    prof = doc.get("profile")
    if prof is None:
        return None
    return GermProfile(_require(prof, "n", int), _require(prof, "N", int), _require(prof, "d", int))


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
