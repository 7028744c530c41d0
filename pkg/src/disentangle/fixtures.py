"""Worked examples as ready-made objects, plus generators for test models.

JSON files under ``data/`` hold the germs of the cuspidal edge and B_infinity
families and triangulated models of the double point curves of their stable
perturbations.  The models are small simplicial stand-ins chosen to carry the
right S_2 action on homology:

* top-left perturbation of B_infinity: two circles exchanged by the involution;
* stable perturbation of B_1: one circle, reflected by x -> -x;
* stable perturbation of B_2: a figure eight, each loop reflected;
* nodal edge: two intervals exchanged.
"""

from __future__ import annotations

import random
from importlib import resources
from itertools import permutations

from .bounds import GermProfile
from .documents import (complex_from_document, diagram_from_document, germ_from_document,
                        load_json, profile_from_document)
from .equivariant import EquivariantComplex, from_simplicial
from .image_homology import MultiplePointDiagram

GERMS = ("s_infinity", "b_infinity", "b_abc_family", "x2_x4", "degenerate")
DIAGRAMS = ("b_infinity_top_left", "b_infinity_top_left_point", "b1_perturbation",
            "b2_perturbation", "nodal_edge")


def data_path(name: str):
    return resources.files(__package__).joinpath("data").joinpath(f"{name}.json")


def document(name: str) -> dict:
    return load_json(data_path(name).read_text(encoding="utf-8"))


def germ(name: str):
    return germ_from_document(document(name))


def diagram(name: str) -> MultiplePointDiagram:
    return diagram_from_document(document(name))


def profile(name: str) -> GermProfile:
    return profile_from_document(document(name))


def d2(name: str) -> EquivariantComplex:
    """Level 2 of a diagram fixture."""
    return diagram(name).level(2)


def equivariant(name: str) -> EquivariantComplex:
    return complex_from_document(document(name))


# small complexes

def circle(n: int = 3, involution: str | None = None) -> EquivariantComplex:
    """n-gon; ``involution`` is None, "reflection" (fixes vertex 0) or "rotation" (n even)."""
    simplices = [[i, (i + 1) % n] for i in range(n)]
    if involution is None:
        return from_simplicial(range(n), simplices)
    if involution == "reflection":
        perm = [(-i) % n for i in range(n)]
    elif involution == "rotation":
        perm = [(i + n // 2) % n for i in range(n)]
    else:
        raise ValueError(involution)
    return from_simplicial(range(n), simplices, [perm])


def sphere() -> EquivariantComplex:
    """Boundary of the 3-simplex."""
    return from_simplicial(range(4), [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])


def trivial_k2(ec_vertices, simplices) -> EquivariantComplex:
    return from_simplicial(ec_vertices, simplices, [list(ec_vertices)])


def sheets_diagram(sheets: int, base_vertices, base_simplices) -> MultiplePointDiagram:
    """Multiple point diagram of the trivial ``sheets``-fold cover of a base complex.

    D^k is (injective k-tuples of sheets) x base, S_k permutes tuple entries and
    eps^{i,k} forgets the i-th entry.  The image is the base itself.
    """
    base_vertices = list(base_vertices)
    levels, faces, simplicial = {}, {}, {}
    for k in range(1, sheets + 1):
        tuples = sorted(permutations(range(sheets), k))
        verts = [(v, t) for v in base_vertices for t in tuples]
        simps = [[(v, t) for v in s] for s in base_simplices for t in tuples]
        action = []
        for i in range(k - 1):
            def swap(t, i=i):
                t = list(t)
                t[i], t[i + 1] = t[i + 1], t[i]
                return tuple(t)
            action.append({(v, t): (v, swap(t)) for v, t in verts})
        ec = from_simplicial(verts, simps, action, k=k)
        levels[k] = ec
        simplicial[k] = ec.simplicial
        if k >= 2:
            for i in range(1, k + 1):
                vmap = {(v, t): (v, t[:i - 1] + t[i:]) for v, t in verts}
                faces[(k, i)] = simplicial[k].chain_map(simplicial[k - 1], vmap)
    return MultiplePointDiagram(levels, faces)


def random_involution_complex(rng: random.Random, max_vertices: int = 9,
                              triangles: bool = True) -> EquivariantComplex:
    """A random small simplicial complex with a random simplicial involution."""
    n = rng.randint(2, max_vertices)
    verts = list(range(n))
    shuffled = verts[:]
    rng.shuffle(shuffled)
    perm = list(range(n))
    npairs = rng.randint(0, n // 2)
    for a in range(npairs):
        x, y = shuffled[2 * a], shuffled[2 * a + 1]
        perm[x], perm[y] = y, x
    simplices = set()
    for _ in range(rng.randint(0, 2 * n)):
        e = tuple(sorted(rng.sample(verts, 2)))
        simplices.add(e)
    if triangles and n >= 3:
        for _ in range(rng.randint(0, 2)):
            simplices.add(tuple(sorted(rng.sample(verts, 3))))
    closed = set()
    for s in simplices:
        closed.add(s)
        closed.add(tuple(sorted(perm[v] for v in s)))
    return from_simplicial(verts, sorted(closed), [perm])
