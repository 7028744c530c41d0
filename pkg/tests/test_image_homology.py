import random

import pytest

from disentangle import fixtures
from disentangle.equivariant import (EquivariantComplex, alt_homology_dims, from_simplicial,
                                     homology_dims)
from disentangle.errors import InputError, NotADoubleComplex
from disentangle.image_homology import (MultiplePointDiagram, analyze, build_double_complex,
                                        diagram_violations, h1_component_criterion, image_betti,
                                        phi, spectral_pages)
from disentangle.linalg import SparseMatrix

EXPECTED = {
    "b_infinity_top_left": [1, 1, 1],
    "b_infinity_top_left_point": [1, 1, 1],
    "b1_perturbation": [1, 0, 1],
    "b2_perturbation": [1, 0, 2],
    "nodal_edge": [1, 1, 0],
}
CIRCLE = ([0, 1, 2], [[0, 1], [1, 2], [0, 2]])
INTERVAL = ([0, 1], [[0, 1]])
SPHERE = ([0, 1, 2, 3], [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])


def all_diagrams():
    out = {name: fixtures.diagram(name) for name in fixtures.DIAGRAMS}
    out["three sheets over a circle"] = fixtures.sheets_diagram(3, *CIRCLE)
    out["two sheets over a sphere"] = fixtures.sheets_diagram(2, *SPHERE)
    return out


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_betti(name):
    assert image_betti(fixtures.diagram(name)) == EXPECTED[name]


def test_top_left_pages():
    result = analyze(fixtures.diagram("b_infinity_top_left"))
    e1 = result.pages.pages[1]
    assert e1[0][0] == 1 and not any(e1[0][1:])
    assert e1[1][:2] == [1, 1]
    assert [c.basis_sizes for c in result.double_complex.columns][0][0] == 5


@pytest.mark.parametrize("sheets, base, betti", [
    (2, CIRCLE, [1, 1]), (3, CIRCLE, [1, 1]), (2, INTERVAL, [1, 0]),
    (3, INTERVAL, [1, 0]), (2, SPHERE, [1, 0, 1]),
])
def test_trivial_cover_image_is_the_base(sheets, base, betti):
    got = image_betti(fixtures.sheets_diagram(sheets, *base))
    assert got[:len(betti)] == betti and not any(got[len(betti):])


@pytest.mark.parametrize("name, diagram", sorted(all_diagrams().items()))
def test_structural_checks(name, diagram):
    assert diagram_violations(diagram) == []
    result = analyze(diagram)
    assert result.ok, result.checks
    dc = result.double_complex
    assert dc.identity_violations() == []
    assert result.pages.antidiagonal_sums()[:len(result.betti)] == result.betti
    assert result.pages.pages[1][0] == homology_dims(diagram.level(1).complex)
    pages = result.pages.pages
    for r in range(1, max(pages)):
        for p, col in enumerate(pages[r]):
            for q, v in enumerate(col):
                assert pages[r + 1][p][q] <= v
    chi = sum((-1) ** m * b for m, b in enumerate(result.betti))
    assert chi == dc.euler_characteristic()


def test_single_column():
    d = MultiplePointDiagram({1: fixtures.circle(4)})
    pages = spectral_pages(build_double_complex(d))
    assert pages.pages[1] == pages.e_infinity == [[1, 1]]
    assert image_betti(d) == [1, 1]


def test_zero_phi_gives_e1():
    base = fixtures.diagram("nodal_edge")
    d2 = base.level(2)
    zero = [SparseMatrix.zeros(base.level(1).complex.dim(q), d2.complex.dim(q))
            for q in range(d2.complex.top_degree + 1)]
    d = MultiplePointDiagram(base.levels, phi={2: zero})
    pages = spectral_pages(build_double_complex(d))
    assert pages.e_infinity == pages.pages[1]


def test_phi_vanishes_when_faces_agree():
    # two points a, sigma(a) with both faces sending them to the same point p
    two = from_simplicial(["a", "b"], [["a"], ["b"]], [["b", "a"]])
    d = MultiplePointDiagram({2: two})
    assert phi(d, 2, 0).shape == (1, 1)
    assert phi(d, 2, 0).is_zero()
    # gluing two points of a contractible source closes up a loop
    assert image_betti(d) == [1, 1]


def test_phi_on_swapped_intervals():
    d = fixtures.diagram("nodal_edge")
    m = phi(d, 2, 0)
    assert m.shape[1] == len(d.level(2).alt_bases[0])


def _with_faces(base, change):
    faces = {key: list(v) for key, v in base.face_maps.items()}
    change(faces)
    return MultiplePointDiagram(base.levels, faces)


def test_injected_sign_error():
    base = fixtures.diagram("b_infinity_top_left")

    def flip(faces):
        faces[(2, 1)][1] = -faces[(2, 1)][1]
    d = _with_faces(base, flip)
    assert diagram_violations(d)
    with pytest.raises(NotADoubleComplex):
        analyze(d)


def test_injected_non_chain_map():
    base = fixtures.diagram("b_infinity_top_left")

    def corrupt(faces):
        m = faces[(2, 2)][0]
        faces[(2, 2)][0] = SparseMatrix(*m.shape, {(0, j): 1 for j in range(m.shape[1])})
    d = _with_faces(base, corrupt)
    assert any("not a chain map" in v for v in diagram_violations(d))
    with pytest.raises(NotADoubleComplex):
        build_double_complex(d)


def test_missing_face_maps():
    with pytest.raises(InputError):
        MultiplePointDiagram({1: fixtures.circle(3), 2: fixtures.equivariant("reflected_circle")})


def test_criterion_on_fixtures():
    for name in fixtures.DIAGRAMS:
        d2 = fixtures.diagram(name).level(2)
        assert h1_component_criterion(d2) == (alt_homology_dims(d2)[0] != 0)


def test_criterion_on_random_involutions():
    rng = random.Random(99)
    for _ in range(40):
        d2 = fixtures.random_involution_complex(rng)
        assert h1_component_criterion(d2) == (alt_homology_dims(d2)[0] != 0)


def test_criterion_needs_k2():
    with pytest.raises(InputError):
        h1_component_criterion(EquivariantComplex.point())
