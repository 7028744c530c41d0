import pytest

from disentangle import fixtures
from disentangle.bounds import (BettiVerdict, Cell, GermProfile, admissible_total_degrees,
                                check_betti, displayed_formula_degrees, first_page_mask)
from disentangle.errors import InputError


def test_mask_231():
    mask = first_page_mask(GermProfile(2, 3, 1))
    assert mask.allowed == {1: [0], 2: [0, 1], 3: [0]}
    assert mask.cell(2, 1) is Cell.ALLOWED and mask.cell(2, 2) is Cell.FORBIDDEN


def test_mask_230():
    assert first_page_mask(GermProfile(2, 3, 0)).allowed == {1: [0], 2: [1], 3: [0]}


@pytest.mark.parametrize("n", range(1, 9))
def test_mask_hypersurface_d0(n):
    mask = first_page_mask(GermProfile(n, n + 1, 0))
    assert sorted(mask.allowed) == list(range(1, n + 2))
    for k in range(2, n + 2):
        assert mask.allowed[k] == [n - k + 1]


def test_mask_351():
    mask = first_page_mask(GermProfile(3, 5, 1))
    assert mask.columns == [1, 2]
    # e_2 = 1 and the threshold ceil(4/2) = 2 admits degree 0
    assert mask.allowed == {1: [0], 2: [0, 1]}


@pytest.mark.parametrize("profile, degrees", [((2, 3, 1), {0, 1, 2}), ((2, 3, 0), {0, 2})])
def test_admissible_examples(profile, degrees):
    assert admissible_total_degrees(GermProfile(*profile)) == degrees


@pytest.mark.parametrize("n", range(1, 9))
def test_hypersurface_special_case(n):
    for d in range(n + 1):
        assert admissible_total_degrees(GermProfile(n, n + 1, d)) == {0} | set(range(n - d, n + 1))


def test_monotone_in_d():
    for n in range(1, 7):
        for N in range(n + 1, n + 5):
            sets = [admissible_total_degrees(GermProfile(n, N, d)) for d in range(n + 1)]
            assert all(a <= b for a, b in zip(sets, sets[1:]))


def test_extremal_d_is_an_interval():
    for n in range(1, 7):
        for N in range(n + 1, n + 5):
            degrees = admissible_total_degrees(GermProfile(n, N, n))
            assert degrees == set(range(max(degrees) + 1))
        assert admissible_total_degrees(GermProfile(n, n + 1, n)) == set(range(n + 1))


def test_mask_never_exceeds_expected_dim():
    for n in range(1, 7):
        for N in range(n + 1, n + 5):
            for d in range(n + 1):
                p = GermProfile(n, N, d)
                for k, qs in first_page_mask(p).allowed.items():
                    assert max(qs) <= max(p.expected_dim(k), 0)


def test_displayed_formula_is_shifted_for_hypersurfaces():
    for n in range(1, 7):
        for d in range(n + 1):
            p = GermProfile(n, n + 1, d)
            assert displayed_formula_degrees(p) == set(range(n + 1 - d, n + 2))


@pytest.mark.parametrize("betti, profile, verdict", [
    ([1, 1, 1], (2, 3, 1), BettiVerdict.CONSISTENT),
    ([1, 0, 1], (2, 3, 0), BettiVerdict.CONSISTENT),
    ([1, 1, 0], (2, 3, 0), BettiVerdict.INCONSISTENT),
    ([2, 0, 1], (2, 3, 0), BettiVerdict.INCONSISTENT),
])
def test_check_betti(betti, profile, verdict):
    assert check_betti(betti, GermProfile(*profile)).verdict is verdict


@pytest.mark.parametrize("name", fixtures.DIAGRAMS)
def test_fixtures_consistent(name):
    from disentangle.image_homology import image_betti
    assert check_betti(image_betti(fixtures.diagram(name)), fixtures.profile(name)).consistent


def test_render():
    text = first_page_mask(GermProfile(2, 3, 1)).render()
    assert text.splitlines()[:3] == ["2 | × × ×", "1 | × • ×", "0 | • • •"]


@pytest.mark.parametrize("bad", [(2, 2, 0), (0, 3, 0), (2, 3, 3), (2, 3, -1)])
def test_invalid_profiles(bad):
    with pytest.raises(InputError):
        GermProfile(*bad)
