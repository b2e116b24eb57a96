import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrs2bench.paths import (
    CenteredPath, check_edges, check_product_lemma, locate, pair_grid,
    product_coordinates, product_path, product_paths, rho,
)

radii = st.integers(0, 7)


def path(r, tag):
    return CenteredPath.from_indexed(r, lambda j: (tag, j))


def test_rho_examples():
    assert rho(2, 4, -2, 4) == 6
    assert rho(2, 4, -2, 0) == 6
    for r in range(6):
        assert rho(r, r, -r, r) == 2 * r


def test_centered_path_basics():
    p = path(4, "a")
    assert list(p.indices()) == [-4, -2, 0, 2, 4]
    assert p.central == ("a", 0)
    assert p[-4] == ("a", -4)
    assert p.edges() == [(-4, -2), (-2, 0), (0, 2), (2, 4)]
    with pytest.raises(IndexError):
        p[1]
    with pytest.raises(ValueError):
        CenteredPath(2, (1, 2))
    with pytest.raises(ValueError):
        path(3, "b").central


def test_product_path_examples():
    p0 = product_path(path(0, "a"), path(0, "b"), 0)
    assert p0.radius == 0 and p0.vertices == ((("a", 0), ("b", 0)),)
    p = product_path(path(2, "a"), path(2, "b"), 0)
    assert p.radius == 4
    coords = product_coordinates(2, 2, 0)
    assert coords[2] == (-2, 2)  # the corner
    assert p[0] == (("a", -2), ("b", 2))
    with pytest.raises(ValueError):
        product_path(path(2, "a"), path(1, "b"), 2)


def test_locate_examples():
    p1, p2 = path(3, "a"), path(5, "b")
    assert locate(p1, p2, -3, 5) == (0, 2)
    with pytest.raises(IndexError):
        locate(p1, p2, 0, 5)


def test_lemma_exhaustive():
    for r1 in range(7):
        for r2 in range(7):
            assert check_product_lemma(r1, r2) == []


@given(radii, radii)
def test_paths_are_a_bijection_onto_the_grid(r1, r2):
    p1, p2 = path(r1, "a"), path(r2, "b")
    verts = [v for q in product_paths(p1, p2) for v in q.vertices]
    grid = [(p1[x], p2[y]) for x, y in pair_grid(r1, r2)]
    assert len(verts) == len(set(verts)) == len(grid)
    assert set(verts) == set(grid)


@given(radii, radii, st.data())
def test_locate_agrees_with_rho(r1, r2, data):
    x = data.draw(st.sampled_from(range(-r1, r1 + 1, 2)))
    y = data.draw(st.sampled_from(range(-r2, r2 + 1, 2)))
    p1, p2 = path(r1, "a"), path(r2, "b")
    k, j = locate(p1, p2, x, y)
    q = product_path(p1, p2, k)
    assert q.radius == rho(r1, r2, x, y) == r1 + r2 - 2 * k
    assert q[j] == (p1[x], p2[y])
    assert j % 2 == (r1 + r2) % 2
    assert check_edges(r1, r2, k)
