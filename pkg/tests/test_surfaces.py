import pytest

from monodromy.cover import (
    BranchData,
    compose_winding_covers,
    euler_characteristic_normalization,
    monodromy_group,
)
from monodromy.perm import Permutation, compose
from monodromy.simplicial import (
    ComplexError,
    HomologyProfile,
    SimplicialComplex,
    homology,
    is_closed_surface,
    is_cycle_graph,
    vertex_link,
)
from monodromy.surfaces import (
    GluedTriangle,
    flag_subdivision,
    normalization_cells,
    normalization_surface,
    polygon_surface,
    surface,
)


def bd(n, cycles):
    return BranchData.from_cycles(n, cycles)


@pytest.mark.parametrize("genus", range(5))
def test_surface_homology_and_links(genus):
    s = surface(genus)
    assert s.euler_characteristic() == 2 - 2 * genus
    assert homology(s) == HomologyProfile((1, 2 * genus, 1), ((), (), ()))
    for v in s.vertices:
        assert is_cycle_graph(vertex_link(s, v))


def test_surface_range():
    with pytest.raises(ValueError):
        surface(5)
    with pytest.raises(ValueError):
        surface(-1)


def test_polygon_surface_centroids_cover_every_triangle():
    complex_, centroids = polygon_surface(1)
    assert set(centroids) == set(complex_.faces(2))
    assert all(abs(x) < 1 and abs(y) < 1 for x, y in centroids.values())


def test_flag_subdivision_of_a_single_triangle():
    cell = GluedTriangle("t", ("a", "b", "c"), ("ab", "bc", "ac"))
    complex_, label, flags = flag_subdivision([cell])
    assert complex_.f_vector() == [7, 12, 6]
    assert len(flags) == 6
    assert homology(complex_).betti == (1, 0, 0)


def test_flag_subdivision_of_two_triangles_glued_to_a_sphere():
    # two triangles glued along all three edges give a sphere
    cells = [GluedTriangle(k, ("a", "b", "c"), ("ab", "bc", "ac")) for k in ("up", "down")]
    complex_, _, _ = flag_subdivision(cells)
    assert is_closed_surface(complex_)
    assert complex_.euler_characteristic() == 2


def test_flag_subdivision_rejects_degenerate_cells():
    with pytest.raises(ComplexError):
        flag_subdivision([GluedTriangle("t", ("a", "a", "b"), ("x", "y", "z"))])


@pytest.mark.parametrize("n,cycles,chi,sheets", [
    (2, ["(0 1)", "(0 1)"], 2, 2),
    (2, ["(0 1)"] * 4, 0, 2),
    (3, ["(0 1)", "(1 2)", "(0 1 2)"], 2, 6),
])
def test_normalization_examples(n, cycles, chi, sheets):
    b = bd(n, cycles)
    assert monodromy_group(b).order == sheets
    x = normalization_surface(b)
    assert is_closed_surface(x)
    assert x.euler_characteristic() == chi == euler_characteristic_normalization(b)
    genus = (2 - chi) // 2
    assert homology(x) == HomologyProfile((1, 2 * genus, 1), ((), (), ()))


def test_normalization_cell_count():
    # each sheet is a 2k-gon cut into 2k triangles from its centre
    b = bd(3, ["(0 1)", "(1 2)", "(0 1 2)"])
    assert len(normalization_cells(b)) == 6 * 2 * 3


@pytest.mark.parametrize("a,b", [(2, 2), (3, 2)])
def test_normalization_of_winding_composites(a, b):
    data = compose_winding_covers(a, b)
    x = normalization_surface(data)
    assert is_closed_surface(x)
    assert x.euler_characteristic() == euler_characteristic_normalization(data)


def test_normalization_refuses_large_groups():
    head = [Permutation.parse("(0 1)", 5), Permutation.parse("(0 1 2 3 4)", 5)]
    closing = compose(head[0], head[1]).inverse()
    b = BranchData(5, (*head, closing))
    assert monodromy_group(b).order == 120
    with pytest.raises(ValueError):
        normalization_surface(b)


def test_surface_is_deterministic():
    assert surface(2) == surface(2)
    assert isinstance(surface(2), SimplicialComplex)
