"""Triangulated closed orientable surfaces.

Both builders start from a triangulated polygon whose boundary edges are
glued in pairs.  The glued object is only a Delta-complex (several
triangles share the same vertex triple), so it is barycentrically
subdivided: the new vertices are the cells, the new triangles are flags
``vertex < edge < triangle``.  When every glued triangle has three distinct
vertex classes and three distinct edge classes the flag complex is a
genuine simplicial complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable

from .cover import BranchData, validate
from .perm import compose, generate_group
from .simplicial import ComplexError, SimplicialComplex, is_closed_surface

MAX_GENUS = 4
MAX_SHEETS = 48


@dataclass(frozen=True)
class GluedTriangle:
    """A 2-cell of a Delta-complex.

    ``vertices`` are vertex classes.  ``edges[0]`` joins vertices 0-1,
    ``edges[1]`` joins 1-2 and ``edges[2]`` joins 0-2.
    """

    key: Hashable
    vertices: tuple[Hashable, Hashable, Hashable]
    edges: tuple[Hashable, Hashable, Hashable]


_EDGE_ENDS = ((0, 1), (1, 2), (0, 2))


def flag_subdivision(
    cells: list[GluedTriangle],
) -> tuple[SimplicialComplex, dict[Hashable, int], list[tuple[GluedTriangle, int, int]]]:
    """Barycentric subdivision of a glued triangle complex.

    Returns the complex, the labelling of cells by integer vertices and, for
    each new triangle, the ``(cell, edge slot, vertex slot)`` flag it came from.
    """
    for t in cells:
        if len(set(t.vertices)) != 3 or len(set(t.edges)) != 3:
            raise ComplexError(f"cell {t.key} has repeated vertex or edge classes")
    label: dict[Hashable, int] = {}

    def vid(tag: str, cls: Hashable) -> int:
        key = (tag, cls)
        if key not in label:
            label[key] = len(label)
        return label[key]

    triangles = []
    flags = []
    for t in cells:
        tv = vid("t", t.key)
        for slot, (i, j) in enumerate(_EDGE_ENDS):
            ev = vid("e", t.edges[slot])
            for end in (i, j):
                triangles.append((vid("v", t.vertices[end]), ev, tv))
                flags.append((t, slot, end))
    return SimplicialComplex.from_maximal(triangles), label, flags


def _handle_word(genus: int) -> list[tuple[int, int]]:
    """Sides of the standard 4g-gon as ``(edge label, exponent)``."""
    word = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return word


def _polygon_cells(genus: int) -> tuple[list[GluedTriangle], dict]:
    """Cone-from-centre triangulation of the identified 4g-gon, with each side
    split at its midpoint, plus planar positions of each cell's corners."""
    word = _handle_word(genus)
    sides = len(word)
    step = 2 * math.pi / sides
    corner_xy = [
        (math.cos(step * (k + 0.5)), math.sin(step * (k + 0.5))) for k in range(sides)
    ]
    cells, positions = [], {}
    for s, (lab, exp) in enumerate(word):
        halves = [("h", lab, "start"), ("h", lab, "end")]
        if exp < 0:
            halves.reverse()
        p0, p1 = corner_xy[s], corner_xy[(s + 1) % sides]
        mid = ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)
        for half, (corner, corner_pos) in enumerate(
            [(s, p0), ((s + 1) % sides, p1)]
        ):
            cell = GluedTriangle(
                key=("T", s, half),
                vertices=("C", ("m", lab), "P"),
                edges=(("rm", s), halves[half], ("rc", corner)),
            )
            cells.append(cell)
            positions[cell.key] = ((0.0, 0.0), mid, corner_pos)
    return cells, positions


def tetrahedron_boundary() -> SimplicialComplex:
    return SimplicialComplex.from_maximal([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def polygon_surface(genus: int) -> tuple[SimplicialComplex, dict[tuple[int, ...], tuple[float, float]]]:
    """Genus ``g >= 1`` surface with the planar centroid of each triangle.

    The centroids place each triangle inside the regular 4g-gon (corners on
    the unit circle); they let callers cut the surface along polygon lines.
    """
    if not 1 <= genus <= MAX_GENUS:
        raise ValueError(f"polygon surfaces need 1 <= genus <= {MAX_GENUS}")
    cells, positions = _polygon_cells(genus)
    complex_, label, flags = flag_subdivision(cells)
    centroids = {}
    for (cell, slot, end) in flags:
        pos = positions[cell.key]
        i, j = _EDGE_ENDS[slot]
        v = pos[end]
        e = ((pos[i][0] + pos[j][0]) / 2, (pos[i][1] + pos[j][1]) / 2)
        t = (sum(p[0] for p in pos) / 3, sum(p[1] for p in pos) / 3)
        tri = tuple(sorted((
            label[("v", cell.vertices[end])],
            label[("e", cell.edges[slot])],
            label[("t", cell.key)],
        )))
        centroids[tri] = ((v[0] + e[0] + t[0]) / 3, (v[1] + e[1] + t[1]) / 3)
    return complex_, centroids


def surface(genus: int) -> SimplicialComplex:
    """Closed orientable surface of the given genus (0 <= genus <= 4).

    Genus 0 is the boundary of the tetrahedron.  Higher genus comes from the
    4g-gon with word ``a1 b1 a1^-1 b1^-1 ...`` subdivided twice.
    """
    if not 0 <= genus <= MAX_GENUS:
        raise ValueError(f"genus must be between 0 and {MAX_GENUS}, got {genus}")
    if genus == 0:
        result = tetrahedron_boundary()
    else:
        result, _ = polygon_surface(genus)
    if not is_closed_surface(result):
        raise ComplexError(f"genus {genus} construction failed the link check")
    return result


def normalization_cells(b: BranchData) -> list[GluedTriangle]:
    """Glued cells of the regular cover of the sphere with monodromy ``b``.

    The sphere is slit from a base point along arcs to the ``k`` branch values,
    giving a ``2k``-gon with corners ``q_0 = base, q_1 = y_1, q_2 = base, ...``.
    One polygon is taken per group element ``h``; side ``2i-2`` of sheet ``h``
    is glued to side ``2i-1`` of sheet ``h * sigma_i``.
    """
    validate(b)
    group = generate_group(b.sigma, n=b.degree)
    if group.order > MAX_SHEETS:
        raise ValueError(f"monodromy group of order {group.order} exceeds {MAX_SHEETS} sheets")
    elements = group.sorted_elements()
    index = {g: i for i, g in enumerate(elements)}
    k = b.branch_count
    corners = 2 * k

    parent: dict[Hashable, Hashable] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for h in elements:
        for i, s in enumerate(b.sigma, start=1):
            hs = index[compose(h, s)]
            hi = index[h]
            union(("q", hi, 2 * i - 1), ("q", hs, 2 * i - 1))
            union(("q", hi, 2 * i - 2), ("q", hs, (2 * i) % corners))
            union(("side", hi, 2 * i - 2), ("side", hs, 2 * i - 1))

    cells = []
    for h in range(len(elements)):
        for j in range(corners):
            j1 = (j + 1) % corners
            cells.append(GluedTriangle(
                key=(h, j),
                vertices=(("C", h), find(("q", h, j)), find(("q", h, j1))),
                edges=(("r", h, j), find(("side", h, j)), ("r", h, j1)),
            ))
    return cells


def normalization_surface(b: BranchData) -> SimplicialComplex:
    """Triangulated monodromy surface ``X_f`` built sheet by sheet (``|G| <= 48``)."""
    complex_, _, _ = flag_subdivision(normalization_cells(b))
    return complex_
