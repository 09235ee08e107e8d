"""Finite abstract simplicial complexes and their exact integral (co)homology.

Simplices are sorted vertex tuples; the boundary of ``(v0, ..., vk)`` is
``sum (-1)^i (v0, ..., ^vi, ..., vk)``.  Homology and relative cohomology
come from boundary matrices reduced to Smith normal form.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable

from .snf import SmithDecomposition, SparseRows, smith_normal_form, transpose

MAX_DIMENSION = 3

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    pass


def _closure(maximal: Iterable[Iterable[int]]) -> frozenset[Simplex]:
    out: set[Simplex] = set()
    for s in maximal:
        s = tuple(sorted(set(s)))
        if not s:
            continue
        if s in out:
            continue
        for k in range(1, len(s) + 1):
            out.update(itertools.combinations(s, k))
    return frozenset(out)


@dataclass(frozen=True)
class SimplicialComplex:
    """A downward-closed set of simplices (dimension at most 3).

    ``cone_points`` marks distinguished apex vertices (suspension poles, cone
    apex); it is bookkeeping and does not take part in equality.
    """

    simplices: frozenset[Simplex]
    cone_points: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for s in self.simplices:
            if list(s) != sorted(set(s)):
                raise ComplexError(f"simplex {s} is not a strictly increasing tuple")
            if len(s) - 1 > MAX_DIMENSION:
                raise ComplexError(f"simplex {s} exceeds dimension {MAX_DIMENSION}")
            if len(s) > 1:
                for face in itertools.combinations(s, len(s) - 1):
                    if face not in self.simplices:
                        raise ComplexError(f"face {face} of {s} missing")

    @classmethod
    def _trusted(cls, simplices: frozenset[Simplex], cone_points=()) -> SimplicialComplex:
        # for simplex sets that are downward closed by construction
        obj = object.__new__(cls)
        object.__setattr__(obj, "simplices", simplices)
        object.__setattr__(obj, "cone_points", tuple(cone_points))
        if max((len(s) for s in simplices), default=0) - 1 > MAX_DIMENSION:
            raise ComplexError(f"complex exceeds dimension {MAX_DIMENSION}")
        return obj

    @classmethod
    def from_maximal(cls, maximal: Iterable[Iterable[int]], cone_points=()) -> SimplicialComplex:
        return cls._trusted(_closure(maximal), cone_points)

    @classmethod
    def from_json(cls, payload: dict | str) -> SimplicialComplex:
        if isinstance(payload, str):
            payload = json.loads(payload)
        simplices = payload["simplices"]
        if not isinstance(simplices, list) or not all(
            isinstance(s, list) and s and all(isinstance(v, int) and not isinstance(v, bool) for v in s)
            for s in simplices
        ):
            raise ComplexError("simplices must be a list of non-empty integer lists")
        return cls.from_maximal(simplices)

    def to_json(self) -> dict:
        return {"simplices": [list(s) for s in self.maximal_simplices()]}

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @property
    def vertices(self) -> list[int]:
        return sorted(s[0] for s in self.simplices if len(s) == 1)

    def faces(self, k: int) -> list[Simplex]:
        """The ``k``-simplices in lexicographic order."""
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def maximal_simplices(self) -> list[Simplex]:
        cofaces = set()
        for s in self.simplices:
            if len(s) > 1:
                cofaces.update(itertools.combinations(s, len(s) - 1))
        return sorted((s for s in self.simplices if s not in cofaces), key=lambda s: (len(s), s))

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        return self.simplices <= other.simplices

    def union(self, other: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex._trusted(self.simplices | other.simplices)

    def intersection(self, other: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex._trusted(self.simplices & other.simplices)

    def relabel(self, mapping: dict[int, int]) -> SimplicialComplex:
        return SimplicialComplex.from_maximal(
            [[mapping[v] for v in s] for s in self.maximal_simplices()],
            [mapping[v] for v in self.cone_points if v in mapping],
        )


def components(c: SimplicialComplex) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by least vertex."""
    parent = {v: v for v in c.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s in c.faces(1):
        a, b = find(s[0]), find(s[1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in c.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(c: SimplicialComplex) -> bool:
    return len(components(c)) == 1


def boundary_matrix(
    c: SimplicialComplex, k: int, relative_to: SimplicialComplex | None = None
) -> tuple[SparseRows, tuple[int, int]]:
    """Matrix of the boundary ``C_k -> C_{k-1}`` (rows: (k-1)-simplices).

    With ``relative_to`` the chains are taken modulo that subcomplex.
    """
    skip = relative_to.simplices if relative_to is not None else frozenset()
    lower = [s for s in c.faces(k - 1) if s not in skip] if k >= 1 else []
    upper = [s for s in c.faces(k) if s not in skip]
    index = {s: i for i, s in enumerate(lower)}
    rows: SparseRows = [{} for _ in lower]
    if k >= 1:
        for j, s in enumerate(upper):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face in index:
                    rows[index[face]][j] = (-1) ** i
    return rows, (len(lower), len(upper))


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def reduced(self) -> HomologyProfile:
        if not self.betti:
            return self
        return HomologyProfile((self.betti[0] - 1,) + self.betti[1:], self.torsion)

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}


def _snf(rows: SparseRows, shape: tuple[int, int], verify: bool,
         log: list | None) -> SmithDecomposition:
    d = smith_normal_form(rows, shape=shape, verify=verify)
    if log is not None:
        log.append((rows, shape, d))
    return d


def homology(c: SimplicialComplex, verify: bool = True, log: list | None = None) -> HomologyProfile:
    """Integral homology in degrees ``0..dim``.

    Every Smith decomposition is checked by re-multiplication unless
    ``verify`` is off; ``log`` collects ``(matrix, shape, decomposition)``.
    """
    top = c.dimension
    if top < 0:
        return HomologyProfile((), ())
    ranks = [0] * (top + 2)
    torsion: list[tuple[int, ...]] = [()] * (top + 2)
    for k in range(1, top + 1):
        rows, shape = boundary_matrix(c, k)
        d = _snf(rows, shape, verify, log)
        ranks[k] = d.rank
        torsion[k - 1] = tuple(d.torsion)
    betti = tuple(len(c.faces(k)) - ranks[k] - ranks[k + 1] for k in range(top + 1))
    return HomologyProfile(betti, tuple(torsion[: top + 1]))


def relative_cohomology(
    pair: SubcomplexPair, degree: int, verify: bool = True, log: list | None = None
) -> tuple[int, tuple[int, ...]]:
    """Rank and torsion of ``H^degree(ambient, sub; Z)``.

    Relative cochains are the cochains on ambient vanishing on sub; the
    coboundary ``C^k -> C^{k+1}`` is the transpose of the relative boundary
    ``C_{k+1} -> C_k``.
    """
    ambient, sub = pair.ambient, pair.sub

    def coboundary(k: int) -> tuple[SparseRows, tuple[int, int]]:
        rows, (m, n) = boundary_matrix(ambient, k + 1, relative_to=sub)
        return transpose(rows, n), (n, m)

    dim_k = len([s for s in ambient.faces(degree) if s not in sub.simplices]) if degree >= 0 else 0
    rank_out = 0
    if dim_k:
        rows, shape = coboundary(degree)
        rank_out = _snf(rows, shape, verify, log).rank if shape[0] and shape[1] else 0
    rank_in, torsion = 0, ()
    if degree >= 1:
        rows, shape = coboundary(degree - 1)
        if shape[0] and shape[1]:
            d = _snf(rows, shape, verify, log)
            rank_in, torsion = d.rank, tuple(d.torsion)
    return dim_k - rank_out - rank_in, torsion


@dataclass(frozen=True)
class SubcomplexPair:
    ambient: SimplicialComplex
    sub: SimplicialComplex

    def __post_init__(self):
        if not self.sub.is_subcomplex_of(self.ambient):
            raise ComplexError("sub is not a subcomplex of ambient")


def _fresh(c: SimplicialComplex, count: int) -> list[int]:
    start = max(c.vertices, default=-1) + 1
    return list(range(start, start + count))


def suspension(c: SimplicialComplex) -> SimplicialComplex:
    """Join with two fresh poles (north, south), recorded as ``cone_points``."""
    if c.dimension > MAX_DIMENSION - 1:
        raise ComplexError("suspension would exceed the supported dimension")
    north, south = _fresh(c, 2)
    simplices = set(c.simplices) | {(north,), (south,)}
    for s in c.simplices:
        simplices.add(s + (north,))
        simplices.add(s + (south,))
    return SimplicialComplex._trusted(frozenset(simplices), (north, south))


def cone(c: SimplicialComplex) -> SubcomplexPair:
    """The pair ``(CF, F)`` with a single fresh apex."""
    if c.dimension > MAX_DIMENSION - 1:
        raise ComplexError("cone would exceed the supported dimension")
    (apex,) = _fresh(c, 1)
    simplices = set(c.simplices) | {(apex,)}
    simplices.update(s + (apex,) for s in c.simplices)
    return SubcomplexPair(SimplicialComplex._trusted(frozenset(simplices), (apex,)), c)


def vertex_link(c: SimplicialComplex, v: int) -> SimplicialComplex:
    if (v,) not in c.simplices:
        raise ComplexError(f"vertex {v} not in complex")
    link = set()
    for s in c.simplices:
        if v in s and len(s) > 1:
            link.add(tuple(x for x in s if x != v))
    return SimplicialComplex._trusted(frozenset(link))


def is_cycle_graph(c: SimplicialComplex) -> bool:
    """True iff ``c`` is a single circle: 1-dimensional, connected, all degrees 2."""
    if c.dimension != 1:
        return False
    degree = {v: 0 for v in c.vertices}
    for a, b in c.faces(1):
        degree[a] += 1
        degree[b] += 1
    return all(d == 2 for d in degree.values()) and is_connected(c)


def is_closed_surface(c: SimplicialComplex) -> bool:
    """Every vertex link is a single cycle and the complex is connected."""
    return (
        c.dimension == 2
        and is_connected(c)
        and all(is_cycle_graph(vertex_link(c, v)) for v in c.vertices)
    )


def are_isomorphic(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    """Brute-force isomorphism test guided by vertex degrees; for small complexes."""
    if a.f_vector() != b.f_vector():
        return False
    va, vb = a.vertices, b.vertices

    def signature(c, v):
        return sorted(len(s) for s in c.simplices if v in s)

    sig_b = {v: signature(b, v) for v in vb}
    candidates = {v: [w for w in vb if sig_b[w] == signature(a, v)] for v in va}
    order = sorted(va, key=lambda v: len(candidates[v]))
    target = b.simplices

    def extend(mapping, used, idx):
        if idx == len(order):
            return True
        v = order[idx]
        for w in candidates[v]:
            if w in used:
                continue
            mapping[v] = w
            ok = all(
                tuple(sorted(mapping[x] for x in s)) in target
                for s in a.simplices
                if v in s and all(x in mapping for x in s)
            )
            if ok and extend(mapping, used | {w}, idx + 1):
                return True
            del mapping[v]
        return False

    return extend({}, frozenset(), 0)
