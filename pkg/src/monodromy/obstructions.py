"""Homological obstructions on suspensions of surfaces and on two-piece covers."""

from __future__ import annotations

import enum

from .simplicial import (
    ComplexError,
    SimplicialComplex,
    components,
    cone,
    homology,
    is_closed_surface,
    is_connected,
    relative_cohomology,
)


class ManifoldVerdict(str, enum.Enum):
    MANIFOLD = "manifold"
    NOT_MANIFOLD = "not_manifold"


class CoverVerdict(str, enum.Enum):
    H1_NONTRIVIAL = "h1_nontrivial"
    INCONCLUSIVE = "inconclusive"


class NotASurface(ComplexError):
    pass


def _require_surface(f_surface: SimplicialComplex) -> None:
    if not is_closed_surface(f_surface):
        raise NotASurface("input is not a connected closed triangulated surface")


def suspension_manifold_verdict(f_surface: SimplicialComplex) -> ManifoldVerdict:
    """Decide whether the suspension of a closed orientable surface is a manifold.

    The link of either suspension pole is the surface itself, and the
    suspension is a manifold exactly when that surface is the sphere, i.e.
    when its first homology vanishes.
    """
    _require_surface(f_surface)
    h1 = homology(f_surface).betti[1]
    return ManifoldVerdict.MANIFOLD if h1 == 0 else ManifoldVerdict.NOT_MANIFOLD


def wilder_obstruction(f_surface: SimplicialComplex) -> int:
    """Second local Betti number at the cone point of the suspension.

    Computed as the rank of ``H^2(CF, F)``; nonzero means the suspension is
    not a Wilder manifold.
    """
    _require_surface(f_surface)
    rank, _ = relative_cohomology(cone(f_surface), 2)
    return rank


def domain_cover_obstruction(
    w: SimplicialComplex, u: SimplicialComplex, v: SimplicialComplex
) -> CoverVerdict:
    """Two connected pieces meeting in a disconnected set force ``H_1(w) != 0``.

    When the hypothesis holds the conclusion is cross-checked on ``w``; a
    failure there raises ``AssertionError``.
    """
    if not (u.is_subcomplex_of(w) and v.is_subcomplex_of(w)):
        raise ComplexError("u and v must be subcomplexes of w")
    if u.simplices | v.simplices != w.simplices:
        raise ComplexError("u and v do not cover w")
    if not (is_connected(u) and is_connected(v)):
        return CoverVerdict.INCONCLUSIVE
    if len(components(u.intersection(v))) < 2:
        return CoverVerdict.INCONCLUSIVE
    if homology(w).betti[1] < 1:
        raise AssertionError("disconnected overlap but H_1(w) vanishes")
    return CoverVerdict.H1_NONTRIVIAL
