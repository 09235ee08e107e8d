"""Exact permutations and materialized finite permutation groups.

Composition convention (used everywhere in this package): ``compose(a, b)``
applies ``a`` first and then ``b``.  This matches left-to-right
concatenation of loops, so the monodromy of a loop ``l1 * l2`` is
``compose(sigma(l1), sigma(l2))``.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable, Sequence

DEFAULT_GROUP_BOUND = 10_000


class PermutationError(ValueError):
    pass


class DegreeMismatch(PermutationError):
    pass


class GroupTooLarge(RuntimeError):
    pass


def group_bound() -> int:
    """Materialization bound, overridable by ``MONODROMY_GROUP_BOUND``."""
    value = os.environ.get("MONODROMY_GROUP_BOUND")
    if value is None:
        return DEFAULT_GROUP_BOUND
    bound = int(value)
    if bound < 1:
        raise ValueError(f"MONODROMY_GROUP_BOUND must be positive, got {bound}")
    return bound


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        n = len(images)
        if n == 0:
            raise PermutationError("permutation degree must be positive")
        if sorted(images) != list(range(n)):
            raise PermutationError(f"{images} is not a permutation of 0..{n - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        # skips validation; only for images produced by composing valid permutations
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Permutation:
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for pos, point in enumerate(cycle):
                if not 0 <= point < n:
                    raise PermutationError(f"point {point} out of range for degree {n}")
                if point in seen:
                    raise PermutationError(f"point {point} repeated in cycle notation")
                seen.add(point)
                images[point] = cycle[(pos + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> Permutation:
        """Parse disjoint-cycle notation such as ``"(0 1)(2 3)"`` or ``"()"``."""
        stripped = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s*,?\s*\d+)*)?\s*\))+", stripped):
            raise PermutationError(f"malformed cycle string {text!r}")
        cycles = [
            [int(tok) for tok in re.findall(r"\d+", body)]
            for body in re.findall(r"\(([^)]*)\)", stripped)
        ]
        return cls.from_cycles([c for c in cycles if c], n)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._trusted(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least point, fixed points included."""
        seen = [False] * self.n
        result = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point)
                point = self.images[point]
            result.append(tuple(cycle))
        return result

    def __str__(self) -> str:
        body = "".join(
            "(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1
        )
        return body or "()"

    def __repr__(self) -> str:
        return f"Permutation({self})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` first, then ``b``."""
    if a.n != b.n:
        raise DegreeMismatch(f"cannot compose degrees {a.n} and {b.n}")
    return Permutation._trusted(tuple(map(b.images.__getitem__, a.images)))


def product(perms: Sequence[Permutation], n: int | None = None) -> Permutation:
    """Left-to-right product; ``n`` is needed only for the empty product."""
    if not perms:
        if n is None:
            raise ValueError("empty product needs an explicit degree")
        return Permutation.identity(n)
    return reduce(compose, perms)


@lru_cache(maxsize=1 << 16)
def _cycle_type(images: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in Permutation._trusted(images).cycles()), reverse=True))


def cycle_type(a: Permutation) -> list[int]:
    """Cycle lengths including fixed points, in decreasing order."""
    return list(_cycle_type(a.images))


def element_order(a: Permutation) -> int:
    return math.lcm(*_cycle_type(a.images))


@lru_cache(maxsize=1 << 16)
def _closure(gens: tuple[tuple[int, ...], ...], n: int, bound: int) -> frozenset[Permutation]:
    ident = tuple(range(n))
    elements = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = tuple(map(g.__getitem__, x))
                if y not in elements:
                    elements.add(y)
                    if len(elements) > bound:
                        raise GroupTooLarge(f"group closure exceeds bound {bound}")
                    fresh.append(y)
        frontier = fresh
    return _intern(frozenset(elements))


@lru_cache(maxsize=1 << 12)
def _intern(elements: frozenset[tuple[int, ...]]) -> frozenset[Permutation]:
    # different generating sets often give the same group; share one element set
    return frozenset(Permutation._trusted(x) for x in elements)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]
    elements: frozenset[Permutation] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, item: Permutation) -> bool:
        return item in self.elements

    def sorted_elements(self) -> list[Permutation]:
        return sorted(self.elements)

    def orbit(self, point: int) -> set[int]:
        return orbit(self.generators, point, self.degree)


def _check_degrees(gens: Sequence[Permutation], n: int | None) -> int:
    degrees = {g.n for g in gens}
    if n is not None:
        degrees.add(n)
    if len(degrees) > 1:
        raise DegreeMismatch(f"generators of mixed degrees {sorted(degrees)}")
    if not degrees:
        raise ValueError("degree unknown: no generators and no explicit degree")
    return degrees.pop()


def generate_group(
    gens: Sequence[Permutation], bound: int | None = None, n: int | None = None
) -> PermGroup:
    """Materialize the group generated by ``gens``.

    Raises ``GroupTooLarge`` instead of truncating when the closure has more
    than ``bound`` elements.  Finite groups need no explicit inverses: the
    closure under composition with the generators is already a group.
    """
    if bound is None:
        bound = group_bound()
    if bound < 1:
        raise ValueError("bound must be at least 1")
    degree = _check_degrees(gens, n)
    key = tuple(sorted({g.images for g in gens}))
    return PermGroup(degree, tuple(gens), _closure(key, degree, bound))


def subgroup(g: PermGroup, elements: Iterable[Permutation]) -> PermGroup:
    elements = frozenset(elements)
    return PermGroup(g.degree, tuple(sorted(elements)), elements)


def orbit(gens: Sequence[Permutation], point: int, n: int) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for g in gens:
            q = g.images[p]
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def is_transitive(gens: Sequence[Permutation], n: int | None = None) -> bool:
    degree = _check_degrees(gens, n)
    return len(orbit(gens, 0, degree)) == degree


def point_stabilizer(g: PermGroup, pt: int) -> PermGroup:
    if not 0 <= pt < g.degree:
        raise ValueError(f"point {pt} outside 0..{g.degree - 1}")
    return subgroup(g, (x for x in g.elements if x.images[pt] == pt))


def is_normal_subgroup(h: PermGroup, g: PermGroup) -> bool:
    """True iff ``x^-1 h x == h`` for every ``x`` in ``g``."""
    if not h.elements <= g.elements:
        raise ValueError("h is not contained in g")
    for x in g.generators or g.elements:
        x_inv = x.inverse()
        for y in h.elements:
            if compose(compose(x_inv, y), x) not in h.elements:
                return False
    return True
