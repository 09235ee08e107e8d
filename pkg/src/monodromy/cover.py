"""Branch data of branched covers of the 2-sphere and their monodromy invariants.

A cover of degree ``n`` with ``k`` branch values is recorded as ``k``
permutations of ``{0..n-1}``, one per branch value, whose left-to-right
product is the identity.  From this the monodromy group, the normality of
the cover and the Euler characteristic of its normalization (the monodromy
space) are computed exactly.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .perm import (
    Permutation,
    PermGroup,
    cycle_type,
    element_order,
    generate_group,
    is_normal_subgroup,
    is_transitive,
    point_stabilizer,
    product,
)

MAX_ENUMERATION_DEGREE = 6
MAX_ENUMERATION_BRANCH = 6


class BranchDataError(ValueError):
    reason = "invalid"


class BranchDegreeMismatch(BranchDataError):
    reason = "degree-mismatch"


class IdentityBranchPermutation(BranchDataError):
    reason = "identity-branch-permutation"


class ProductNotIdentity(BranchDataError):
    reason = "product-not-identity"


class NotTransitive(BranchDataError):
    reason = "not-transitive"


class InvariantViolation(AssertionError):
    """An internal consistency check failed; valid input can never cause this."""


@dataclass(frozen=True)
class BranchData:
    degree: int
    sigma: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))

    @property
    def branch_count(self) -> int:
        return len(self.sigma)

    @classmethod
    def from_cycles(cls, degree: int, branch: list[str]) -> BranchData:
        return cls(degree, tuple(Permutation.parse(s, degree) for s in branch))

    @classmethod
    def from_json(cls, payload: dict | str) -> BranchData:
        if isinstance(payload, str):
            payload = json.loads(payload)
        degree = payload["degree"]
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
            raise ValueError(f"degree must be a positive integer, got {degree!r}")
        branch = payload["branch"]
        if not isinstance(branch, list) or not all(isinstance(s, str) for s in branch):
            raise ValueError("branch must be a list of cycle strings")
        return cls.from_cycles(degree, branch)

    def to_json(self) -> dict:
        return {"degree": self.degree, "branch": [str(s) for s in self.sigma]}

    def __str__(self) -> str:
        return f"n={self.degree} [" + ", ".join(map(str, self.sigma)) + "]"


def validate(b: BranchData) -> None:
    """Raise a distinct ``BranchDataError`` subclass for each broken invariant."""
    for i, s in enumerate(b.sigma):
        if s.n != b.degree:
            raise BranchDegreeMismatch(
                f"branch permutation {i} has degree {s.n}, expected {b.degree}"
            )
    for i, s in enumerate(b.sigma):
        if s.is_identity():
            raise IdentityBranchPermutation(f"branch permutation {i} is the identity")
    if not product(b.sigma, b.degree).is_identity():
        raise ProductNotIdentity(
            f"left-to-right product is {product(b.sigma, b.degree)}, not the identity"
        )
    if not is_transitive(b.sigma, b.degree):
        raise NotTransitive("branch permutations do not act transitively")


def monodromy_group(b: BranchData, bound: int | None = None) -> PermGroup:
    return generate_group(b.sigma, bound=bound, n=b.degree)


@lru_cache(maxsize=4096)
def _stabilizer_is_normal(elements: frozenset[Permutation], degree: int) -> bool:
    # sweeps meet the same few groups over and over; frozensets cache their hash
    g = PermGroup(degree, (), elements)
    return is_normal_subgroup(point_stabilizer(g, 0), g)


def is_normal_cover(b: BranchData, group: PermGroup | None = None) -> bool:
    g = group if group is not None else monodromy_group(b)
    return _stabilizer_is_normal(g.elements, g.degree)


def local_orders(b: BranchData) -> list[int]:
    return [element_order(s) for s in b.sigma]


def local_degrees(b: BranchData) -> list[int]:
    """All cycle lengths over all branch values, sorted ascending."""
    return sorted(c for s in b.sigma for c in cycle_type(s))


def riemann_hurwitz_chi(deck_order: int, orders: list[int]) -> int:
    """``deck_order * (2 - sum((m - 1) / m))`` in exact integer arithmetic."""
    common = math.lcm(1, *orders)
    numerator = 2 * common - sum((m - 1) * (common // m) for m in orders)
    chi, rem = divmod(deck_order * numerator, common)
    if rem:
        raise InvariantViolation(
            f"non-integral Euler characteristic {deck_order}*{numerator}/{common}"
        )
    return chi


def _check_surface_chi(chi: int, what: str) -> int:
    if chi % 2 or chi > 2:
        raise InvariantViolation(f"{what} has impossible Euler characteristic {chi}")
    return chi


def euler_characteristic_normalization(b: BranchData, group: PermGroup | None = None) -> int:
    g = group if group is not None else monodromy_group(b)
    chi = riemann_hurwitz_chi(g.order, local_orders(b))
    return _check_surface_chi(chi, "normalization")


def genus_normalization(b: BranchData, group: PermGroup | None = None) -> int:
    return (2 - euler_characteristic_normalization(b, group)) // 2


def chi_domain(b: BranchData) -> int:
    chi = 2 * b.degree - sum(c - 1 for s in b.sigma for c in cycle_type(s))
    return _check_surface_chi(chi, "domain")


@dataclass(frozen=True)
class CoverInvariants:
    degree: int
    branch_count: int
    monodromy_order: int
    local_orders: tuple[int, ...]
    chi_normalization: int
    genus_normalization: int
    is_normal: bool
    chi_domain: int
    local_degrees: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "branch_count": self.branch_count,
            "monodromy_order": self.monodromy_order,
            "local_orders": list(self.local_orders),
            "chi_normalization": self.chi_normalization,
            "genus_normalization": self.genus_normalization,
            "is_normal": self.is_normal,
            "chi_domain": self.chi_domain,
            "local_degrees": list(self.local_degrees),
        }


def cover_invariants(b: BranchData, bound: int | None = None) -> CoverInvariants:
    validate(b)
    g = monodromy_group(b, bound)
    chi = euler_characteristic_normalization(b, g)
    if g.order % b.degree or math.factorial(b.degree) % g.order:
        raise InvariantViolation(f"group order {g.order} incompatible with degree {b.degree}")
    return CoverInvariants(
        degree=b.degree,
        branch_count=b.branch_count,
        monodromy_order=g.order,
        local_orders=tuple(local_orders(b)),
        chi_normalization=chi,
        genus_normalization=(2 - chi) // 2,
        is_normal=is_normal_cover(b, g),
        chi_domain=chi_domain(b),
        local_degrees=tuple(local_degrees(b)),
    )


def compose_winding_covers(a: int, b: int) -> BranchData:
    """Branch data of a degree-``a`` winding map followed by a degree-``b`` one.

    Sheets are pairs ``(outer, inner)`` stored at index ``outer * a + inner``;
    block ``j`` is ``{j*a, ..., j*a + a - 1}``.  Branch values are ordered as
    (outer branch 1, image of inner branch 1, image of inner branch 2,
    outer branch 2).  Lifts of the outer loop keep inner labels, so the first
    permutation shifts blocks without a twist; both inner branch values are
    taken to lift into block 0, where they act as ``c`` and ``c^-1`` for the
    inner ``a``-cycle ``c``.  The last permutation closes the product.
    """
    if isinstance(a, bool) or isinstance(b, bool) or a < 2 or b < 2:
        raise ValueError(f"winding degrees must be at least 2, got inner={a}, outer={b}")
    n = a * b

    def index(outer: int, inner: int) -> int:
        return (outer % b) * a + (inner % a)

    shift = Permutation(
        tuple(index(j + 1, i) for j in range(b) for i in range(a))
    )
    images = list(range(n))
    for i in range(a):
        images[index(0, i)] = index(0, i + 1)
    inner_cycle = Permutation(tuple(images))
    first_three = (shift, inner_cycle, inner_cycle.inverse())
    closing = product(first_three).inverse()
    data = BranchData(n, first_three + (closing,))
    validate(data)
    return data


def nonidentity_permutations(n: int) -> list[Permutation]:
    """All non-identity permutations of degree ``n`` in lexicographic image order."""
    return [Permutation(p) for p in itertools.permutations(range(n))][1:]


def _transitive_raw(gens: list[tuple[int, ...]], n: int) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        p = stack.pop()
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == n


def _canonical_up_to_conjugacy(sigma: tuple[tuple[int, ...], ...], n: int):
    best = None
    for c in itertools.permutations(range(n)):
        conj = tuple(tuple(c[s[x]] for x in _inverse_raw(c)) for s in sigma)
        if best is None or conj < best:
            best = conj
    return best


def _inverse_raw(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def enumerate_branch_data(
    n_max: int,
    k_max: int,
    *,
    n_min: int = 2,
    k_min: int = 2,
    dedupe: bool = False,
    allow_large: bool = False,
) -> Iterator[BranchData]:
    """Yield every valid datum with degree in ``[n_min, n_max]`` and
    ``k_min..k_max`` branch values.

    Order: degree ascending, then branch count ascending, then lexicographic
    in the image sequences of ``sigma_1..sigma_{k-1}``; ``sigma_k`` is the
    forced inverse of their product.  With ``dedupe`` only the first datum of
    each simultaneous-conjugacy class is emitted.
    """
    if not allow_large and (n_max > MAX_ENUMERATION_DEGREE or k_max > MAX_ENUMERATION_BRANCH):
        raise ValueError(
            f"enumeration limited to degree <= {MAX_ENUMERATION_DEGREE} and "
            f"<= {MAX_ENUMERATION_BRANCH} branch values"
        )
    for n in range(max(n_min, 2), n_max + 1):
        ident = tuple(range(n))
        raw = list(itertools.permutations(range(n)))[1:]
        for k in range(max(k_min, 2), k_max + 1):
            seen: set = set()
            for head in itertools.product(raw, repeat=k - 1):
                prod = ident
                for s in head:
                    prod = tuple(s[x] for x in prod)
                if prod == ident:
                    continue
                sigma = head + (_inverse_raw(prod),)
                if not _transitive_raw(sigma, n):
                    continue
                if dedupe:
                    key = _canonical_up_to_conjugacy(sigma, n)
                    if key in seen:
                        continue
                    seen.add(key)
                yield BranchData(n, tuple(map(Permutation._trusted, sigma)))


def search_tower_piece(
    n_max: int, want_degree3: bool, want_normal: bool
) -> BranchData | None:
    """First enumerated datum with a torus domain matching the requested profile."""
    if n_max > MAX_ENUMERATION_DEGREE:
        raise ValueError(f"n_max must be at most {MAX_ENUMERATION_DEGREE}")
    for n in range(2, n_max + 1):
        # a torus domain forces sum of (c - 1) = 2n, and each branch value
        # contributes at least 1, so k <= 2n
        k_cap = min(2 * n, MAX_ENUMERATION_BRANCH)
        for b in enumerate_branch_data(n, k_cap, n_min=n):
            if chi_domain(b) != 0:
                continue
            if (3 in local_degrees(b)) != want_degree3:
                continue
            if is_normal_cover(b) != want_normal:
                continue
            return b
    return None

