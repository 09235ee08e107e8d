import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup as SymGroup

from monodromy.perm import (
    DegreeMismatch,
    GroupTooLarge,
    Permutation,
    PermutationError,
    compose,
    cycle_type,
    element_order,
    generate_group,
    is_normal_subgroup,
    is_transitive,
    orbit,
    point_stabilizer,
    subgroup,
)


def P(text, n):
    return Permutation.parse(text, n)


def brute_order(a):
    k, power = 1, a
    while not power.is_identity():
        power = compose(power, a)
        k += 1
    return k


def permutations_of(n):
    return [Permutation(p) for p in itertools.permutations(range(n))]


perm_strategy = st.integers(1, 7).flatmap(
    lambda n: st.permutations(list(range(n))).map(lambda p: Permutation(tuple(p)))
)


def test_compose_is_left_to_right():
    assert compose(P("(0 1)", 3), P("(1 2)", 3)).images == (2, 0, 1)


def test_compose_identity_and_inverse():
    s = P("(0 2 1)(3 4)", 5)
    assert compose(Permutation.identity(5), s) == s
    assert compose(s, s.inverse()).is_identity()


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(P("(0 1)", 2), P("(0 1)", 3))


@pytest.mark.parametrize("text,n,expected", [
    ("()", 1, 1),
    ("(0 1)", 2, 2),
    ("(0 1 2)(3 4)", 5, 6),
])
def test_element_order_examples(text, n, expected):
    assert element_order(P(text, n)) == expected
    assert brute_order(P(text, n)) == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_element_order_matches_powering_exhaustively(n):
    # brute powering is slow at n=8, so compare one representative per cycle type
    seen = {}
    for p in itertools.permutations(range(n)):
        perm = Permutation(p)
        seen.setdefault(tuple(cycle_type(perm)), perm)
    for ct, perm in seen.items():
        assert element_order(perm) == brute_order(perm), ct


@pytest.mark.parametrize("text,n,expected", [
    ("()", 3, [1, 1, 1]),
    ("(0 1)", 3, [2, 1]),
    ("(0 1 2)", 3, [3]),
])
def test_cycle_type_examples(text, n, expected):
    assert cycle_type(P(text, n)) == expected


@given(perm_strategy)
def test_cycle_type_sums_to_degree(p):
    assert sum(cycle_type(p)) == p.n


def test_parse_and_render_roundtrip():
    p = P("(2 3)(0 1)", 4)
    assert str(p) == "(0 1)(2 3)"
    assert str(Permutation.identity(3)) == "()"
    assert P(str(p), 4) == p


@pytest.mark.parametrize("bad", ["(0 1)(1 2)", "(0 0)", "(0 1", "0 1", "(a b)", "(0 5)", ""])
def test_parse_rejects(bad):
    with pytest.raises(PermutationError):
        P(bad, 3)


def test_construction_rejects_non_bijection():
    with pytest.raises(PermutationError):
        Permutation((0, 0, 1))


@pytest.mark.parametrize("gens,n,order", [
    (["(0 1)"], 2, 2),
    (["(0 1)", "(1 2)"], 3, 6),
    (["(0 1)(2 3)", "(0 2)(1 3)"], 4, 4),
])
def test_generate_group_orders(gens, n, order):
    g = generate_group([P(s, n) for s in gens])
    assert g.order == order
    sym = SymGroup([SymPerm(list(P(s, n).images)) for s in gens])
    assert sym.order() == order


@given(st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3)))
@settings(max_examples=60, deadline=None)
def test_generate_group_against_sympy(gens):
    perms = [Permutation(tuple(p)) for p in gens]
    g = generate_group(perms)
    sym = SymGroup([SymPerm(list(p)) for p in gens])
    assert g.order == sym.order()
    assert {tuple(x.images) for x in g.elements} == {tuple(x.array_form) for x in sym.elements}


def test_generate_group_is_closed():
    g = generate_group([P("(0 1 2 3)", 4), P("(0 2)", 4)])
    for x in g.elements:
        assert x.inverse() in g
        for y in g.elements:
            assert compose(x, y) in g
    assert Permutation.identity(4) in g


def test_generate_group_bound_is_an_error():
    with pytest.raises(GroupTooLarge):
        generate_group([P("(0 1)", 4), P("(0 1 2 3)", 4)], bound=23)
    assert generate_group([P("(0 1)", 4), P("(0 1 2 3)", 4)], bound=24).order == 24


def test_generate_group_env_bound(monkeypatch):
    monkeypatch.setenv("MONODROMY_GROUP_BOUND", "5")
    with pytest.raises(GroupTooLarge):
        generate_group([P("(0 1)", 3), P("(0 1 2)", 3)])


def test_generate_group_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        generate_group([P("(0 1)", 2), P("(0 1)", 3)])


@pytest.mark.parametrize("gens,n,expected", [
    (["(0 1)"], 2, True),
    (["(0 1)"], 3, False),
    (["(0 1 2 3)"], 4, True),
])
def test_is_transitive(gens, n, expected):
    assert is_transitive([P(s, n) for s in gens]) is expected


def test_point_stabilizer_s3():
    s3 = generate_group([P("(0 1)", 3), P("(1 2)", 3)])
    stab = point_stabilizer(s3, 0)
    assert stab.elements == {Permutation.identity(3), P("(1 2)", 3)}


@pytest.mark.parametrize("gens,n", [
    (["(0 1)(2 3)", "(0 2)(1 3)"], 4),
    (["(0 1 2 3 4)"], 5),
])
def test_regular_action_has_trivial_stabilizer(gens, n):
    g = generate_group([P(s, n) for s in gens])
    assert point_stabilizer(g, 0).order == 1


def conjugation_closed(h, g):
    # independent check over every element, not just generators
    for x in g.elements:
        xi = x.inverse()
        if {compose(compose(xi, y), x) for y in h.elements} != set(h.elements):
            return False
    return True


def test_is_normal_subgroup_examples():
    s3 = generate_group([P("(0 1)", 3), P("(1 2)", 3)])
    order2 = subgroup(s3, [Permutation.identity(3), P("(1 2)", 3)])
    a3 = generate_group([P("(0 1 2)", 3)])
    trivial = subgroup(s3, [Permutation.identity(3)])
    assert is_normal_subgroup(order2, s3) is False is conjugation_closed(order2, s3)
    assert is_normal_subgroup(a3, s3) is True is conjugation_closed(a3, s3)
    assert is_normal_subgroup(trivial, s3) is True


def test_is_normal_subgroup_requires_containment():
    s3 = generate_group([P("(0 1)", 3), P("(1 2)", 3)])
    other = generate_group([P("(0 1)", 3)])
    klein = generate_group([P("(0 1)(2 3)", 4)])
    assert is_normal_subgroup(other, s3) is False
    with pytest.raises(ValueError):
        is_normal_subgroup(s3, other)
    with pytest.raises(ValueError):
        is_normal_subgroup(klein, s3)


group_gens = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3)
)


@given(group_gens)
@settings(max_examples=80, deadline=None)
def test_orbit_stabilizer(gens):
    perms = [Permutation(tuple(p)) for p in gens]
    g = generate_group(perms)
    for pt in range(g.degree):
        assert point_stabilizer(g, pt).order * len(orbit(perms, pt, g.degree)) == g.order


@given(group_gens)
@settings(max_examples=80, deadline=None)
def test_normality_of_stabilizers_constant_when_transitive(gens):
    perms = [Permutation(tuple(p)) for p in gens]
    g = generate_group(perms)
    if not is_transitive(perms):
        return
    verdicts = {is_normal_subgroup(point_stabilizer(g, pt), g) for pt in range(g.degree)}
    assert len(verdicts) == 1
    assert verdicts == {conjugation_closed(point_stabilizer(g, 0), g)}


@given(group_gens)
@settings(max_examples=60, deadline=None)
def test_group_order_divides_factorial_and_degree_divides_when_transitive(gens):
    import math
    perms = [Permutation(tuple(p)) for p in gens]
    g = generate_group(perms)
    assert math.factorial(g.degree) % g.order == 0
    if is_transitive(perms):
        assert g.order % g.degree == 0
