import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from eugroups.perm import (
    CapExceeded, NotNormal, Permutation, PermGroup, centralizer, commutator, contains, core,
    coset_action, derived_subgroup, derived_series, elements, group_from_generators, image_of,
    index, intersection, is_normal, join, normal_closure, normalizer, order, parse_permutation,
    quotient, quotient_map, right_cosets, subgroup_from_elements, trivial_group,
)


def P(text, n=4):
    return parse_permutation(text, n)


def G(n, *cycles):
    return group_from_generators([P(c, n) for c in cycles], n)


S4 = G(4, "(1 2)", "(1 2 3 4)")
A4 = G(4, "(1 2 3)", "(2 3 4)")
V4 = G(4, "(1 2)(3 4)", "(1 3)(2 4)")
D8 = G(4, "(1 2 3 4)", "(1 3)")
C3 = G(4, "(1 2 3)")


def as_set(H):
    return frozenset(p.array for p in H.elements())


perms = st.integers(1, 7).flatmap(lambda n: st.permutations(list(range(n))).map(
    lambda xs: Permutation(xs, zero_based=True)))


def same_degree(k):
    return st.integers(1, 7).flatmap(
        lambda n: st.tuples(*[st.permutations(list(range(n))) for _ in range(k)])
    ).map(lambda t: [Permutation(x, zero_based=True) for x in t])


# parsing and arithmetic ------------------------------------------------------

class TestParsing:
    def test_three_cycle(self):
        assert P("(1 2 3)").images == (2, 3, 1, 4)

    def test_identity_text(self):
        p = parse_permutation("()", 5)
        assert p.is_identity() and p.degree == 5

    def test_disjoint_transpositions(self):
        assert P("(1 2)(3 4)").images == (2, 1, 4, 3)

    def test_commas_accepted(self):
        assert P("(1,2,3)") == P("(1 2 3)")

    @pytest.mark.parametrize("bad", ["(1 2", "(1 5)", "(1 1)", "(1 2)(2 3)", "(a b)", "(0 1)"])
    def test_malformed(self, bad):
        with pytest.raises(ValueError):
            P(bad)

    def test_str_round_trip(self):
        p = P("(1 3)(2 4)")
        assert parse_permutation(str(p), 4) == p
        assert str(Permutation.identity(3)) == "()"

    def test_not_a_bijection(self):
        with pytest.raises(ValueError):
            Permutation([1, 1, 2])


class TestArithmetic:
    def test_left_to_right(self):
        a, b = P("(1 2)"), P("(2 3)")
        # apply (1 2) then (2 3): 1 -> 2 -> 3
        assert (a * b)(1) == 3
        assert (a * b) == P("(1 3 2)")

    def test_power_and_order(self):
        c = P("(1 2 3 4)")
        assert c.order() == 4
        assert c ** 4 == Permutation.identity(4)
        assert c ** -1 == c.inverse()

    def test_cycles(self):
        assert P("(1 3)(2 4)").cycles() == [(1, 3), (2, 4)]

    @given(perms)
    def test_inverse(self, p):
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()

    @given(same_degree(3))
    def test_associative(self, t):
        a, b, c = t
        assert (a * b) * c == a * (b * c)

    @given(perms)
    def test_identity_neutral(self, p):
        e = Permutation.identity(p.degree)
        assert p * e == p == e * p

    @given(perms)
    def test_matches_oracle(self, p):
        q = p * p
        assert q.array == O.mul(p.array, p.array)

    @given(perms)
    def test_images_bijective(self, p):
        assert sorted(p.images) == list(range(1, p.degree + 1))


# groups ----------------------------------------------------------------------

class TestGroups:
    def test_s4_order(self):
        assert order(S4) == 24 and order(A4) == 12

    def test_empty_generators(self):
        assert group_from_generators([], 3).order() == 1
        assert trivial_group(3).elements() == [Permutation.identity(3)]

    def test_order_from_closure_oracle(self):
        H = G(5, "(1 2 3)", "(1 2)(4 5)")
        assert H.order() == len(O.named(5, "(1 2 3)", "(1 2)(4 5)")) == 6

    def test_membership(self):
        assert contains(A4, P("(1 2 3)"))
        assert not contains(A4, P("(1 2)"))
        assert contains(S4, Permutation.identity(4))

    def test_elements(self):
        assert len(elements(C3)) == 3
        els = S4.elements()
        assert len(set(els)) == 24
        assert all((a * b) in S4 for a in els for b in els)
        assert as_set(S4) == O.sym(4)

    def test_transversal_product(self):
        assert math.prod(S4.transversal_sizes) == 24

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_order_divides_factorial(self, n):
        H = group_from_generators([parse_permutation(f"(1 2 {n})", n), parse_permutation("(1 2)", n)], n)
        assert math.factorial(n) % H.order() == 0
        assert as_set(H) == O.closure([g.array for g in H.generators], n)

    def test_element_cap(self):
        with pytest.raises(CapExceeded):
            S4.elements(cap=10)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.permutations(list(range(6))), min_size=0, max_size=3))
    def test_schreier_sims_against_closure(self, gens):
        ps = [Permutation(g, zero_based=True) for g in gens]
        H = group_from_generators(ps, 6)
        oracle = O.closure([p.array for p in ps], 6)
        assert H.order() == len(oracle)
        assert as_set(H) == oracle
        assert all(H.contains(g) for g in ps)


class TestSubgroupOps:
    def test_intersection(self):
        assert intersection(A4, A4) == A4
        assert intersection(G(4, "(1 2)"), G(4, "(3 4)")).order() == 1
        assert intersection(A4, D8) == V4
        assert as_set(intersection(A4, D8)) == O.alt(4) & O.named(4, "(1 2 3 4)", "(1 3)")

    def test_join(self):
        assert join(S4, trivial_group(4)) == S4
        assert join(G(3, "(1 2)"), G(3, "(1 2 3)")).order() == 6
        assert join(V4, C3) == A4

    def test_derived(self):
        assert derived_subgroup(G(4, "(1 2)(3 4)")).order() == 1
        assert derived_subgroup(S4) == A4
        assert derived_subgroup(A4) == V4
        assert as_set(derived_subgroup(S4)) == O.derived(O.sym(4), 4)
        assert [H.order() for H in derived_series(S4)] == [24, 12, 4, 1]

    def test_commutator(self):
        a, b = P("(1 2)"), P("(2 3)")
        assert commutator(a, b) == a.inverse() * b.inverse() * a * b

    def test_normal_closure(self):
        assert normal_closure(S4, S4.generators) == S4
        assert normal_closure(S4, [P("(1 2)(3 4)")]) == V4
        assert normal_closure(S4, []).order() == 1

    def test_normalizer_centralizer(self):
        assert normalizer(S4, V4) == S4
        N = normalizer(S4, C3)
        assert N.order() == 6 and as_set(N) == O.normalizer(O.sym(4), as_set(C3))
        assert normalizer(A4, C3) == C3
        assert centralizer(S4, trivial_group(4)) == S4
        assert centralizer(A4, V4) == V4
        Cz = centralizer(S4, G(4, "(1 2)"))
        assert Cz == G(4, "(1 2)", "(3 4)")
        assert as_set(Cz) == O.centralizer(O.sym(4), as_set(G(4, "(1 2)")))

    def test_core(self):
        assert core(S4, V4) == V4
        S3 = G(4, "(1 2 3)", "(1 2)")
        assert core(S4, S3).order() == 1 == len(O.core(O.sym(4), as_set(S3)))
        assert core(S4, A4) == A4

    def test_quotients(self):
        assert quotient(S4, S4).order() == 1
        assert quotient(S4, A4).order() == 2
        Q = quotient(S4, V4)
        assert Q.order() == 6 and not Q.is_abelian()
        with pytest.raises(NotNormal):
            quotient(S4, C3)

    def test_coset_action(self):
        img, _ = coset_action(A4, C3)
        assert img.order() == 12
        S3 = G(3, "(1 2 3)", "(1 2)")
        img, _ = coset_action(S3, G(3, "(1 2 3)"))
        assert img.order() == 2

    def test_quotient_map_is_homomorphism(self):
        Q, hom = quotient_map(S4, V4)
        els = S4.elements()
        assert all(hom(a * b) == hom(a) * hom(b) for a in els[:8] for b in els)
        assert image_of(hom, A4, Q.degree).order() == 3

    def test_index_and_cosets(self):
        assert index(S4, S4) == 1 and index(S4, A4) == 2 and index(A4, C3) == 4
        reps, _ = right_cosets(S4, A4)
        assert len(reps) == 2

    def test_subgroup_from_elements(self):
        H = subgroup_from_elements(4, V4.elements())
        assert H == V4

    def test_group_equality_and_subgroup(self):
        assert V4.is_subgroup_of(A4) and not A4.is_subgroup_of(V4)
        assert isinstance(S4, PermGroup)

    def test_is_normal(self):
        assert is_normal(S4, V4) and not is_normal(S4, C3)
