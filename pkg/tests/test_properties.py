"""Invariant checks on randomized small instances and the corpus.

The acceptance module re-runs the core agreement suites at higher volume;
these tests cover additional algebraic laws at a faster setting.
"""
from __future__ import annotations

from hypothesis import given

from conftest import build_corpus
from oracles import brute_route_table
from strategies import complexes_with_route, presented_complexes, routes_on
from cspace import (
    Route,
    enumerate_routes,
    oracle_equivalent,
    pi1,
    product,
    reflect_bf,
    reflect_dhat,
    reflect_fl,
    reflect_pf,
    route_concat,
    route_insert_dwell,
)
from cspace.spaces import interval_c, interval_j, opposite


class TestClosureLaws:
    @given(complexes_with_route(max_len=4))
    def test_endpoint_constants_of_controlled_routes_are_controlled(self, xr):
        X, r = xr
        if X.is_controlled(r):
            assert X.is_controlled(Route.constant(r.start))
            assert X.is_controlled(Route.constant(r.end))

    @given(complexes_with_route(max_len=3))
    def test_dwell_insertion_preserves_membership(self, xr):
        X, r = xr
        if X.is_controlled(r):
            for pos in range(len(r.edges) + 1):
                assert X.is_controlled(route_insert_dwell(r, pos))

    @given(presented_complexes())
    def test_concatenation_preserves_membership(self, X):
        routes = [r for r in enumerate_routes(X.graph, 2) if X.is_controlled(r)]
        for r1 in routes[:12]:
            for r2 in routes[:12]:
                if r1.end == r2.start:
                    assert X.is_controlled(route_concat(r1, r2))

    def test_concatenation_is_associative_on_the_corpus(self):
        for X in build_corpus().values():
            routes = [r for r in enumerate_routes(X.graph, 2) if X.is_controlled(r)]
            for r1 in routes[:8]:
                for r2 in routes[:8]:
                    if r1.end != r2.start:
                        continue
                    for r3 in routes[:8]:
                        if r2.end != r3.start:
                            continue
                        assert route_concat(route_concat(r1, r2), r3) == (
                            route_concat(r1, route_concat(r2, r3))
                        )


class TestReflectorOrdering:
    @given(complexes_with_route(max_len=4))
    def test_reflections_only_widen_or_narrow_as_specified(self, xr):
        X, r = xr
        fl = reflect_fl(X)
        bf = reflect_bf(X)
        dhat = reflect_dhat(X)
        pf = reflect_pf(X)
        lives_in_fl = {r.start, r.end}.issubset(fl.graph.vertices) and all(
            fl.graph.has_edge(e) for e in r.edges
        )
        if lives_in_fl and fl.is_controlled(r):
            assert X.is_controlled(r)
        if X.is_controlled(r):
            assert bf.is_controlled(r)
            assert pf.is_controlled(r)
            assert dhat.is_controlled(r)
        if bf.is_controlled(r) or pf.is_controlled(r):
            assert dhat.is_controlled(r)

    @given(complexes_with_route(max_len=4))
    def test_border_reflection_does_not_change_the_generated_structure(self, xr):
        X, r = xr
        assert reflect_dhat(reflect_bf(X)).is_controlled(r) == (
            reflect_dhat(X).is_controlled(r)
        )

    @given(presented_complexes(max_edges=3))
    def test_reflectors_are_idempotent_on_random_instances(self, X):
        for reflect in (reflect_dhat, reflect_fl, reflect_pf, reflect_bf):
            once = reflect(X)
            assert oracle_equivalent(reflect(once), once, 3)


class TestCategoryLaws:
    @given(presented_complexes(max_edges=3))
    def test_composition_associates_within_the_bound(self, X):
        cat = pi1(X, 6)
        small = [a for a in cat.arrows if len(a.rep.edges) <= 2][:10]
        for a in small:
            for b in small:
                if a.target != b.source:
                    continue
                ab = cat.compose(a, b)
                for c in small:
                    if b.target != c.source:
                        continue
                    bc = cat.compose(b, c)
                    if ab is not None and bc is not None:
                        left = cat.compose(ab, c)
                        right = cat.compose(a, bc)
                        if left is not None and right is not None:
                            assert left == right

    @given(presented_complexes(max_edges=3))
    def test_identities_are_neutral_for_every_arrow(self, X):
        cat = pi1(X, 4)
        for a in cat.arrows:
            assert cat.compose(cat.identity(a.source), a) == a
            assert cat.compose(a, cat.identity(a.target)) == a

    @given(complexes_with_route(max_len=4))
    def test_controlled_routes_realize_their_erased_label(self, xr):
        X, r = xr
        cat = pi1(X, 4)
        if X.is_controlled(r) and len(r.edges) <= 4:
            cls = cat.class_of(r)
            assert cls is not None
            assert cls == cat.class_of(r.strip_dwells()) or not X.is_controlled(
                r.strip_dwells()
            )


class TestDuality:
    @given(complexes_with_route(max_len=4))
    def test_opposite_controls_exactly_the_reversed_routes(self, xr):
        X, r = xr
        op = opposite(X)
        n = len(r.edges)
        reverse = Route(
            r.end, r.start, tuple(reversed(r.edges)),
            frozenset(n - d for d in r.dwells),
        )
        assert X.is_controlled(r) == op.is_controlled(reverse)

    @given(presented_complexes(max_edges=3))
    def test_opposite_category_transposes_hom_sets(self, X):
        cat = pi1(X, 4)
        cat_op = pi1(opposite(X), 4)
        assert set(cat.objects) == set(cat_op.objects)
        for x in cat.objects:
            for y in cat.objects:
                assert len(cat.hom(x, y)) == len(cat_op.hom(y, x))


class TestProductLaws:
    @given(routes_on(product(interval_c(), interval_j()), max_len=4))
    def test_membership_in_a_product_is_componentwise(self, r):
        P = product(interval_c(), interval_j())
        both = P.project_left(r), P.project_right(r)
        assert P.is_controlled(r) == (
            interval_c().is_controlled(both[0])
            and interval_j().is_controlled(both[1])
        )

    def test_product_generated_structure_matches_factorwise_words(self):
        for left, right in ((interval_c(), interval_c()), (interval_c(), interval_j())):
            P = product(left, right)
            dh_left, dh_right = reflect_dhat(left), reflect_dhat(right)
            for r in enumerate_routes(P.graph, 4, all_dwell_sets=False):
                want = dh_left.is_controlled(
                    P.project_left(r).strip_dwells()
                ) and dh_right.is_controlled(P.project_right(r).strip_dwells())
                got = P.is_controlled(
                    Route(r.start, r.end, r.edges, frozenset(range(len(r.edges) + 1)))
                )
                assert got == want


class TestOracleAgreementFast:
    def test_saturation_oracle_matches_the_literal_closure(self):
        from oracles import brute_is_controlled, literal_closure
        from cspace.spaces import (
            interval_delayed_minus,
            interval_middle_delay,
            rigid_line,
        )

        for X in (
            interval_j(),
            interval_delayed_minus(),
            interval_middle_delay(),
            rigid_line(2),
        ):
            literal = literal_closure(X, 3)
            table = brute_route_table(X, 3)
            for r in enumerate_routes(X.graph, 3):
                assert brute_is_controlled(table, r) == (r in literal), r

    @given(complexes_with_route(max_len=5))
    def test_membership_matches_the_saturation_oracle(self, xr):
        X, r = xr
        table = brute_route_table(X, 5)
        from oracles import brute_is_controlled

        assert X.is_controlled(r) == brute_is_controlled(table, r)

    @given(presented_complexes())
    def test_arrow_partitions_match_the_rewrite_closure(self, X):
        from oracles import brute_pi1_components

        cat = pi1(X, 4)
        assert {a.labels for a in cat.arrows} == brute_pi1_components(X, 4)
