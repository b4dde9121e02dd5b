"""Truncated fundamental categories: the worked interval, line, circle,
product, and comparison computations."""
from __future__ import annotations

import pytest

from cspace import (
    Route,
    StructureError,
    check_fullness,
    check_product_preservation,
    check_sum_preservation,
    circle_n_stop,
    fundamental_monoid,
    hom_classes,
    induced_comparisons,
    interval_c,
    interval_j,
    is_one_simple,
    is_realizable,
    line_c,
    pi1,
    product,
    rigid_line,
    sum_complex,
    symmetrize,
)


class TestIntervalCategories:
    def test_plain_interval_is_the_two_element_order(self, ci):
        cat = pi1(ci, 2)
        assert cat.objects == ("0", "1")
        assert cat.arrow_count == 3
        assert cat.is_preorder()
        assert not cat.possibly_incomplete
        assert [a.rep.edges for a in cat.hom("0", "1")] == [("e",)]

    def test_two_step_interval_is_the_three_element_order(self, cj):
        cat = pi1(cj, 3)
        assert cat.objects == ("0", "1", "m")
        assert cat.arrow_count == 6
        assert cat.is_preorder()
        assert not cat.possibly_incomplete

    def test_delay_decorations_do_not_change_the_class(self, delayed_minus):
        cat = pi1(delayed_minus, 2)
        delayed = cat.class_of(Route("0", "1", ("e",), frozenset({0})))
        extra = cat.class_of(Route("0", "1", ("e",), frozenset({0, 1})))
        assert delayed is not None and delayed == extra

    def test_rigid_interior_vertices_are_not_objects(self):
        cat = pi1(rigid_line(2), 3)
        assert cat.objects == ("0", "2")
        assert cat.arrow_count == 3


class TestLineCategory:
    def test_window_three_matches_the_integer_order(self):
        X = line_c(3)
        cat = pi1(X, 6)
        ks = list(range(-3, 4))
        assert cat.objects == tuple(str(k) for k in ks)
        assert cat.arrow_count == 28
        assert not cat.possibly_incomplete
        for i in ks:
            for j in ks:
                hom = cat.hom(str(i), str(j))
                assert len(hom) == (1 if i <= j else 0)

    def test_short_bound_raises_the_truncation_flag(self):
        cat = pi1(line_c(3), 5)
        assert cat.possibly_incomplete
        assert cat.hom("-3", "3") == ()


class TestCircleCategories:
    def test_one_stop_monoid_is_additive_truncated_counting(self):
        table = fundamental_monoid(circle_n_stop(1), "0", 5)
        assert len(table.classes) == 6
        assert table.identity_index == 0
        assert table.truncated
        for i in range(6):
            for j in range(6):
                want = i + j if i + j <= 5 else None
                assert table.table[i][j] == want
        assert [len(c.rep.edges) for c in table.classes] == list(range(6))

    def test_three_stop_homs_count_lengths_mod_three(self):
        cat = pi1(circle_n_stop(3), 7)
        assert cat.possibly_incomplete
        assert cat.arrow_count == 24
        for i in range(3):
            for j in range(3):
                lengths = sorted(
                    len(a.rep.edges) for a in cat.hom(str(i), str(j))
                )
                want = [n for n in range(8) if n % 3 == (j - i) % 3]
                assert lengths == want, (i, j)

    def test_loop_spaces_are_not_one_simple(self):
        assert not is_one_simple(circle_n_stop(1), 4)
        assert is_one_simple(interval_j(), 4)


class TestComposition:
    def test_composition_is_diagrammatic_concatenation(self, cj):
        cat = pi1(cj, 3)
        first = cat.class_of(Route("0", "m", ("e1",)))
        second = cat.class_of(Route("m", "1", ("e2",)))
        both = cat.compose(first, second)
        assert both == cat.class_of(Route("0", "1", ("e1", "e2")))

    def test_identities_are_neutral(self, cj):
        cat = pi1(cj, 3)
        walk = cat.class_of(Route("0", "m", ("e1",)))
        assert cat.compose(cat.identity("0"), walk) == walk
        assert cat.compose(walk, cat.identity("m")) == walk

    def test_composition_past_the_bound_is_unknown(self):
        cat = pi1(circle_n_stop(1), 3)
        loop3 = cat.class_of(Route("0", "0", ("e0",) * 3))
        loop1 = cat.class_of(Route("0", "0", ("e0",)))
        assert cat.compose(loop3, loop1) is None

    def test_mismatched_endpoints_cannot_compose(self, cj):
        from cspace import CompositionError

        cat = pi1(cj, 3)
        walk = cat.class_of(Route("0", "m", ("e1",)))
        with pytest.raises(CompositionError):
            cat.compose(walk, walk)


class TestRealizability:
    def test_words_realize_when_their_fullest_decoration_is_controlled(
        self, middle_delay
    ):
        assert is_realizable(middle_delay, "0", ("e1", "e2"))
        assert not is_realizable(middle_delay, "0", ("e1",))

    def test_hom_classes_need_flexible_endpoints(self, middle_delay):
        with pytest.raises(StructureError):
            hom_classes(middle_delay, "0", "m", 3)


class TestComparisons:
    def test_flexible_space_comparisons_are_isomorphisms(self, cj):
        comp = induced_comparisons(cj, 3)
        assert comp.first_functorial and comp.second_functorial
        assert comp.second_full and comp.second_faithful
        assert len(comp.first_arrow_map) == comp.flexible_part.arrow_count
        assert comp.whole.arrow_count == comp.generated.arrow_count == 6

    def test_diagonal_square_comparison_is_not_full(self, diag):
        comp = induced_comparisons(diag, 4)
        assert comp.second_functorial
        assert not comp.second_full
        pairs = {(x, y) for x, y, _ in comp.non_fullness}
        assert pairs == {("00", "10"), ("01", "11")}

    def test_restriction_to_interval_ends_is_full_and_faithful(self, cj):
        report = check_fullness(cj, ["0", "1"], 3)
        assert report.full and report.faithful

    def test_diagonal_square_corner_restriction_stays_full(self, diag):
        report = check_fullness(diag, ["00", "11"], 4)
        assert report.full and report.faithful


class TestProductPreservation:
    def test_square_of_intervals_merges_the_two_staircases(self, ci):
        P = product(ci, ci)
        cat = pi1(P, 4)
        assert len(cat.hom(("0", "0"), ("1", "1"))) == 1
        report = check_product_preservation(ci, ci, 4)
        assert report.objects_bijective and report.homs_bijective
        assert report.product_objects == 4
        assert report.product_arrows == 9

    def test_interval_times_two_step_interval(self, ci, cj):
        report = check_product_preservation(ci, cj, 5)
        assert bool(report)
        assert report.product_objects == 6
        assert report.product_arrows == 18

    def test_two_step_square(self, cj):
        report = check_product_preservation(cj, cj, 5)
        assert bool(report)
        assert report.product_objects == 9
        assert report.product_arrows == 36

    def test_line_window_two_square(self):
        X = line_c(2)
        report = check_product_preservation(X, X, 8)
        assert bool(report)
        assert report.product_objects == 25
        assert report.product_arrows == 225


class TestSumPreservation:
    def test_sum_splits_into_the_factor_categories(self, ci, cj):
        report = check_sum_preservation(ci, cj, 3)
        assert report.objects_bijective and report.homs_bijective

    def test_sum_category_size_adds_up(self, ci, cj):
        cat = pi1(sum_complex(ci, cj), 3)
        assert cat.arrow_count == 9


class TestSymmetrizedCategories:
    def test_symmetrized_interval_identifies_back_and_forth(self, ci):
        S = symmetrize(ci)
        cat = pi1(S, 4)
        loop = cat.class_of(Route("0", "0", ("e", "e~")))
        assert loop == cat.identity("0")

    def test_symmetrized_circle_counts_winding_in_both_directions(self):
        S = symmetrize(circle_n_stop(1))
        table = fundamental_monoid(S, "0", 4)
        assert len(table.classes) == 9
        windings = sorted(
            len([e for e in c.rep.edges if e == "e0"])
            - len([e for e in c.rep.edges if e != "e0"])
            for c in table.classes
        )
        assert windings == list(range(-4, 5))
