from fractions import Fraction

import pytest

from difflocal import configuration as cfg
from difflocal import implications as imp
from difflocal.harness import sec5_figure_premises, subbox_figure_premises, three_implication_figure

from oracles import frac_solvable


def eq(k, content):
    return cfg.DifferenceEquality.from_content(k, content)


class TestMinimalImplications:
    def test_sec5_figure_four_premise_product(self):
        impls = imp.minimal_implications(sec5_figure_premises(), 4)
        four = [m for m in impls if m.size == 4]
        assert len(four) == 1
        m = four[0]
        assert m.product == (0, 0, 1, 0, 0, 1, 0, -1, -1)
        assert m.coefficients == (Fraction(-1), Fraction(-1), Fraction(1), Fraction(1))

    def test_single_equality_produces_nothing(self):
        only = [eq(4, (1, -1, -1, 1))]
        assert imp.minimal_implications(only, 1) == []

    def test_sum_aligned_pair_produces_sum_product(self):
        a = eq(6, (1, 1, -1, -1, 0, 0))
        b = eq(6, (1, 1, 0, 0, -1, -1))
        # x_1 plays the hub role: x1 + x2 - x3 - x4 and x1 + x2 - x5 - x6
        impls = imp.minimal_implications([a, b], 2)
        two = [m for m in impls if m.size == 2]
        assert len(two) == 1
        assert two[0].product == (0, 0, 1, 1, -1, -1)
        assert sorted(two[0].coefficients) == [Fraction(-1), Fraction(1)]

    def test_products_reverify_against_oracle_solver(self):
        premises = sec5_figure_premises()
        for m in imp.minimal_implications(premises, 4):
            rows = [list(p.content) for p in m.premises]
            assert frac_solvable(rows, list(m.product))
            combo = [
                sum(c * p.content[j] for c, p in zip(m.coefficients, m.premises))
                for j in range(9)
            ]
            assert tuple(combo) == m.product

    def test_size_limits(self):
        premises = sec5_figure_premises()
        with pytest.raises(ValueError):
            imp.minimal_implications(premises, 5)
        with pytest.raises(ValueError):
            imp.minimal_implications([eq(4, (1, -1, -1, 1))] * 17, 2)


class TestCheckStructure:
    def test_sec5_figure_passes_all_clauses(self):
        impls = imp.minimal_implications(sec5_figure_premises(), 4)
        m = next(m for m in impls if m.size == 4)
        report = imp.check_structure(m)
        assert report.precondition_2good
        assert report.variable_counts_ok
        assert report.variable_count == 9  # 2t+1 with x1 appearing four times
        assert report.appearance_profile[0] == (1, 4)
        assert report.signs_pm1_ok
        assert report.unique_product_ok

    def test_sum_aligned_two_implication_counts(self):
        a = eq(6, (1, 1, -1, -1, 0, 0))
        b = eq(6, (1, 1, 0, 0, -1, -1))
        m = imp.minimal_implications([a, b], 2)[0]
        report = imp.check_structure(m)
        assert report.precondition_2good
        assert report.variable_counts_ok
        assert report.variable_count == 6  # 2t+2 variables, each twice
        assert report.signs_pm1_ok and report.unique_product_ok

    def test_non_pm1_coefficients_fail_clause_and_signal_badness(self):
        # x1 + x2 = x3 + x4 with the degenerate equality x2 = x4 minimally
        # implies x1 - x2 = x3 - x4 with coefficients (1, -2)
        a = eq(4, (1, 1, -1, -1))
        b = eq(4, (0, 1, 0, -1))
        impls = imp.minimal_implications([a, b], 2)
        two = [m for m in impls if m.size == 2]
        assert len(two) == 1
        assert sorted(abs(c) for c in two[0].coefficients) == [1, 2]
        report = imp.check_structure(two[0])
        assert not report.precondition_2good  # the premises imply x2 = x4
        assert not report.signs_pm1_ok

    def test_invalid_premises_detect_second_product(self):
        # {x1 = x2, x3 = x4} minimally implies both x1 + x3 = x2 + x4
        # and x1 + x4 = x2 + x3: uniqueness fails along with validity
        a = eq(4, (1, -1, 0, 0))
        b = eq(4, (0, 0, 1, -1))
        impls = imp.minimal_implications([a, b], 2)
        two = [m for m in impls if m.size == 2]
        assert two
        report = imp.check_structure(two[0])
        assert not report.precondition_2good
        assert not report.unique_product_ok
        assert report.second_product is not None


def test_three_implication_figure_certifies_exactly_five_hub_pairs():
    premises = three_implication_figure()
    config = cfg.from_equalities(7, premises)
    certified = {j for j in range(1, 7) if config.certifies((7, j))}
    assert certified == {1, 2, 4, 5, 6}  # (7,3) stays uncertified


class TestTwoFull:
    def test_single_equality_is_not_2_full(self):
        assert not imp.is_2_full([eq(4, (1, -1, -1, 1))])

    def test_figure_three_implication_is_2_full(self):
        assert imp.is_2_full(three_implication_figure())

    def test_subbox_prefix_is_2_full(self):
        premises = subbox_figure_premises()
        assert imp.is_2_full(premises)  # 4 equations, 9 variables
        assert imp.is_2_full(premises[:3])  # 3 equations, 7 variables
        assert not imp.is_2_full(premises[:2])  # 2 equations, 6 variables

    def test_valid_collinearity_free_pair_is_never_2_full(self):
        # six-variable claim: such pairs span at least six variables, not five
        a = eq(6, (1, 1, -1, -1, 0, 0))
        b = eq(6, (1, 0, -1, 0, 1, -1))
        assert not imp.is_2_full([a, b])

    def test_dependent_input_rejected(self):
        a = eq(4, (1, -1, -1, 1))
        b = eq(4, (-1, 1, 1, -1))
        with pytest.raises(ValueError):
            imp.is_2_full([a, b])


class TestAlignment:
    def test_difference_aligned(self):
        a = eq(7, (-1, -1, 1, 0, 0, 0, 1))  # x7 - x1 - x2 + x3
        b = eq(7, (-1, 0, 0, -1, 1, 0, 1))  # x7 - x1 - x4 + x5
        assert imp.classify_alignment(a, b, 7) is imp.Alignment.DIFFERENCE_ALIGNED

    def test_sum_aligned(self):
        a = eq(7, (1, -1, -1, 0, 0, 0, 1))  # x7 + x1 - x2 - x3
        b = eq(7, (1, 0, 0, -1, -1, 0, 1))  # x7 + x1 - x4 - x5
        assert imp.classify_alignment(a, b, 7) is imp.Alignment.SUM_ALIGNED

    def test_neither_without_shared_variable(self):
        a = eq(7, (-1, -1, 1, 0, 0, 0, 1))
        b = eq(7, (0, 0, 0, 1, -1, -1, 1))  # x7 + x4 - x5 - x6
        assert imp.classify_alignment(a, b, 7) is imp.Alignment.NEITHER

    def test_mixed_signs_are_neither(self):
        a = eq(7, (1, -1, -1, 0, 0, 0, 1))  # x1 carried as +
        b = eq(7, (-1, 0, 0, -1, 1, 0, 1))  # x1 carried as -
        assert imp.classify_alignment(a, b, 7) is imp.Alignment.NEITHER

    def test_missing_hub_rejected(self):
        a = eq(7, (1, -1, -1, 1, 0, 0, 0))
        b = eq(7, (1, 0, 0, -1, -1, 0, 1))
        with pytest.raises(ValueError):
            imp.classify_alignment(a, b, 7)

    def test_alignment_normalizes_orientation(self):
        a = eq(7, (-1, 1, 1, 0, 0, 0, -1))  # negated sum-aligned equality
        b = eq(7, (1, 0, 0, -1, -1, 0, 1))
        assert imp.classify_alignment(a, b, 7) is imp.Alignment.SUM_ALIGNED
