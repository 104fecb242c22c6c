"""Chain values: exact ordering, lattice operations, parsing."""

from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sugeno import (
    Chain,
    ChainMismatchError,
    ChainValue,
    compare,
    format_fraction,
    join,
    median3,
    meet,
)

UNIT = Chain.unit()
LINGUISTIC = Chain.finite(["bad", "medium", "good", "excellent"])

fractions01 = st.fractions(min_value=0, max_value=1, max_denominator=40)
unit_values = fractions01.map(lambda f: ChainValue(UNIT, f))


class TestParsingAndFormat:
    def test_decimal_parses_exactly(self):
        assert UNIT.value("0.54").fraction == Fraction(27, 50)

    def test_rational_parses_exactly(self):
        assert UNIT.value("2/3").fraction == Fraction(2, 3)

    def test_exactness_against_decimal_approximation(self):
        # 1/3 is strictly greater than any finite decimal truncation
        assert compare(UNIT.value("1/3"), UNIT.value("0.333333")) > 0

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            UNIT.value("7/6")
        with pytest.raises(ValueError):
            UNIT.value("-0.1")

    def test_level_label_parsing(self):
        assert LINGUISTIC.value("good").index == 2
        with pytest.raises(ValueError):
            LINGUISTIC.value("superb")

    @pytest.mark.parametrize(
        "fraction,text",
        [
            (Fraction(0), "0"),
            (Fraction(1), "1"),
            (Fraction(1, 2), "0.5"),
            (Fraction(27, 50), "0.54"),
            (Fraction(1, 100), "0.01"),
            (Fraction(3, 8), "0.375"),
            (Fraction(1, 3), "1/3"),
            (Fraction(5, 7), "5/7"),
        ],
    )
    def test_shortest_exact_form(self, fraction, text):
        assert format_fraction(fraction) == text

    @given(fractions01)
    def test_format_parse_round_trip(self, f):
        assert UNIT.value(format_fraction(f)).fraction == f


class TestComparison:
    def test_third_below_034(self):
        assert compare(UNIT.value("1/3"), UNIT.value("0.34")) < 0

    def test_reflexive_equal(self):
        assert compare(UNIT.value("0.5"), UNIT.value("0.5")) == 0

    def test_linguistic_order(self):
        assert compare(LINGUISTIC.value("good"), LINGUISTIC.value("medium")) > 0

    def test_cross_chain_comparison_raises(self):
        with pytest.raises(ChainMismatchError):
            compare(UNIT.value("0.5"), LINGUISTIC.value("medium"))
        with pytest.raises(ChainMismatchError):
            UNIT.value("0.5") < LINGUISTIC.value("medium")

    def test_cross_chain_values_are_unequal_not_an_error(self):
        assert UNIT.value("0.5") != LINGUISTIC.value("medium")

    def test_cross_kind_with_same_labels_distinct(self):
        other = Chain.finite(["bad", "medium", "good", "excellent", "ideal"])
        with pytest.raises(ChainMismatchError):
            meet(LINGUISTIC.value("bad"), other.value("bad"))


class TestMeetJoin:
    def test_meet_054_two_thirds(self):
        assert meet(UNIT.value("0.54"), UNIT.value("2/3")) == UNIT.value("0.54")

    @given(unit_values)
    def test_bottom_is_join_identity(self, x):
        assert join(UNIT.bottom, x) == x

    @given(unit_values)
    def test_top_is_meet_identity(self, x):
        assert meet(UNIT.top, x) == x

    @given(unit_values, unit_values)
    def test_meet_join_bracket_both_arguments(self, a, b):
        assert meet(a, b) <= a <= join(a, b)
        assert meet(a, b) <= b <= join(a, b)

    @given(unit_values, unit_values)
    def test_commutative(self, a, b):
        assert meet(a, b) == meet(b, a)
        assert join(a, b) == join(b, a)

    @given(unit_values, unit_values, unit_values)
    def test_associative(self, a, b, c):
        assert meet(meet(a, b), c) == meet(a, meet(b, c))
        assert join(join(a, b), c) == join(a, join(b, c))

    @given(unit_values)
    def test_idempotent(self, a):
        assert meet(a, a) == a == join(a, a)


class TestMedian:
    def test_middle_of_sorted_triple(self):
        vals = [UNIT.value(s) for s in ("0.2", "0.9", "0.5")]
        assert median3(*vals) == UNIT.value("0.5")

    def test_majority(self):
        x, y = UNIT.value("0.3"), UNIT.value("0.8")
        assert median3(x, x, y) == x

    def test_hand_checked_lattice_polynomial_value(self):
        # (a^b) v (b^c) v (a^c) with a=0.54, b=1/3, c=2/3:
        # 1/3 v 1/3 v 0.54 = 0.54
        a, b, c = (UNIT.value(s) for s in ("0.54", "1/3", "2/3"))
        assert median3(a, b, c) == a

    @given(unit_values, unit_values, unit_values)
    def test_symmetric_under_all_permutations(self, a, b, c):
        results = {median3(*p) for p in permutations((a, b, c))}
        assert len(results) == 1

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_equals_lattice_polynomial_exhaustively(self, k):
        chain = Chain.finite([str(i) for i in range(k)])
        for a, b, c in product(chain.values(), repeat=3):
            poly = join(join(meet(a, b), meet(b, c)), meet(a, c))
            assert median3(a, b, c) == poly


class TestChainType:
    def test_finite_needs_a_level(self):
        with pytest.raises(ValueError):
            Chain.finite([])

    def test_duplicate_levels_rejected(self):
        with pytest.raises(ValueError):
            Chain.finite(["low", "low"])

    def test_bottom_top(self):
        assert UNIT.bottom.fraction == 0 and UNIT.top.fraction == 1
        assert LINGUISTIC.bottom.label == "bad"
        assert LINGUISTIC.top.label == "excellent"

    def test_json_round_trip(self):
        for chain in (UNIT, LINGUISTIC):
            assert Chain.from_json(chain.to_json()) == chain

    def test_values_enumeration(self):
        assert [str(v) for v in LINGUISTIC.values()] == [
            "bad",
            "medium",
            "good",
            "excellent",
        ]

    def test_str_uses_shortest_form(self):
        assert str(UNIT.value("27/50")) == "0.54"
        assert str(LINGUISTIC.value("medium")) == "medium"
