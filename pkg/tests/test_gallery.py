import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fuzzy_ershov.gallery import (
    NEVER,
    OscillatorSchedule,
    ToyHaltingTable,
    dyadic_value,
    harkleroad,
    left_ce_real,
    oscillator,
    random_bounded_trace,
    random_crisp_trace,
    random_trace,
    right_ce_real,
)
from fuzzy_ershov.hierarchy import classify
from fuzzy_ershov.mindchange import sigma_profile, update_profile
from fuzzy_ershov.trace import Shape, complement, limit_snapshot, validate


def rows_of(t):
    return [[str(v) for v in row] for row in t.rows]


class TestHarkleroad:
    def test_halting_machine(self):
        t = harkleroad(ToyHaltingTable((3,)), 6)
        assert rows_of(t) == [["0", "1/2", "1/2", "1", "1", "1"]]
        assert update_profile(t).update_count == (2,)

    def test_silent_machine(self):
        t = harkleroad(ToyHaltingTable((NEVER,)), 4)
        assert rows_of(t) == [["0", "1/2", "1/2", "1/2"]]
        assert update_profile(t).update_count == (1,)

    def test_halting_after_horizon(self):
        t = harkleroad(ToyHaltingTable((9,)), 4)
        assert update_profile(t).update_count == (1,)

    def test_shape_and_level(self):
        t = harkleroad(ToyHaltingTable((2, NEVER, 5)), 8)
        assert t.shape is Shape.SIGMA1
        r = classify(t)
        assert r.observed_n == 1 and r.observed_update_level == 2

    def test_preconditions(self):
        with pytest.raises(ValueError):
            harkleroad(ToyHaltingTable((3,)), 1)
        with pytest.raises(ValueError):
            ToyHaltingTable((1,))
        with pytest.raises(ValueError):
            ToyHaltingTable(())

    def test_table_format(self):
        text = "x=1 halts_at=NEVER\nx=0 halts_at=4\n"
        table = ToyHaltingTable.parse(text)
        assert table.halts_at == (4, NEVER)
        assert ToyHaltingTable.parse(table.dumps()) == table

    @pytest.mark.parametrize("text", [
        "x=0 halts_at=3\nx=0 halts_at=4\n",
        "x=1 halts_at=3\n",
        "x=0 halts=3\n",
        "x=0 halts_at=soon\n",
    ])
    def test_bad_table(self, text):
        with pytest.raises(ValueError):
            ToyHaltingTable.parse(text)


class TestOscillator:
    def test_example(self):
        t = oscillator(OscillatorSchedule(F(1, 2), F(1, 4), 2), 5)
        assert rows_of(t) == [["0", "3/4", "1/4", "3/4", "1/4"]]
        p = sigma_profile(t)
        assert p.signs == ((1, 1, -1, 1, -1),) and p.change_count == (3,)

    def test_single_swing(self):
        t = oscillator(OscillatorSchedule(F(1, 2), F(1, 4), 1), 6)
        assert sigma_profile(t).change_count == (1,)
        assert classify(t).observed_n == 2

    def test_staircase(self):
        levels = [
            classify(oscillator(OscillatorSchedule(F(1, 3), F(1, 5), m), 2 * m + 3)).observed_n
            for m in range(1, 10)
        ]
        assert levels == [2 * m for m in range(1, 10)]

    def test_infeasible(self):
        with pytest.raises(ValueError):
            OscillatorSchedule(F(3, 4), F(1, 2), 1)
        with pytest.raises(ValueError):
            OscillatorSchedule(F(1, 2), F(0), 1)
        with pytest.raises(ValueError):
            OscillatorSchedule(F(1, 2), F(1, 4), 0)
        with pytest.raises(ValueError):
            oscillator(OscillatorSchedule(F(1, 2), F(1, 4), 3), 6)


class TestRandom:
    def test_level_one_is_sigma1(self):
        t = random_bounded_trace(5, 4, 20, 1)
        validate(t.rows, Shape.SIGMA1)

    def test_deterministic(self):
        assert random_bounded_trace("s", 3, 10, 4) == random_bounded_trace("s", 3, 10, 4)
        assert random_trace(1, 3, 10) == random_trace(1, 3, 10)
        assert random_crisp_trace(1, 3, 10) == random_crisp_trace(1, 3, 10)

    def test_self_check(self):
        rng = random.Random(0)
        for seed in range(1000):
            n = rng.randint(1, 8)
            t = random_bounded_trace(seed, rng.randint(1, 6), rng.randint(1, 30), n)
            r = classify(t)
            assert r.anchor_zero and r.observed_n <= n

    def test_levels_are_reached(self):
        seen = {classify(random_bounded_trace(s, 6, 30, 5)).observed_n for s in range(60)}
        assert 5 in seen

    def test_rejects_level_zero(self):
        with pytest.raises(ValueError):
            random_bounded_trace(0, 1, 5, 0)


class TestDyadic:
    def test_left(self):
        t = left_ce_real("101", 4)
        assert rows_of(t) == [["0", "1/2", "1/2", "5/8"]]
        assert t.shape is Shape.SIGMA1

    def test_right(self):
        t = right_ce_real("101", 5)
        assert rows_of(t) == [["1", "1", "3/4", "3/4", "3/4"]]
        assert t.shape is Shape.PI1

    def test_empty(self):
        assert rows_of(left_ce_real("", 3)) == [["0", "0", "0"]]
        assert rows_of(right_ce_real("", 3)) == [["1", "1", "1"]]

    def test_bad_digits(self):
        with pytest.raises(ValueError):
            left_ce_real("102", 3)

    @given(st.lists(st.integers(0, 1), max_size=12), st.integers(1, 16))
    def test_complement_identity(self, digits, S):
        flipped = [1 - d for d in digits]
        left = left_ce_real(digits, S)
        mirror = complement(right_ce_real(flipped, S))
        assert mirror.rows == left.rows
        if S > len(digits):
            assert limit_snapshot(left).final[0] == dyadic_value(digits)
