import random
from fractions import Fraction

import pytest

from seqlab import constructions as cons
from seqlab.errors import HorizonTooLarge, InvalidArgs
from seqlab.operators import Cesaro, Compose, ConvexCombo, DiffIT, Dilation, Shift, convex
from seqlab.sequences import (
    ONES,
    ZEROS,
    Applied,
    Constant,
    GeometricIndicator,
    IndicatorUnion,
    IntInterval,
    Periodic,
    PrefixTail,
    add,
    affine,
    bound,
    eval_at,
    from_values,
    materialize,
    mul,
    normal_form,
    pointwise_check_equal,
    prefix_sum,
    value_range,
)

F = Fraction
alt = cons.alternating()


def brute_values(seq, h):
    return [eval_at(seq, k) for k in range(1, h + 1)]


class TestEval:
    def test_alternating(self):
        assert [eval_at(alt, k) for k in (1, 2, 3, 4)] == [1, 0, 1, 0]

    def test_half_open_intervals(self):
        x = IndicatorUnion((IntInterval(4, 8),))
        assert eval_at(x, 7) == 1
        assert eval_at(x, 8) == 0

    def test_geometric_blocks(self):
        g = cons.thm41_sequence()
        assert eval_at(g, 16) == 1
        assert eval_at(g, 1) == 1
        assert eval_at(g, 7) == 1 and eval_at(g, 8) == 0

    def test_index_must_be_positive(self):
        with pytest.raises(InvalidArgs):
            eval_at(alt, 0)

    def test_shift_dilation_cesaro(self):
        x = from_values([1, 2, 3])
        assert [eval_at(Applied(Shift(1), alt), k) for k in (1, 2, 3)] == [0, 1, 0]
        assert [eval_at(Applied(Dilation(3), x), k) for k in range(1, 7)] == [1, 1, 1, 2, 2, 2]
        assert all(eval_at(Applied(Cesaro(), ONES), n) == 1 for n in (1, 7, 10 ** 12))

    def test_diff_convention(self):
        assert materialize(Applied(DiffIT(), ONES), 4) == [1, 0, 0, 0]
        assert materialize(Applied(DiffIT(), alt), 4) == [1, -1, 1, -1]

    def test_huge_index(self):
        top = 2 ** 256
        x = IndicatorUnion((IntInterval(top - 3, top),))
        assert eval_at(x, top - 1) == 1 and eval_at(x, top) == 0


class TestPrefixSum:
    def test_geometric(self):
        assert prefix_sum(cons.thm41_sequence(), 15) == 5

    def test_constant_one_large(self):
        assert prefix_sum(ONES, 10 ** 9) == 10 ** 9

    def test_huge_interval(self):
        top = 2 ** 256
        assert prefix_sum(IndicatorUnion((IntInterval(top - 3, top),)), top) == 3

    @pytest.mark.parametrize("seq", [
        alt,
        PrefixTail((5, 7), Periodic((1, 0, 0))),
        Applied(Dilation(3), PrefixTail((F(1, 2), 2), Periodic((1, -1)))),
        Applied(Cesaro(), cons.thm41_sequence()),
        Applied(Compose((Shift(2), DiffIT())), cons.thm41_sequence()),
        mul(alt, Applied(Shift(1), alt)),
        affine(2, -1, cons.char_multiples(3)),
    ])
    def test_matches_brute_force(self, seq):
        vals = brute_values(seq, 80)
        acc = F(0)
        for k, v in enumerate(vals, 1):
            acc += v
            assert prefix_sum(seq, k) == acc


class TestBound:
    def test_indicator(self):
        assert bound(IndicatorUnion((IntInterval(2, 5),))) == 1

    def test_affine_of_indicator(self):
        assert bound(affine(2, -1, IndicatorUnion((IntInterval(2, 5),)))) == 1

    def test_value_range_leaves(self):
        assert value_range(PrefixTail((F(-3, 2), 2), Constant(0))) == (F(-3, 2), 2)
        assert value_range(cons.thm41_sequence()) == (0, 1)

    def test_bound_is_sound(self):
        seq = add(Applied(Dilation(2), alt), Applied(Cesaro(), cons.thm41_sequence()))
        b = bound(seq)
        assert all(abs(v) <= b for v in materialize(seq, 500))


class TestMaterialize:
    def test_examples(self):
        assert materialize(alt, 4) == [1, 0, 1, 0]
        assert materialize(Applied(Dilation(2), from_values([1, 2, 3])), 6) == [1, 1, 2, 2, 3, 3]

    def test_guard(self, monkeypatch):
        monkeypatch.setenv("SEQLAB_HORIZON_CAP", "100")
        with pytest.raises(HorizonTooLarge):
            materialize(alt, 101)
        assert len(materialize(alt, 100)) == 100

    def test_agrees_with_eval(self):
        seq = Applied(convex(("1/3", Dilation(2)), ("2/3", Compose((Shift(1), Dilation(3))))), cons.thm41_sequence())
        assert materialize(seq, 300) == brute_values(seq, 300)


class TestPointwiseEqual:
    def test_shifted_copies_of_chi_3N(self):
        # the copies T^i chi_{3N}, i < 3, cover every k >= 3 once but miss k = 1, 2
        x = cons.char_multiples(3)
        total = add(*[Applied(Shift(i), x) for i in range(3)])
        ok, witness = pointwise_check_equal(total, ONES, 10 ** 4)
        assert not ok and witness == (1, 0, 1)
        ok, _ = pointwise_check_equal(total, PrefixTail((0, 0), Constant(1)), 10 ** 4)
        assert ok

    def test_witness(self):
        ok, w = pointwise_check_equal(alt, Applied(Shift(1), alt), 2)
        assert not ok and w == (1, 1, 0)

    def test_product_with_shift_vanishes(self):
        ok, w = pointwise_check_equal(mul(alt, Applied(Shift(1), alt)), ZEROS, 10 ** 4)
        assert ok and w is None


class TestNormalForm:
    def test_exact_for_finite_descriptions(self):
        form, exact = normal_form(Applied(Dilation(3), PrefixTail((1,), Periodic((0, 1)))))
        assert exact
        assert form.values(10) == materialize(Applied(Dilation(3), PrefixTail((1,), Periodic((0, 1)))), 10)

    def test_truncated_geometric(self):
        assert normal_form(cons.thm41_sequence()) is None
        form, exact = normal_form(cons.thm41_sequence(), upto=1000)
        assert not exact
        assert form.values(1000) == materialize(cons.thm41_sequence(), 1000)

    def test_cesaro_has_no_form(self):
        assert normal_form(Applied(Cesaro(), alt)) is None

    def test_random_compositions_match_eval(self):
        rng = random.Random(5)
        for _ in range(30):
            base = PrefixTail(tuple(F(rng.randint(-4, 4), 4) for _ in range(rng.randint(0, 6))),
                              Periodic(tuple(rng.randint(-2, 2) for _ in range(rng.randint(1, 4)))))
            ops = [Shift(rng.randint(0, 3)), DiffIT(), Dilation(rng.randint(1, 4))]
            rng.shuffle(ops)
            seq = Applied(Compose(tuple(ops)), base)
            form, exact = normal_form(seq)
            assert exact
            assert form.values(120) == brute_values(seq, 120)


class TestGeometricIndicator:
    def test_validation(self):
        with pytest.raises(InvalidArgs):
            GeometricIndicator(F(2), F(1), 4)
        with pytest.raises(InvalidArgs):
            GeometricIndicator(F(1), F(5), 4)

    def test_count_matches_brute_force(self):
        g = GeometricIndicator(F(3, 2), F(5, 2), 3, 1)
        vals = brute_values(g, 2000)
        assert all(g.count(k) == sum(vals[:k]) for k in range(0, 2000, 37))

    def test_interval_union_from_indices(self):
        u = IndicatorUnion.from_indices([5, 3, 4, 9])
        assert u.intervals == (IntInterval(3, 6), IntInterval(9, 10))
        assert u.measure() == 4 and list(u.indices()) == [3, 4, 5, 9]
        with pytest.raises(InvalidArgs):
            IndicatorUnion((IntInterval(3, 6), IntInterval(5, 7)))
