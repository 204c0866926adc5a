from fractions import Fraction

import pytest

from seqlab import constructions as cons
from seqlab.errors import InvalidArgs, UnsupportedOperator
from seqlab.operators import Cesaro, ConvexCombo, Dilation
from seqlab.sequences import ZEROS, Applied, Periodic, PrefixTail, materialize, scale
from seqlab.windows import (
    AlmostConvergent,
    Inconclusive,
    NotAlmostConvergent,
    cesaro_profile,
    dilation_witness_check,
    geometric_grid,
    lorentz_check,
    sliding_max,
    sucheston_bounds,
    window_extrema,
    window_sum,
)

F = Fraction
alt = cons.alternating()


def test_window_sum_examples():
    assert window_sum(alt, 0, 2) == 1
    assert window_sum(alt, 1, 2) == 1
    assert all(window_sum(cons.char_multiples(3), m, 3) == 1 for m in range(50))
    assert window_sum(cons.thm41_sequence(), 3, 12) == 4


def test_window_extrema_examples():
    s = window_extrema(alt, 2)
    assert s.exact and s.sup_sum == s.inf_sum == 1
    for j in (2, 5):
        for t in (1, 3):
            s = window_extrema(cons.char_multiples(j), j * t)
            assert s.exact and s.sup_sum == s.inf_sum == t


def test_window_extrema_truncated_thm41():
    x = cons.thm41_truncated(6)
    s = window_extrema(x, 4)
    assert s.exact
    assert s.sup_sum == 4 and window_sum(x, s.sup_witness, 4) == 4
    assert s.inf_sum == 0 and window_sum(x, s.inf_witness, 4) == 0
    assert 3 in [m for m in range(200) if window_sum(x, m, 4) == 4]


def test_window_extrema_without_normal_form_is_scan_limited():
    s = window_extrema(Applied(Cesaro(), alt), 3, scan_horizon=200)
    assert not s.exact and s.scan_horizon == 200
    xs = materialize(Applied(Cesaro(), alt), 203)
    sums = [sum(xs[m:m + 3]) for m in range(201)]
    assert (s.sup_sum, s.inf_sum) == (max(sums), min(sums))


def test_bounds_examples():
    b = sucheston_bounds(alt, 2)
    assert (b.q_lower, b.p_upper) == (F(1, 2), F(1, 2)) and b.exact
    for j in range(2, 8):
        b = sucheston_bounds(cons.char_multiples(j), j)
        assert (b.q_lower, b.p_upper) == (F(1, j), F(1, j))


def test_bounds_thm41():
    b = sucheston_bounds(cons.thm41_sequence(), 64)
    assert (b.q_lower, b.p_upper) == (0, 1)
    assert not b.exact
    for s in b.per_n:
        assert s.sup_sum == s.n and s.inf_sum == 0


def test_bounds_reject_bad_n():
    with pytest.raises(InvalidArgs):
        sucheston_bounds(alt, 0)


def test_eventually_periodic_enclosure_converges_to_period_mean():
    x = PrefixTail((5, 7), Periodic((1, 0, 0)))
    b = sucheston_bounds(x, 3)
    # the prefix keeps the short-window upper average large
    assert b.q_lower <= F(1, 3) <= b.p_upper
    assert b.closed_form == F(1, 3)
    wide = sucheston_bounds(x, 60)
    assert wide.p_upper - wide.q_lower < b.p_upper - b.q_lower
    assert wide.q_lower <= F(1, 3) <= wide.p_upper


def test_lorentz_verdicts():
    v = lorentz_check(PrefixTail((5, 7), Periodic((1, 0, 0))), 64).verdict
    assert isinstance(v, AlmostConvergent) and v.value == F(1, 3)
    rep = lorentz_check(cons.char_multiples(4), 16)
    assert isinstance(rep.verdict, AlmostConvergent) and rep.verdict.value == F(1, 4)
    assert dict(rep.table)[4] == 0
    v = lorentz_check(cons.thm41_sequence(), 64).verdict
    assert isinstance(v, NotAlmostConvergent) and v.gap_lower >= 1
    w = v.witnesses
    assert window_sum(cons.thm41_sequence(), w["ones_window_start"], 64) == 64
    assert window_sum(cons.thm41_sequence(), w["zeros_window_start"], 64) == 0


def test_lorentz_inconclusive_without_certificate():
    rep = lorentz_check(Applied(Cesaro(), cons.thm41_sequence()), 8, scan_horizon=500)
    assert isinstance(rep.verdict, Inconclusive)
    assert not rep.exact


def test_geometric_grid():
    assert geometric_grid(64) == [1, 2, 4, 8, 16, 32, 64]
    assert geometric_grid(5) == [1, 2, 4]


def test_cesaro_profile():
    g = cons.thm41_sequence()
    for N in range(1, 8):
        assert cesaro_profile(g, [4 ** N - 1]) == [(4 ** N - 1, F(1, 3))]
    assert cesaro_profile(g, [32])[0][1] == F(21, 32)
    assert cesaro_profile(cons.ones(), [1, 99]) == [(1, 1), (99, 1)]


def test_sliding_max():
    vals = [3, 1, 4, 1, 5, 9, 2, 6]
    assert sliding_max(vals, 3) == [max(vals[i:i + 3]) for i in range(6)]
    assert sliding_max(vals, 1) == vals


def test_dilation_witness_examples():
    x = cons.thm21_sequence(5)
    J5 = cons.J_set(5)
    assert dilation_witness_check(x, Dilation(2), ZEROS, J5)[0] == 1
    A = ConvexCombo(((F(1, 2), Dilation(1)), (F(1, 2), Dilation(2))))
    y = scale(F(1, 2), alt)
    val, j = dilation_witness_check(x, A, y, J5)
    assert val >= 1 and j in J5
    assert dilation_witness_check(ZEROS, Dilation(1), ZEROS, J5)[0] == 0
    with pytest.raises(UnsupportedOperator):
        dilation_witness_check(x, Cesaro(), y, J5)
