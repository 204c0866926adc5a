"""Registry of finitely checkable statements, each bound to an exact check.

Every claim runs with default parameters that satisfy the hypotheses of the
statement with visible margin; ``run_claim(id, overrides)`` adjusts them
within guards.  A failing sub-check never raises: it marks the report as
failed and records a concrete witness.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import constructions as cons
from . import gamma, windows, zeta
from .errors import InvalidOverride, UnknownClaim
from .operators import Cesaro, Compose, ConvexCombo, DiffIT, Dilation, Shift
from .rational import jsonable
from .sequences import (
    ONES,
    Applied,
    Constant,
    IndicatorUnion,
    Periodic,
    PrefixTail,
    add,
    bound,
    eval_at,
    materialize,
    mul,
    pointwise_check_equal,
    scale,
)

SEED = 20191121


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    anchor: str
    params: dict
    checker: Callable = field(repr=False, compare=False)
    optional: tuple = ()


@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    passed: bool
    computed: dict
    expected: dict
    witnesses: dict
    elapsed_ms: int

    def to_json(self) -> dict:
        return {
            "claimId": self.claim_id,
            "pass": self.passed,
            "computed": jsonable(self.computed),
            "expected": jsonable(self.expected),
            "witnesses": jsonable(self.witnesses),
            "elapsedMillis": self.elapsed_ms,
        }


class _Tally:
    """Collects sub-check outcomes for one claim."""

    def __init__(self):
        self.passed = True
        self.computed = {}
        self.expected = {}
        self.witnesses = {}

    def check(self, name, ok, computed=None, expected=None, witness=None):
        ok = bool(ok)
        self.passed &= ok
        if computed is not None:
            self.computed[name] = computed
        if expected is not None:
            self.expected[name] = expected
        if witness is not None and (not ok or name.startswith("info")):
            self.witnesses[name] = witness
        return ok


def _rand_rational_seq(rng, length, denom, lo=-1, hi=1, periodic_tail=True):
    vals = [Fraction(rng.randint(lo * denom, hi * denom), denom) for _ in range(length)]
    if periodic_tail:
        tail = Periodic(tuple(Fraction(rng.randint(lo * denom, hi * denom), denom) for _ in range(rng.randint(1, 5))))
    else:
        tail = Constant(0)
    return PrefixTail(tuple(vals), tail)


def _rand_01(rng, length, periodic_tail=False):
    vals = tuple(rng.randint(0, 1) for _ in range(length))
    tail = Periodic(tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 4)))) if periodic_tail else Constant(0)
    return PrefixTail(vals, tail)


# ------------------------------------------------------------------ checks


def _c1(p, t):
    x = cons.alternating()
    tx = Applied(Shift(1), x)
    b = windows.sucheston_bounds(x, p["n_max"])
    t.check("bounds", b.q_lower == b.p_upper == Fraction(1, 2),
            [b.q_lower, b.p_upper], [Fraction(1, 2), Fraction(1, 2)])
    ok, w = pointwise_check_equal(add(x, tx), ONES, p["horizon"])
    t.check("x+Tx=1", ok, ok, True, w)
    ok, w = pointwise_check_equal(mul(x, tx), cons.PrefixTail((), Constant(0)), p["horizon"])
    t.check("x*Tx=0", ok, ok, True, w)


def _c2(p, t):
    js = [p["j"]] if "j" in p else list(range(2, p["j_max"] + 1))
    H = p["horizon"]
    for j in js:
        x = cons.char_multiples(j)
        b = windows.sucheston_bounds(x, j)
        t.check(f"bounds[j={j}]", b.q_lower == b.p_upper == Fraction(1, j),
                [b.q_lower, b.p_upper], [Fraction(1, j), Fraction(1, j)])
        stats = windows.window_extrema(x, j)
        t.check(f"window_sums[j={j}]", stats.exact and stats.sup_sum == stats.inf_sum == 1,
                [stats.sup_sum, stats.inf_sum], [1, 1])
        total = add(*[Applied(Shift(i), x) for i in range(j)])
        # the shifted copies cover every k >= j exactly once and miss k < j
        ones_from_j = PrefixTail((0,) * (j - 1), Constant(1))
        ok, w = pointwise_check_equal(total, ones_from_j, H)
        t.check(f"sum_T^i_x=1_for_k>=j[j={j}]", ok, ok, True, w)
        literal, w = pointwise_check_equal(total, ONES, H)
        t.check(f"info_literal_identity[j={j}]", True, literal, None,
                None if literal else {"first_mismatch": w, "note": "sum is 0 for k < j"})


def _c3(p, t):
    x = cons.thm41_sequence()
    Ns = [p["N"]] if "N" in p else list(range(1, p["N_max"] + 1))
    for N in Ns:
        lo_j, hi_j = 4**N - 1, 2 * 4**N
        (_, c_lo), (_, c_hi) = windows.cesaro_profile(x, [lo_j, hi_j])
        want_hi = Fraction(4 ** (N + 1) - 1, 6 * 4**N)
        t.check(f"C[4^{N}-1]", c_lo == Fraction(1, 3), c_lo, Fraction(1, 3))
        t.check(f"C[2*4^{N}]", c_hi == want_hi, c_hi, want_hi)
    top = min(2 * 4 ** max(Ns), 2 * 4 ** p["oracle_N"])
    targets = {j for N in Ns for j in (4**N - 1, 2 * 4**N) if j <= top}
    xs = materialize(cons.thm41_truncated(p["oracle_N"] + 1), top)
    ones = 0
    mismatch = None
    for j, v in enumerate(xs, start=1):
        ones += int(v)
        if j in targets and Fraction(ones, j) != windows.cesaro_profile(x, [j])[0][1]:
            mismatch = {"index": j, "brute_force": Fraction(ones, j)}
            break
    t.check("brute_force_oracle", mismatch is None, top, None, mismatch)


def _c4(p, t):
    n_max = p["n_max"]
    levels = []
    for n in range(1, n_max + 1):
        J = cons.J_set(n)
        t.check(f"|J_{n}|", len(J) == n, len(J), n)
        for k in range(1, n + 1):
            size = len(cons.J_nk(n, k))
            t.check(f"|J_{n},{k}|<=n/k+2", size <= Fraction(n, k) + 2, size, Fraction(n, k) + 2)
        I = cons.I_set(n)
        size = I.measure()
        t.check(f"|I_{n}|<n(n+2)", size < n * (n + 2), size, n * (n + 2))
        lo, hi = 2 ** (2 ** (n - 1)), 2 ** (2**n)
        first, last = I.intervals[0].lo, I.intervals[-1].hi - 1
        t.check(f"I_{n}_in_range", lo < first and last <= hi, [first, last], [lo, hi])
        levels.append(I)
    for n, (a, b) in enumerate(zip(levels, levels[1:]), start=1):
        ok = a.intervals[-1].hi - 1 <= 2 ** (2**n) < b.intervals[0].lo
        t.check(f"levels_{n}_{n+1}_disjoint", ok, ok, True)


def _c5(p, t):
    n_max = p["n_max"]
    x = cons.thm21_sequence(n_max)
    rng = random.Random(SEED)
    worst_per_level = []
    for n in range(1, n_max + 1):
        lo, hi = 2 ** (2 ** (n - 1)), 2 ** (2**n)
        pool = hi - lo
        js = sorted({hi, lo + 1} | {rng.randint(lo + 1, hi) for _ in range(min(p["samples"], pool))})
        loose = Fraction(sum(k * (k + 2) for k in range(1, n + 1)), 2 ** (2 ** (n - 1)))
        tight = Fraction(sum(cons.I_set(k).measure() for k in range(1, n + 1)), 2 ** (2 ** (n - 1)))
        prof = windows.cesaro_profile(x, js)
        worst = max(prof, key=lambda jc: jc[1])
        bad = next(((j, c) for j, c in prof if not c <= tight <= loose), None)
        t.check(f"level_{n}", bad is None, worst[1], loose,
                None if bad is None else {"index": bad[0], "value": bad[1]})
        worst_per_level.append(worst[1])
    t.check("info_decay", True, worst_per_level)
    decreasing = all(b < a for a, b in zip(worst_per_level[1:], worst_per_level[2:]))
    t.check("max_mean_decreasing_from_level_2", decreasing, decreasing, True)


def _c6(p, t):
    n_max = p["n_max"]
    x = cons.thm21_sequence(n_max)
    for n in range(1, n_max + 1):
        J = cons.J_set(n)
        for k in range(1, n + 1):
            d = Applied(Dilation(k), x)
            bad = next((j for j in J if eval_at(d, j) != 1), None)
            t.check(f"sigma_{k}x=1_on_J_{n}", bad is None, bad is None, True,
                    None if bad is None else {"index": bad})
    A = ConvexCombo(((Fraction(1, 2), Dilation(1)), (Fraction(1, 2), Dilation(2))))
    y = scale(Fraction(1, 2), cons.alternating())
    m, ynorm = 2, bound(y)
    hyp = n_max >= 4 * m * ynorm
    t.check("hypothesis_n>=4m|y|", hyp, [n_max, 4 * m * ynorm], None)
    val, j = windows.dilation_witness_check(x, A, y, cons.J_set(n_max))
    t.check("max_A(x+s)_on_J>=1", val >= 1, val, 1, {"index": j})
    val2, j2 = windows.dilation_witness_check(x, Dilation(2), cons.PrefixTail((), Constant(0)), cons.J_set(n_max))
    t.check("max_sigma2_x_on_J=1", val2 == 1, val2, 1, {"index": j2})


def _c7(p, t):
    rng = random.Random(p["seed"])
    D = 64
    K = p["window_max"]
    ks = np.arange(0, K + 1, p["grid_step"])
    rs = np.arange(1, K + 1, p["grid_step"])
    worst = {}
    for trial in range(p["samples"]):
        y = _rand_rational_seq(rng, 2 * K + 2, D)
        ynorm = bound(y)
        yv = np.array([v.numerator * (D // v.denominator) for v in materialize(y, 2 * K + 1)], dtype=np.int64)
        for n in range(1, p["dilation_max"] + 1):
            s = materialize(Applied(Compose((Dilation(n), DiffIT())), y), 2 * K + 1)
            sv = np.array([v.numerator * (D // v.denominator) for v in s], dtype=np.int64)
            cum = np.concatenate(([0], np.cumsum(sv)))
            sums = cum[ks[:, None] + rs[None, :]] - cum[ks[:, None]]
            limit = 2 * n * ynorm * D
            mx = int(np.abs(sums).max())
            worst[n] = max(worst.get(n, 0), Fraction(mx, D) / ynorm if ynorm else 0)
            if mx > limit:
                i, r = np.unravel_index(np.abs(sums).argmax(), sums.shape)
                t.check(f"dilated_n={n}", False, Fraction(mx, D), 2 * n * ynorm,
                        {"sample": trial, "k": int(ks[i]), "r": int(rs[r])})
            if n == 1:
                # telescoped value y_{k+r} - y_k, with y_0 = 0
                y0 = np.concatenate(([0], yv))
                tele = y0[ks[:, None] + rs[None, :]] - y0[ks[:, None]]
                if not np.array_equal(sums, tele):
                    i, r = np.argwhere(sums != tele)[0]
                    t.check("telescoping_identity", False, None, None,
                            {"sample": trial, "k": int(ks[i]), "r": int(rs[r])})
    t.check("info_max_ratio_sum_over_norm", True, {str(n): v for n, v in sorted(worst.items())})
    t.check("telescoping_bound", all(worst[n] <= 2 * n for n in worst), worst.get(1), 2)


def _c8(p, t):
    rng = random.Random(SEED)
    H = p["horizon"]
    x = _rand_01(rng, 512, periodic_tail=True)
    pairs = [(p["k1"], p["k2"])] if "k1" in p else [(a, b) for a in range(1, p["k_max"] + 1) for b in range(1, p["k_max"] + 1)]
    idx = sorted(rng.randint(1, H) for _ in range(50))
    for a, b in pairs:
        comp = Applied(Compose((Dilation(a), Dilation(b))), x)
        fused = Applied(Dilation(a * b), x)
        ok, w = pointwise_check_equal(comp, fused, H)
        ok2 = all(eval_at(comp, k) == eval_at(fused, k) for k in idx)
        t.check(f"sigma_{a}sigma_{b}=sigma_{a*b}", ok and ok2, ok and ok2, True, w)


def _c9(p, t):
    H = p["horizon"]
    rng = random.Random(SEED)
    pos_samples = [cons.alternating(), cons.char_multiples(3), cons.thm41_sequence(),
                   _rand_rational_seq(rng, 200, 8, lo=0, hi=1)]
    ops = [("C", Cesaro())] + [(f"sigma_{m}", Dilation(m)) for m in range(1, p["m_max"] + 1)]
    nulls = gamma.null_samples(H)
    null_list = [nulls[k] for k in ("1/k", "1/k^2", "2^-k")]
    for name, op in ops:
        r = gamma.check_positive_unital(op, pos_samples, H)
        t.check(f"(i)_{name}", r.passed, r.passed, True, r.witness)
        r = gamma.check_c0(op, null_list, H, p["c0_tol"])
        t.check(f"(ii)_{name}", r.passed, r.details["tail_max"], p["c0_tol"], r.witness)
    neg = gamma.check_positive_unital(DiffIT(), [cons.alternating()], 10)
    t.check("(i)_I-T_fails", not neg.passed, neg.passed, False, neg.witness)
    t.check("info_I-T_witness", True, None, None, neg.witness)

    worst = None
    for trial in range(p["pairs"]):
        size = rng.randint(1, 3)
        ms = rng.sample(range(1, p["m_max"] + 1), size)
        raw = [rng.randint(1, 5) for _ in ms]
        weights = [Fraction(w, sum(raw)) for w in raw]
        A = ConvexCombo(tuple(zip(weights, (Dilation(m) for m in ms))))
        y = _rand_rational_seq(rng, 300, 8)
        r = gamma.check_condition_iii(A, [y], p["iii_horizon"], rng.randint(5, 200))
        slack = r.details["min_slack"]
        if worst is None or slack < worst:
            worst = slack
        if not r.passed:
            t.check(f"(iii)_pair_{trial}", False, slack, 0, r.witness)
    t.check("(iii)_min_slack>=0", worst >= 0, worst, 0)


def _c10(p, t):
    import math

    n_big = p["n_unit"]
    eps = p["eps"]
    ln2 = math.log(2)
    q = 2 ** (-1 / n_big)
    oracle_one = ln2 / n_big * q / (1 - q)
    oracle_alt = ln2 / n_big * q / (1 - q * q)
    z1 = zeta.zeta_transform(ONES, n_big, eps)
    za = zeta.zeta_transform(cons.alternating(), n_big, eps)
    t.check("Z(1)~oracle", abs(z1.value - oracle_one) <= 1e-9 + z1.truncation_bound, z1.value, oracle_one)
    t.check("Z(1)~1", abs(z1.value - 1) <= p["unit_tol"], z1.value, 1.0)
    t.check("Z(alt)~oracle", abs(za.value - oracle_alt) <= 1e-9 + za.truncation_bound, za.value, oracle_alt)
    t.check("Z(alt)~1/2", abs(za.value - 0.5) <= p["unit_tol"], za.value, 0.5)
    x = cons.thm41_sequence()
    lo, hi = 1 / 3 - p["slack"], 2 / 3 + p["slack"]
    for n in p["ns"]:
        z = zeta.zeta_transform(x, n, eps)
        # independent oracle: plain summation over materialized terms
        xs = np.array([float(v) for v in materialize(x, z.terms_used)])
        k = np.arange(1, z.terms_used + 1, dtype=np.float64)
        direct = ln2 / n * math.fsum(xs * np.exp2(-k / n))
        t.check(f"Z_{n}(x41)_run_sum=direct", abs(z.value - direct) <= 1e-9, z.value, direct)
        t.check(f"Z_{n}(x41)_in_band", lo <= z.value <= hi, z.value, [lo, hi])


def _c11(p, t):
    rng = random.Random(SEED)
    seqs = {
        "alternating": cons.alternating(),
        "chi_3N": cons.char_multiples(3),
        "thm21(3)": cons.thm21_sequence(3),
        "eventually_periodic": PrefixTail((5, 7), Periodic((1, 0, 0))),
        "random_periodic": _rand_rational_seq(rng, 12, 4),
    }
    N = p["n_max"]
    for name, x in seqs.items():
        encl = [windows.sucheston_bounds(x, n) for n in range(1, N + 1)]
        nested = all(a.contains(b) for a, b in zip(encl, encl[1:]))
        t.check(f"nesting[{name}]", nested, [encl[-1].q_lower, encl[-1].p_upper], None)
        stats = encl[-1].per_n
        f = {s.n: s.sup_sum for s in stats}
        g = {s.n: s.inf_sum for s in stats}
        bad = next(((a, b) for a in f for b in f if a + b in f
                    and not (f[a + b] <= f[a] + f[b] and g[a + b] >= g[a] + g[b])), None)
        t.check(f"sub/superadditivity[{name}]", bad is None, bad is None, True,
                None if bad is None else {"n1": bad[0], "n2": bad[1]})
        closed = encl[-1].closed_form
        t.check(f"closed_form_in_enclosure[{name}]",
                closed is not None and encl[-1].q_lower <= closed <= encl[-1].p_upper, closed, None)
        # translation: windows of Tx differ only through the window touching the inserted 0
        tb = windows.sucheston_bounds(Applied(Shift(1), x), N)
        norm = bound(x)
        close = all(abs(a.sup_sum - b.sup_sum) <= norm and abs(a.inf_sum - b.inf_sum) <= norm
                    for a, b in zip(stats, tb.per_n))
        t.check(f"translation[{name}]", close and tb.closed_form == closed, tb.closed_form, closed)

    mism = None
    for trial in range(p["random_01"]):
        length = rng.randint(1, 300)
        x = _rand_01(rng, length)
        xs = [int(v) for v in materialize(x, length)]
        for n in {1, 2, rng.randint(1, length + 2)}:
            s = windows.window_extrema(x, n)
            sums = [sum(xs[m:m + n]) for m in range(length + 1)]
            if (s.sup_sum, s.inf_sum) != (max(sums), min(sums)):
                mism = {"trial": trial, "n": n}
    t.check("window_oracle", mism is None, mism is None, True, mism)

    g41 = windows.sucheston_bounds(cons.thm41_sequence(), 64)
    t.check("thm41_enclosure", (g41.q_lower, g41.p_upper) == (0, 1), [g41.q_lower, g41.p_upper], [0, 1])
    verdict = windows.lorentz_check(cons.thm41_sequence(), 64).verdict
    ok = isinstance(verdict, windows.NotAlmostConvergent) and verdict.gap_lower >= 1
    t.check("thm41_not_almost_convergent", ok, getattr(verdict, "gap_lower", None), 1)


_CLAIMS = [
    Claim("C1", "alternating sequence: x + Tx = 1, x*Tx = 0, enclosure [1/2, 1/2]",
          "x = (1,0,1,0,...): x + Tx = 1 and B(x) = 1/2; 0 = B(x*Tx)",
          {"n_max": 2, "horizon": 10**4}, _c1),
    Claim("C2", "indicator of jN: every Banach limit gives 1/j; shifted copies sum to 1",
          "x = chi_{jN}: sum_{i=0}^{j-1} T^i x = 1 and Bx = 1/j for every Banach limit",
          {"j_max": 10, "horizon": 10**4}, _c2, ("j",)),
    Claim("C3", "Cesaro means of U[4^k, 2*4^k) at 4^N - 1 and 2*4^N",
          "x = sum_k chi_[4^k, 2*4^k): liminf (Cx)_n = 1/3, limsup (Cx)_n = 2/3",
          {"N_max": 15, "oracle_N": 8}, _c3, ("N",)),
    Claim("C4", "sizes and locations of J_n, J_{n,k}, I_n",
          "|J_{n,k}| <= |J_n|/k + 2; |I_n| < n(n+2); I_n in (2^(2^(n-1)), 2^(2^n)]",
          {"n_max": 5}, _c4),
    Claim("C5", "Cesaro means of the sparse 0/1 sequence decay level by level",
          "(Cx)_j <= 2^(-2^(n-1)) sum_{k<=n} |I_k| < 2^(-2^(n-1)) sum_{k<=n} k(k+2); lim (Cx)_j = 0",
          {"n_max": 5, "samples": 100}, _c5),
    Claim("C6", "dilations of the sparse sequence are 1 on J_n; witness max >= 1",
          "sigma_k x = 1 on J_n for k <= n; max_{j in J_n} (A(x+s))_j >= 1 when n >= 4m||y||",
          {"n_max": 5}, _c6),
    Claim("C7", "window sums of (I-T)y and sigma_n (I-T)y are bounded",
          "|sum_{i=k+1}^{k+r} s_i| <= 2||y||; |sum (sigma_n s)_i| <= 2n||y||, s = (I-T)y",
          {"seed": SEED, "samples": 100, "window_max": 1000, "grid_step": 10, "dilation_max": 8}, _c7),
    Claim("C8", "dilations compose multiplicatively",
          "sigma_{k1} sigma_{k2} ... sigma_{kn} = sigma_{k1 k2 ... kn}",
          {"k_max": 8, "horizon": 10**4}, _c8, ("k1", "k2")),
    Claim("C9", "Cesaro and dilations satisfy the Gamma conditions on samples",
          "H >= 0, H1 = 1; H c_0 in c_0; limsup_j (A(I-T)x)_j >= 0 (finite form: window max >= -2m||y||/r)",
          {"horizon": 10**4, "m_max": 8, "c0_tol": Fraction(1, 100), "pairs": 50, "iii_horizon": 1000}, _c9),
    Claim("C10", "zeta-type averages: normalization and the 1/3..2/3 band",
          "Bx = log(2) gamma((1/n) sum_k x_k 2^(-k/n)); 1/3 <= Bx <= 2/3 for x = sum_k chi_[4^k, 2*4^k)",
          {"n_unit": 10**4, "eps": 1e-8, "unit_tol": 1e-3, "ns": [1000, 3000, 10000], "slack": 0.02}, _c10),
    Claim("C11", "Sucheston enclosure properties",
          "{Bx : B Banach limit} = [q(x), p(x)], q, p limits of inf/sup window averages",
          {"n_max": 16, "random_01": 40}, _c11),
]

_BY_ID = {c.id: c for c in _CLAIMS}

# (key, type, lower, upper) guards for overrides
_GUARDS = {
    "horizon": (int, 1, 10**6),
    "n_max": (int, 1, 6),
    "j": (int, 1, 1000),
    "j_max": (int, 2, 100),
    "N": (int, 1, 60),
    "N_max": (int, 1, 60),
    "oracle_N": (int, 1, 10),
    "samples": (int, 1, 10**4),
    "seed": (int, 0, 2**63),
    "window_max": (int, 1, 10**4),
    "grid_step": (int, 1, 10**4),
    "dilation_max": (int, 1, 64),
    "k1": (int, 1, 64),
    "k2": (int, 1, 64),
    "k_max": (int, 1, 32),
    "m_max": (int, 1, 64),
    "pairs": (int, 1, 10**4),
    "iii_horizon": (int, 1, 10**5),
    "random_01": (int, 0, 10**4),
    "n_unit": (int, 1, 10**6),
}


def list_claims() -> list:
    return list(_CLAIMS)


def _merge_params(claim: Claim, overrides: dict | None) -> dict:
    params = dict(claim.params)
    for key, val in (overrides or {}).items():
        if key not in params and key not in claim.optional:
            raise InvalidOverride(f"{claim.id}: unknown parameter {key!r}")
        guard = _GUARDS.get(key)
        if guard is not None:
            typ, lo, hi = guard
            if isinstance(val, str):
                try:
                    val = int(val)
                except ValueError:
                    raise InvalidOverride(f"{key}: expected an integer, got {val!r}") from None
            if not isinstance(val, typ) or isinstance(val, bool) or not lo <= val <= hi:
                raise InvalidOverride(f"{key}={val!r} outside [{lo}, {hi}]")
        params[key] = val
    if ("k1" in params) != ("k2" in params):
        raise InvalidOverride("k1 and k2 must be given together")
    return params


def run_claim(claim_id: str, overrides: dict | None = None) -> VerificationReport:
    claim = _BY_ID.get(claim_id)
    if claim is None:
        raise UnknownClaim(claim_id)
    params = _merge_params(claim, overrides)
    tally = _Tally()
    start = time.perf_counter()
    try:
        claim.checker(params, tally)
    except Exception as exc:  # a crashing check is a failed claim, not a crash
        tally.check("exception", False, None, None, {"error": f"{type(exc).__name__}: {exc}"})
    elapsed = int((time.perf_counter() - start) * 1000)
    return VerificationReport(claim.id, tally.passed, tally.computed, tally.expected, tally.witnesses, elapsed)


def run_all(parallel: bool = False) -> list:
    ids = [c.id for c in _CLAIMS]
    if not parallel:
        return [run_claim(i) for i in ids]
    with ProcessPoolExecutor() as pool:
        return list(pool.map(run_claim, ids))
