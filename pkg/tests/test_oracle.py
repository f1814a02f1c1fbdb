import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riskshare import FiniteAllocation, FiniteSpace, choquet_finite, make_distortion
from riskshare import oracle
from riskshare.errors import InvalidParameter, NotRepresentable, TooLarge, UsageError

CONVEX = make_distortion("dual_power", alpha=0.5)
CONCAVE = make_distortion("dual_power", alpha=2.0)


def _stirling2(m, k):
    if m == k == 0:
        return 1
    if m == 0 or k == 0:
        return 0
    return k * _stirling2(m - 1, k) + _stirling2(m - 1, k - 1)


@pytest.mark.parametrize("m,k", [(1, 1), (3, 2), (4, 4), (5, 2), (6, 3), (7, 7)])
def test_set_partition_counts(m, k):
    rows = oracle.set_partitions(m, k)
    assert rows.shape == (sum(_stirling2(m, j) for j in range(1, k + 1)), m)
    # restricted growth: each label is at most one more than the running max
    for r in rows:
        top = -1
        for v in r:
            assert v <= top + 1
            top = max(top, v)
    assert len({tuple(r) for r in rows}) == rows.shape[0]


def test_dependence_check():
    sp = FiniteSpace.uniform(3)
    a = FiniteAllocation.from_matrix(sp, [[0, 1, 2], [2, 1, 0]])
    assert oracle.dependence_check(a, "counter_monotonic").ok
    assert not oracle.dependence_check(a, "comonotonic").ok
    b = FiniteAllocation.from_matrix(sp, [[0, 1, 2], [0, 2, 2]])
    assert oracle.dependence_check(b, "comonotonic").ok
    rep = oracle.dependence_check(b, "counter_monotonic")
    assert not rep and rep.witness[:2] == (0, 1)
    # three jackpots on disjoint atoms are pairwise counter-monotonic
    c = FiniteAllocation.from_matrix(sp, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert oracle.dependence_check(c, "counter_monotonic").ok
    d = FiniteAllocation.from_matrix(sp, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    assert oracle.dependence_check(d, "counter_monotonic").witness[:2] == (1, 2)
    with pytest.raises(InvalidParameter):
        oracle.dependence_check(a, "sideways")


@given(
    st.lists(st.floats(-5, 5, allow_nan=False), min_size=2, max_size=6),
    st.integers(2, 4),
    st.data(),
)
def test_representation_round_trip(xs, n, data):
    X = FiniteSpace.uniform(len(xs)).variable(xs)
    part = data.draw(st.lists(st.integers(0, n - 1), min_size=len(xs), max_size=len(xs)))
    jackpot = data.draw(st.booleans())
    total = (X.ess_inf - data.draw(st.floats(0, 3))) if jackpot else (X.ess_sup + data.draw(st.floats(0, 3)))
    split = data.draw(st.lists(st.floats(0.05, 1), min_size=n, max_size=n))
    mi = [total * s / sum(split) for s in split]
    a = oracle.construct_representation(X, part, mi)
    assert np.allclose(a.total().values, X.values, atol=1e-12)
    assert oracle.dependence_check(a, "counter_monotonic", tol=1e-9).ok
    w = oracle.representation_decompose(a, atol=1e-9)
    rebuilt = oracle.construct_representation(X, w.partition, w.side_payments)
    assert np.allclose(rebuilt.matrix(), a.matrix(), atol=1e-9)


def test_representation_rejects_comonotonic_split():
    sp = FiniteSpace.uniform(3)
    a = FiniteAllocation.from_matrix(sp, [[0, 1, 2], [0, 1, 2]])
    with pytest.raises(NotRepresentable):
        oracle.representation_decompose(a)


def _naive(measures, X, G, mode):
    """Plain itertools enumeration with the last component as remainder."""
    n, k = len(measures), X.space.size
    best = math.inf
    Gs = set(np.round(G, 12))
    for heads in itertools.product(G, repeat=(n - 1) * k):
        M = np.array(heads).reshape(n - 1, k)
        last = X.values - M.sum(axis=0)
        if not all(round(v, 12) in Gs for v in last):
            continue
        a = FiniteAllocation.from_matrix(X.space, np.vstack([M, last]))
        value = sum(m(x) for m, x in zip(measures, a))
        if value >= best:
            continue
        if mode != "unconstrained" and not oracle.dependence_check(a, mode).ok:
            continue
        best = value
    return best


@pytest.mark.parametrize("regime", ["unconstrained", "counter_monotonic", "comonotonic"])
@pytest.mark.parametrize("h", [CONVEX, CONCAVE, make_distortion("kt", gamma=0.7)], ids=lambda h: h.describe())
def test_grid_oracle_matches_naive_enumeration(regime, h):
    X = FiniteSpace.uniform(3).variable([0.0, 0.5, 1.0])
    G = [0.0, 0.5, 1.0]
    ms = oracle.choquet_agents(h, 2)
    got = oracle.brute_force_infconv(ms, X, regime, value_grid=G, space_class="Lplus")
    assert abs(got.value - _naive(ms, X, np.array(G), regime)) < 1e-12
    if got.allocation is not None:
        assert np.allclose(got.allocation.total().values, X.values)


def test_pair_exact_concave_gives_rho():
    # no sharing gain for a concave distortion: the minimum is attained at (X, 0)
    rng = np.random.default_rng(3)
    for _ in range(10):
        k = int(rng.integers(2, 6))
        X = FiniteSpace.from_probs([Fraction(int(w), 10) for w in _weights(rng, k)]).variable(rng.normal(size=k))
        res = oracle.pair_counter_exact(oracle.choquet_agents(CONCAVE, 2), X)
        assert abs(res.value - choquet_finite(CONCAVE, X)) < 1e-12


def _weights(rng, k):
    cuts = np.sort(rng.choice(np.arange(1, 10), size=k - 1, replace=False))
    return np.diff(np.concatenate([[0], cuts, [10]]))


def test_pair_exact_beats_any_grid_point():
    rng = np.random.default_rng(5)
    h = make_distortion("kt", gamma=0.6)
    for _ in range(5):
        X = FiniteSpace.uniform(3).variable(np.round(rng.uniform(0, 1, 3), 2))
        ms = oracle.choquet_agents(h, 2)
        exact = oracle.pair_counter_exact(ms, X, "Lplus")
        grid = oracle.brute_force_infconv(ms, X, "counter_monotonic", levels=16, space_class="Lplus")
        assert exact.value <= grid.value + 1e-12
        assert oracle.dependence_check(exact.allocation, "counter_monotonic").ok


def test_pair_exact_linf_is_unbounded_for_convex():
    X = FiniteSpace.uniform(2).variable([0.0, 1.0])
    assert oracle.pair_counter_exact(oracle.choquet_agents(CONVEX, 2), X, "Linf").value == -math.inf


def test_pair_exact_rejects_bad_input():
    X = FiniteSpace.uniform(2).variable([0.0, 1.0])
    with pytest.raises(InvalidParameter):
        oracle.pair_counter_exact(oracle.choquet_agents(CONVEX, 3), X)
    with pytest.raises(TooLarge):
        oracle.pair_counter_exact(oracle.choquet_agents(CONVEX, 2), FiniteSpace.uniform(9).variable(range(9)), budget=1000)


def test_budget():
    X = FiniteSpace.uniform(6).variable(np.linspace(0, 1, 6))
    with pytest.raises(TooLarge):
        oracle.brute_force_infconv(oracle.choquet_agents(CONVEX, 2), X, "unconstrained", levels=64, budget=10_000)


def test_dual_subadditive_identity_on_finite_space():
    # a counter-monotonic split never beats rho_h for a dually subadditive h
    h = make_distortion("piecewise_linear", {"knots": [(0, 0), (0.25, 0.5), (0.5, 0.5), (0.75, 1), (1, 1)]})
    base = FiniteSpace.uniform(2)
    coin = FiniteSpace.uniform(2, "c")
    X = base.variable([0.0, 1.0]).lift(base.product(coin), coin)
    res = oracle.pair_counter_exact(oracle.choquet_agents(h, 2), X, "Lplus")
    assert abs(res.value - choquet_finite(h, X)) < 1e-12


def test_law_indicator_measure():
    m = oracle.LawIndicatorMeasure({0.0: "1/2", 1.0: "1/2"})
    sp = FiniteSpace.uniform(4)
    assert m(sp.variable([0, 1, 1, 0])) == 0.0
    assert m(sp.variable([0, 1, 1, 1])) == 1.0
    V = np.array([[0, 1, 0, 1], [1, 1, 1, 0]], dtype=float)
    assert list(m.evaluate_rows(V, sp)) == [0.0, 1.0]
    uneven = FiniteSpace.from_probs(["1/2", "1/4", "1/4"])
    assert list(m.evaluate_rows(np.array([[0.0, 1, 1], [1.0, 0, 0]]), uneven)) == [0.0, 0.0]
    with pytest.raises(InvalidParameter):
        oracle.LawIndicatorMeasure({0.0: "1/2"})


def test_counterexample_report():
    rep = oracle.appendix_counterexample()
    assert rep.joint_value >= 1
    assert rep.sequential_value < rep.joint_value
    assert rep.gap_confirmed
    seq = rep.sequential_allocation
    assert oracle.dependence_check(seq, "sequential").ok
    assert np.allclose(seq.total().values, oracle.counterexample_instance()[1].values)
    # zero needs each component to have its target law; exhaustive over supports
    assert not rep.zero_joint_attainable


def test_counterexample_sequential_minimum_by_hand_enumeration():
    _, X, measures = oracle.counterexample_instance()
    G = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    assert _naive(measures, X, G, "sequential") == 1.0


SCENARIO = """
# two convex agents on a 3-point law times a fair coin
probs = 1/3, 1/3, 1/3
X = 0, 0.3, 1
coin = 2
measure = choquet family=dual_power alpha=0.5
measure = choquet family=dual_power alpha=0.5
regime = counter_monotonic
space = Lplus
levels = 16
"""


def test_scenario_round_trip():
    sc = oracle.parse_scenario(SCENARIO)
    assert sc.X.space.size == 6 and len(sc.measures) == 2
    res = oracle.run_scenario(sc)
    assert res.method == "value_grid" and math.isfinite(res.value)


@pytest.mark.parametrize(
    "text",
    [
        "X = 0, 1\nmeasure = choquet family=power alpha=2",
        "measure = choquet family=power alpha=2\nmeasure = choquet family=power alpha=2",
        "X = 0, 1\nX = 1, 2\nmeasure = law 0:1\nmeasure = law 0:1",
        "X = 0, 1\nbogus = 3\nmeasure = law 0:1\nmeasure = law 0:1",
        "X = 0, 1\nmeasure = gauss 0\nmeasure = law 0:1",
        "X = 0, 1\nno equals sign",
    ],
)
def test_scenario_errors(text):
    with pytest.raises(UsageError):
        oracle.parse_scenario(text)


# oracle against the closed forms -------------------------------------------

ORACLE_HS = [
    make_distortion("power", alpha=1.0),
    make_distortion("power", alpha=2.0),
    CONVEX,
    make_distortion("es_cap", beta=0.5),
]


def _generated_laws(count, seed=17):
    rng = np.random.default_rng(seed)
    for i in range(count):
        k = int(rng.integers(1, 3))
        vals = np.concatenate([[0.0], rng.choice([0.25, 0.5, 1.0], size=k)])
        yield ORACLE_HS[i % len(ORACLE_HS)], int(rng.integers(2, 4)), vals


def test_oracle_matches_closed_forms_on_50_cases():
    from riskshare import infconv

    for h, n, vals in _generated_laws(50):
        base, coin = FiniteSpace.uniform(vals.size), FiniteSpace.uniform(n, "c")
        X = base.variable(vals).lift(base.product(coin), coin)
        closed = infconv(h, n, X.to_distribution(), "counter_monotonic", "Lplus").value
        gaps = []
        for levels in (4, 8):
            res = oracle.brute_force_infconv(oracle.choquet_agents(h, n), X, "counter_monotonic", levels, "Lplus")
            assert oracle.dependence_check(res.allocation, "counter_monotonic").ok
            gaps.append(abs(res.value - closed))
        assert gaps[1] <= gaps[0] + 1e-12 and gaps[1] <= 1e-9, (h.describe(), n, vals, gaps)


def test_convex_unconstrained_argmin_is_jackpot_and_beats_comonotonic():
    base, coin = FiniteSpace.uniform(2), FiniteSpace.uniform(2, "c")
    X = base.variable([0.5, 1.0]).lift(base.product(coin), coin)
    for h in (CONVEX, make_distortion("power", alpha=2.0)):
        ms = oracle.choquet_agents(h, 2)
        free = oracle.brute_force_infconv(ms, X, "unconstrained", 4, "Lplus")
        assert free.value < choquet_finite(h, X) - 1e-9
        assert oracle.representation_decompose(free.allocation).branch == "jackpot"
        como = oracle.brute_force_infconv(ms, X, "comonotonic", 4, "Lplus")
        assert como.value > free.value + 1e-9
