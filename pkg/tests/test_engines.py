from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from builtin import SAMPLES
from engines import (
    ACCEPT,
    FORWARD,
    REJECT,
    ProbabilityReport,
    RoundStats,
    Stepper,
    classify_mode,
    exact_probability,
    explore_nondeterministic,
    monte_carlo,
    report_from_round,
    run_deterministic,
    wilson_interval,
)
from errors import ConfigError, Inconclusive
from exactmath import QMatrix, Superoperator
from machines.builder import TableBuilder
from machines.model import RESTART, STATUSES, act, prob_row, quantum_row
from utils.rng import DeterministicRNG

words_ab = st.text(alphabet="ab", max_size=8)


def _report(accept, reject, live=Fraction(0)):
    return ProbabilityReport(Fraction(accept), Fraction(reject), Fraction(live), 1, live == 0)


# ==========================================================================
# Детерминированные прогоны
# ==========================================================================

@pytest.mark.parametrize("word,decision", [
    ("", ACCEPT), ("ab", ACCEPT), ("aabb", ACCEPT),
    ("aab", REJECT), ("ba", REJECT), ("abab", REJECT),
])
def test_anbn_2dca_decisions(anbn_2dca, word, decision):
    assert run_deterministic(anbn_2dca, word, 100).decision == decision


@given(words_ab)
@settings(max_examples=60)
def test_one_way_and_two_way_anbn_agree(anbn_2dca, anbn_1d2ca, word):
    two_way = run_deterministic(anbn_2dca, word, 200).decision
    one_way = run_deterministic(anbn_1d2ca, word, 200).decision
    assert two_way == one_way


def test_trace_starts_at_initial_configuration(anbn_2dca):
    result = run_deterministic(anbn_2dca, "ab", 100, trace=True)
    first = result.trace[0]
    assert (first.state, first.head, first.counters) == ("q0", 1, (0,))
    assert len(result.trace) == result.steps + 1


def test_run_deterministic_refuses_probabilistic_kind():
    with pytest.raises(ConfigError):
        run_deterministic(SAMPLES["fair-coin"](), "ab", 10)


def test_stepper_rejects_foreign_symbols(anbn_2dca):
    with pytest.raises(ConfigError):
        Stepper(anbn_2dca, "abc")


# ==========================================================================
# Точный анализ
# ==========================================================================

def test_fair_coin_is_exactly_one_half():
    report = exact_probability(SAMPLES["fair-coin"](), "ab")
    assert report.p_accept_lo == Fraction(1, 2)
    assert report.p_reject_lo == Fraction(1, 2)
    assert report.live == 0
    assert report.converged


def test_deterministic_machine_through_exact_engine(anbn_2dca):
    assert exact_probability(anbn_2dca, "aabb").p_accept_lo == 1
    assert exact_probability(anbn_2dca, "aab").p_reject_lo == 1


@pytest.mark.parametrize("word", ["#", "a#a", "a#b", "ab#a"])
def test_mass_is_conserved(qtwin, word):
    report = exact_probability(qtwin, word)
    assert report.p_accept_lo + report.p_reject_lo + report.live == 1
    assert report.p_accept_hi == report.p_accept_lo + report.live


def test_forward_method_gives_sound_bounds(qtwin):
    exact = exact_probability(qtwin, "a#b")
    forward = exact_probability(qtwin, "a#b", method=FORWARD, horizon=400)
    assert forward.p_accept_lo <= exact.p_accept_lo <= forward.p_accept_hi
    assert forward.p_reject_lo <= exact.p_reject_lo <= forward.p_reject_hi


def test_unknown_method_and_bad_tolerance(qtwin):
    with pytest.raises(ConfigError):
        exact_probability(qtwin, "#", method="guess")
    with pytest.raises(ConfigError):
        exact_probability(qtwin, "#", tolerance=Fraction(2))


def test_nondeterministic_kind_is_refused():
    with pytest.raises(ConfigError):
        exact_probability(SAMPLES["contains-aa"](), "aa")


def test_report_from_round_normalises():
    report = report_from_round(RoundStats(Fraction(1, 10), Fraction(3, 10), Fraction(6, 10)))
    assert report.p_accept_lo == Fraction(1, 4)
    assert report.p_reject_lo == Fraction(3, 4)
    assert report.converged


def test_report_from_unresolved_round_warns():
    with pytest.warns(Warning):
        report = report_from_round(RoundStats(Fraction(0), Fraction(0), Fraction(1)))
    assert report.live == 1
    assert not report.converged


# ==========================================================================
# Монте-Карло
# ==========================================================================

def test_monte_carlo_is_reproducible():
    coin = SAMPLES["fair-coin"]()
    first = monte_carlo(coin, "ab", trials=300, seed=7)
    second = monte_carlo(coin, "ab", trials=300, seed=7)
    assert first == second
    assert first.accepts + first.rejects + first.timeouts == 300
    assert first.timeouts == 0


def test_monte_carlo_counts_do_not_depend_on_jobs():
    coin = SAMPLES["fair-coin"]()
    single = monte_carlo(coin, "ab", trials=200, seed=11, jobs=1)
    pooled = monte_carlo(coin, "ab", trials=200, seed=11, jobs=2)
    assert (single.accepts, single.rejects) == (pooled.accepts, pooled.rejects)


def test_monte_carlo_accept_all():
    estimate = monte_carlo(SAMPLES["accept-all"](), "ab", trials=50)
    assert estimate.accepts == 50
    assert estimate.accept_ci[1] > 0.99


def test_monte_carlo_argument_checks():
    coin = SAMPLES["fair-coin"]()
    with pytest.raises(ConfigError):
        monte_carlo(coin, "ab", trials=0)
    with pytest.raises(ConfigError):
        monte_carlo(SAMPLES["contains-aa"](), "aa", trials=10)


@given(st.integers(min_value=1, max_value=500), st.data())
def test_wilson_interval_contains_rate(trials, data):
    successes = data.draw(st.integers(min_value=0, max_value=trials))
    low, high = wilson_interval(successes, trials)
    rate = successes / trials
    assert 0.0 <= low <= rate + 1e-12
    assert rate - 1e-12 <= high <= 1.0


def test_rng_choose_respects_zero_weights():
    rng = DeterministicRNG(3)
    picks = {rng.choose([Fraction(0), Fraction(1, 3), Fraction(2, 3)]) for _ in range(100)}
    assert 0 not in picks


# ==========================================================================
# Поиск
# ==========================================================================

def test_contains_aa_search():
    spec = SAMPLES["contains-aa"]()
    hit = explore_nondeterministic(spec, "baab", counter_cap=4, step_cap=50)
    assert hit.accepting_path is not None
    assert hit.accepting_path[-1].state == "acc"
    miss = explore_nondeterministic(spec, "abab", counter_cap=4, step_cap=50)
    assert miss.accepting_path is None


def test_guess_anbn_search_finds_counting_path():
    spec = SAMPLES["guess-anbn"]()
    assert explore_nondeterministic(spec, "aabb", 8, 100).accepting_path is not None
    assert explore_nondeterministic(spec, "aab", 8, 100).accepting_path is None


def test_search_reachable_states():
    assert explore_nondeterministic(SAMPLES["single-state"](), "ab", 4, 50).reachable == {"s1"}
    result = explore_nondeterministic(SAMPLES["rejecting-branch"](), "ab", 4, 50)
    assert result.reachable == {"s1", "rej"}
    assert result.witnesses["rej"][0].state == "s1"


def test_search_refuses_quantum(qtwin):
    with pytest.raises(ConfigError):
        explore_nondeterministic(qtwin, "#", 4, 10)


# ==========================================================================
# Режимы распознавания
# ==========================================================================

def test_qtwin_is_negative_one_sided(qtwin):
    members = [exact_probability(qtwin, w) for w in ("#", "a#a", "b#b")]
    nonmembers = [exact_probability(qtwin, w) for w in ("a#b", "b#a")]
    assert classify_mode(members, nonmembers, Fraction(1, 5)) == "negative-one-sided"


def test_mode_order_prefers_positive_one_sided():
    members = [_report(Fraction(9, 10), Fraction(1, 10))]
    nonmembers = [_report(0, 1)]
    assert classify_mode(members, nonmembers, Fraction(1, 5)) == "positive-one-sided"


def test_unbounded_and_none():
    members = [_report(Fraction(3, 5), Fraction(2, 5))]
    nonmembers = [_report(Fraction(1, 2), Fraction(1, 2))]
    assert classify_mode(members, nonmembers, Fraction(1, 5)) == "unbounded"
    assert classify_mode(nonmembers, members, Fraction(1, 5)) == "none"


def test_straddling_live_mass_is_inconclusive():
    members = [_report(1, 0)]
    nonmembers = [_report(0, Fraction(1, 2), Fraction(1, 2))]
    with pytest.raises(Inconclusive):
        classify_mode(members, nonmembers, Fraction(1, 5))


def test_epsilon_range():
    with pytest.raises(ConfigError):
        classify_mode([], [], Fraction(1, 2))


# ==========================================================================
# Случайные таблицы: сохранение массы и согласие с Монте-Карло
# ==========================================================================

HALF, THIRD, QUARTER = Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)
SPLITS = [(1,), (HALF, HALF), (THIRD, 2 * THIRD), (QUARTER, QUARTER, HALF)]
SAFE_MOVES = {"¢": "SR", "$": "LS"}
SWAP = [[0, 1], [1, 0]]
KEEP = [[1, 0], [0, 1]]
ROTATE = [[3, -4], [4, 3]]
AMPLITUDES = [(Fraction(1),), (Fraction(3, 5), Fraction(4, 5)), (THIRD, 2 * THIRD, 2 * THIRD)]


def _random_action(draw, targets, symbol, counters):
    target = draw(st.sampled_from(targets))
    if target == "restart":
        return RESTART
    move = draw(st.sampled_from(SAFE_MOVES.get(symbol, "LSR")))
    return act(target, move, *(draw(st.sampled_from((-1, 0, 1))) for _ in range(counters)))


@st.composite
def random_2pca(draw):
    inner = [f"s{i}" for i in range(1, draw(st.integers(1, 3)) + 1)]
    targets = inner + ["acc", "rej", "restart"]
    b = TableBuilder("2pca", "ab", start="s1")
    for state in inner:
        for symbol in ("¢", "a", "b", "$"):
            for status in STATUSES:
                split = draw(st.sampled_from(SPLITS))
                pairs = [(w, _random_action(draw, targets, symbol, 1)) for w in split]
                b.row(state, symbol, prob_row(*pairs), status=status)
    return b.build({"machine": "random-2pca"})


def _random_operator(draw):
    elements = []
    for amplitude in draw(st.sampled_from(AMPLITUDES)):
        shape = draw(st.sampled_from(("keep", "swap", "rotate")))
        if shape == "rotate":
            elements.append(QMatrix.of(ROTATE, amplitude / 5))
        else:
            elements.append(QMatrix.of(KEEP if shape == "keep" else SWAP, amplitude))
    return Superoperator.of(elements)


@st.composite
def random_2qcfa(draw):
    inner = [f"s{i}" for i in range(1, draw(st.integers(1, 2)) + 1)]
    targets = inner + ["acc", "rej", "restart"]
    b = TableBuilder("2qcfa", "ab", start="s1")
    b.register(("q1", "q2"), "q1")
    ops = {"U": _random_operator(draw), "V": _random_operator(draw)}
    for name, op in ops.items():
        b.operator(name, op)
    for state in inner:
        for symbol in ("¢", "a", "b", "$"):
            name = draw(st.sampled_from(("U", "V", "id")))
            k = 1 if name == "id" else ops[name].k
            actions = [_random_action(draw, targets, symbol, 0) for _ in range(k)]
            b.row(state, symbol, quantum_row(name, *actions))
    return b.build({"machine": "random-2qcfa"})


def _assert_nested_bounds(spec, word, horizon):
    short = exact_probability(spec, word, method=FORWARD, horizon=horizon)
    long = exact_probability(spec, word, method=FORWARD, horizon=2 * horizon)
    for report in (short, long):
        assert report.p_accept_lo + report.p_reject_lo + report.live == 1
        assert min(report.p_accept_lo, report.p_reject_lo, report.live) >= 0
    assert short.p_accept_lo <= long.p_accept_lo <= long.p_accept_hi <= short.p_accept_hi
    assert short.p_reject_lo <= long.p_reject_lo <= long.p_reject_hi <= short.p_reject_hi


@pytest.mark.filterwarnings("ignore::UserWarning")
@given(random_2pca(), st.text(alphabet="ab", max_size=4))
@settings(max_examples=800, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_random_2pca_conserves_mass(spec, word):
    _assert_nested_bounds(spec, word, 10)


@pytest.mark.filterwarnings("ignore::UserWarning")
@given(random_2qcfa(), st.text(alphabet="ab", max_size=3))
@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_random_2qcfa_conserves_mass(spec, word):
    _assert_nested_bounds(spec, word, 3)


def restart_walker():
    """На каждом символе отвергает с вероятностью 1/3, на $ бросает монету: принять или начать заново."""
    b = TableBuilder("2pca", "ab", start="walk")
    b.row("walk", "¢", prob_row((1, act("walk", "R", 0))))
    b.row("walk", ["a", "b"], prob_row((THIRD, act("rej", "S", 0)), (2 * THIRD, act("walk", "R", 0))))
    b.row("walk", "$", prob_row((HALF, act("acc", "S", 0)), (HALF, RESTART)))
    return b.build({"machine": "restart-walker"})


def test_restart_walker_exact_value():
    report = exact_probability(restart_walker(), "ab")
    assert report.p_accept_lo == Fraction(2, 7)
    assert report.round == RoundStats(Fraction(2, 9), Fraction(5, 9), Fraction(2, 9), Fraction(0))


@pytest.mark.parametrize("spec", [restart_walker(), SAMPLES["fair-coin"]()],
                         ids=["restart-walker", "fair-coin"])
def test_monte_carlo_interval_covers_exact_value(spec):
    exact = float(exact_probability(spec, "ab").p_accept_lo)
    covered = 0
    for seed in range(20):
        estimate = monte_carlo(spec, "ab", trials=400, seed=seed)
        assert estimate.timeouts == 0
        low, high = estimate.accept_ci
        covered += low <= exact <= high
    assert covered >= 16
