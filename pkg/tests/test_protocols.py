from fractions import Fraction
from itertools import product

import pytest

import config
from engines import exact_probability
from errors import ConfigError, MalformedStream, NonHalting
from protocols import (
    DTM,
    STRATEGIES,
    AcceptRusher,
    FlatlineProver,
    OffByOneProver,
    ProtocolParams,
    StrategyChoice,
    adversarial_provers,
    corollary2_verifier,
    counter_history,
    honest_prover,
    predicted_weights,
    run_session,
    scanner_dtm,
    theorem1_verifier,
    theorem3_length_gadget,
)
from protocols.gadget import SEPARATOR
from protocols.provers import encode_blocks
from state import create_initial_session_state

EAGER = ProtocolParams(continue_probability=Fraction(1))


def _configs(stream):
    """Делит поток проверки длин на конфигурации."""
    configs, current, previous = [], [], None
    for token in stream:
        if token == SEPARATOR and previous == SEPARATOR:
            configs.append(current)
            current = []
            previous = None
            continue
        if token != SEPARATOR:
            current.append(token)
        previous = token
    return configs


def _join(configs):
    stream = []
    for tokens in configs:
        stream.extend(tokens)
        stream.extend((SEPARATOR, SEPARATOR))
    return stream


def _tampered(configs):
    """Все потоки с одной вставкой или одним удалением в одной конфигурации."""
    for i, tokens in enumerate(configs):
        for pos in range(len(tokens) + 1):
            changed = [list(c) for c in configs]
            changed[i] = tokens[:pos] + ["a"] + tokens[pos:]
            yield _join(changed)
        for pos in range(len(tokens)):
            changed = [list(c) for c in configs]
            changed[i] = tokens[:pos] + tokens[pos + 1:]
            yield _join(changed)


# ==========================================================================
# Машина Тьюринга и проверка длин
# ==========================================================================

@pytest.mark.parametrize("word,count", [("ab", 4), ("abab", 6)])
def test_scanner_configuration_count(word, count):
    assert len(scanner_dtm().run(word)) == count


def test_dtm_step_cap():
    looping = DTM(states=("q0", "acc", "rej"), alphabet=("a",),
                  transitions={("q0", "a"): ("q0", "a", "S")})
    with pytest.raises(NonHalting):
        looping.run("a", max_steps=5)


@pytest.mark.parametrize("word", ["ab", "abab"])
def test_honest_stream_is_never_flagged(word):
    gadget = theorem3_length_gadget(scanner_dtm(), word)
    assert gadget.detection_probability(gadget.honest_stream()) == 0


@pytest.mark.parametrize("word", ["ab", "abab"])
def test_every_single_edit_is_caught_half_the_time(word):
    gadget = theorem3_length_gadget(scanner_dtm(), word)
    configs = _configs(gadget.honest_stream())
    assert len(configs) == len(scanner_dtm().run(word))
    for stream in _tampered(configs):
        assert gadget.detection_probability(stream) >= Fraction(1, 2)


def test_gadget_rejects_foreign_symbols_and_bad_parity():
    gadget = theorem3_length_gadget(scanner_dtm(), "ab")
    with pytest.raises(MalformedStream):
        gadget.check(["q0", "z"], 1)
    with pytest.raises(ConfigError):
        gadget.check([], 3)


def test_gadget_needs_disjoint_alphabets():
    clash = DTM(states=("a", "acc", "rej"), alphabet=("a",), transitions={})
    with pytest.raises(ConfigError):
        theorem3_length_gadget(clash, "a")


def test_single_separator_is_flagged():
    gadget = theorem3_length_gadget(scanner_dtm(), "ab")
    verdict = gadget.check(["q0", "a", "b", SEPARATOR, "a"], 1)
    assert verdict.flagged
    assert verdict.reason == "single separator symbol"


# ==========================================================================
# Доказывающие
# ==========================================================================

def test_counter_history_and_blocks(anbn_1d2ca):
    history = counter_history(anbn_1d2ca, "ab")
    assert history == [(0, 0), (1, 0), (0, 0)]
    assert encode_blocks(history) == ["#", "a", "#", "#"]


def test_honest_prover_answers_then_pads(anbn_1d2ca):
    prover = honest_prover(anbn_1d2ca)
    state = prover.start("ab")
    answers = []
    for _ in range(6):
        symbol, state = prover.answer("ab", state, "next")
        answers.append(symbol)
    assert answers == ["#", "a", "#", "#", "#", "#"]
    assert prover.on_restart("ab", state) == 0


def test_off_by_one_changes_one_block(anbn_1d2ca):
    prover = OffByOneProver(anbn_1d2ca, lie_step=2)
    assert prover.stream("ab") == ["#", "#", "#"]
    with pytest.raises(ConfigError):
        OffByOneProver(anbn_1d2ca, lie_step=0)


def test_adversaries_are_distinct(anbn_1d2ca):
    names = [p.name for p in adversarial_provers(anbn_1d2ca)]
    assert names == ["flatline", "off-by-one", "stall", "wrong-branch", "accept-rusher"]
    assert FlatlineProver().answer("ab", 0, "next") == ("#", 0)


def test_provers_need_a_two_counter_target(anbn_2dca):
    with pytest.raises(ConfigError):
        honest_prover(anbn_2dca)
    with pytest.raises(ConfigError):
        theorem1_verifier(anbn_2dca)


# ==========================================================================
# Проверяющие
# ==========================================================================

def test_strategy_choices():
    assert len(STRATEGIES) == 4
    with pytest.raises(ConfigError):
        StrategyChoice(3, 1)
    with pytest.raises(ConfigError):
        ProtocolParams(k=1)


def test_predicted_weights(anbn_1d2ca):
    member = predicted_weights(anbn_1d2ca, "ab")
    assert member == {"l": 4, "k": 16, "member": True,
                      "accept": Fraction(1, 256), "reject": Fraction(0)}
    nonmember = predicted_weights(anbn_1d2ca, "aab")
    assert nonmember["l"] == 8
    assert nonmember["reject"] == Fraction(1, 256)


@pytest.mark.parametrize("word", ["ab", "aab", "", "aabb", "aaabbb"])
def test_restarting_verifier_matches_prediction(anbn_1d2ca, word):
    verifier = theorem1_verifier(anbn_1d2ca)
    report = exact_probability(verifier, word, prover=honest_prover(anbn_1d2ca))
    predicted = predicted_weights(anbn_1d2ca, word)
    assert report.round.accept == predicted["accept"]
    assert report.round.reject == predicted["reject"]
    if predicted["member"]:
        assert report.p_accept_lo == 1
    else:
        assert report.p_reject_lo == 1


def test_restarting_verifier_resists_accept_rusher(anbn_1d2ca):
    verifier = theorem1_verifier(anbn_1d2ca)
    report = exact_probability(verifier, "aab", prover=AcceptRusher(anbn_1d2ca))
    assert report.p_accept_hi < Fraction(1, 5)


def test_one_way_verifier_exact_numbers(anbn_1d2ca):
    verifier = corollary2_verifier(anbn_1d2ca)
    assert verifier.kind == "1pca"
    member = exact_probability(verifier, "ab", prover=honest_prover(anbn_1d2ca))
    assert member.p_accept_lo == Fraction(4, 7)
    assert member.p_reject_lo == Fraction(3, 7)
    nonmember = exact_probability(verifier, "aab", prover=honest_prover(anbn_1d2ca))
    assert nonmember.p_reject_lo == 1


# ==========================================================================
# Обманывающие доказывающие на всех коротких словах
# ==========================================================================

MEMBERS = {"", "ab", "aabb", "aaabbb"}
NONMEMBERS = ["".join(p) for n in range(1, 7) for p in product("ab", repeat=n)
              if "".join(p) not in MEMBERS]
TINY = Fraction(1, 10**6)


@pytest.mark.parametrize("word", ["ab", "aabb", "aaabbb"])
def test_honest_round_accept_halves_per_symbol(anbn_1d2ca, word):
    report = exact_probability(theorem1_verifier(anbn_1d2ca), word, prover=honest_prover(anbn_1d2ca))
    length = predicted_weights(anbn_1d2ca, word)["l"]
    assert report.round.accept == Fraction(1, 16 * 2**length)


@pytest.mark.filterwarnings("ignore::UserWarning")
@pytest.mark.parametrize("word", NONMEMBERS)
def test_restarting_verifier_bounds_every_adversary(anbn_1d2ca, word):
    verifier = theorem1_verifier(anbn_1d2ca)
    for prover in adversarial_provers(anbn_1d2ca):
        horizon = 200 if prover.name == "stall" else config.DEFAULT_HORIZON
        report = exact_probability(verifier, word, prover=prover, horizon=horizon)
        assert report.live < TINY, prover.name
        assert report.p_accept_hi <= Fraction(3, 16) * report.p_reject_lo, prover.name


def test_flatline_sits_on_the_bound(anbn_1d2ca):
    flatline = next(p for p in adversarial_provers(anbn_1d2ca) if p.name == "flatline")
    report = exact_probability(theorem1_verifier(anbn_1d2ca), "a", prover=flatline)
    assert report.p_accept_lo == Fraction(3, 19)
    assert report.p_accept_lo == Fraction(3, 16) * Fraction(16, 19)


@pytest.mark.filterwarnings("ignore::UserWarning")
@pytest.mark.parametrize("word", NONMEMBERS)
def test_one_way_verifier_rejects_every_adversary(anbn_1d2ca, word):
    verifier = corollary2_verifier(anbn_1d2ca)
    for prover in adversarial_provers(anbn_1d2ca):
        report = exact_probability(verifier, word, prover=prover)
        assert report.p_reject_lo >= Fraction(4, 7) - Fraction(1, 10**9), prover.name


# ==========================================================================
# Сессии и стенограммы
# ==========================================================================

def test_one_way_session_transcripts(anbn_1d2ca):
    verifier = corollary2_verifier(anbn_1d2ca)
    result = run_session(verifier, honest_prover(anbn_1d2ca), "ab", samples=3, seed=4,
                         target=anbn_1d2ca)
    assert result.predicted["accept"] == Fraction(4, 7)
    assert len(result.transcripts) == 3
    for transcript in result.transcripts:
        assert transcript.decision in ("accept", "reject")
        assert transcript.rounds == 1
        assert transcript.events[-1]["marker"] in ("ACCEPT", "REJECT")
        steps = [e["step"] for e in transcript.events]
        assert steps == list(range(1, len(steps) + 1))


def test_transcripts_are_reproducible(anbn_1d2ca):
    verifier = theorem1_verifier(anbn_1d2ca, EAGER)
    prover = honest_prover(anbn_1d2ca)
    first = run_session(verifier, prover, "aab", samples=2, seed=9)
    second = run_session(verifier, prover, "aab", samples=2, seed=9)
    assert [t.events for t in first.transcripts] == [t.events for t in second.transcripts]
    assert all(t.decision == "reject" for t in first.transcripts)


def test_prover_symbols_appear_in_transcript(anbn_1d2ca):
    verifier = theorem1_verifier(anbn_1d2ca, EAGER)
    result = run_session(verifier, honest_prover(anbn_1d2ca), "aab", samples=1, seed=2)
    symbols = [e["prover_symbol"] for e in result.transcripts[0].events if e["prover_symbol"] != "-"]
    assert symbols == encode_blocks(counter_history(anbn_1d2ca, "aab"))


def test_monte_carlo_session(anbn_1d2ca):
    verifier = corollary2_verifier(anbn_1d2ca)
    result = run_session(verifier, honest_prover(anbn_1d2ca), "aab", mode="mc", budget=50, samples=0)
    assert result.report.rejects == 50
    with pytest.raises(ConfigError):
        run_session(verifier, honest_prover(anbn_1d2ca), "aab", mode="symbolic")


def test_session_state_needs_steps(anbn_1d2ca):
    with pytest.raises(ValueError):
        create_initial_session_state("ab", None, 0, 0)
