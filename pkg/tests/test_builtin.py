from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builtin import (
    BlackBoxRecognizer,
    canonical_language,
    encode,
    membership,
    qtwin_operators,
)
from builtin.qtwin import FIRST_HALF, REGISTER
from engines import exact_probability
from errors import ConfigError, NonHalting, UnknownLanguage
from exactmath import QVector, apply

halves = st.text(alphabet="ab", max_size=3)


def _first_half_state(u: str) -> QVector:
    """Ненормированный вектор регистра после чтения ¢u."""
    ops = qtwin_operators()
    psi = QVector.basis(len(REGISTER), 0)
    for name in ["E_cent"] + [FIRST_HALF[ch] for ch in u]:
        psi = apply(ops[name], psi)[0][1]
    return psi


# ==========================================================================
# Языки
# ==========================================================================

@pytest.mark.parametrize("lang,word,expected", [
    ("TWIN", "ab#ab", True), ("TWIN", "ab#ba", False), ("TWIN", "#", True),
    ("EXIST-TWIN", "ab#b#ab", True), ("EXIST-TWIN", "a#b", False), ("EXIST-TWIN", "ab", False),
    ("USQUARE", "bbbb", True), ("USQUARE", "bbb", False), ("USQUARE", "", False),
    ("SQUARE", "abb", False), ("SQUARE", "aabbbb", True),
    ("SIAM-TWINS", "abab", True), ("SIAM-TWINS", "", True), ("SIAM-TWINS", "aab", False),
    ("GREATER", "aab", True), ("GREATER", "ab", False),
    ("GREATER-SQUARE", "aaaaab", True), ("GREATER-SQUARE", "aaaabb", False),
    ("LAPINS", "aabbbcccccccc", True), ("LAPINS", "abc", False),
    ("CENTER", "aba", True), ("CENTER", "ab", False),
    ("SAY", "bab", True), ("SAY", "ab", False),
])
def test_membership_oracles(lang, word, expected):
    assert membership(lang, word) == expected


def test_language_aliases():
    assert canonical_language("lapinš") == "LAPINS"
    assert canonical_language("twin") == "TWIN"
    with pytest.raises(UnknownLanguage):
        canonical_language("PALINDROME")


def test_encode_prefixes_a_one():
    assert encode("") == 1
    assert encode("ab") == 0b101
    with pytest.raises(ConfigError):
        encode("abc")


# ==========================================================================
# Q_TWIN: замкнутые формулы
# ==========================================================================

@given(halves)
@settings(max_examples=30)
def test_first_half_closed_form(u):
    scale = Fraction(1, 3) ** (len(u) + 1)
    expected = QVector.of([encode(u), 1, 1], scale)
    assert _first_half_state(u) == expected


@pytest.mark.parametrize("word,accept", [
    ("#", Fraction(1, 729)),
    ("a#a", Fraction(1, 9) ** 5),
    ("ab#ab", Fraction(1, 9) ** 7),
])
def test_member_round_weights(qtwin, word, accept):
    report = exact_probability(qtwin, word)
    assert report.round.accept == accept
    assert report.round.reject == 0
    assert report.p_accept_lo == 1


def test_nonmember_round_weights(qtwin):
    report = exact_probability(qtwin, "a#b")
    assert report.round.accept == Fraction(1, 9) ** 5
    assert report.round.reject == Fraction(4, 59049)
    assert report.p_reject_lo == Fraction(4, 5)


@given(halves, halves)
@settings(max_examples=25, deadline=None)
def test_round_reject_formula(qtwin, u1, u2):
    tilde = len(u1) + len(u2) + 3
    report = exact_probability(qtwin, f"{u1}#{u2}")
    expected = 4 * Fraction(1, 9) ** tilde * (encode(u1) - encode(u2)) ** 2
    assert report.round.reject == expected
    assert report.round.accept == Fraction(1, 9) ** tilde


@pytest.mark.parametrize("word", ["a", "a#b#a", "ab", "a#a#"])
def test_malformed_words_rejected_outright(qtwin, word):
    report = exact_probability(qtwin, word)
    assert report.p_reject_lo == 1


# ==========================================================================
# Чёрные ящики
# ==========================================================================

def test_blackbox_decision_weights():
    box = BlackBoxRecognizer("SQUARE", Fraction(1, 3))
    assert box.decision_weights("abb") == (Fraction(1, 3), Fraction(2, 3))
    assert box.decision_weights("aabbbb") == (Fraction(1), Fraction(0))


def test_blackbox_members_always_accepted():
    box = BlackBoxRecognizer("GREATER", Fraction(1, 3), seed=5)
    for seed in range(20):
        assert box.clone(seed).run("aab") == "accept"


def test_blackbox_clone_is_reproducible():
    box = BlackBoxRecognizer("SQUARE", Fraction(1, 3))
    runs = [box.clone("x").run("ab") for _ in range(3)]
    assert len(set(runs)) == 1
    assert box.clone(1).language == "SQUARE"


def test_blackbox_step_cap_and_arguments():
    box = BlackBoxRecognizer("SQUARE", Fraction(1, 3), halt=Fraction(1, 10**6))
    with pytest.raises(NonHalting):
        box.run("ab", step_cap=3)
    with pytest.raises(ConfigError):
        BlackBoxRecognizer("SQUARE", Fraction(0))
    with pytest.raises(ConfigError):
        BlackBoxRecognizer("SQUARE", Fraction(1, 3)).advance()
