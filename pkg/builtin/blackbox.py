"""
Распознаватели-«чёрные ящики» для машин, внутреннее устройство которых
не воспроизводится (2qcfa для SQUARE, 2pfa для GREATER).

Контракт: член языка всегда принимается; не член принимается с
вероятностью ровно epsilon и отклоняется иначе; каждый прогон
останавливается с вероятностью 1 (геометрическое время остановки).
"""
from fractions import Fraction
from typing import Optional, Tuple

import config
from errors import ConfigError, NonHalting
from builtin.languages import canonical_language, membership
from utils.rng import DeterministicRNG, SeedLike

ACCEPT = "accept"
REJECT = "reject"


class BlackBoxRecognizer:
    """Пошаговый распознаватель с собственным генератором."""

    def __init__(self, language: str, epsilon, seed: SeedLike = config.DEFAULT_SEED,
                 halt=config.BLACKBOX_HALT):
        self.language = canonical_language(language)
        self.epsilon = Fraction(epsilon)
        self.halt = Fraction(halt)
        if not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.halt <= 1:
            raise ConfigError(f"halting probability must lie in (0, 1], got {self.halt}")
        self.seed = seed
        self._rng = DeterministicRNG(seed)
        self._word: Optional[str] = None
        self._decision: Optional[str] = None
        self.steps = 0

    def clone(self, seed: SeedLike) -> "BlackBoxRecognizer":
        return BlackBoxRecognizer(self.language, self.epsilon, seed, self.halt)

    def decision_weights(self, word: str) -> Tuple[Fraction, Fraction]:
        """Точные (accept, reject) одного завершённого прогона."""
        if membership(self.language, word):
            return Fraction(1), Fraction(0)
        return self.epsilon, 1 - self.epsilon

    def start(self, word: str) -> None:
        self._word = word
        self._decision = None
        self.steps = 0

    def advance(self) -> Optional[str]:
        if self._word is None:
            raise ConfigError("advance() called before start()")
        if self._decision is not None:
            return self._decision
        self.steps += 1
        if self._rng.bernoulli(self.halt):
            accept, _ = self.decision_weights(self._word)
            self._decision = ACCEPT if self._rng.bernoulli(accept) else REJECT
        return self._decision

    def decision(self) -> Optional[str]:
        return self._decision

    def run(self, word: str, step_cap: Optional[int] = None) -> str:
        self.start(word)
        while self.advance() is None:
            if step_cap is not None and self.steps >= step_cap:
                raise NonHalting(f"black box for {self.language} did not halt in {step_cap} steps")
        return self._decision


def blackbox_recognizer(lang: str, epsilon, seed: SeedLike = config.DEFAULT_SEED) -> BlackBoxRecognizer:
    return BlackBoxRecognizer(lang, epsilon, seed)
