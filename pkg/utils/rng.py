"""
Детерминированный генератор для воспроизводимых прогонов Монте-Карло.

Исходы с рациональными весами выбираются точно: общий знаменатель,
randrange и сравнение с накопленными числителями.
"""
import random as _random
from fractions import Fraction
from math import lcm
from typing import Hashable, Sequence, Union

SeedLike = Union[int, str]


class DeterministicRNG:
    """Обёртка над random.Random с выводом дочерних генераторов по индексу."""

    def __init__(self, seed: SeedLike):
        self.seed = seed
        self._rng = _random.Random(seed)

    def spawn(self, index: Hashable) -> "DeterministicRNG":
        """Генератор испытания index; не зависит от числа процессов."""
        return DeterministicRNG(f"{self.seed}:{index}")

    def randbelow(self, n: int) -> int:
        return self._rng.randrange(n)

    def choose(self, weights: Sequence[Fraction]) -> int:
        """Индекс исхода с вероятностью weights[i] / sum(weights)."""
        if not weights:
            raise ValueError("choose() needs at least one weight")
        weights = [Fraction(w) for w in weights]
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        denominator = lcm(*(w.denominator for w in weights))
        numerators = [w.numerator * (denominator // w.denominator) for w in weights]
        total = sum(numerators)
        if total == 0:
            raise ValueError("weights sum to zero")
        draw = self._rng.randrange(total)
        for index, numerator in enumerate(numerators):
            if draw < numerator:
                return index
            draw -= numerator
        return len(weights) - 1

    def bernoulli(self, p: Fraction) -> bool:
        p = Fraction(p)
        if p <= 0:
            return False
        if p >= 1:
            return True
        return self._rng.randrange(p.denominator) < p.numerator
