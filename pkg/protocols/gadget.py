"""
Проверка длин конфигураций в потоке c1$$c2$$c3$$... от доказывающего.

В начале раунда равновероятно выбирается чётность: сравниваются пары
(c1,c2), (c3,c4), ... или пары (c2,c3), (c4,c5), .... Длина первой
конфигурации пары набирается на счётчике, ожидаемое изменение длины
вычисляется по её состоянию и головке, вторая конфигурация счётчик
расходует. Символ сверх ожидаемой длины отмечается сразу; длина
c1 сверяется с входом в обеих ветвях.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from errors import ConfigError, MalformedStream
from protocols.dtm import DTM, DTMConfig

SEPARATOR = "$"
PARITIES = (1, 2)


@dataclass(frozen=True)
class GadgetVerdict:
    parity: int
    flagged: bool
    reason: Optional[str] = None
    consumed: int = 0


class LengthGadget:
    """Компонент проверяющего для заданных DTM и входа."""

    def __init__(self, dtm: DTM, word: str):
        overlap = set(dtm.states) & set(dtm.tape_alphabet)
        if overlap or SEPARATOR in dtm.tape_alphabet or SEPARATOR in dtm.states:
            raise ConfigError("DTM states, tape symbols and the separator must be distinct")
        self.dtm = dtm
        self.word = word
        self.alphabet = set(dtm.states) | set(dtm.tape_alphabet) | {SEPARATOR}
        self.initial_length = len(dtm.initial(word))

    def honest_stream(self, max_steps: int = 10**4) -> List[str]:
        stream: List[str] = []
        for config in self.dtm.run(self.word, max_steps):
            stream.extend(config.tokens())
            stream.extend((SEPARATOR, SEPARATOR))
        return stream

    def _parse(self, tokens: Sequence[str]) -> Optional[DTMConfig]:
        positions = [i for i, t in enumerate(tokens) if t in self.dtm.states]
        if len(positions) != 1:
            return None
        head = positions[0]
        tape = tuple(tokens[:head]) + tuple(tokens[head + 1:])
        if head == len(tape):
            return None
        return DTMConfig(tokens[head], tape, head)

    def _expected(self, tokens: Sequence[str]) -> Tuple[Optional[int], Optional[str]]:
        """Ожидаемая длина следующей конфигурации или причина отметки."""
        config = self._parse(tokens)
        if config is None:
            return None, "configuration does not hold exactly one state over a tape cell"
        if self.dtm.is_halting(config.state):
            return None, None
        try:
            return len(tokens) + self.dtm.length_delta(config), None
        except ConfigError as exc:
            return None, str(exc)

    def check(self, stream: Iterable[str], parity: int) -> GadgetVerdict:
        """Просматривает поток до отметки или до его конца."""
        if parity not in PARITIES:
            raise ConfigError(f"parity must be 1 or 2, got {parity}")
        index = 1
        current: List[str] = []
        expected: Optional[int] = self.initial_length
        pending_separator = False
        consumed = 0
        for token in stream:
            consumed += 1
            if token not in self.alphabet:
                raise MalformedStream(f"symbol {token!r} is outside the configuration alphabet")
            if pending_separator:
                if token != SEPARATOR:
                    return GadgetVerdict(parity, True, "single separator symbol", consumed)
                pending_separator = False
                if expected is not None and len(current) != expected:
                    return GadgetVerdict(parity, True, f"configuration {index} is too short", consumed)
                expected = None
                if (index - parity) % 2 == 0:
                    expected, reason = self._expected(current)
                    if reason is not None:
                        return GadgetVerdict(parity, True, reason, consumed)
                index += 1
                current = []
                continue
            if token == SEPARATOR:
                pending_separator = True
                continue
            current.append(token)
            if expected is not None and len(current) > expected:
                return GadgetVerdict(parity, True, f"configuration {index} overruns its length", consumed)
        return GadgetVerdict(parity, False, None, consumed)

    def detection_probability(self, stream: Sequence[str]) -> Fraction:
        """Доля ветвей чётности, отмечающих поток."""
        stream = list(stream)
        flagged = sum(1 for parity in PARITIES if self.check(stream, parity).flagged)
        return Fraction(flagged, len(PARITIES))


def theorem3_length_gadget(dtm: DTM, word: str) -> LengthGadget:
    return LengthGadget(dtm, word)
