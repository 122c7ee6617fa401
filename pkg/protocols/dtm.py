"""
Минимальная одноленточная детерминированная машина Тьюринга.

Конфигурация записывается как u q v по посещённому префиксу ленты:
символы до головки, имя состояния, символы от головки до конца префикса.
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from errors import ConfigError, NonHalting

BLANK = "_"
DTM_MOVES = {"L": -1, "S": 0, "R": 1}

Instruction = Tuple[str, str, str]


@dataclass(frozen=True)
class DTMConfig:
    state: str
    tape: Tuple[str, ...]
    head: int = 0

    def tokens(self) -> List[str]:
        return list(self.tape[:self.head]) + [self.state] + list(self.tape[self.head:])

    def __len__(self) -> int:
        return len(self.tape) + 1


@dataclass(frozen=True)
class DTM:
    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    transitions: Dict[Tuple[str, str], Instruction]
    accept: str = "acc"
    reject: str = "rej"

    __hash__ = None

    @property
    def start(self) -> str:
        return self.states[0]

    @property
    def tape_alphabet(self) -> Tuple[str, ...]:
        return tuple(self.alphabet) + (BLANK,)

    def is_halting(self, state: str) -> bool:
        return state in (self.accept, self.reject)

    def initial(self, word: str) -> DTMConfig:
        bad = sorted(set(word) - set(self.alphabet))
        if bad:
            raise ConfigError(f"input symbols {bad} are not in the DTM alphabet")
        return DTMConfig(self.start, tuple(word) or (BLANK,), 0)

    def step(self, config: DTMConfig) -> DTMConfig:
        if self.is_halting(config.state):
            raise ConfigError(f"DTM configuration in halting state {config.state!r} has no successor")
        symbol = config.tape[config.head]
        try:
            target, write, move = self.transitions[(config.state, symbol)]
        except KeyError:
            raise ConfigError(f"DTM has no instruction for ({config.state},{symbol})") from None
        tape = list(config.tape)
        tape[config.head] = write
        head = config.head + DTM_MOVES[move]
        if head < 0:
            head = 0
        if head == len(tape):
            tape.append(BLANK)
        return DTMConfig(target, tuple(tape), head)

    def length_delta(self, config: DTMConfig) -> int:
        """Изменение длины записи конфигурации за один шаг: 0 или +1."""
        return len(self.step(config)) - len(config)

    def run(self, word: str, max_steps: int = 10**4) -> List[DTMConfig]:
        configs = [self.initial(word)]
        while not self.is_halting(configs[-1].state):
            if len(configs) > max_steps:
                raise NonHalting(f"DTM did not halt within {max_steps} steps")
            configs.append(self.step(configs[-1]))
        return configs


def scanner_dtm() -> DTM:
    """Проходит вход слева направо и принимает на первом пробеле."""
    return DTM(
        states=("q0", "acc", "rej"),
        alphabet=("a", "b"),
        transitions={
            ("q0", "a"): ("q0", "a", "R"),
            ("q0", "b"): ("q0", "b", "R"),
            ("q0", BLANK): ("acc", BLANK, "S"),
        },
    )

