"""
Общая семантика шага для всех видов машин.

Stepper перечисляет ветви одного шага из узла (конфигурация, состояние
доказывающего). Квантовые ветви несут безусловный вектор и условный вес
||E_i v||^2 / ||v||^2; классические — вес исхода из таблицы.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, List, Optional, Tuple

from errors import ConfigError, CounterUnderflow
from exactmath import apply
from machines.model import (
    LIFT,
    PLACE,
    Action,
    Configuration,
    MachineSpec,
    Tape,
    initial_configuration,
)

MOVE = "move"
ACCEPT = "accept"
REJECT = "reject"
RESTART = "restart"
RESET = "reset"

Node = Tuple[Configuration, Hashable]


@dataclass(frozen=True)
class Branch:
    weight: Optional[Fraction]
    event: str
    node: Node
    label: int
    request: Optional[str] = None
    answer: Optional[str] = None


class Stepper:
    """Пошаговое исполнение спецификации на фиксированном входе."""

    def __init__(self, spec: MachineSpec, word: str, prover: Any = None):
        self.spec = spec
        self.sig = spec.signature
        self.word = word
        self.tape = Tape.of(word, spec.sigma)
        self.prover = prover
        if spec.communication and prover is None:
            raise ConfigError("machine has communication states but no prover was given")
        self._initial_config = initial_configuration(spec)

    def initial(self) -> Node:
        pstate = self.prover.start(self.word) if self.prover is not None else None
        return (self._initial_config, pstate)

    def restarted(self, pstate: Hashable) -> Node:
        if self.prover is not None:
            pstate = self.prover.on_restart(self.word, pstate)
        return (self._initial_config, pstate)

    def is_halting(self, node: Node) -> bool:
        return self.spec.is_halting(node[0].state)

    def read(self, node: Node) -> Tuple[str, Hashable, Optional[str], Optional[str]]:
        """Символ для строки таблицы: с ленты или из ячейки связи."""
        config, pstate = node
        if self.spec.is_communication(config.state):
            request = self.spec.communication[config.state]
            answer, pstate = self.prover.answer(self.word, pstate, request)
            if answer not in self.spec.cell_alphabet:
                raise ConfigError(
                    f"prover answered {answer!r}, outside the cell alphabet {list(self.spec.cell_alphabet)}"
                )
            return answer, pstate, request, answer
        return self.tape.symbol(config.head), pstate, None, None

    def branches(self, node: Node) -> List[Branch]:
        if self.is_halting(node):
            raise ConfigError(f"configuration in halting state {node[0].state!r} has no successors")
        symbol, pstate, request, answer = self.read(node)
        return self.branches_on(node[0], symbol, pstate, request, answer)

    def branches_on(self, config: Configuration, symbol: str, pstate: Hashable,
                    request: Optional[str] = None, answer: Optional[str] = None) -> List[Branch]:
        """Ветви шага при уже известном прочитанном символе."""
        sense = (config.pebble == config.head) if self.sig.pebble else None
        row = self.spec.row((config.state, symbol, config.statuses(), sense))
        result: List[Branch] = []
        if self.sig.quantum:
            op = self.spec.quantum.operator(row.operator)
            vector = config.quantum
            norm = vector.norm2()
            for label, image, weight in apply(op, vector):
                if weight == 0:
                    continue
                action = row.outcomes[label - 1].action
                result.append(self._resolve(config, pstate, action, weight / norm, image, label,
                                            op.is_initializer, request, answer))
        else:
            for label, outcome in enumerate(row.outcomes, start=1):
                result.append(self._resolve(config, pstate, outcome.action, outcome.weight,
                                            config.quantum, label, False, request, answer))
        return result

    def _resolve(self, config: Configuration, pstate: Hashable, action: Action,
                 weight: Optional[Fraction], vector, label: int, reset: bool,
                 request: Optional[str], answer: Optional[str]) -> Branch:
        if action.restart:
            return Branch(weight, RESTART, self.restarted(pstate), label, request, answer)
        head = config.head + action.move
        if not 1 <= head <= len(self.tape):
            raise ConfigError(f"head left the tape at step from {config.state!r}")
        counters = tuple(v + d for v, d in zip(config.counters, action.deltas))
        if self.sig.nonnegative and any(v < 0 for v in counters):
            raise CounterUnderflow(f"counter decremented below zero in state {config.state!r}")
        pebble = config.pebble
        if action.pebble == PLACE:
            pebble = config.head
        elif action.pebble == LIFT:
            pebble = None
        successor = Configuration(action.target, head, counters, pebble, vector)
        if action.target == self.spec.accept:
            event = ACCEPT
        elif action.target == self.spec.reject:
            event = REJECT
        elif reset:
            event = RESET
        else:
            event = MOVE
        return Branch(weight, event, (successor, pstate), label, request, answer)
