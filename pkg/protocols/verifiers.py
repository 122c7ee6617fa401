"""
Проверяющие интерактивных протоколов для двухсчётчиковых 1d2ca.

Проверяющий читает от доказывающего блоки a^u b^v #, по одному на шаг
целевой машины, и сам отслеживает её состояние и головку: статусы
счётчиков видны по наличию a и b в последнем блоке (до первого блока
оба счётчика нулевые). Своим единственным счётчиком он сравнивает
значения выбранного счётчика i в парах соседних блоков выбранной
чётности j: блок «загрузки» прибавляет, к нему добавляется ожидаемое
изменение на следующем шаге, блок «проверки» вычитает и должен
обнулить счётчик. a после b внутри блока отклоняется сразу.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import config
from errors import ConfigError
from machines.builder import TableBuilder
from machines.model import (
    NONZERO,
    RESTART,
    ZERO,
    Action,
    MOVE_NAMES,
    MachineSpec,
    Row,
    act,
    prob_row,
)
from protocols.provers import require_1d2ca

LOAD = "load"
CHECK = "check"
FREE = "free"

START = "start"


@dataclass(frozen=True)
class StrategyChoice:
    """Номер сравниваемого счётчика и чётность первой пары блоков."""
    counter_index: int
    start_parity: int

    def __post_init__(self):
        if self.counter_index not in (1, 2) or self.start_parity not in (1, 2):
            raise ConfigError("counter_index and start_parity must be 1 or 2")

    @property
    def first_role(self) -> str:
        """Роль неявного нулевого блока."""
        return LOAD if self.start_parity == 1 else FREE


STRATEGIES: Tuple[StrategyChoice, ...] = tuple(
    StrategyChoice(i, j) for i in (1, 2) for j in (1, 2)
)


@dataclass(frozen=True)
class ProtocolParams:
    k: int = config.DEFAULT_K
    continue_probability: Fraction = config.CONTINUE_PROBABILITY
    upfront_reject: Fraction = config.UPFRONT_REJECT

    def __post_init__(self):
        if self.k < 2:
            raise ConfigError(f"k must be at least 2, got {self.k}")
        if not 0 < Fraction(self.continue_probability) <= 1:
            raise ConfigError("continue probability must lie in (0, 1]")
        if not 0 <= Fraction(self.upfront_reject) < 1:
            raise ConfigError("upfront reject probability must lie in [0, 1)")


def _flag(status: str) -> str:
    return "z" if status == ZERO else "n"


def sim_state(q: str, statuses: Tuple[str, str], choice: StrategyChoice, role: str) -> str:
    return f"sim|{q}|{_flag(statuses[0])}{_flag(statuses[1])}|c{choice.counter_index}p{choice.start_parity}|{role}"


def comm_state(q: str, choice: StrategyChoice, role: str, seen_a: bool, seen_b: bool) -> str:
    seen = ("a" if seen_a else "-") + ("b" if seen_b else "-")
    return f"comm|{q}|c{choice.counter_index}p{choice.start_parity}|{role}|{seen}"


class _VerifierBuilder:
    """Строит достижимую часть произведения управления цели и фаз проверки."""

    def __init__(self, target: MachineSpec, params: ProtocolParams, one_way: bool):
        require_1d2ca(target)
        self.target = target
        self.params = params
        self.one_way = one_way
        kind = "1pca" if one_way else "2pca"
        self.b = TableBuilder(kind, target.sigma, start=START)
        self._pending: List[Tuple[str, tuple]] = []
        self._seen = set()

    def _continue(self, action: Action) -> Row:
        """Строка для символа доказывающего: монета рестарта, затем действие."""
        if self.one_way:
            return prob_row((1, action))
        keep = Fraction(self.params.continue_probability)
        if keep == 1:
            return prob_row((1, action))
        return prob_row((1 - keep, RESTART), (keep, action))

    def _enqueue(self, name: str, payload: tuple) -> str:
        if name not in self._seen:
            self._seen.add(name)
            self._pending.append((name, payload))
        return name

    def sim(self, q, statuses, choice, role) -> str:
        return self._enqueue(sim_state(q, statuses, choice, role), ("sim", q, statuses, choice, role))

    def comm(self, q, choice, role, seen_a=False, seen_b=False) -> str:
        name = comm_state(q, choice, role, seen_a, seen_b)
        if name not in self._seen:
            self.b.communicate(name, config.REQUEST_SYMBOL, config.PROVER_ALPHABET)
        return self._enqueue(name, ("comm", q, choice, role, seen_a, seen_b))

    def start_row(self, weights):
        self.b.fill(START, prob_row(*weights))

    def _sim_rows(self, q, statuses, choice, role):
        name = sim_state(q, statuses, choice, role)
        for symbol in self.target.tape_alphabet:
            row = self.target.row((q, symbol, statuses, None))
            action = row.outcomes[0].action
            move = MOVE_NAMES[action.move]
            if action.target == self.target.accept:
                self.b.row(name, symbol, self._decide())
                continue
            if action.target == self.target.reject:
                self.b.row(name, symbol, prob_row((1, act("rej", "S", 0))))
                continue
            next_role = CHECK if role == LOAD else LOAD
            nxt = self.comm(action.target, choice, next_role)
            delta = action.deltas[choice.counter_index - 1] if role == LOAD else 0
            self.b.row(name, symbol, prob_row((1, act(nxt, move, delta))), status=NONZERO)
            if delta < 0:
                self.b.row(name, symbol, prob_row((1, act("rej", "S", 0))), status=ZERO)
            else:
                self.b.row(name, symbol, prob_row((1, act(nxt, move, delta))), status=ZERO)

    def _decide(self) -> Row:
        if self.one_way:
            return prob_row((1, act("acc", "S", 0)))
        k = Fraction(1, self.params.k)
        return prob_row((k, act("acc", "S", 0)), (1 - k, RESTART))

    def _comm_rows(self, q, choice, role, seen_a, seen_b):
        name = comm_state(q, choice, role, seen_a, seen_b)
        reject = self._continue(act("rej", "S", 0))
        for symbol, counter in (("a", 1), ("b", 2)):
            if symbol == "a" and seen_b:
                self.b.row(name, "a", reject)
                continue
            nxt = self.comm(q, choice, role, seen_a or symbol == "a", seen_b or symbol == "b")
            if counter != choice.counter_index or role == FREE:
                self.b.row(name, symbol, self._continue(act(nxt, "S", 0)))
            elif role == LOAD:
                self.b.row(name, symbol, self._continue(act(nxt, "S", 1)))
            else:
                self.b.row(name, symbol, self._continue(act(nxt, "S", -1)), status=NONZERO)
                self.b.row(name, symbol, reject, status=ZERO)
        statuses = (NONZERO if seen_a else ZERO, NONZERO if seen_b else ZERO)
        nxt = self.sim(q, statuses, choice, role)
        if role == CHECK:
            self.b.row(name, "#", self._continue(act(nxt, "S", 0)), status=ZERO)
            self.b.row(name, "#", reject, status=NONZERO)
        else:
            self.b.row(name, "#", self._continue(act(nxt, "S", 0)))

    def build(self, labels) -> MachineSpec:
        while self._pending:
            _, payload = self._pending.pop(0)
            if payload[0] == "sim":
                self._sim_rows(*payload[1:])
            else:
                self._comm_rows(*payload[1:])
        return self.b.build(labels)


def theorem1_verifier(target: MachineSpec, params: Optional[ProtocolParams] = None) -> MachineSpec:
    """
    Двусторонний проверяющий с рестартами.

    Раунд: равновероятный выбор одной из четырёх стратегий, затем чтение
    блоков; перед обработкой каждого символа доказывающего раунд
    перезапускается с вероятностью 1 - continue_probability. Принятие
    симуляции даёт принятие с вероятностью 1/k, иначе рестарт.
    """
    params = params or ProtocolParams()
    builder = _VerifierBuilder(target, params, one_way=False)
    share = Fraction(1, len(STRATEGIES))
    weights = [
        (share, act(builder.sim(target.start, (ZERO, ZERO), choice, choice.first_role), "S", 0))
        for choice in STRATEGIES
    ]
    builder.start_row(weights)
    return builder.build({"protocol": "restarting", "k": str(params.k)})


def corollary2_verifier(target: MachineSpec, params: Optional[ProtocolParams] = None) -> MachineSpec:
    """Односторонний проверяющий: отказ сразу с весом upfront_reject, иначе один проход."""
    params = params or ProtocolParams()
    builder = _VerifierBuilder(target, params, one_way=True)
    reject = Fraction(params.upfront_reject)
    share = (1 - reject) / len(STRATEGIES)
    weights = [(reject, act("rej", "S", 0))]
    weights += [
        (share, act(builder.sim(target.start, (ZERO, ZERO), choice, choice.first_role), "S", 0))
        for choice in STRATEGIES
    ]
    builder.start_row(weights)
    return builder.build({"protocol": "one-way", "upfront_reject": str(reject)})
