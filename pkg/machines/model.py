"""
Модель данных автоматов: сигнатуры переходов, действия, строки таблиц,
спецификация машины, лента и конфигурация.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from errors import ConfigError
from exactmath import QVector, Superoperator

LEFT_END = "¢"
RIGHT_END = "$"
WILDCARD = "*"

ZERO = "zero"
NONZERO = "nonzero"
STATUSES = (ZERO, NONZERO)

MOVES: Dict[str, int] = {"L": -1, "S": 0, "R": 1}
MOVE_NAMES: Dict[int, str] = {v: k for k, v in MOVES.items()}

PLACE = "place"
LIFT = "lift"
PEBBLE_ACTIONS = (PLACE, LIFT)

RESERVED_OPERATORS = ("id", "init")

RowKey = Tuple[str, str, Tuple[str, ...], Optional[bool]]


@dataclass(frozen=True)
class Signature:
    """Форма функции переходов для вида машины."""
    kind: str
    counters: int
    two_way: bool
    mode: str
    pebble: bool = False
    nonnegative: bool = False

    @property
    def moves(self) -> Tuple[int, ...]:
        return (-1, 0, 1) if self.two_way else (0, 1)

    @property
    def quantum(self) -> bool:
        return self.mode == "quantum"

    def status_tuples(self) -> List[Tuple[str, ...]]:
        return list(product(STATUSES, repeat=self.counters))

    def senses(self) -> Tuple[Optional[bool], ...]:
        return (False, True) if self.pebble else (None,)

    def describe(self) -> str:
        inputs = ["state", "symbol"]
        if self.counters == 1:
            inputs.append("status")
        else:
            inputs.extend(f"status{i + 1}" for i in range(self.counters))
        if self.pebble:
            inputs.append("pebble-sense")
        outputs = ["state", "move∈{" + ",".join(MOVE_NAMES[m] for m in self.moves) + "}"]
        if self.counters == 1:
            outputs.append("delta∈{-1,0,1}")
        else:
            outputs.extend(f"delta{i + 1}∈{{-1,0,1}}" for i in range(self.counters))
        if self.pebble:
            outputs.append("pebble∈{place,lift,none}")
        selector = {
            "deterministic": "one action",
            "nondeterministic": "choice set",
            "probabilistic": "probabilistic outcomes",
            "quantum": "superoperator outcome τ",
        }[self.mode]
        return f"({','.join(inputs)}) -> {selector} -> ({','.join(outputs)})"


SIGNATURES: Dict[str, Signature] = {
    "2dca": Signature("2dca", 1, True, "deterministic"),
    "2nca": Signature("2nca", 1, True, "nondeterministic"),
    "2pca": Signature("2pca", 1, True, "probabilistic"),
    "1pca": Signature("1pca", 1, False, "probabilistic"),
    "1d2ca": Signature("1d2ca", 2, False, "deterministic", nonnegative=True),
    "2qcfa": Signature("2qcfa", 0, True, "quantum"),
    "2qcca": Signature("2qcca", 1, True, "quantum"),
    "pebble-2pfa": Signature("pebble-2pfa", 0, True, "probabilistic", pebble=True),
    "pebble-2qcfa": Signature("pebble-2qcfa", 0, True, "quantum", pebble=True),
}


def step_signature(kind: str) -> Signature:
    """Возвращает сигнатуру шага для вида машины."""
    try:
        return SIGNATURES[kind]
    except KeyError:
        raise ConfigError(f"unknown machine kind {kind!r}") from None


@dataclass(frozen=True)
class Action:
    """Классическое действие: новое состояние, сдвиг, изменения счётчиков, камешек."""
    target: str = ""
    move: int = 0
    deltas: Tuple[int, ...] = ()
    pebble: Optional[str] = None
    restart: bool = False


RESTART = Action(restart=True)


def act(target: str, move: str = "S", *deltas: int, pebble: Optional[str] = None) -> Action:
    return Action(target=target, move=MOVES[move], deltas=tuple(deltas), pebble=pebble)


@dataclass(frozen=True)
class Outcome:
    action: Action
    weight: Optional[Fraction] = None


@dataclass(frozen=True)
class Row:
    """Строка таблицы; для квантовых видов outcomes идут по меткам 1..k."""
    outcomes: Tuple[Outcome, ...]
    operator: Optional[str] = None


def det_row(action: Action) -> Row:
    return Row((Outcome(action, Fraction(1)),))


def choice_row(*actions: Action) -> Row:
    return Row(tuple(Outcome(a) for a in actions))


def prob_row(*pairs: Tuple[Fraction, Action]) -> Row:
    return Row(tuple(Outcome(action, Fraction(weight)) for weight, action in pairs))


def quantum_row(operator: str, *actions: Action) -> Row:
    return Row(tuple(Outcome(a) for a in actions), operator=operator)


@dataclass(frozen=True)
class QuantumPart:
    states: Tuple[str, ...]
    initial: str
    operators: Mapping[str, Superoperator] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def initial_index(self) -> int:
        return self.states.index(self.initial)

    def initial_vector(self) -> QVector:
        return QVector.basis(self.dim, self.initial_index)

    def operator(self, name: str) -> Superoperator:
        if name == "id":
            return Superoperator.identity(self.dim)
        if name == "init":
            return Superoperator.initializer(self.dim, self.initial_index)
        try:
            return self.operators[name]
        except KeyError:
            raise ConfigError(f"unknown superoperator {name!r}") from None


@dataclass(frozen=True)
class MachineSpec:
    """Описание одного автомата любого вида; первый элемент states — s_1."""
    kind: str
    states: Tuple[str, ...]
    accept: str
    reject: str
    sigma: Tuple[str, ...]
    transitions: Mapping[RowKey, Row]
    quantum: Optional[QuantumPart] = None
    communication: Mapping[str, str] = field(default_factory=dict)
    cell_alphabet: Tuple[str, ...] = ()
    labels: Mapping[str, str] = field(default_factory=dict)

    __hash__ = None

    @property
    def start(self) -> str:
        return self.states[0]

    @property
    def signature(self) -> Signature:
        return step_signature(self.kind)

    @property
    def tape_alphabet(self) -> Tuple[str, ...]:
        return (LEFT_END,) + tuple(self.sigma) + (RIGHT_END,)

    def is_halting(self, state: str) -> bool:
        return state == self.accept or state == self.reject

    def is_communication(self, state: str) -> bool:
        return state in self.communication

    def symbols_for(self, state: str) -> Tuple[str, ...]:
        if self.is_communication(state):
            return tuple(self.cell_alphabet)
        return self.tape_alphabet

    def required_keys(self) -> Iterator[RowKey]:
        sig = self.signature
        for state in self.states:
            if self.is_halting(state):
                continue
            for symbol in self.symbols_for(state):
                for statuses in sig.status_tuples():
                    for sense in sig.senses():
                        yield (state, symbol, statuses, sense)

    def row(self, key: RowKey) -> Row:
        try:
            return self.transitions[key]
        except KeyError:
            raise ConfigError(f"no transition for {format_key(key)}") from None


def format_key(key: RowKey) -> str:
    state, symbol, statuses, sense = key
    parts = [state, symbol, *statuses]
    if sense is not None:
        parts.append("pebble" if sense else "no-pebble")
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class Tape:
    """Лента ¢x$ с клетками 1..|x̃|."""
    word: str
    cells: Tuple[str, ...]

    @classmethod
    def of(cls, word: str, sigma: Optional[Tuple[str, ...]] = None) -> "Tape":
        if sigma is not None:
            bad = sorted({ch for ch in word if ch not in sigma})
            if bad:
                raise ConfigError(f"input symbols {bad} are not in the alphabet {list(sigma)}")
        return cls(word, (LEFT_END,) + tuple(word) + (RIGHT_END,))

    def __len__(self) -> int:
        return len(self.cells)

    def symbol(self, head: int) -> str:
        return self.cells[head - 1]


@dataclass(frozen=True)
class Configuration:
    state: str
    head: int = 1
    counters: Tuple[int, ...] = ()
    pebble: Optional[int] = None
    quantum: Optional[QVector] = None

    def statuses(self) -> Tuple[str, ...]:
        return tuple(ZERO if v == 0 else NONZERO for v in self.counters)

    def classical(self) -> Tuple[str, int, Tuple[int, ...], Optional[int]]:
        return (self.state, self.head, self.counters, self.pebble)


def initial_configuration(spec: MachineSpec) -> Configuration:
    sig = spec.signature
    vector = spec.quantum.initial_vector() if spec.quantum is not None else None
    return Configuration(spec.start, 1, (0,) * sig.counters, None, vector)
