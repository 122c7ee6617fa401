"""
Машины с одним камешком.

SIAM-TWINS = { uu }: внешний цикл ставит камешек на очередной символ,
равный первому символу x = s x₁ s x₂; внутренний цикл гоняет Q_TWIN на
виртуальном входе x₁#x₂, где клетка с камешком играет роль '#'.

GREATER-SQUARE и LAPINŠ: обходчик с камешком многократно перечитывает
блок ленты и подаёт чёрному ящику для GREATER виртуальный вход с
блоком квадратной длины.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import config
from engines.exact import RoundStats
from engines.montecarlo import TIMEOUT
from engines.semantics import ACCEPT, REJECT
from engines.trajectory import run_scripted
from builtin.blackbox import BlackBoxRecognizer
from constructions.compose import (
    COIN,
    INIT,
    VirtualInputRecorder,
    end_row,
    first_half_op,
    guest_row,
    lowest_label,
    register_guest,
    second_half_op,
)
from errors import ConfigError
from machines.builder import TableBuilder
from machines.model import LIFT, PLACE, RESTART, MachineSpec, Row, Tape, act, quantum_row
from utils.logger import get_logger
from utils.rng import DeterministicRNG

logger = get_logger(__name__)

SIGMA = ("a", "b")
SEED_SPACE = 2 ** 63

START = "start"
A_BACK = "A.back"
A_SCAN = "A.scan"
A_COIN = "A.coin"


def _go(target: str, move: str = "S", pebble: Optional[str] = None) -> Row:
    return quantum_row("id", act(target, move, pebble=pebble))


def _names(s: str) -> Dict[str, str]:
    return {
        "seek": f"p.seek.{s}",
        "find": f"p.find.{s}",
        "rewind": f"g.rewind.{s}",
        "rew": f"g.rew.{s}",
        "skip": f"g.skip.{s}",
        "u1": f"g.u1.{s}",
        "u2": f"g.u2.{s}",
    }


def build_siam_twins_pebble() -> MachineSpec:
    """Pebble-2qcfa для SIAM-TWINS; пустое слово принимается сразу."""
    b = TableBuilder("pebble-2qcfa", SIGMA, start=START)
    register_guest(b)
    rej = _go("rej")

    b.row(START, "¢", _go(START, "R"))
    b.row(START, "$", _go("acc"))
    for s in SIGMA:
        b.row(START, s, _go(_names(s)["seek"], "R"))
    for s in SIGMA:
        _leading_symbol_loop(b, s, rej)

    b.row(A_BACK, ["a", "b", "$"], _go(A_BACK, "L"))
    b.row(A_BACK, "¢", _go(A_SCAN, "R"))
    b.row(A_SCAN, ["a", "b"], quantum_row(INIT, act(A_COIN)))
    b.row(A_SCAN, "$", _go("acc"))
    b.fill(A_SCAN, rej)
    b.row(A_COIN, ["a", "b"], quantum_row(COIN, act(A_SCAN, "R"), RESTART, RESTART))
    b.fill(A_COIN, rej)
    return b.build({"machine": "SIAM-TWINS pebble-2qcfa", "language": "SIAM-TWINS"})


def _leading_symbol_loop(b: TableBuilder, s: str, rej: Row) -> None:
    n = _names(s)
    other = "b" if s == "a" else "a"

    # внешний цикл: следующий s справа от последней метки
    b.row(n["seek"], s, _go(n["rewind"], "L", PLACE), sense=False)
    b.row(n["seek"], other, _go(n["seek"], "R"), sense=False)
    b.row(n["seek"], "$", rej)
    b.fill(n["seek"], rej)

    b.row(n["rewind"], SIGMA, _go(n["rewind"], "L"))
    b.row(n["rewind"], "¢", quantum_row(INIT, act(n["rew"])))
    b.fill(n["rewind"], rej)

    rewind = act(n["rewind"], "L")
    b.row(n["rew"], "¢", guest_row("E_cent", act(n["skip"], "R"), act(n["rewind"])))
    b.fill(n["rew"], rej)
    b.row(n["skip"], SIGMA, _go(n["u1"], "R"), sense=False)
    b.fill(n["skip"], rej)

    for symbol in SIGMA:
        b.row(n["u1"], symbol, guest_row(first_half_op(symbol), act(n["u1"], "R"), rewind), sense=False)
    b.row(n["u1"], SIGMA, guest_row("E_sep", act(n["u2"], "R"), rewind), sense=True)
    b.fill(n["u1"], rej)

    for symbol in SIGMA:
        b.row(n["u2"], symbol, guest_row(second_half_op(symbol), act(n["u2"], "R"), rewind), sense=False)
    b.row(n["u2"], "$", end_row(act(n["find"], "L"), act(A_BACK, "L"), rewind))
    b.fill(n["u2"], rej)

    b.row(n["find"], SIGMA, _go(n["find"], "L"), sense=False)
    b.row(n["find"], SIGMA, _go(n["seek"], "R", LIFT), sense=True)
    b.fill(n["find"], rej)


def _siam_twins_marks(config_, symbol: str):
    state = config_.state
    if state.startswith("g.rew."):
        return VirtualInputRecorder.START
    if state.startswith("g.u1.") and symbol in SIGMA:
        return "#" if config_.pebble == config_.head else symbol
    if state.startswith("g.u2."):
        return symbol if symbol in SIGMA else VirtualInputRecorder.END
    return None


def siam_twins_virtual_inputs(x: str, spec: Optional[MachineSpec] = None,
                              max_steps: int = config.DEFAULT_STEP_CAP) -> List[str]:
    """Входы x₁#x₂ по всем опробованным меткам до первого совпадения."""
    spec = spec or build_siam_twins_pebble()
    recorder = VirtualInputRecorder(Tape.of(x, spec.sigma), _siam_twins_marks)
    run_scripted(spec, x, lowest_label, max_steps, observer=recorder)
    return recorder.inputs


@dataclass
class PebbleWalk:
    """
    Обходчик ленты с одним камешком; fed — символы, поданные гостю.

    Каждый сдвиг головки считается шагом.
    """
    tape: Tape
    head: int = 1
    pebble: Optional[int] = None
    moves: int = 0
    fed: List[str] = field(default_factory=list)

    def move(self, delta: int) -> None:
        self.head += delta
        self.moves += 1

    def goto(self, cell: int) -> None:
        while self.head != cell:
            self.move(1 if cell > self.head else -1)

    def sweep(self, start: int, stop: int, rename: Dict[str, str]) -> None:
        """Подаёт клетки start..stop-1 слева направо."""
        self.goto(start)
        while self.head < stop:
            symbol = self.tape.symbol(self.head)
            self.fed.append(rename.get(symbol, symbol))
            self.move(1)

    def square(self, start: int, stop: int, rename: Dict[str, str]) -> None:
        """Блок длины l подаётся l раз: камешек отмечает номер прохода."""
        self.goto(start)
        self.pebble = self.head
        while True:
            self.sweep(start, stop, rename)
            self.goto(self.pebble)
            self.pebble = None
            self.move(1)
            if self.head == stop:
                return
            self.pebble = self.head

    @property
    def virtual(self) -> str:
        return "".join(self.fed)


Block = Tuple[int, int]

_AB = re.compile(r"^(a+)(b+)$")
_ABC = re.compile(r"^(a+)(b+)(c+)$")


def _blocks(match: "re.Match") -> List[Block]:
    """Клетки блоков на ленте ¢x$: x[i] лежит в клетке i + 2."""
    return [(match.start(g) + 2, match.end(g) + 2) for g in range(1, len(match.groups()) + 1)]


class _BlackBoxHarness:
    """Общая часть обёрток: точные веса и выборка с клонами ящика."""

    language = ""

    def __init__(self, blackbox: BlackBoxRecognizer):
        if blackbox.language != "GREATER":
            raise ConfigError(f"{self.language} needs a GREATER recognizer, got {blackbox.language}")
        self.blackbox = blackbox

    def virtual_inputs(self, word: str) -> List[str]:
        raise NotImplementedError

    def round_stats(self, word: str) -> RoundStats:
        inputs = self.virtual_inputs(word)
        if not inputs:
            return RoundStats(Fraction(0), Fraction(1), Fraction(0))
        accept = Fraction(1)
        for virtual in inputs:
            accept *= self.blackbox.decision_weights(virtual)[0]
        return RoundStats(accept, 1 - accept, Fraction(0))

    def sample(self, word: str, rng: DeterministicRNG, step_cap: int) -> str:
        inputs = self.virtual_inputs(word)
        if not inputs:
            return REJECT
        steps = 0
        for virtual in inputs:
            box = self.blackbox.clone(rng.randbelow(SEED_SPACE))
            box.start(virtual)
            decision = None
            while decision is None:
                if steps >= step_cap:
                    return TIMEOUT
                decision = box.advance()
                steps += 1
            if decision == REJECT:
                return REJECT
        return ACCEPT


class GreaterSquarePebble(_BlackBoxHarness):
    """GREATER-SQUARE = { a^m b^n : m > n² > 0 } через GREATER на a^m b^{n²}."""

    language = "GREATER-SQUARE"

    def __init__(self, blackbox: BlackBoxRecognizer):
        super().__init__(blackbox)
        self.labels = {"machine": "GREATER-SQUARE pebble-2pfa", "language": self.language,
                       "epsilon": str(blackbox.epsilon)}

    def walk(self, word: str) -> Optional[PebbleWalk]:
        match = _AB.match(word)
        if match is None:
            return None
        (a0, a1), (b0, b1) = _blocks(match)
        walk = PebbleWalk(Tape.of(word))
        walk.sweep(a0, a1, {})
        walk.square(b0, b1, {})
        logger.debug("greater-square walk on %r: %d moves", word, walk.moves)
        return walk

    def virtual_inputs(self, word: str) -> List[str]:
        walk = self.walk(word)
        return [] if walk is None else [walk.virtual]


class LapinsRecognizer(_BlackBoxHarness):
    """
    LAPINŠ = { a^m b^n c^p : m⁴ > n² > p > 0 }.

    m⁴ > n² равносильно m² > n, поэтому ящик GREATER из обёртки GREATER-SQUARE проверяет
    a^{m²} b^n и затем a^{n²} b^p; x принимается, если приняты оба.
    """

    language = "LAPINS"

    def __init__(self, gsq: GreaterSquarePebble):
        super().__init__(gsq.blackbox)
        self.labels = {"machine": "LAPINS pebble-2pfa", "language": self.language,
                       "epsilon": str(gsq.blackbox.epsilon)}

    def walks(self, word: str) -> List[PebbleWalk]:
        match = _ABC.match(word)
        if match is None:
            return []
        (a0, a1), (b0, b1), (c0, c1) = _blocks(match)
        tape = Tape.of(word)
        first = PebbleWalk(tape)
        first.square(a0, a1, {})
        first.sweep(b0, b1, {})
        second = PebbleWalk(tape)
        second.square(b0, b1, {"b": "a"})
        second.sweep(c0, c1, {"c": "b"})
        return [first, second]

    def virtual_inputs(self, word: str) -> List[str]:
        return [walk.virtual for walk in self.walks(word)]


def build_greater_square_pebble(blackbox: BlackBoxRecognizer) -> GreaterSquarePebble:
    return GreaterSquarePebble(blackbox)


def build_lapins_recognizer(gsq: GreaterSquarePebble) -> LapinsRecognizer:
    return LapinsRecognizer(gsq)
