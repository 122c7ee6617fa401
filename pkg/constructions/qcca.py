"""
Машины с одним счётчиком и квантовым регистром, гоняющие вложенный
распознаватель в цикле FOR.

EXIST-TWIN: на x = u#v₁#…#v_k счётчик хранит номер i выбранного блока,
Q_TWIN работает на виртуальном входе u#v_i. Принятие гостем завершает
цикл, отклонение переводит к i+1, отклонение при i = k отклоняет x.
После цикла x принимается с весом (1/5)^k, иначе рестарт.

USQUARE: тот же цикл по i = 1..|x| с чёрным ящиком для SQUARE на
виртуальном входе a^i b^{|x|}; после цикла вес принятия (1/3)^{2|x|}.
"""
from fractions import Fraction
from typing import List, Optional

import config
from engines.exact import RoundStats
from engines.montecarlo import TIMEOUT
from engines.semantics import ACCEPT, REJECT
from engines.trajectory import run_scripted
from builtin.blackbox import BlackBoxRecognizer
from builtin.qtwin import SIGMA
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
from machines.model import NONZERO, RESTART, ZERO, MachineSpec, Row, Tape, act, quantum_row
from utils.logger import get_logger
from utils.rng import DeterministicRNG

logger = get_logger(__name__)

SEED_SPACE = 2 ** 63
THIRD = Fraction(1, 3)

# Проверка формата
FMT_U = "f.u"
FMT_V = "f.v"
FMT_BACK = "f.back"
# Раунд гостя
G_REWIND = "g.rewind"
G_REW = "g.rew"
G_U1 = "g.u1"
G_U2 = "g.u2"
# Процедура принятия
A_BACK = "A.back"
A_SCAN = "A.scan"
A_COIN = "A.coin"


def _go(target: str, move: str = "S", delta: int = 0) -> Row:
    return quantum_row("id", act(target, move, delta))


def build_exist_twin_qcca() -> MachineSpec:
    """2qcca для EXIST-TWIN = { u#v₁#…#v_k : u = v_i для некоторого i }."""
    b = TableBuilder("2qcca", SIGMA, start=FMT_U)
    register_guest(b)
    rej = _go("rej")

    b.row(FMT_U, ["¢", "a", "b"], _go(FMT_U, "R"))
    b.row(FMT_U, "#", _go(FMT_V, "R"))
    b.fill(FMT_U, rej)
    b.row(FMT_V, ["a", "b", "#"], _go(FMT_V, "R"))
    b.row(FMT_V, "$", _go(FMT_BACK, "L"))
    b.fill(FMT_V, rej)
    b.row(FMT_BACK, ["a", "b", "#"], _go(FMT_BACK, "L"))
    b.row(FMT_BACK, "¢", _go(G_REWIND, "S", 1))
    b.fill(FMT_BACK, rej)

    # Перемотка к ¢ восстанавливает номер блока: по +1 на каждый '#' слева.
    b.row(G_REWIND, ["a", "b"], _go(G_REWIND, "L"))
    b.row(G_REWIND, "#", _go(G_REWIND, "L", 1))
    b.row(G_REWIND, "¢", quantum_row(INIT, act(G_REW, "S", 0)))
    b.fill(G_REWIND, rej)

    rewind = act(G_REWIND, "L", 0)
    b.row(G_REW, "¢", guest_row("E_cent", act(G_U1, "R", 0), act(G_REWIND, "S", 0)))
    b.fill(G_REW, rej)

    for symbol in ("a", "b"):
        b.row(G_U1, symbol, guest_row(first_half_op(symbol), act(G_U1, "R", 0), rewind))
    b.row(G_U1, "#", guest_row("E_sep", act(G_U2, "R", -1), rewind))
    b.fill(G_U1, rej)

    # Пока счётчик не ноль, блоки v_j с j < i пропускаются.
    b.row(G_U2, ["a", "b"], _go(G_U2, "R"), status=(NONZERO,))
    b.row(G_U2, "#", _go(G_U2, "R", -1), status=(NONZERO,))
    for symbol in ("a", "b"):
        b.row(G_U2, symbol, guest_row(second_half_op(symbol), act(G_U2, "R", 0), rewind),
              status=(ZERO,))
    b.row(G_U2, "#", end_row(act(G_REWIND, "L", 1), act(A_BACK, "L", 0), rewind), status=(ZERO,))
    b.row(G_U2, "$", end_row(act("rej", "S", 0), act(A_BACK, "L", 0), rewind), status=(ZERO,))
    b.fill(G_U2, rej)

    _accept_procedure(b)
    return b.build({"machine": "EXIST-TWIN 2qcca", "language": "EXIST-TWIN"})


def _accept_procedure(b: TableBuilder) -> None:
    """Один бросок монеты 1/5 на каждый '#': итоговый вес (1/5)^k."""
    b.row(A_BACK, ["a", "b", "#", "$"], _go(A_BACK, "L"))
    b.row(A_BACK, "¢", _go(A_SCAN, "R"))
    b.row(A_SCAN, ["a", "b"], _go(A_SCAN, "R"))
    b.row(A_SCAN, "#", quantum_row(INIT, act(A_COIN, "S", 0)))
    b.row(A_SCAN, "$", _go("acc"))
    b.fill(A_SCAN, _go("rej"))
    b.row(A_COIN, "#", quantum_row(COIN, act(A_SCAN, "R", 0), RESTART, RESTART))
    b.fill(A_COIN, _go("rej"))


def _exist_twin_marks(config_, symbol: str):
    if config_.state == G_REW:
        return VirtualInputRecorder.START
    if config_.state == G_U1 and symbol in SIGMA:
        return symbol
    if config_.state == G_U2 and config_.counters[0] == 0:
        return symbol if symbol in ("a", "b") else VirtualInputRecorder.END
    return None


def exist_twin_virtual_inputs(x: str, spec: Optional[MachineSpec] = None,
                              max_steps: int = config.DEFAULT_STEP_CAP) -> List[str]:
    """
    Виртуальные входы гостя при политике «наименьший ненулевой исход».

    На члене языка список обрывается на первом совпавшем блоке.
    """
    spec = spec or build_exist_twin_qcca()
    recorder = VirtualInputRecorder(Tape.of(x, spec.sigma), _exist_twin_marks)
    run_scripted(spec, x, lowest_label, max_steps, observer=recorder)
    return recorder.inputs


class USquareRecognizer:
    """
    Распознаватель USQUARE = { b^{n²} } с чёрным ящиком для SQUARE.

    Счётчик делит b^{|x|} на b^i и b^{|x|-i}; ящик видит a^i b^{|x|}.
    """

    language = "USQUARE"

    def __init__(self, blackbox: BlackBoxRecognizer):
        if blackbox.language != "SQUARE":
            raise ConfigError(f"USQUARE needs a SQUARE recognizer, got {blackbox.language}")
        self.blackbox = blackbox
        self.labels = {"machine": "USQUARE 2qcca", "language": self.language,
                       "epsilon": str(blackbox.epsilon)}

    @staticmethod
    def well_formed(word: str) -> bool:
        return bool(word) and set(word) == {"b"}

    def virtual_inputs(self, word: str) -> List[str]:
        if not self.well_formed(word):
            return []
        n = len(word)
        return ["a" * i + "b" * n for i in range(1, n + 1)]

    def terminal_weight(self, word: str) -> Fraction:
        return THIRD ** (2 * len(word))

    def round_stats(self, word: str) -> RoundStats:
        if not self.well_formed(word):
            return RoundStats(Fraction(0), Fraction(1), Fraction(0))
        all_reject = Fraction(1)
        for virtual in self.virtual_inputs(word):
            accept, _ = self.blackbox.decision_weights(virtual)
            all_reject *= 1 - accept
        accept = (1 - all_reject) * self.terminal_weight(word)
        logger.debug("usquare round on %d symbols: all-reject %s", len(word), all_reject)
        return RoundStats(accept, all_reject, 1 - all_reject - accept)

    def sample(self, word: str, rng: DeterministicRNG, step_cap: int) -> str:
        if not self.well_formed(word):
            return REJECT
        inputs = self.virtual_inputs(word)
        steps = 0
        while True:
            for index, virtual in enumerate(inputs, start=1):
                box = self.blackbox.clone(rng.randbelow(SEED_SPACE))
                box.start(virtual)
                decision = None
                while decision is None:
                    if steps >= step_cap:
                        return TIMEOUT
                    decision = box.advance()
                    steps += 1
                if decision == ACCEPT:
                    break
                if index == len(inputs):
                    return REJECT
            steps += 1
            if rng.bernoulli(self.terminal_weight(word)):
                return ACCEPT


def build_usquare_qcca(blackbox: BlackBoxRecognizer) -> USquareRecognizer:
    return USquareRecognizer(blackbox)
