"""
Общие детали машин, встраивающих раунд Q_TWIN в свой цикл.

Гость работает на виртуальном входе; хозяин сам ведёт головку по
нужным блокам ленты и вызывает операторы Q_TWIN на прочитанных
символах. Исход 1 продолжает раунд гостя, остальные исходы до конца
раунда означают внутренний рестарт гостя.
"""
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import config
from errors import ConfigError
from exactmath import QMatrix, Superoperator
from builtin.qtwin import FIRST_HALF, REGISTER, SECOND_HALF, qtwin_operators
from engines.semantics import Branch, Node
from machines.builder import TableBuilder
from machines.model import Action, Row, quantum_row

FIFTH = config.QTWIN_EPSILON
COIN = "coin5"
INIT = "init"

# Ровно три элемента: исход 1 с весом 1/5 из базисного q1, исход 2 с 4/5,
# исход 3 замыкает полноту на q2, q3.
COIN_TABLE: Dict[Fraction, List[List[List[int]]]] = {
    FIFTH: [
        [[1, 0, 0], [2, 0, 0], [0, 0, 0]],
        [[4, 0, 0], [2, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 5, 0], [0, 0, 5]],
    ],
}


def coin_operator(weight) -> Superoperator:
    """Монета: из q1 исход 1 выпадает ровно с вероятностью weight."""
    weight = Fraction(weight)
    if weight not in COIN_TABLE:
        raise ConfigError(f"no coin operator for weight {weight}; known: {sorted(COIN_TABLE)}")
    scale = Fraction(1, weight.denominator)
    return Superoperator.of([QMatrix.of(m, scale) for m in COIN_TABLE[weight]])


def register_guest(builder: TableBuilder) -> None:
    """Регистр и операторы Q_TWIN плюс монета 1/5."""
    builder.register(REGISTER, REGISTER[0])
    for name, op in qtwin_operators().items():
        builder.operator(name, op)
    builder.operator(COIN, coin_operator(FIFTH))


def guest_row(op: str, cont: Action, rewind: Action, outcomes: int = 3) -> Row:
    """Строка гостя: исход 1 продолжает, остальные ведут на перемотку."""
    return quantum_row(op, cont, *([rewind] * (outcomes - 1)))


def end_row(reject: Action, accept: Action, rewind: Action) -> Row:
    """E_end: 1 — гость отклонил, 2 — принял, 3 и 4 — внутренний рестарт."""
    return quantum_row("E_end", reject, accept, rewind, rewind)


def first_half_op(symbol: str) -> str:
    return FIRST_HALF[symbol]


def second_half_op(symbol: str) -> str:
    return SECOND_HALF[symbol]


def lowest_label(node: Node, branches: List[Branch]) -> Branch:
    """Политика записи: всегда исход с наименьшей меткой среди ненулевых."""
    return min(branches, key=lambda b: b.label)


class VirtualInputRecorder:
    """
    Наблюдатель прогона, собирающий символы, которые читает гость.

    classify(config, symbol) возвращает виртуальный символ, START в начале
    раунда гостя, END в его конце или None для шагов самого хозяина.
    """

    START = object()
    END = object()

    def __init__(self, tape, classify: Callable):
        self.tape = tape
        self.classify = classify
        self.inputs: List[str] = []
        self._current: Optional[List[str]] = None

    def __call__(self, step: int, node: Node, branch: Branch) -> None:
        config_ = node[0]
        mark = self.classify(config_, self.tape.symbol(config_.head))
        if mark is self.START:
            self._current = []
        elif mark is self.END:
            if self._current is not None:
                self.inputs.append("".join(self._current))
            self._current = None
        elif mark is not None and self._current is not None:
            self._current.append(mark)
