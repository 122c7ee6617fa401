"""
Машина Q_TWIN для языка TWIN = { u#u : u ∈ {a,b}* }.

Раунд: детерминированная проверка формата (ровно один '#'), возврат к ¢,
затем кодирование 1u₁ и 1u₂ в амплитудах трёхмерного регистра. Исход 1
продолжает раунд, остальные исходы до $ перезапускают машину. На $:
исход 1 отклоняет, исход 2 принимает, исходы 3 и 4 перезапускают.
"""
from pathlib import Path
from typing import Dict, List

from errors import ConfigError
from exactmath import QMatrix, Superoperator
from machines.builder import TableBuilder
from machines.fileformat import load_machine
from machines.model import RESTART, MachineSpec, act, quantum_row

SIGMA = ("a", "b", "#")
REGISTER = ("q1", "q2", "q3")
DATA_FILE = Path(__file__).parent / "data" / "qtwin.json"

THIRD = "1/3"

# Элементы супероператоров без общего множителя 1/3.
OPERATOR_TABLE: Dict[str, List[List[List[int]]]] = {
    "E_cent": [
        [[1, 0, 0], [1, 0, 0], [1, 0, 0]],
        [[1, 0, 0], [1, 0, 0], [2, 0, 0]],
        [[0, 0, 0], [0, 3, 0], [0, 0, 3]],
    ],
    "E_a": [
        [[2, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[2, 0, 0], [1, 0, 0], [0, 0, 0]],
        [[0, 2, 2], [0, 2, -2], [0, 0, 0]],
    ],
    "E_b": [
        [[2, 0, 1], [0, 1, 0], [0, 0, 1]],
        [[-1, 0, 2], [2, 0, 0], [0, 0, 1]],
        [[0, 2, 1], [0, -2, 1], [0, 0, 0]],
    ],
    "E_sep": [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[2, 0, 0], [0, 2, 0], [0, 0, 2]],
        [[2, 0, 0], [0, 2, 0], [0, 0, 2]],
    ],
    "F_a": [
        [[1, 0, 0], [0, 2, 0], [0, 0, 1]],
        [[2, 0, 2], [2, 0, -2], [0, 2, 0]],
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    ],
    "F_b": [
        [[1, 0, 0], [0, 2, 1], [0, 0, 1]],
        [[0, 1, -2], [2, 0, 1], [-2, 0, 1]],
        [[0, 0, 1], [0, 2, 0], [0, 0, 0]],
    ],
    "E_end": [
        [[2, -2, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
        [[2, 2, 0], [1, 0, 0], [0, 1, 0]],
        [[0, 0, 2], [0, 0, 2], [0, 0, 0]],
    ],
}

# Операторы первой половины (u₁) и второй половины (u₂) по символу.
FIRST_HALF = {"a": "E_a", "b": "E_b"}
SECOND_HALF = {"a": "F_a", "b": "F_b"}


def qtwin_operators() -> Dict[str, Superoperator]:
    return {
        name: Superoperator.of([QMatrix.of(m, THIRD) for m in elements])
        for name, elements in OPERATOR_TABLE.items()
    }


def encode(u: str) -> int:
    """Значение 1u в двоичной записи, a ↦ 0, b ↦ 1."""
    bad = sorted(set(u) - {"a", "b"})
    if bad:
        raise ConfigError(f"encode() takes strings over {{a,b}}, got symbols {bad}")
    return int("1" + u.replace("a", "0").replace("b", "1"), 2)


def qtwin_spec() -> MachineSpec:
    b = TableBuilder("2qcfa", SIGMA, start="chk0")
    for name in ("chk1", "rew", "u1", "u2"):
        b.state(name)
    b.register(REGISTER, "q1")
    for name, op in qtwin_operators().items():
        b.operator(name, op)

    b.row("chk0", ["¢", "a", "b"], quantum_row("id", act("chk0", "R")))
    b.row("chk0", "#", quantum_row("id", act("chk1", "R")))
    b.row("chk0", "$", quantum_row("id", act("rej")))
    b.row("chk1", ["a", "b"], quantum_row("id", act("chk1", "R")))
    b.row("chk1", "#", quantum_row("id", act("rej")))
    b.row("chk1", "$", quantum_row("id", act("rew", "L")))
    b.fill("chk1", quantum_row("id", act("rej")))

    b.row("rew", ["a", "b", "#"], quantum_row("id", act("rew", "L")))
    b.row("rew", "¢", quantum_row("E_cent", act("u1", "R"), RESTART, RESTART))
    b.fill("rew", quantum_row("id", act("rej")))

    for symbol, op in FIRST_HALF.items():
        b.row("u1", symbol, quantum_row(op, act("u1", "R"), RESTART, RESTART))
    b.row("u1", "#", quantum_row("E_sep", act("u2", "R"), RESTART, RESTART))
    b.fill("u1", quantum_row("id", act("rej")))

    for symbol, op in SECOND_HALF.items():
        b.row("u2", symbol, quantum_row(op, act("u2", "R"), RESTART, RESTART))
    b.row("u2", "$", quantum_row("E_end", act("rej"), act("acc"), RESTART, RESTART))
    b.fill("u2", quantum_row("id", act("rej")))

    return b.build({"machine": "Q_TWIN", "language": "TWIN"})


def load_qtwin() -> MachineSpec:
    """Q_TWIN из файла данных."""
    return load_machine(DATA_FILE)
