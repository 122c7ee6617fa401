"""
Небольшие машины-образцы для тестов, демонстраций и CLI.
"""
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict

from machines.builder import TableBuilder
from machines.fileformat import load_machine
from machines.model import (
    NONZERO,
    ZERO,
    MachineSpec,
    act,
    choice_row,
    det_row,
    prob_row,
)

AB = ("a", "b")
HALF = Fraction(1, 2)
DATA_DIR = Path(__file__).parent / "data"


def anbn_2dca() -> MachineSpec:
    """{aⁿbⁿ}: +1 на a, -1 на b, принятие на $ при нулевом счётчике."""
    b = TableBuilder("2dca", AB, start="q0")
    b.state("q1")
    b.row("q0", "¢", det_row(act("q0", "R", 0)))
    b.row("q0", "a", det_row(act("q0", "R", 1)))
    b.row("q0", "b", det_row(act("q1", "S", 0)))
    b.row("q0", "$", det_row(act("acc", "S", 0)), status=ZERO)
    b.row("q0", "$", det_row(act("rej", "S", 0)), status=NONZERO)
    b.row("q1", "b", det_row(act("q1", "R", -1)), status=NONZERO)
    b.row("q1", "$", det_row(act("acc", "S", 0)), status=ZERO)
    b.fill("q1", det_row(act("rej", "S", 0)))
    return b.build({"machine": "anbn-2dca"})


def anbn_1d2ca() -> MachineSpec:
    """{aⁿbⁿ} на первом счётчике; второй счётчик не используется."""
    b = TableBuilder("1d2ca", AB, start="q0")
    b.state("q1")
    b.row("q0", "¢", det_row(act("q0", "R", 0, 0)))
    b.row("q0", "a", det_row(act("q0", "R", 1, 0)))
    for state in ("q0", "q1"):
        b.row(state, "b", det_row(act("q1", "R", -1, 0)), status=(NONZERO, ZERO))
        b.row(state, "$", det_row(act("acc", "S", 0, 0)), status=(ZERO, ZERO))
    b.fill("q0", det_row(act("rej", "S", 0, 0)))
    b.fill("q1", det_row(act("rej", "S", 0, 0)))
    return b.build({"machine": "anbn-1d2ca"})


def fair_coin_2pca() -> MachineSpec:
    b = TableBuilder("2pca", AB, start="flip")
    b.fill("flip", prob_row((HALF, act("acc", "S", 0)), (HALF, act("rej", "S", 0))))
    return b.build({"machine": "fair-coin"})


def accept_all_2pca() -> MachineSpec:
    b = TableBuilder("2pca", AB, start="s1")
    b.fill("s1", prob_row((1, act("acc", "S", 0))))
    return b.build({"machine": "accept-all"})


def contains_aa_2nca() -> MachineSpec:
    """Угадывает позицию первого a из пары aa."""
    b = TableBuilder("2nca", AB, start="scan")
    b.state("check")
    b.row("scan", ["¢", "b"], choice_row(act("scan", "R", 0)))
    b.row("scan", "a", choice_row(act("scan", "R", 0), act("check", "R", 0)))
    b.row("scan", "$", choice_row(act("rej", "S", 0)))
    b.row("check", "a", choice_row(act("acc", "S", 0)))
    b.fill("check", choice_row(act("rej", "S", 0)))
    return b.build({"machine": "contains-aa"})


def guess_anbn_2nca() -> MachineSpec:
    """{aⁿbⁿ}: на каждом a угадывает, что подсчёт закончен, и проверяет остаток."""
    b = TableBuilder("2nca", AB, start="g")
    b.state("v")
    b.row("g", "¢", choice_row(act("g", "R", 0)))
    b.row("g", "a", choice_row(act("g", "R", 1), act("v", "S", 0)))
    b.row("g", "b", choice_row(act("v", "S", 0)))
    b.row("g", "$", choice_row(act("acc", "S", 0)), status=ZERO)
    b.row("v", "b", choice_row(act("v", "R", -1)), status=NONZERO)
    b.row("v", "$", choice_row(act("acc", "S", 0)), status=ZERO)
    b.fill("g", choice_row(act("rej", "S", 0)))
    b.fill("v", choice_row(act("rej", "S", 0)))
    return b.build({"machine": "guess-anbn"})


def anbn_2nca() -> MachineSpec:
    """2dca для {aⁿbⁿ}, записанная как 2nca без ветвления."""
    source = anbn_2dca()
    b = TableBuilder("2nca", AB, start="q0")
    b.state("q1")
    for key, row in source.transitions.items():
        state, symbol, statuses, _ = key
        b.row(state, symbol, choice_row(row.outcomes[0].action), status=statuses)
    return b.build({"machine": "anbn-2nca"})


def single_state_2nca() -> MachineSpec:
    """Единственное рабочее состояние ходит по ленте и никогда не останавливается."""
    b = TableBuilder("2nca", AB, start="s1")
    b.row("s1", ["¢", "a", "b"], choice_row(act("s1", "R", 0)))
    b.row("s1", "$", choice_row(act("s1", "L", 0)))
    return b.build({"machine": "single-state"})


def rejecting_2nca() -> MachineSpec:
    """На каждой клетке может отклонить или идти дальше; никогда не принимает."""
    b = TableBuilder("2nca", AB, start="s1")
    b.row("s1", ["¢", "a", "b"], choice_row(act("s1", "R", 0), act("rej", "S", 0)))
    b.row("s1", "$", choice_row(act("rej", "S", 0)))
    return b.build({"machine": "rejecting-branch"})


SAMPLES: Dict[str, Callable[[], MachineSpec]] = {
    "anbn-2dca": anbn_2dca,
    "anbn-1d2ca": anbn_1d2ca,
    "anbn-2nca": anbn_2nca,
    "fair-coin": fair_coin_2pca,
    "accept-all": accept_all_2pca,
    "contains-aa": contains_aa_2nca,
    "guess-anbn": guess_anbn_2nca,
    "single-state": single_state_2nca,
    "rejecting-branch": rejecting_2nca,
}


def load_anbn_2dca() -> MachineSpec:
    return load_machine(DATA_DIR / "anbn_2dca.json")
