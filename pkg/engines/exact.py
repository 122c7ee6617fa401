"""
Точный расчёт вероятностей принятия и отклонения с гарантированными границами.

Основной метод регенеративный. Узлы регенерации — начальный узел и все
узлы, куда ведут рестарт или оператор инициализации (регистр там равен
базисному вектору). Экскурсия каждого узла прогоняется вперёд с точными
массами до следующей регенерации; вероятности поглощения из начального
узла находятся точным решением линейной системы над узлами регенерации.
Масса, не дошедшая до решения, остаётся живой:
p_accept_lo + p_reject_lo + live = 1.
"""
import warnings
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Set

import config
from errors import ConfigError, NonConvergence
from exactmath import parse_rational, solve_linear_system
from engines.semantics import ACCEPT, REJECT, RESET, RESTART, Node, Stepper
from machines.model import MachineSpec
from utils.logger import get_logger

logger = get_logger(__name__)

REGENERATIVE = "regenerative"
FORWARD = "forward"

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class RoundStats:
    """Веса одного раунда: от начальной конфигурации до возврата в неё."""
    accept: Fraction
    reject: Fraction
    restart: Fraction
    live: Fraction = ZERO


@dataclass(frozen=True)
class ProbabilityReport:
    p_accept_lo: Fraction
    p_reject_lo: Fraction
    live: Fraction
    horizon: int
    converged: bool
    method: str = REGENERATIVE
    nodes: int = 1
    warning: Optional[str] = None
    round: Optional[RoundStats] = None

    @property
    def p_accept_hi(self) -> Fraction:
        return self.p_accept_lo + self.live

    @property
    def p_reject_hi(self) -> Fraction:
        return self.p_reject_lo + self.live


class _Excursion:
    """Прямой прогон массы из одного узла регенерации до следующего."""

    def __init__(self, node: Node):
        self.frontier: Dict[Node, Fraction] = {node: ONE}
        self.accept = ZERO
        self.reject = ZERO
        self.exits: Dict[Node, Fraction] = {}
        self.steps = 0

    @property
    def done(self) -> bool:
        return not self.frontier

    def advance(self, stepper: Stepper, steps: int) -> None:
        for _ in range(steps):
            if not self.frontier:
                return
            following: Dict[Node, Fraction] = {}
            for node, mass in self.frontier.items():
                for branch in stepper.branches(node):
                    share = mass * branch.weight
                    if share == 0:
                        continue
                    if branch.event == ACCEPT:
                        self.accept += share
                    elif branch.event == REJECT:
                        self.reject += share
                    elif branch.event in (RESTART, RESET):
                        self.exits[branch.node] = self.exits.get(branch.node, ZERO) + share
                    else:
                        following[branch.node] = following.get(branch.node, ZERO) + share
            self.frontier = following
            self.steps += 1


def _solve_absorption(excursions: Sequence[_Excursion], index: Dict[Node, int],
                      cut_root: bool) -> List[Fraction]:
    """
    Решает x_i = a_i + sum_j P_ij x_j для столбцов accept, reject (и restart).

    При cut_root переходы в узел 0 поглощаются столбцом restart.
    Решение ищется только на узлах, из которых достижима утечка.
    """
    size = len(excursions)
    edges: List[Dict[int, Fraction]] = [{} for _ in range(size)]
    leaks: List[List[Fraction]] = []
    for i, excursion in enumerate(excursions):
        restart = ZERO
        for target, mass in excursion.exits.items():
            j = index.get(target)
            if j is None:
                continue
            if cut_root and j == 0:
                restart += mass
            else:
                edges[i][j] = edges[i].get(j, ZERO) + mass
        row = [excursion.accept, excursion.reject]
        if cut_root:
            row.append(restart)
        leaks.append(row)

    reverse: List[List[int]] = [[] for _ in range(size)]
    for i, outgoing in enumerate(edges):
        for j in outgoing:
            reverse[j].append(i)
    seeds = [i for i in range(size) if any(leaks[i])]
    relevant: Set[int] = set(seeds)
    queue = deque(seeds)
    while queue:
        j = queue.popleft()
        for i in reverse[j]:
            if i not in relevant:
                relevant.add(i)
                queue.append(i)

    width = len(leaks[0])
    if 0 not in relevant:
        return [ZERO] * width
    order = sorted(relevant)
    position = {node: p for p, node in enumerate(order)}
    matrix = []
    for i in order:
        row = [ZERO] * len(order)
        row[position[i]] = ONE
        for j, mass in edges[i].items():
            if j in position:
                row[position[j]] -= mass
        matrix.append(row)
    solution = solve_linear_system(matrix, [leaks[i] for i in order])
    return solution[position[0]]


def _check_tolerance(tolerance) -> Fraction:
    value = parse_rational(tolerance) if not isinstance(tolerance, Fraction) else tolerance
    if not 0 < value < 1:
        raise ConfigError(f"tolerance must lie in (0, 1), got {value}")
    return value


def _warn(message: str) -> str:
    logger.warning(message)
    warnings.warn(message, NonConvergence, stacklevel=3)
    return message


def _regenerative(stepper: Stepper, tolerance: Fraction, horizon: int,
                  max_nodes: int) -> ProbabilityReport:
    root = stepper.initial()
    nodes: List[Node] = [root]
    index: Dict[Node, int] = {root: 0}
    excursions = [_Excursion(root)]
    batch = config.EXACT_BATCH
    best_live = ONE
    progress_at = 0
    overflow = False
    accept = reject = ZERO
    live = ONE

    while True:
        for excursion in excursions:
            if not excursion.done and excursion.steps < horizon:
                excursion.advance(stepper, min(batch, horizon - excursion.steps))
        added = False
        for excursion in list(excursions):
            for target in excursion.exits:
                if target in index:
                    continue
                if len(nodes) >= max_nodes:
                    overflow = True
                    continue
                index[target] = len(nodes)
                nodes.append(target)
                excursions.append(_Excursion(target))
                added = True

        accept, reject = _solve_absorption(excursions, index, cut_root=False)
        live = ONE - accept - reject
        steps = max(e.steps for e in excursions)
        logger.debug("regenerative pass: %d nodes, %d steps, live %s", len(nodes), steps, float(live))

        if live < tolerance:
            return ProbabilityReport(accept, reject, live, steps, True, REGENERATIVE, len(nodes),
                                     None, _round_stats(excursions, index))
        if live < best_live:
            best_live = live
            progress_at = steps
        pending = [e for e in excursions if not e.done and e.steps < horizon]
        warning = None
        if not pending and not added:
            if overflow:
                warning = f"regeneration node limit {max_nodes} reached; unexplored mass counted as live"
            elif all(e.done for e in excursions):
                warning = "live mass is trapped in a loop that never halts"
            else:
                warning = f"horizon {horizon} reached with live mass above tolerance"
        elif steps - progress_at >= config.STALL_WINDOW:
            warning = f"live mass stopped decreasing for {config.STALL_WINDOW} steps"
        if warning is not None:
            return ProbabilityReport(accept, reject, live, steps, False, REGENERATIVE, len(nodes),
                                     _warn(warning), _round_stats(excursions, index))
        batch = min(batch * 2, config.STALL_WINDOW)


def _round_stats(excursions: Sequence[_Excursion], index: Dict[Node, int]) -> RoundStats:
    accept, reject, restart = _solve_absorption(excursions, index, cut_root=True)
    return RoundStats(accept, reject, restart, ONE - accept - reject - restart)


def _forward(stepper: Stepper, tolerance: Fraction, horizon: int) -> ProbabilityReport:
    frontier: Dict[Node, Fraction] = {stepper.initial(): ONE}
    accept = reject = ZERO
    steps = 0
    best_live = ONE
    progress_at = 0
    while frontier:
        live = ONE - accept - reject
        if live < tolerance:
            return ProbabilityReport(accept, reject, live, steps, True, FORWARD, len(frontier))
        if steps >= horizon:
            break
        if live < best_live:
            best_live = live
            progress_at = steps
        elif steps - progress_at >= config.STALL_WINDOW:
            break
        following: Dict[Node, Fraction] = {}
        for node, mass in frontier.items():
            for branch in stepper.branches(node):
                share = mass * branch.weight
                if share == 0:
                    continue
                if branch.event == ACCEPT:
                    accept += share
                elif branch.event == REJECT:
                    reject += share
                else:
                    following[branch.node] = following.get(branch.node, ZERO) + share
        frontier = following
        steps += 1
    live = ONE - accept - reject
    if live < tolerance:
        return ProbabilityReport(accept, reject, live, steps, True, FORWARD, len(frontier))
    if not frontier:
        message = "live mass is trapped in a loop that never halts"
    elif steps >= horizon:
        message = f"horizon {horizon} reached with live mass above tolerance"
    else:
        message = f"live mass stopped decreasing for {config.STALL_WINDOW} steps"
    return ProbabilityReport(accept, reject, live, steps, False, FORWARD, len(frontier), _warn(message))


def report_from_round(stats: RoundStats) -> ProbabilityReport:
    """Итоговые вероятности по точным весам одного раунда с повторениями."""
    resolved = stats.accept + stats.reject
    if resolved == 0:
        message = _warn("rounds never resolve: accept and reject weights are both zero")
        return ProbabilityReport(ZERO, ZERO, ONE, 1, False, "round", 1, message, stats)
    scale = resolved + stats.live
    accept = stats.accept / scale
    reject = stats.reject / scale
    return ProbabilityReport(accept, reject, ONE - accept - reject, 1, stats.live == 0, "round", 1,
                             None, stats)


def exact_probability(target: Any, word: str, tolerance=config.DEFAULT_TOLERANCE,
                      horizon: int = config.DEFAULT_HORIZON, prover: Any = None,
                      method: str = REGENERATIVE,
                      max_nodes: int = config.MAX_REGENERATION_NODES) -> ProbabilityReport:
    """
    Гарантированные границы вероятностей принятия и отклонения.

    target — MachineSpec или исполняемая конструкция с методом round_stats.
    """
    tolerance = _check_tolerance(tolerance)
    if horizon <= 0:
        raise ConfigError("horizon must be positive")
    if not isinstance(target, MachineSpec):
        if not hasattr(target, "round_stats"):
            raise ConfigError(f"cannot analyse {type(target).__name__}: no round_stats()")
        return report_from_round(target.round_stats(word))
    if target.signature.mode == "nondeterministic":
        raise ConfigError("exact_probability needs a probabilistic, quantum or deterministic kind")
    stepper = Stepper(target, word, prover)
    if target.is_halting(target.start):
        accepted = ONE if target.start == target.accept else ZERO
        return ProbabilityReport(accepted, ONE - accepted, ZERO, 0, True, method, 1, None,
                                 RoundStats(accepted, ONE - accepted, ZERO))
    if method == REGENERATIVE:
        return _regenerative(stepper, tolerance, horizon, max_nodes)
    if method == FORWARD:
        return _forward(stepper, tolerance, horizon)
    raise ConfigError(f"unknown method {method!r}; use {REGENERATIVE} or {FORWARD}")
