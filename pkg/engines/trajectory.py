"""
Одиночные траектории: детерминированный прогон и прогон с политикой выбора.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional

from errors import ConfigError
from engines.semantics import ACCEPT, REJECT, RESTART, Branch, Node, Stepper
from machines.model import Configuration, MachineSpec
from utils.rng import DeterministicRNG

RUNNING = "running"

Chooser = Callable[[Node, List[Branch]], Branch]
Observer = Callable[[int, Node, Branch], None]


@dataclass
class RunResult:
    decision: str
    steps: int
    final: Configuration
    trace: Optional[List[Configuration]] = None
    restarts: int = 0
    events: List[Branch] = field(default_factory=list)


def _decision_of(spec: MachineSpec, state: str) -> str:
    if state == spec.accept:
        return ACCEPT
    if state == spec.reject:
        return REJECT
    return RUNNING


def run_scripted(spec: MachineSpec, word: str, choose: Chooser, max_steps: int,
                 prover: Any = None, observer: Optional[Observer] = None,
                 trace: bool = False, record: bool = False) -> RunResult:
    """
    Прогоняет одну траекторию; choose выбирает ветвь на каждом шаге.

    observer вызывается после каждого шага с номером шага, исходным узлом и
    выбранной ветвью. record сохраняет ветви в RunResult.events.
    """
    if max_steps <= 0:
        raise ConfigError("max_steps must be positive")
    stepper = Stepper(spec, word, prover)
    node = stepper.initial()
    configs = [node[0]] if trace else None
    events: List[Branch] = []
    restarts = 0
    steps = 0
    while not stepper.is_halting(node) and steps < max_steps:
        branch = choose(node, stepper.branches(node))
        steps += 1
        if observer is not None:
            observer(steps, node, branch)
        if record:
            events.append(branch)
        if branch.event == RESTART:
            restarts += 1
        node = branch.node
        if configs is not None:
            configs.append(node[0])
    return RunResult(_decision_of(spec, node[0].state), steps, node[0], configs, restarts, events)


def first_branch(node: Node, branches: List[Branch]) -> Branch:
    return branches[0]


def sampling_chooser(rng: DeterministicRNG) -> Chooser:
    """Выбор ветви по её весу; недетерминированные ветви равновероятны."""

    def choose(node: Node, branches: List[Branch]) -> Branch:
        if len(branches) == 1:
            return branches[0]
        if any(b.weight is None for b in branches):
            return branches[rng.randbelow(len(branches))]
        return branches[rng.choose([b.weight for b in branches])]

    return choose


def run_deterministic(spec: MachineSpec, word: str, max_steps: int,
                      trace: bool = False) -> RunResult:
    if spec.signature.mode != "deterministic":
        raise ConfigError(f"run_deterministic needs a deterministic kind, got {spec.kind}")
    return run_scripted(spec, word, first_branch, max_steps, trace=trace)
