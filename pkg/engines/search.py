"""
Поиск в ширину по конфигурациям недетерминированной машины с ограничениями.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set

from errors import ConfigError
from engines.semantics import ACCEPT, RESTART, Stepper
from machines.model import Configuration, MachineSpec
from utils.logger import get_logger

logger = get_logger(__name__)

Path = List[Configuration]


@dataclass
class SearchResult:
    accepting_path: Optional[Path]
    reachable: Set[str]
    witnesses: Dict[str, Path] = field(default_factory=dict)
    explored: int = 0


def _path_to(parents: Dict[Configuration, Optional[Configuration]], config: Configuration) -> Path:
    path = [config]
    while parents[path[-1]] is not None:
        path.append(parents[path[-1]])
    path.reverse()
    return path


def explore_nondeterministic(spec: MachineSpec, word: str, counter_cap: int,
                             step_cap: int) -> SearchResult:
    """
    BFS из (s1, 1, 0): |counter| <= counter_cap, длина пути <= step_cap.

    Возвращает кратчайший принимающий путь (если есть), множество состояний
    всех достижимых конфигураций и по кратчайшему пути-свидетелю для каждого.
    """
    if counter_cap <= 0 or step_cap <= 0:
        raise ConfigError("counter_cap and step_cap must be positive")
    if spec.signature.quantum or spec.communication:
        raise ConfigError(f"explore_nondeterministic needs a classical machine, got {spec.kind}")
    stepper = Stepper(spec, word)
    start = stepper.initial()[0]
    parents: Dict[Configuration, Optional[Configuration]] = {start: None}
    witnesses: Dict[str, Path] = {start.state: [start]}
    accepting: Optional[Path] = [start] if start.state == spec.accept else None
    queue = deque([(start, 0)])

    while queue:
        config, depth = queue.popleft()
        if spec.is_halting(config.state) or depth >= step_cap:
            continue
        for branch in stepper.branches((config, None)):
            if branch.event == RESTART:
                continue
            successor = branch.node[0]
            if any(abs(v) > counter_cap for v in successor.counters):
                continue
            if successor in parents:
                continue
            parents[successor] = config
            if successor.state not in witnesses:
                witnesses[successor.state] = _path_to(parents, successor)
            if branch.event == ACCEPT and accepting is None:
                accepting = witnesses[successor.state]
            queue.append((successor, depth + 1))

    logger.debug("explored %d configurations of %s on %r", len(parents), spec.kind, word)
    return SearchResult(accepting, set(witnesses), witnesses, len(parents))
