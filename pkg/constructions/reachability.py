"""
Ограниченная достижимость для недетерминированных счётчиковых машин.

При M = |S|·|x̃| достаточно рассматривать конфигурации с |счётчик| <= M
и пути длины не больше M^2: любая достижимая пара (состояние, клетка)
достигается и в этих пределах.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set

from errors import ConfigError
from engines.search import explore_nondeterministic
from machines.model import Configuration, MachineSpec

REACH_KINDS = ("2nca", "2dca")


@dataclass(frozen=True)
class ReachabilityBound:
    m: int
    counter_cap: int
    step_cap: int

    @classmethod
    def of(cls, spec: MachineSpec, word: str, scale: int = 1) -> "ReachabilityBound":
        """scale умножает оба предела: (scale·M, scale·M^2)."""
        if scale < 1:
            raise ConfigError("scale must be at least 1")
        m = len(spec.states) * (len(word) + 2)
        return cls(m, scale * m, scale * m * m)


@dataclass
class Reachability:
    bound: ReachabilityBound
    states: Set[str]
    witnesses: Dict[str, List[Configuration]] = field(default_factory=dict)
    accepting_path: Optional[List[Configuration]] = None
    explored: int = 0


def lemma1_reachable(spec: MachineSpec, word: str, scale: int = 1) -> Reachability:
    """Все состояния, достижимые из (s1, 1, 0), с кратчайшими путями-свидетелями."""
    if spec.kind not in REACH_KINDS:
        raise ConfigError(f"bounded reachability needs one of {REACH_KINDS}, got {spec.kind}")
    bound = ReachabilityBound.of(spec, word, scale)
    result = explore_nondeterministic(spec, word, bound.counter_cap, bound.step_cap)
    return Reachability(bound, result.reachable, result.witnesses, result.accepting_path, result.explored)
