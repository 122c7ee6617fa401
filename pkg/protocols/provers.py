"""
Доказывающие: честный и набор противников для проверяющих протокола.

Доказывающий передаёт поток блоков a^u b^v #, где u и v — значения
счётчиков целевого 1d2ca после очередного шага. Все доказывающие здесь
потоковые: состояние — позиция в потоке, рестарт раунда возвращает
поток к началу.
"""
from collections import deque
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import config
from errors import ConfigError, NonHalting
from engines.trajectory import first_branch, run_scripted
from machines.model import NONZERO, ZERO, MachineSpec
from utils.logger import get_logger

logger = get_logger(__name__)

SEPARATOR = "#"

Counters = Tuple[int, int]


def require_1d2ca(target: MachineSpec) -> None:
    if target.kind != "1d2ca":
        raise ConfigError(f"protocol target must be a 1d2ca, got {target.kind}")


def block(counters: Counters) -> List[str]:
    u, v = counters
    return ["a"] * u + ["b"] * v + [SEPARATOR]


def encode_blocks(history: Sequence[Counters]) -> List[str]:
    stream: List[str] = []
    for counters in history:
        stream.extend(block(counters))
    return stream


def counter_history(target: MachineSpec, word: str, cap: int = config.HONEST_RUN_CAP) -> List[Counters]:
    """Значения счётчиков после каждого нефинального шага прогона."""
    require_1d2ca(target)
    run = run_scripted(target, word, first_branch, cap, trace=True)
    if not target.is_halting(run.final.state):
        raise NonHalting(f"target did not halt on {word!r} within {cap} steps")
    return [tuple(c.counters) for c in run.trace[1:-1]]


class StreamProver:
    """Основа потоковых доказывающих; поток вычисляется один раз на вход."""

    name = "stream"
    replays_rounds = True
    tail = SEPARATOR

    def __init__(self):
        self._streams: Dict[str, List[str]] = {}

    def stream(self, word: str) -> List[str]:
        raise NotImplementedError

    def stream_for(self, word: str) -> List[str]:
        if word not in self._streams:
            self._streams[word] = self.stream(word)
        return self._streams[word]

    def start(self, word: str) -> Hashable:
        return 0

    def answer(self, word: str, state: Hashable, request: Optional[str]) -> Tuple[str, Hashable]:
        stream = self.stream_for(word)
        if state < len(stream):
            return stream[state], state + 1
        return self.tail, state

    def on_restart(self, word: str, state: Hashable) -> Hashable:
        return 0

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class HonestProver(StreamProver):
    name = "honest"

    def __init__(self, target: MachineSpec, cap: int = config.HONEST_RUN_CAP):
        super().__init__()
        require_1d2ca(target)
        self.target = target
        self.cap = cap

    def stream(self, word: str) -> List[str]:
        return encode_blocks(counter_history(self.target, word, self.cap))


class FlatlineProver(StreamProver):
    """Всегда утверждает, что оба счётчика равны нулю."""

    name = "flatline"

    def stream(self, word: str) -> List[str]:
        return []


class OffByOneProver(HonestProver):
    """Честный поток, в блоке lie_step первый счётчик сдвинут на единицу."""

    name = "off-by-one"

    def __init__(self, target: MachineSpec, lie_step: int = config.DEFAULT_LIE_STEP,
                 cap: int = config.HONEST_RUN_CAP):
        super().__init__(target, cap)
        if lie_step < 1:
            raise ConfigError("lie_step must be at least 1")
        self.lie_step = lie_step

    def stream(self, word: str) -> List[str]:
        history = list(counter_history(self.target, word, self.cap))
        if self.lie_step <= len(history):
            u, v = history[self.lie_step - 1]
            history[self.lie_step - 1] = (u - 1 if u > 0 else u + 1, v)
        return encode_blocks(history)


class StallProver(HonestProver):
    """Честные блоки до lie_step, затем бесконечный поток a."""

    name = "stall"
    tail = "a"

    def __init__(self, target: MachineSpec, lie_step: int = config.DEFAULT_LIE_STEP,
                 cap: int = config.HONEST_RUN_CAP):
        super().__init__(target, cap)
        self.lie_step = lie_step

    def stream(self, word: str) -> List[str]:
        history = counter_history(self.target, word, self.cap)
        return encode_blocks(history[:max(0, self.lie_step - 1)])


class WrongBranchProver(HonestProver):
    """Содержимое счётчиков из прогона на другом входе."""

    name = "wrong-branch"

    def __init__(self, target: MachineSpec, decoy: Optional[str] = None,
                 cap: int = config.HONEST_RUN_CAP):
        super().__init__(target, cap)
        self.decoy = decoy

    def decoy_for(self, word: str) -> str:
        if self.decoy is not None:
            return self.decoy
        return word[1:] if word else self.target.sigma[0]

    def stream(self, word: str) -> List[str]:
        return encode_blocks(counter_history(self.target, self.decoy_for(word), self.cap))


class AcceptRusher(StreamProver):
    """
    Поток, кратчайшим путём приводящий отслеживаемую симуляцию к принятию.

    Ищет в ширину по (состояние, головка, заявленные статусы); каждый блок
    минимален для заявленных статусов. Если принятие недостижимо, ведёт
    себя как flatline.
    """

    name = "accept-rusher"

    def __init__(self, target: MachineSpec, max_nodes: int = 10**5):
        super().__init__()
        require_1d2ca(target)
        self.target = target
        self.max_nodes = max_nodes

    def stream(self, word: str) -> List[str]:
        cells = ("¢",) + tuple(word) + ("$",)
        start = (self.target.start, 1, (ZERO, ZERO))
        parents = {start: None}
        queue = deque([start])
        while queue and len(parents) < self.max_nodes:
            node = queue.popleft()
            state, head, statuses = node
            row = self.target.row((state, cells[head - 1], statuses, None))
            action = row.outcomes[0].action
            if action.target == self.target.accept:
                return encode_blocks(self._claims(parents, node))
            if action.target == self.target.reject:
                continue
            for claimed in ((ZERO, ZERO), (NONZERO, ZERO), (ZERO, NONZERO), (NONZERO, NONZERO)):
                successor = (action.target, head + action.move, claimed)
                if successor not in parents:
                    parents[successor] = node
                    queue.append(successor)
        logger.debug("accept-rusher found no accepting claim sequence on %r", word)
        return []

    @staticmethod
    def _claims(parents, node) -> List[Counters]:
        claims: List[Counters] = []
        while parents[node] is not None:
            statuses = node[2]
            claims.append(tuple(0 if s == ZERO else 1 for s in statuses))
            node = parents[node]
        claims.reverse()
        return claims


def honest_prover(target: MachineSpec, cap: int = config.HONEST_RUN_CAP) -> HonestProver:
    return HonestProver(target, cap)


def adversarial_provers(target: MachineSpec, lie_step: int = config.DEFAULT_LIE_STEP,
                        decoy: Optional[str] = None) -> List[StreamProver]:
    require_1d2ca(target)
    return [
        FlatlineProver(),
        OffByOneProver(target, lie_step),
        StallProver(target, lie_step),
        WrongBranchProver(target, decoy),
        AcceptRusher(target),
    ]
