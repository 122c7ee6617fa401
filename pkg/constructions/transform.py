"""
Преобразование 2nca в 2pca с положительной односторонней ошибкой 1/4.

Три слоя:
- каждый недетерминированный выбор из l вариантов делается с
  вероятностью 1/l, отклонение исходной машины становится рестартом;
- в начале раунда с весом 3/4 запускается симуляция, с весом 1/4 —
  процедура отклонения;
- каждый шаг симуляции перезапускает раунд с вероятностью 1/2.

Процедура отклонения загружает |x̃| на счётчик и делает |x̃| проходов
по ленте, бросая на каждой клетке монету с весом продолжения
(1/(2k))^c; отклоняет, только если все |x̃|^2 бросков удачны. Итоговый
вес отклонения (1/(2k))^{c|x̃|^2} не зависит от числа состояний.
"""
import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

import config
from errors import ConfigError
from constructions.reachability import lemma1_reachable
from machines.builder import TableBuilder
from machines.fileformat import print_machine
from machines.model import (
    NONZERO,
    RESTART,
    ZERO,
    Action,
    Configuration,
    MachineSpec,
    Outcome,
    Row,
    Tape,
    act,
    prob_row,
)
from utils.logger import get_logger

logger = get_logger(__name__)

SPLIT = "split"
LOAD = "gz.load"
REWIND = "gz.rew"
SWEEP = "gz.sweep"
RUN = "gz.run"

HALF = Fraction(1, 2)
SIMULATE = Fraction(3, 4)
GADGET = Fraction(1, 4)


@dataclass(frozen=True)
class TransformParams:
    k: int
    c: int = config.TRANSFORM_C

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError(f"k must be at least 1, got {self.k}")
        if self.c < 2:
            raise ConfigError(f"c must be greater than 1, got {self.c}")

    @property
    def flip_weight(self) -> Fraction:
        return Fraction(1, 2 * self.k) ** self.c

    def reject_weight(self, length: int) -> Fraction:
        """Вес процедуры отклонения на ленте длины |x̃|."""
        return self.flip_weight ** (length * length)


def fan_out(spec: MachineSpec) -> int:
    return max((len(row.outcomes) for row in spec.transitions.values()), default=1)


def source_hash(spec: MachineSpec) -> str:
    return hashlib.sha256(print_machine(spec).encode("utf-8")).hexdigest()[:16]


def path_weight(spec: MachineSpec, word: str, path: List[Configuration]) -> Fraction:
    """Вес пути в симулирующем слое: по 1/2 и 1/l за каждый шаг."""
    tape = Tape.of(word, spec.sigma)
    weight = Fraction(1)
    for config_ in path[:-1]:
        row = spec.row((config_.state, tape.symbol(config_.head), config_.statuses(), None))
        weight *= HALF / len(row.outcomes)
    return weight


def audit_exponent(spec: MachineSpec, words: Iterable[str], k: int,
                   c: int = config.TRANSFORM_C) -> int:
    """
    Наименьшее c >= начального, при котором каждый найденный кратчайший
    принимающий путь тяжелее процедуры отклонения.
    """
    weights = []
    for word in words:
        path = lemma1_reachable(spec, word).accepting_path
        if path is not None:
            weights.append((len(word) + 2, path_weight(spec, word, path)))
    while c <= config.TRANSFORM_C_MAX:
        params = TransformParams(k, c)
        if all(weight > params.reject_weight(length) for length, weight in weights):
            return c
        c += 1
    raise ConfigError(f"no exponent c <= {config.TRANSFORM_C_MAX} dominates the accepting paths")


def _local(state: str) -> str:
    return f"p.{state}"


def _simulated(spec: MachineSpec, row: Row) -> Row:
    share = HALF / len(row.outcomes)
    restart = HALF
    outcomes: List[Outcome] = []
    for outcome in row.outcomes:
        action = outcome.action
        if action.restart or action.target == spec.reject:
            restart += share
            continue
        target = "acc" if action.target == spec.accept else _local(action.target)
        outcomes.append(Outcome(Action(target, action.move, action.deltas), share))
    outcomes.append(Outcome(RESTART, restart))
    return Row(tuple(outcomes))


def _flip(params: TransformParams, action: Action) -> Row:
    f = params.flip_weight
    return prob_row((f, action), (1 - f, RESTART))


def transform_nca_to_pca(spec: MachineSpec, params: Optional[TransformParams] = None,
                         audit_words: Iterable[str] = ()) -> MachineSpec:
    """2pca с теми же принимаемыми словами и ошибкой 1/4 только на членах языка."""
    if spec.kind != "2nca":
        raise ConfigError(f"transform needs a 2nca, got {spec.kind}")
    k = fan_out(spec)
    if k > config.TRANSFORM_MAX_FANOUT:
        raise ConfigError(f"fan-out {k} exceeds the supported limit {config.TRANSFORM_MAX_FANOUT}")
    if params is None:
        params = TransformParams(k, audit_exponent(spec, audit_words, k))
    elif params.k < k:
        raise ConfigError(f"params.k = {params.k} is below the machine fan-out {k}")
    logger.debug("transform: k=%d c=%d over %d source rows", params.k, params.c, len(spec.transitions))

    b = TableBuilder("2pca", spec.sigma, start=SPLIT)
    b.fill(SPLIT, prob_row((SIMULATE, act(_local(spec.start), "S", 0)), (GADGET, act(LOAD, "S", 0))))
    for (state, symbol, statuses, _), row in spec.transitions.items():
        b.row(_local(state), symbol, _simulated(spec, row), status=statuses)

    b.row(LOAD, "$", prob_row((1, act(REWIND, "L", 1))))
    b.fill(LOAD, prob_row((1, act(LOAD, "R", 1))))
    b.row(REWIND, "¢", prob_row((1, act(SWEEP, "S", 0))))
    b.fill(REWIND, prob_row((1, act(REWIND, "L", 0))))
    b.row(SWEEP, "¢", _flip(params, act(RUN, "R", -1)), status=NONZERO)
    b.row(SWEEP, "¢", prob_row((1, act("rej", "S", 0))), status=ZERO)
    b.fill(SWEEP, prob_row((1, act("rej", "S", 0))))
    b.row(RUN, "$", _flip(params, act(REWIND, "L", 0)))
    b.row(RUN, "¢", prob_row((1, act("rej", "S", 0))))
    b.fill(RUN, _flip(params, act(RUN, "R", 0)))

    labels = {
        "machine": f"transform of {spec.labels.get('machine', 'anonymous 2nca')}",
        "source": source_hash(spec),
        "k": str(params.k),
        "c": str(params.c),
    }
    return b.build(labels)
