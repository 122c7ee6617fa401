"""
Оценка Монте-Карло с воспроизводимыми семенами.

Испытание с номером i всегда использует генератор DeterministicRNG(seed).spawn(i),
поэтому счётчики не зависят от числа процессов.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import sqrt
from typing import Any, List, Optional, Tuple

import config
from errors import ConfigError
from engines.semantics import ACCEPT, REJECT
from engines.trajectory import run_scripted, sampling_chooser
from machines.model import MachineSpec
from utils.logger import get_logger
from utils.rng import DeterministicRNG

logger = get_logger(__name__)

TIMEOUT = "timeout"


@dataclass(frozen=True)
class MCEstimate:
    trials: int
    accepts: int
    rejects: int
    timeouts: int
    seed: int
    accept_ci: Tuple[float, float]
    reject_ci: Tuple[float, float]

    @property
    def accept_rate(self) -> float:
        return self.accepts / self.trials

    @property
    def reject_rate(self) -> float:
        return self.rejects / self.trials


def wilson_interval(successes: int, trials: int, z: float = config.CI_Z) -> Tuple[float, float]:
    """Интервал Уилсона для доли успехов."""
    if trials <= 0:
        raise ConfigError("trials must be positive")
    p = successes / trials
    denominator = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denominator
    half = z * sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denominator
    return max(0.0, center - half), min(1.0, center + half)


def sample_once(target: Any, word: str, rng: DeterministicRNG, step_cap: int,
                prover: Any = None) -> str:
    """Одна траектория; возвращает accept, reject или timeout."""
    if not isinstance(target, MachineSpec):
        return target.sample(word, rng, step_cap)
    result = run_scripted(target, word, sampling_chooser(rng), step_cap, prover=prover)
    if result.decision in (ACCEPT, REJECT):
        return result.decision
    return TIMEOUT


def _run_chunk(args) -> Tuple[int, int, int]:
    target, word, seed, start, stop, step_cap, prover = args
    base = DeterministicRNG(seed)
    accepts = rejects = timeouts = 0
    for index in range(start, stop):
        decision = sample_once(target, word, base.spawn(index), step_cap, prover)
        if decision == ACCEPT:
            accepts += 1
        elif decision == REJECT:
            rejects += 1
        else:
            timeouts += 1
    return accepts, rejects, timeouts


def _chunks(trials: int, jobs: int) -> List[Tuple[int, int]]:
    size = -(-trials // jobs)
    return [(start, min(start + size, trials)) for start in range(0, trials, size)]


def monte_carlo(target: Any, word: str, trials: int = config.DEFAULT_TRIALS,
                seed: int = config.DEFAULT_SEED, step_cap: int = config.DEFAULT_STEP_CAP,
                prover: Any = None, jobs: int = 1) -> MCEstimate:
    if trials <= 0:
        raise ConfigError("trials must be positive")
    if step_cap <= 0:
        raise ConfigError("step_cap must be positive")
    if jobs <= 0:
        raise ConfigError("jobs must be positive")
    if isinstance(target, MachineSpec):
        if target.signature.mode == "nondeterministic":
            raise ConfigError("monte_carlo cannot sample a nondeterministic machine")
    elif not hasattr(target, "sample"):
        raise ConfigError(f"cannot sample {type(target).__name__}: no sample()")

    work = [(target, word, seed, start, stop, step_cap, prover)
            for start, stop in _chunks(trials, jobs)]
    if jobs == 1:
        counts = [_run_chunk(item) for item in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            counts = list(pool.map(_run_chunk, work))
    accepts = sum(c[0] for c in counts)
    rejects = sum(c[1] for c in counts)
    timeouts = sum(c[2] for c in counts)
    logger.debug("monte carlo on %r: %d/%d/%d", word, accepts, rejects, timeouts)
    return MCEstimate(trials, accepts, rejects, timeouts, seed,
                      wilson_interval(accepts, trials), wilson_interval(rejects, trials))
