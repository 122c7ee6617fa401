"""
Сессии (P, V): точный анализ или Монте-Карло плюс выборка стенограмм.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import config
from errors import ConfigError
from engines.exact import ProbabilityReport, exact_probability
from engines.montecarlo import MCEstimate, monte_carlo
from engines.semantics import Stepper
from engines.trajectory import RUNNING, first_branch, run_scripted
from graph import create_session_graph, recursion_limit
from machines.model import MachineSpec
from protocols.provers import counter_history, encode_blocks, require_1d2ca
from protocols.verifiers import ProtocolParams
from state import TranscriptEvent, create_initial_session_state
from utils.logger import get_logger
from utils.rng import DeterministicRNG, SeedLike

logger = get_logger(__name__)

EXACT = "exact"
MC = "mc"


@dataclass
class Transcript:
    events: List[TranscriptEvent] = field(default_factory=list)
    decision: str = RUNNING

    @property
    def rounds(self) -> int:
        return self.events[-1]["round"] if self.events else 1


@dataclass
class SessionResult:
    mode: str
    report: Union[ProbabilityReport, MCEstimate]
    transcripts: List[Transcript]
    predicted: Optional[Dict[str, Any]] = None


def predicted_weights(target: MachineSpec, word: str, params: Optional[ProtocolParams] = None,
                      restarting: bool = True, cap: int = config.HONEST_RUN_CAP) -> Dict[str, Any]:
    """
    Длина l честного потока и предсказанные веса с честным доказывающим.

    Для проверяющего с рестартами это веса одного раунда, для
    одностороннего — итоговые вероятности.
    """
    require_1d2ca(target)
    params = params or ProtocolParams()
    run = run_scripted(target, word, first_branch, cap)
    member = run.final.state == target.accept
    length = len(encode_blocks(counter_history(target, word, cap)))
    if restarting:
        survive = Fraction(params.continue_probability) ** length
        accept = survive / params.k if member else Fraction(0)
        reject = Fraction(0) if member else survive
    else:
        upfront = Fraction(params.upfront_reject)
        accept = 1 - upfront if member else Fraction(0)
        reject = upfront if member else Fraction(1)
    return {"l": length, "k": params.k, "member": member, "accept": accept, "reject": reject}


def sample_transcript(verifier: MachineSpec, prover: Any, word: str, rng: DeterministicRNG,
                      max_steps: int = config.DEFAULT_STEP_CAP) -> Transcript:
    """Одна стенограмма, выбранная через граф сессии."""
    stepper = Stepper(verifier, word, prover)
    config_, pstate = stepper.initial()
    if verifier.is_halting(config_.state):
        return Transcript([], "accept" if config_.state == verifier.accept else "reject")
    graph = create_session_graph(stepper, rng)
    state = create_initial_session_state(word, config_, pstate, max_steps)
    final = graph.invoke(state, config={"recursion_limit": recursion_limit(max_steps)})
    return Transcript(list(final["events"]), final["decision"] or RUNNING)


def run_session(verifier: MachineSpec, prover: Any, word: str, mode: str = EXACT,
                budget: Optional[int] = None, seed: SeedLike = config.DEFAULT_SEED,
                samples: int = 1, step_cap: int = config.DEFAULT_STEP_CAP,
                target: Optional[MachineSpec] = None, params: Optional[ProtocolParams] = None,
                tolerance=config.DEFAULT_TOLERANCE, jobs: int = 1) -> SessionResult:
    """
    Замыкает проверяющего и доказывающего в одну систему и анализирует её.

    budget — горизонт для exact и число испытаний для mc. Если задан
    target, к результату прикладываются предсказанные веса.
    """
    if samples < 0:
        raise ConfigError("samples must be nonnegative")
    if mode == EXACT:
        report = exact_probability(verifier, word, tolerance=tolerance,
                                   horizon=budget or config.DEFAULT_HORIZON, prover=prover)
    elif mode == MC:
        report = monte_carlo(verifier, word, trials=budget or config.DEFAULT_TRIALS, seed=seed,
                             step_cap=step_cap, prover=prover, jobs=jobs)
    else:
        raise ConfigError(f"unknown session mode {mode!r}; use {EXACT} or {MC}")

    base = DeterministicRNG(seed)
    transcripts = [
        sample_transcript(verifier, prover, word, base.spawn(f"transcript:{i}"), step_cap)
        for i in range(samples)
    ]
    predicted = None
    if target is not None:
        restarting = verifier.signature.two_way
        predicted = predicted_weights(target, word, params, restarting)
    logger.debug("session on %r with %s: %d transcripts", word, getattr(prover, "name", prover), samples)
    return SessionResult(mode, report, transcripts, predicted)
