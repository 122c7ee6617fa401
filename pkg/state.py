"""
Определения состояния для графа сессии проверяющего и доказывающего.

Содержит TypedDict-классы для данных, передаваемых между узлами графа.
"""
import operator
from typing import Annotated, Hashable, List, Optional, TypedDict

from machines.model import Configuration


class TranscriptEvent(TypedDict):
    """Один шаг сессии."""
    round: int
    step: int
    verifier_symbol: str
    prover_symbol: str
    branch: int
    marker: str


class SessionState(TypedDict):
    """
    Состояние одной сессии (P, V) на фиксированном входе.

    Конфигурация проверяющего и состояние доказывающего меняются узлами
    графа; события только накапливаются.
    """
    word: str
    config: Configuration
    prover_state: Hashable
    request: Optional[str]
    cell: Optional[str]
    events: Annotated[List[TranscriptEvent], operator.add]
    round: int
    step: int
    max_steps: int
    decision: Optional[str]


def create_initial_session_state(word: str, config: Configuration, prover_state: Hashable,
                                 max_steps: int) -> SessionState:
    """Создаёт начальное состояние сессии."""
    if max_steps <= 0:
        raise ValueError("create_initial_session_state requires a positive max_steps")
    return SessionState(
        word=word,
        config=config,
        prover_state=prover_state,
        request=None,
        cell=None,
        events=[],
        round=1,
        step=0,
        max_steps=max_steps,
        decision=None,
    )
