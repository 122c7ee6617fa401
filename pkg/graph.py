"""
Граф LangGraph для выборки одной сессии проверяющего и доказывающего.

Узел доказывающего записывает ответ в ячейку связи, узел проверяющего
делает один случайный шаг по строке таблицы.
"""
from typing import Any, Dict, Literal

from langgraph.graph import END, StateGraph

from errors import ConfigError
from engines.semantics import ACCEPT, REJECT, RESTART, Stepper
from engines.trajectory import sampling_chooser
from state import SessionState, TranscriptEvent
from utils.rng import DeterministicRNG

NO_SYMBOL = "-"

MARKERS = {RESTART: "RESTART", ACCEPT: "ACCEPT", REJECT: "REJECT"}


def create_session_graph(stepper: Stepper, rng: DeterministicRNG):
    """Создаёт и компилирует граф сессии для данного входа и генератора."""
    spec = stepper.spec
    choose = sampling_chooser(rng)

    def prover_node(state: SessionState) -> Dict[str, Any]:
        """Узел доказывающего: отвечает, если проверяющий в состоянии связи."""
        config = state["config"]
        if not spec.is_communication(config.state):
            return {"request": None, "cell": None}
        request = spec.communication[config.state]
        answer, pstate = stepper.prover.answer(state["word"], state["prover_state"], request)
        if answer not in spec.cell_alphabet:
            raise ConfigError(f"prover answered {answer!r}, outside the cell alphabet {list(spec.cell_alphabet)}")
        return {"request": request, "cell": answer, "prover_state": pstate}

    def verifier_node(state: SessionState) -> Dict[str, Any]:
        """Узел проверяющего: один шаг с выбором ветви по весам."""
        config = state["config"]
        if state["cell"] is not None:
            symbol = state["cell"]
        else:
            symbol = stepper.tape.symbol(config.head)
        node = (config, state["prover_state"])
        branches = stepper.branches_on(config, symbol, state["prover_state"], state["request"], state["cell"])
        branch = choose(node, branches)
        step = state["step"] + 1
        event = TranscriptEvent(
            round=state["round"],
            step=step,
            verifier_symbol=state["request"] or NO_SYMBOL,
            prover_symbol=state["cell"] or NO_SYMBOL,
            branch=branch.label,
            marker=MARKERS.get(branch.event, ""),
        )
        decision = branch.event if branch.event in (ACCEPT, REJECT) else None
        return {
            "config": branch.node[0],
            "prover_state": branch.node[1],
            "request": None,
            "cell": None,
            "events": [event],
            "round": state["round"] + (1 if branch.event == RESTART else 0),
            "step": step,
            "decision": decision,
        }

    def after_verifier(state: SessionState) -> Literal["prover", "verifier", "end"]:
        """Определяет следующий узел после шага проверяющего."""
        if state["decision"] is not None or state["step"] >= state["max_steps"]:
            return "end"
        if spec.is_communication(state["config"].state):
            return "prover"
        return "verifier"

    workflow = StateGraph(SessionState)
    workflow.add_node("prover", prover_node)
    workflow.add_node("verifier", verifier_node)
    workflow.set_entry_point("prover")
    workflow.add_edge("prover", "verifier")
    workflow.add_conditional_edges(
        "verifier",
        after_verifier,
        {
            "prover": "prover",
            "verifier": "verifier",
            "end": END,
        },
    )
    return workflow.compile()


def recursion_limit(max_steps: int) -> int:
    """Каждый шаг занимает не больше двух переходов графа."""
    return 2 * max_steps + 4
