"""
Модель, проверка и формат файлов автоматов.
"""
from machines.builder import TableBuilder
from machines.fileformat import load_machine, parse_machine, print_machine, save_machine
from machines.model import (
    LEFT_END,
    LIFT,
    NONZERO,
    PLACE,
    RESTART,
    RIGHT_END,
    ZERO,
    Action,
    Configuration,
    MachineSpec,
    Outcome,
    QuantumPart,
    Row,
    Signature,
    Tape,
    act,
    choice_row,
    det_row,
    initial_configuration,
    prob_row,
    quantum_row,
    step_signature,
)
from machines.validation import validate, validate_head_safety

__all__ = [
    "LEFT_END",
    "LIFT",
    "NONZERO",
    "PLACE",
    "RESTART",
    "RIGHT_END",
    "ZERO",
    "Action",
    "Configuration",
    "MachineSpec",
    "Outcome",
    "QuantumPart",
    "Row",
    "Signature",
    "Tape",
    "TableBuilder",
    "act",
    "choice_row",
    "det_row",
    "initial_configuration",
    "load_machine",
    "parse_machine",
    "print_machine",
    "prob_row",
    "quantum_row",
    "save_machine",
    "step_signature",
    "validate",
    "validate_head_safety",
]
