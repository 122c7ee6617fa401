"""
Проверка инвариантов спецификации машины.

validate() собирает все нарушения сразу и бросает ValidationError
(CompletenessError, если среди них есть неполные супероператоры).
"""
from fractions import Fraction
from typing import List

from errors import CompletenessError, ConfigError, DimensionMismatch, ValidationError
from exactmath import check_completeness, format_rational
from machines.model import (
    LEFT_END,
    PEBBLE_ACTIONS,
    RESERVED_OPERATORS,
    RIGHT_END,
    WILDCARD,
    Action,
    MachineSpec,
    RowKey,
    SIGNATURES,
    format_key,
)


def validate_head_safety(spec: MachineSpec) -> List[str]:
    """Перечисляет переходы, уводящие головку влево с ¢ или вправо с $."""
    violations = []
    for key, row in spec.transitions.items():
        state, symbol, _, _ = key
        if spec.is_communication(state):
            continue
        for index, outcome in enumerate(row.outcomes, start=1):
            action = outcome.action
            if action.restart:
                continue
            if symbol == LEFT_END and action.move < 0:
                violations.append(f"{format_key(key)} outcome {index} moves left on {LEFT_END}")
            if symbol == RIGHT_END and action.move > 0:
                violations.append(f"{format_key(key)} outcome {index} moves right on {RIGHT_END}")
    return violations


def _check_action(spec: MachineSpec, key: RowKey, index: int, action: Action) -> List[str]:
    sig = spec.signature
    where = f"{format_key(key)} outcome {index}"
    problems = []
    if action.restart:
        if not sig.two_way:
            problems.append(f"{where}: restart is not allowed in one-way kind {spec.kind}")
        return problems
    if action.target not in spec.states:
        problems.append(f"{where}: unknown target state {action.target!r}")
    if action.move not in sig.moves:
        problems.append(f"{where}: move {action.move} not allowed for {spec.kind}")
    if spec.is_communication(key[0]) and action.move != 0:
        problems.append(f"{where}: communication states must keep the head still")
    if len(action.deltas) != sig.counters:
        problems.append(f"{where}: expected {sig.counters} counter deltas, got {len(action.deltas)}")
    elif any(d not in (-1, 0, 1) for d in action.deltas):
        problems.append(f"{where}: counter deltas must be in {{-1,0,1}}")
    if action.pebble is not None and (not sig.pebble or action.pebble not in PEBBLE_ACTIONS):
        problems.append(f"{where}: pebble action {action.pebble!r} not allowed for {spec.kind}")
    return problems


def collect_violations(spec: MachineSpec) -> List[str]:
    if spec.kind not in SIGNATURES:
        return [f"unknown machine kind {spec.kind!r}"]
    sig = spec.signature
    violations: List[str] = []

    if not spec.states:
        return ["machine has no states"]
    if len(set(spec.states)) != len(spec.states):
        violations.append("state names must be unique")
    for name in (spec.accept, spec.reject):
        if name not in spec.states:
            violations.append(f"halting state {name!r} is not declared")
    if spec.accept == spec.reject:
        violations.append("accept and reject states must differ")
    for symbol in spec.sigma:
        if len(symbol) != 1 or symbol in (LEFT_END, RIGHT_END, WILDCARD):
            violations.append(f"bad input symbol {symbol!r}")
    if len(set(spec.sigma)) != len(spec.sigma):
        violations.append("input symbols must be unique")

    if sig.quantum and spec.quantum is None:
        violations.append(f"kind {spec.kind} needs a quantum part")
    if not sig.quantum and spec.quantum is not None:
        violations.append(f"kind {spec.kind} cannot have a quantum part")
    if spec.quantum is not None:
        q = spec.quantum
        if not q.states or len(set(q.states)) != len(q.states):
            violations.append("quantum states must be non-empty and unique")
        if q.initial not in q.states:
            violations.append(f"initial quantum state {q.initial!r} is not declared")
        for name in q.operators:
            if name in RESERVED_OPERATORS:
                violations.append(f"superoperator name {name!r} is reserved")

    if spec.communication:
        if sig.mode != "probabilistic":
            violations.append(f"kind {spec.kind} cannot have communication states")
        if not spec.cell_alphabet:
            violations.append("communication states need a cell alphabet")
        for state in spec.communication:
            if state not in spec.states or spec.is_halting(state):
                violations.append(f"communication state {state!r} must be a declared non-halting state")

    if violations:
        return violations

    incomplete = []
    if spec.quantum is not None:
        for name, op in spec.quantum.operators.items():
            try:
                complete = check_completeness(op)
            except DimensionMismatch as exc:
                violations.append(f"superoperator {name}: {exc}")
                continue
            if op.dim != spec.quantum.dim:
                violations.append(
                    f"superoperator {name} has dimension {op.dim}, register has {spec.quantum.dim}"
                )
            elif not complete:
                incomplete.append(f"superoperator {name} violates sum E_i^T E_i = I")

    required = set(spec.required_keys())
    for key in sorted(required - set(spec.transitions), key=format_key):
        violations.append(f"missing transition for {format_key(key)}")
    for key in sorted(set(spec.transitions) - required, key=format_key):
        violations.append(f"unexpected transition for {format_key(key)}")

    for key, row in spec.transitions.items():
        if key not in required:
            continue
        where = format_key(key)
        if not row.outcomes:
            violations.append(f"{where}: no outcomes")
            continue
        if sig.mode == "deterministic":
            if len(row.outcomes) != 1 or row.outcomes[0].weight != 1:
                violations.append(f"{where}: deterministic rows have exactly one action")
        elif sig.mode == "nondeterministic":
            if any(o.weight is not None for o in row.outcomes):
                violations.append(f"{where}: nondeterministic choices carry no weights")
        elif sig.mode == "probabilistic":
            weights = [o.weight for o in row.outcomes]
            if any(w is None or not 0 < w <= 1 for w in weights):
                violations.append(f"{where}: outcome weights must lie in (0, 1]")
            else:
                total = sum(weights, Fraction(0))
                if total != 1:
                    violations.append(f"probabilities for {where} sum to {format_rational(total)}")
        else:
            if row.operator is None:
                violations.append(f"{where}: quantum rows need a superoperator")
            else:
                try:
                    op = spec.quantum.operator(row.operator)
                except ConfigError as exc:
                    violations.append(f"{where}: {exc}")
                else:
                    if len(row.outcomes) != op.k:
                        violations.append(
                            f"{where}: superoperator {row.operator} has {op.k} outcomes, "
                            f"{len(row.outcomes)} actions given"
                        )
        if not sig.quantum and row.operator is not None:
            violations.append(f"{where}: classical rows cannot name a superoperator")
        for index, outcome in enumerate(row.outcomes, start=1):
            violations.extend(_check_action(spec, key, index, outcome.action))

    violations.extend(validate_head_safety(spec))
    return violations + incomplete


def validate(spec: MachineSpec) -> MachineSpec:
    """Проверяет все инварианты; возвращает ту же спецификацию."""
    violations = collect_violations(spec)
    if not violations:
        return spec
    if any("violates sum E_i^T E_i = I" in v for v in violations):
        raise CompletenessError(violations)
    raise ValidationError(violations)
