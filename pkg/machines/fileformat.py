"""
Текстовый формат файла машины.

JSON-документ; строки, начинающиеся с '#', считаются комментариями.
Числа с плавающей точкой запрещены, вероятности и элементы матриц
записываются строками "p/q". Символ '*' в строке таблицы раскрывается
во все значения; более конкретная строка перекрывает строку с '*'.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from errors import MachineSyntaxError, ValidationError
from exactmath import QMatrix, Superoperator, format_rational, parse_rational
from machines.model import (
    MOVE_NAMES,
    MOVES,
    STATUSES,
    WILDCARD,
    Action,
    MachineSpec,
    Outcome,
    QuantumPart,
    RESTART,
    Row,
    RowKey,
    format_key,
    step_signature,
)
from machines.validation import validate


def _reject_float(text: str):
    raise MachineSyntaxError(f"floating-point literal {text} is not allowed; use 'p/q'")


def _reject_constant(text: str):
    raise MachineSyntaxError(f"constant {text} is not allowed")


def strip_comments(text: str) -> str:
    return "\n".join("" if line.lstrip().startswith("#") else line for line in text.splitlines())


def _require(doc: Dict[str, Any], name: str) -> Any:
    if name not in doc:
        raise MachineSyntaxError(f"missing field {name!r}")
    return doc[name]


def _str_list(value: Any, name: str) -> Tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise MachineSyntaxError(f"field {name!r} must be a list of strings")
    return tuple(value)


def _parse_action(raw: Any, counters: int, pebble: bool) -> Action:
    if raw == "restart":
        return RESTART
    expected = 2 + counters + (1 if pebble else 0)
    if not isinstance(raw, list) or len(raw) != expected:
        raise MachineSyntaxError(f"action {raw!r} must be 'restart' or a list of {expected} items")
    target, move = raw[0], raw[1]
    if not isinstance(target, str) or move not in MOVES:
        raise MachineSyntaxError(f"action {raw!r}: expected [state, L|S|R, ...]")
    deltas = raw[2:2 + counters]
    if not all(isinstance(d, int) and not isinstance(d, bool) for d in deltas):
        raise MachineSyntaxError(f"action {raw!r}: counter deltas must be integers")
    pebble_action = None
    if pebble:
        marker = raw[-1]
        if marker not in ("-", "place", "lift"):
            raise MachineSyntaxError(f"action {raw!r}: pebble action must be '-', 'place' or 'lift'")
        pebble_action = None if marker == "-" else marker
    return Action(target, MOVES[move], tuple(deltas), pebble_action)


def _print_action(action: Action, counters: int, pebble: bool) -> Union[str, List[Any]]:
    if action.restart:
        return "restart"
    raw: List[Any] = [action.target, MOVE_NAMES[action.move], *action.deltas]
    if pebble:
        raw.append(action.pebble or "-")
    return raw


def _parse_operator(name: str, raw: Any, states: Tuple[str, ...]) -> Superoperator:
    if isinstance(raw, dict):
        target = raw.get("initialize")
        if target not in states:
            raise MachineSyntaxError(f"operator {name}: initialize target {target!r} is not a quantum state")
        return Superoperator.initializer(len(states), states.index(target))
    if not isinstance(raw, list) or not raw:
        raise MachineSyntaxError(f"operator {name} must be a non-empty list of matrices")
    elements = []
    for matrix in raw:
        if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
            raise MachineSyntaxError(f"operator {name}: matrices are nested lists")
        try:
            elements.append(QMatrix.of(matrix))
        except ValueError as exc:
            if isinstance(exc, MachineSyntaxError):
                raise
            raise MachineSyntaxError(f"operator {name}: {exc}") from None
    return Superoperator.of(elements)


def _expand_status(raw: Any, counters: int) -> List[Tuple[Tuple[str, ...], int]]:
    """Возвращает наборы статусов вместе с числом конкретных полей."""
    if counters == 0:
        if raw not in (None, [], WILDCARD):
            raise MachineSyntaxError(f"status {raw!r} given for a counterless kind")
        return [((), 0)]
    if raw is None:
        raw = WILDCARD
    parts = raw if isinstance(raw, list) else [raw]
    if counters > 1 and not isinstance(raw, list) and raw != WILDCARD:
        raise MachineSyntaxError(f"status {raw!r}: {counters} counters need a list")
    if raw == WILDCARD:
        parts = [WILDCARD] * counters
    if len(parts) != counters:
        raise MachineSyntaxError(f"status {raw!r}: expected {counters} entries")
    options: List[List[str]] = []
    fixed = 0
    for part in parts:
        if part == WILDCARD:
            options.append(list(STATUSES))
        elif part in STATUSES:
            options.append([part])
            fixed += 1
        else:
            raise MachineSyntaxError(f"unknown counter status {part!r}")
    combos: List[Tuple[str, ...]] = [()]
    for choice in options:
        combos = [c + (s,) for c in combos for s in choice]
    return [(c, fixed) for c in combos]


def _parse_row_body(raw: Dict[str, Any], mode: str, counters: int, pebble: bool) -> Row:
    if "go" in raw:
        return Row((Outcome(_parse_action(raw["go"], counters, pebble), parse_rational(1)),))
    if "choices" in raw:
        if not isinstance(raw["choices"], list):
            raise MachineSyntaxError("'choices' must be a list of actions")
        return Row(tuple(Outcome(_parse_action(a, counters, pebble)) for a in raw["choices"]))
    if "outcomes" in raw:
        items = raw["outcomes"]
        if not isinstance(items, list) or not all(isinstance(i, dict) for i in items):
            raise MachineSyntaxError("'outcomes' must be a list of {p, go} objects")
        return Row(tuple(
            Outcome(_parse_action(_require(i, "go"), counters, pebble), parse_rational(_require(i, "p")))
            for i in items
        ))
    if "op" in raw:
        actions = _require(raw, "actions")
        if not isinstance(actions, dict):
            raise MachineSyntaxError("'actions' must map outcome labels to actions")
        try:
            labels = sorted(int(label) for label in actions)
        except ValueError:
            raise MachineSyntaxError("outcome labels must be integers") from None
        if labels != list(range(1, len(labels) + 1)):
            raise MachineSyntaxError(f"outcome labels must be 1..k, got {labels}")
        return Row(
            tuple(Outcome(_parse_action(actions[str(label)], counters, pebble)) for label in labels),
            operator=str(raw["op"]),
        )
    raise MachineSyntaxError(f"row {raw!r} has none of go/choices/outcomes/op")


def parse_machine(text: str) -> MachineSpec:
    """Разбирает и полностью проверяет файл машины."""
    try:
        doc = json.loads(strip_comments(text), parse_float=_reject_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MachineSyntaxError(f"malformed machine file: {exc}") from None
    if not isinstance(doc, dict):
        raise MachineSyntaxError("machine file must hold a JSON object")

    kind = _require(doc, "kind")
    if not isinstance(kind, str):
        raise MachineSyntaxError("field 'kind' must be a string")
    try:
        sig = step_signature(kind)
    except ValueError as exc:
        raise ValidationError([str(exc)]) from None
    states = _str_list(_require(doc, "states"), "states")
    sigma = _str_list(_require(doc, "sigma"), "sigma")
    accept = _require(doc, "accept")
    reject = _require(doc, "reject")

    quantum = None
    if "quantum" in doc:
        qdoc = doc["quantum"]
        if not isinstance(qdoc, dict):
            raise MachineSyntaxError("field 'quantum' must be an object")
        qstates = _str_list(_require(qdoc, "states"), "quantum.states")
        operators = {
            name: _parse_operator(name, raw, qstates)
            for name, raw in dict(qdoc.get("operators", {})).items()
        }
        quantum = QuantumPart(qstates, _require(qdoc, "initial"), operators)

    communication = doc.get("communication", {})
    if not isinstance(communication, dict):
        raise MachineSyntaxError("field 'communication' must map states to request symbols")
    cell_alphabet = _str_list(doc.get("cell_alphabet", []), "cell_alphabet")
    labels = doc.get("labels", {})
    if not isinstance(labels, dict):
        raise MachineSyntaxError("field 'labels' must be an object")

    draft = MachineSpec(kind, states, accept, reject, sigma, {}, quantum,
                        dict(communication), cell_alphabet, {str(k): str(v) for k, v in labels.items()})
    active = [s for s in states if not draft.is_halting(s)]

    rows = _require(doc, "transitions")
    if not isinstance(rows, list):
        raise MachineSyntaxError("field 'transitions' must be a list")
    chosen: Dict[RowKey, Tuple[int, int, Row]] = {}
    overlaps: List[str] = []
    for number, raw in enumerate(rows, start=1):
        if not isinstance(raw, dict):
            raise MachineSyntaxError(f"transition {number} must be an object")
        state = _require(raw, "state")
        symbol = _require(raw, "symbol")
        body = _parse_row_body(raw, sig.mode, sig.counters, sig.pebble)
        state_options = active if state == WILDCARD else [state]
        specificity = 0 if state == WILDCARD else 1
        specificity += 0 if symbol == WILDCARD else 1
        sense_raw = raw.get("sense", WILDCARD)
        if not sig.pebble:
            if sense_raw not in (WILDCARD, None):
                raise MachineSyntaxError(f"transition {number}: 'sense' given for a pebble-free kind")
            senses = [None]
        elif sense_raw == WILDCARD:
            senses = [False, True]
        elif isinstance(sense_raw, bool):
            senses = [sense_raw]
            specificity += 1
        else:
            raise MachineSyntaxError(f"transition {number}: 'sense' must be true, false or '*'")
        for st in state_options:
            symbols = draft.symbols_for(st) if symbol == WILDCARD else [symbol]
            for sym in symbols:
                for statuses, fixed in _expand_status(raw.get("status"), sig.counters):
                    for sense in senses:
                        key = (st, sym, statuses, sense)
                        rank = specificity + fixed
                        previous = chosen.get(key)
                        if previous is None or previous[0] < rank:
                            chosen[key] = (rank, number, body)
                        elif previous[0] == rank:
                            overlaps.append(
                                f"transitions {previous[1]} and {number} overlap at {format_key(key)}"
                            )
    if overlaps:
        raise ValidationError(overlaps)
    spec = MachineSpec(kind, states, accept, reject, sigma,
                       {key: entry[2] for key, entry in chosen.items()},
                       quantum, dict(communication), cell_alphabet, draft.labels)
    return validate(spec)


def _dump(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False)


def _row_to_doc(spec: MachineSpec, key: RowKey, row: Row) -> Dict[str, Any]:
    sig = spec.signature
    state, symbol, statuses, sense = key
    doc: Dict[str, Any] = {"state": state, "symbol": symbol}
    if sig.counters == 1:
        doc["status"] = statuses[0]
    elif sig.counters > 1:
        doc["status"] = list(statuses)
    if sig.pebble:
        doc["sense"] = sense
    if sig.quantum:
        doc["op"] = row.operator
        doc["actions"] = {
            str(i): _print_action(o.action, sig.counters, sig.pebble)
            for i, o in enumerate(row.outcomes, start=1)
        }
    elif sig.mode == "deterministic":
        doc["go"] = _print_action(row.outcomes[0].action, sig.counters, sig.pebble)
    elif sig.mode == "nondeterministic":
        doc["choices"] = [_print_action(o.action, sig.counters, sig.pebble) for o in row.outcomes]
    else:
        doc["outcomes"] = [
            {"p": format_rational(o.weight), "go": _print_action(o.action, sig.counters, sig.pebble)}
            for o in row.outcomes
        ]
    return doc


def _row_order(spec: MachineSpec):
    state_index = {s: i for i, s in enumerate(spec.states)}

    def order(key: RowKey):
        state, symbol, statuses, sense = key
        symbols = spec.symbols_for(state)
        position = symbols.index(symbol) if symbol in symbols else len(symbols)
        return (state_index.get(state, len(state_index)), position, statuses, sense is True)

    return order


def print_machine(spec: MachineSpec) -> str:
    """Канонический текст: поля в фиксированном порядке, строки таблицы раскрыты."""
    lines = ["{"]
    fields: List[str] = [
        f'  "kind": {_dump(spec.kind)}',
        f'  "states": {_dump(list(spec.states))}',
        f'  "accept": {_dump(spec.accept)}',
        f'  "reject": {_dump(spec.reject)}',
        f'  "sigma": {_dump(list(spec.sigma))}',
    ]
    if spec.labels:
        fields.append(f'  "labels": {_dump(dict(sorted(spec.labels.items())))}')
    if spec.communication:
        fields.append(f'  "communication": {_dump(dict(sorted(spec.communication.items())))}')
    if spec.cell_alphabet:
        fields.append(f'  "cell_alphabet": {_dump(list(spec.cell_alphabet))}')
    if spec.quantum is not None:
        q = spec.quantum
        op_lines = []
        for name in sorted(q.operators):
            op = q.operators[name]
            if op.is_initializer:
                body = _dump({"initialize": q.states[op.initial_target]})
            else:
                body = _dump([m.to_strings() for m in op.elements])
            op_lines.append(f"      {_dump(name)}: {body}")
        qtext = (
            '  "quantum": {\n'
            f'    "states": {_dump(list(q.states))},\n'
            f'    "initial": {_dump(q.initial)},\n'
            '    "operators": {' + ("\n" + ",\n".join(op_lines) + "\n    " if op_lines else "") + "}\n"
            "  }"
        )
        fields.append(qtext)
    ordered = sorted(spec.transitions, key=_row_order(spec))
    row_lines = [f"    {_dump(_row_to_doc(spec, key, spec.transitions[key]))}" for key in ordered]
    fields.append('  "transitions": [\n' + ",\n".join(row_lines) + "\n  ]")
    lines.append(",\n".join(fields))
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_machine(path: Union[str, Path]) -> MachineSpec:
    return parse_machine(Path(path).read_text(encoding="utf-8"))


def save_machine(spec: MachineSpec, path: Union[str, Path], header: Optional[List[str]] = None) -> Path:
    """Сохраняет машину; header — строки комментария в начале файла."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    prefix = "".join(f"# {line}\n" for line in (header or []))
    target.write_text(prefix + print_machine(spec), encoding="utf-8")
    return target
