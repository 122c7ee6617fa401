"""
Построитель таблиц переходов для машин, собираемых в коде.
"""
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from errors import ConfigError
from exactmath import Superoperator
from machines.model import (
    MachineSpec,
    QuantumPart,
    Row,
    RowKey,
    format_key,
    step_signature,
)
from machines.validation import validate

Symbols = Union[str, Sequence[str], None]


class TableBuilder:
    """Собирает строки таблицы; None в symbol/status/sense означает «все значения»."""

    def __init__(self, kind: str, sigma: Iterable[str], start: str,
                 accept: str = "acc", reject: str = "rej"):
        self.kind = kind
        self.sig = step_signature(kind)
        self.sigma = tuple(sigma)
        self.accept = accept
        self.reject = reject
        self._states: List[str] = []
        self.rows: Dict[RowKey, Row] = {}
        self.communication: Dict[str, str] = {}
        self.cell_alphabet: Tuple[str, ...] = ()
        self.quantum_states: Tuple[str, ...] = ()
        self.quantum_initial: Optional[str] = None
        self.operators: Dict[str, Superoperator] = {}
        self.state(start)
        self.state(accept)
        self.state(reject)

    def state(self, name: str) -> str:
        if name not in self._states:
            self._states.append(name)
        return name

    @property
    def states(self) -> Tuple[str, ...]:
        return tuple(self._states)

    def register(self, states: Sequence[str], initial: str) -> None:
        self.quantum_states = tuple(states)
        self.quantum_initial = initial

    def operator(self, name: str, op: Superoperator) -> str:
        self.operators[name] = op
        return name

    def communicate(self, state: str, request: str, cell_alphabet: Sequence[str]) -> None:
        self.state(state)
        self.communication[state] = request
        self.cell_alphabet = tuple(cell_alphabet)

    def _symbols(self, state: str, symbol: Symbols) -> Tuple[str, ...]:
        if symbol is None:
            if state in self.communication:
                return self.cell_alphabet
            return ("¢",) + self.sigma + ("$",)
        if isinstance(symbol, str):
            return (symbol,)
        return tuple(symbol)

    def _statuses(self, status) -> List[Tuple[str, ...]]:
        if status is None:
            return self.sig.status_tuples()
        if isinstance(status, str):
            return [(status,)]
        return [tuple(status)]

    def _senses(self, sense: Optional[bool]) -> Tuple[Optional[bool], ...]:
        if not self.sig.pebble:
            return (None,)
        return self.sig.senses() if sense is None else (sense,)

    def keys(self, state: str, symbol: Symbols = None, status=None,
             sense: Optional[bool] = None) -> List[RowKey]:
        return [
            (state, sym, st, se)
            for sym in self._symbols(state, symbol)
            for st in self._statuses(status)
            for se in self._senses(sense)
        ]

    def row(self, state: str, symbol: Symbols, row: Row, status=None,
            sense: Optional[bool] = None, replace: bool = False) -> None:
        self.state(state)
        for outcome in row.outcomes:
            if not outcome.action.restart:
                self.state(outcome.action.target)
        for key in self.keys(state, symbol, status, sense):
            if key in self.rows and not replace:
                raise ConfigError(f"duplicate transition for {format_key(key)}")
            self.rows[key] = row

    def fill(self, state: str, row: Row) -> None:
        """Заполняет все ещё не заданные строки состояния."""
        self.state(state)
        for outcome in row.outcomes:
            if not outcome.action.restart:
                self.state(outcome.action.target)
        for key in self.keys(state):
            self.rows.setdefault(key, row)

    def build(self, labels: Optional[Mapping[str, str]] = None) -> MachineSpec:
        quantum = None
        if self.sig.quantum:
            quantum = QuantumPart(self.quantum_states, self.quantum_initial, dict(self.operators))
        spec = MachineSpec(
            kind=self.kind,
            states=self.states,
            accept=self.accept,
            reject=self.reject,
            sigma=self.sigma,
            transitions=dict(self.rows),
            quantum=quantum,
            communication=dict(self.communication),
            cell_alphabet=self.cell_alphabet,
            labels=dict(labels or {}),
        )
        return validate(spec)
