"""
Иерархия исключений рабочего стенда.
"""
from typing import Iterable, List


class WorkbenchError(Exception):
    """Базовая ошибка всех модулей."""


class DimensionMismatch(WorkbenchError, ValueError):
    pass


class ZeroVector(WorkbenchError, ValueError):
    pass


class MachineSyntaxError(WorkbenchError, ValueError):
    """Файл машины не разбирается."""


class ValidationError(WorkbenchError, ValueError):
    """Спецификация машины нарушает инварианты; хранит список нарушений."""

    def __init__(self, violations: Iterable[str]):
        self.violations: List[str] = list(violations)
        super().__init__("; ".join(self.violations))


class CompletenessError(ValidationError):
    pass


class ConfigError(WorkbenchError, ValueError):
    pass


class CounterUnderflow(WorkbenchError, RuntimeError):
    pass


class NonHalting(WorkbenchError, RuntimeError):
    pass


class MalformedStream(WorkbenchError, ValueError):
    pass


class Inconclusive(WorkbenchError):
    """Живая масса перекрывает порог режима распознавания."""


class UnknownLanguage(WorkbenchError, ValueError):
    pass


class NonConvergence(UserWarning):
    """Живая масса не опустилась ниже допуска; границы остаются верными."""
