"""
Точная рациональная арифметика: векторы, матрицы и супероператоры.

Все вычисления ведутся в fractions.Fraction. Нормированные векторы
никогда не строятся: движки хранят безусловные векторы и веса отдельно.
"""
import re
from decimal import Context, Decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from errors import DimensionMismatch, MachineSyntaxError, ZeroVector

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value: RationalLike) -> Fraction:
    """Разбирает "p/q" или "p"; дробные литералы с точкой запрещены."""
    if isinstance(value, bool):
        raise MachineSyntaxError(f"boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise MachineSyntaxError(f"expected a rational string, got {type(value).__name__}")
    match = _RATIONAL_RE.match(value)
    if match is None:
        raise MachineSyntaxError(f"malformed rational {value!r} (use 'p/q' or 'p')")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise MachineSyntaxError(f"zero denominator in {value!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def approximate(value: Fraction, digits: int = 12) -> str:
    """Десятичное приближение с заданным числом значащих цифр."""
    value = Fraction(value)
    context = Context(prec=digits)
    return str(context.divide(Decimal(value.numerator), Decimal(value.denominator)))


@dataclass(frozen=True)
class QVector:
    """Безусловный вектор квантового регистра с рациональными амплитудами."""
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.entries:
            raise DimensionMismatch("QVector needs dimension >= 1")

    @classmethod
    def of(cls, values: Iterable[RationalLike], scale: RationalLike = 1) -> "QVector":
        factor = parse_rational(scale)
        return cls(tuple(parse_rational(v) * factor for v in values))

    @classmethod
    def basis(cls, dim: int, index: int) -> "QVector":
        if not 0 <= index < dim:
            raise DimensionMismatch(f"basis index {index} outside dimension {dim}")
        return cls(tuple(Fraction(1 if i == index else 0) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def norm2(self) -> Fraction:
        return sum((x * x for x in self.entries), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def scaled(self, factor: RationalLike) -> "QVector":
        f = parse_rational(factor)
        return QVector(tuple(x * f for x in self.entries))

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class QMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        size = len(self.rows)
        if size == 0 or any(len(row) != size for row in self.rows):
            raise DimensionMismatch("QMatrix must be square and non-empty")

    @classmethod
    def of(cls, rows: Sequence[Sequence[RationalLike]], scale: RationalLike = 1) -> "QMatrix":
        factor = parse_rational(scale)
        return cls(tuple(tuple(parse_rational(x) * factor for x in row) for row in rows))

    @classmethod
    def identity(cls, dim: int, scale: RationalLike = 1) -> "QMatrix":
        factor = parse_rational(scale)
        return cls(tuple(
            tuple(factor if i == j else Fraction(0) for j in range(dim)) for i in range(dim)
        ))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def transpose(self) -> "QMatrix":
        return QMatrix(tuple(zip(*self.rows)))

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot multiply {self.dim}x{self.dim} by {other.dim}x{other.dim}")
        columns = list(zip(*other.rows))
        return QMatrix(tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in columns)
            for row in self.rows
        ))

    def add(self, other: "QMatrix") -> "QMatrix":
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot add {self.dim}x{self.dim} and {other.dim}x{other.dim}")
        return QMatrix(tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        ))

    def act(self, psi: QVector) -> QVector:
        if psi.dim != self.dim:
            raise DimensionMismatch(f"vector of dimension {psi.dim} vs matrix {self.dim}x{self.dim}")
        return QVector(tuple(
            sum((a * x for a, x in zip(row, psi.entries)), Fraction(0)) for row in self.rows
        ))

    def to_strings(self) -> List[List[str]]:
        return [[format_rational(x) for x in row] for row in self.rows]


@dataclass(frozen=True)
class Superoperator:
    """
    Супероператор с элементами E_1..E_k (метки исходов 1..k).

    Если задан initial_target, это оператор инициализации: один исход,
    регистр переводится в базисное состояние с этим индексом.
    """
    elements: Tuple[QMatrix, ...]
    initial_target: Optional[int] = None

    def __post_init__(self):
        if not self.elements:
            raise DimensionMismatch("superoperator needs at least one element")

    @classmethod
    def of(cls, elements: Sequence[QMatrix]) -> "Superoperator":
        return cls(tuple(elements))

    @classmethod
    def identity(cls, dim: int) -> "Superoperator":
        return cls((QMatrix.identity(dim),))

    @classmethod
    def initializer(cls, dim: int, target: int) -> "Superoperator":
        if not 0 <= target < dim:
            raise DimensionMismatch(f"initialize target {target} outside dimension {dim}")
        column = tuple(
            tuple(Fraction(1 if i == target else 0) for _ in range(dim)) for i in range(dim)
        )
        return cls((QMatrix(column),), initial_target=target)

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    @property
    def is_initializer(self) -> bool:
        return self.initial_target is not None


def check_completeness(op: Superoperator) -> bool:
    """Проверяет sum E_i^T E_i = I точно."""
    dim = op.elements[0].dim
    for element in op.elements:
        if element.dim != dim:
            raise DimensionMismatch(
                f"superoperator elements differ in size: {element.dim} vs {dim}"
            )
    if op.is_initializer:
        return True
    total = QMatrix.identity(dim, 0)
    for element in op.elements:
        total = total.add(element.transpose().matmul(element))
    return total == QMatrix.identity(dim)


def apply(op: Superoperator, psi: QVector) -> List[Tuple[int, QVector, Fraction]]:
    """
    Применяет супероператор к безусловному вектору.

    Возвращает (метка, E_i psi, ||E_i psi||^2) для каждого исхода. Для
    оператора инициализации вектор равен базисному, а вес равен ||psi||^2.
    """
    if psi.dim != op.dim:
        raise DimensionMismatch(f"vector of dimension {psi.dim} vs superoperator {op.dim}")
    if op.is_initializer:
        return [(1, QVector.basis(op.dim, op.initial_target), psi.norm2())]
    results = []
    for label, element in enumerate(op.elements, start=1):
        image = element.act(psi)
        results.append((label, image, image.norm2()))
    return results


def normalize(psi: QVector) -> Tuple[QVector, Fraction]:
    weight = psi.norm2()
    if weight == 0:
        raise ZeroVector("cannot normalize the zero vector")
    return psi, weight


def solve_linear_system(matrix: Sequence[Sequence[Fraction]],
                        rhs: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """
    Решает A X = B методом Гаусса–Жордана над рациональными числами.

    rhs задаётся построчно (несколько правых частей сразу).
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix) or len(rhs) != size:
        raise DimensionMismatch("solve_linear_system needs a square system")
    width = len(rhs[0]) if size else 0
    a = [[Fraction(x) for x in row] for row in matrix]
    b = [[Fraction(x) for x in row] for row in rhs]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular linear system")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        factor = a[col][col]
        if factor != 1:
            a[col] = [x / factor for x in a[col]]
            b[col] = [x / factor for x in b[col]]
        for r in range(size):
            if r == col or a[r][col] == 0:
                continue
            f = a[r][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    return [row[:width] for row in b]
