"""
Конфигурация рабочего стенда счётчиковых автоматов.

Содержит значения по умолчанию для движков, протоколов и конструкций.
Часть параметров переопределяется переменными окружения.
"""
import os
from fractions import Fraction
from typing import Dict, List

PROJECT_NAME = "Counter Automata Workbench"

DEFAULT_SEED = int(os.getenv("CTRWB_SEED", "20120523"))

# Точный анализ
DEFAULT_TOLERANCE = Fraction(1, 10**9)
DEFAULT_HORIZON = 10**6
MAX_REGENERATION_NODES = int(os.getenv("CTRWB_MAX_NODES", "4096"))
STALL_WINDOW = 4096
# шаг пакетной прогонки экскурсий между решениями линейной системы
EXACT_BATCH = 64

# Монте-Карло
DEFAULT_TRIALS = 10**4
DEFAULT_STEP_CAP = 10**4
CI_Z = 1.959963984540054

# Протоколы
DEFAULT_K = 16
CONTINUE_PROBABILITY = Fraction(1, 2)
UPFRONT_REJECT = Fraction(3, 7)
HONEST_RUN_CAP = 10**5
DEFAULT_LIE_STEP = 3
PROVER_ALPHABET = ("a", "b", "#")
REQUEST_SYMBOL = "next"

# Конструкции
TRANSFORM_C = 2
TRANSFORM_C_MAX = 64
TRANSFORM_MAX_FANOUT = 64
QTWIN_EPSILON = Fraction(1, 5)
SQUARE_EPSILON = Fraction(1, 3)
GREATER_EPSILON = Fraction(1, 3)
BLACKBOX_HALT = Fraction(1, 2)

# Логирование
LOG_LEVEL = os.getenv("CTRWB_LOG_LEVEL", "WARNING")
LOG_DIR = os.getenv("CTRWB_LOG_DIR", "logs")

LANGUAGES: List[str] = [
    "TWIN",
    "EXIST-TWIN",
    "USQUARE",
    "SQUARE",
    "SIAM-TWINS",
    "GREATER",
    "GREATER-SQUARE",
    "LAPINS",
    "CENTER",
    "SAY",
]

ADVERSARY_NAMES: List[str] = [
    "flatline",
    "off-by-one",
    "stall",
    "wrong-branch",
    "accept-rusher",
]

# от сильного режима к слабому
MODES: List[str] = [
    "negative-one-sided",
    "positive-one-sided",
    "bounded",
    "one-sided-unbounded",
    "unbounded",
    "none",
]

EXIT_CODES: Dict[str, int] = {
    "ok": 0,
    "invalid": 1,
    "io": 2,
    "flags": 3,
}
