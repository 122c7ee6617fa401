"""
Оракулы принадлежности для именованных языков (прямые определения).
"""
import re
from math import isqrt
from typing import Callable, Dict, Optional, Tuple

from errors import UnknownLanguage

_BLOCKS = re.compile(r"^(a*)(b*)(c*)$")


def _blocks(x: str) -> Optional[Tuple[int, int, int]]:
    match = _BLOCKS.match(x)
    if match is None:
        return None
    return tuple(len(g) for g in match.groups())


def _is_ab(u: str) -> bool:
    return all(ch in "ab" for ch in u)


def is_twin(x: str) -> bool:
    parts = x.split("#")
    return len(parts) == 2 and _is_ab(parts[0]) and parts[0] == parts[1]


def is_exist_twin(x: str) -> bool:
    parts = x.split("#")
    if len(parts) < 2 or not all(_is_ab(p) for p in parts):
        return False
    return parts[0] in parts[1:]


def is_usquare(x: str) -> bool:
    n = len(x)
    if n == 0 or set(x) != {"b"}:
        return False
    return isqrt(n) ** 2 == n


def _ab_counts(x: str) -> Optional[Tuple[int, int]]:
    blocks = _blocks(x)
    if blocks is None or blocks[2] != 0:
        return None
    return blocks[0], blocks[1]


def is_square(x: str) -> bool:
    counts = _ab_counts(x)
    return counts is not None and counts[0] >= 1 and counts[1] == counts[0] ** 2


def is_siam_twins(x: str) -> bool:
    half, odd = divmod(len(x), 2)
    return not odd and _is_ab(x) and x[:half] == x[half:]


def is_greater(x: str) -> bool:
    counts = _ab_counts(x)
    return counts is not None and counts[0] > counts[1] > 0


def is_greater_square(x: str) -> bool:
    counts = _ab_counts(x)
    return counts is not None and counts[1] > 0 and counts[0] > counts[1] ** 2


def is_lapins(x: str) -> bool:
    blocks = _blocks(x)
    if blocks is None:
        return False
    m, n, p = blocks
    return m ** 4 > n ** 2 > p > 0


def is_center(x: str) -> bool:
    half, odd = divmod(len(x), 2)
    return bool(odd) and _is_ab(x) and x[half] == "b"


def is_say(x: str) -> bool:
    """b на позиции i и на позиции |x|+1-i для некоторого i."""
    if not _is_ab(x):
        return False
    return any(x[i] == "b" and x[len(x) - 1 - i] == "b" for i in range(len(x)))


ORACLES: Dict[str, Callable[[str], bool]] = {
    "TWIN": is_twin,
    "EXIST-TWIN": is_exist_twin,
    "USQUARE": is_usquare,
    "SQUARE": is_square,
    "SIAM-TWINS": is_siam_twins,
    "GREATER": is_greater,
    "GREATER-SQUARE": is_greater_square,
    "LAPINS": is_lapins,
    "CENTER": is_center,
    "SAY": is_say,
}

ALIASES = {"LAPINŠ": "LAPINS"}


def canonical_language(lang: str) -> str:
    name = ALIASES.get(lang.upper(), lang.upper())
    if name not in ORACLES:
        raise UnknownLanguage(f"unknown language {lang!r}; known: {', '.join(ORACLES)}")
    return name


def membership(lang: str, x: str) -> bool:
    return ORACLES[canonical_language(lang)](x)
