"""
Классификация режима распознавания по гарантированным границам.

Каждое условие режима трёхзначно: доказано нижними границами, опровергнуто
даже с учётом живой массы, или не определено. Возвращается первый
(самый сильный) режим без опровергнутых условий; если у него есть
неопределённое условие, бросается Inconclusive.
"""
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from errors import ConfigError, Inconclusive
from engines.exact import ProbabilityReport

HALF = Fraction(1, 2)

Verdict = Optional[bool]
Condition = Tuple[str, Callable[[ProbabilityReport], Verdict]]


def _never_rejected(report: ProbabilityReport) -> Verdict:
    return report.p_reject_lo == 0


def _never_accepted(report: ProbabilityReport) -> Verdict:
    return report.p_accept_lo == 0


def _at_least(value: Callable[[ProbabilityReport], Fraction], threshold: Fraction,
              strict: bool = False) -> Callable[[ProbabilityReport], Verdict]:
    def check(report: ProbabilityReport) -> Verdict:
        lo = value(report)
        hi = lo + report.live
        if lo > threshold or (not strict and lo >= threshold):
            return True
        if hi < threshold or (strict and hi <= threshold):
            return False
        return None
    return check


def _at_most(value: Callable[[ProbabilityReport], Fraction],
             threshold: Fraction) -> Callable[[ProbabilityReport], Verdict]:
    def check(report: ProbabilityReport) -> Verdict:
        lo = value(report)
        if lo + report.live <= threshold:
            return True
        if lo > threshold:
            return False
        return None
    return check


def _accept(report: ProbabilityReport) -> Fraction:
    return report.p_accept_lo


def _reject(report: ProbabilityReport) -> Fraction:
    return report.p_reject_lo


def _conditions(epsilon: Fraction) -> List[Tuple[str, List[Condition], List[Condition]]]:
    bound = 1 - epsilon
    return [
        ("negative-one-sided",
         [("member never rejected", _never_rejected)],
         [("nonmember rejected >= 1-eps", _at_least(_reject, bound))]),
        ("positive-one-sided",
         [("member accepted >= 1-eps", _at_least(_accept, bound))],
         [("nonmember never accepted", _never_accepted)]),
        ("bounded",
         [("member accepted >= 1-eps", _at_least(_accept, bound))],
         [("nonmember rejected >= 1-eps", _at_least(_reject, bound))]),
        ("one-sided-unbounded",
         [("member accepted > 0", _at_least(_accept, Fraction(0), strict=True))],
         [("nonmember never accepted", _never_accepted)]),
        ("unbounded",
         [("member accepted > 1/2", _at_least(_accept, HALF, strict=True))],
         [("nonmember accepted <= 1/2", _at_most(_accept, HALF))]),
    ]


def classify_mode(member_reports: Sequence[ProbabilityReport],
                  nonmember_reports: Sequence[ProbabilityReport],
                  epsilon) -> str:
    """Самый сильный режим, согласованный со всеми отчётами."""
    epsilon = Fraction(epsilon)
    if not 0 <= epsilon < HALF:
        raise ConfigError(f"epsilon must lie in [0, 1/2), got {epsilon}")
    for mode, member_checks, nonmember_checks in _conditions(epsilon):
        verdicts = []
        for name, check in member_checks:
            verdicts.extend((name, check(r)) for r in member_reports)
        for name, check in nonmember_checks:
            verdicts.extend((name, check(r)) for r in nonmember_reports)
        if any(v is False for _, v in verdicts):
            continue
        unknown = sorted({name for name, v in verdicts if v is None})
        if unknown:
            raise Inconclusive(f"live mass straddles the {mode} thresholds: {', '.join(unknown)}")
        return mode
    return "none"
