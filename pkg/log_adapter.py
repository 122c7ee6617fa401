"""
Модуль адаптера для отчётов.
Преобразует отчёты движков и сессий в строки «ключ: значение» и в JSON.
"""
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

from exactmath import approximate, format_rational


class ReportAdapter:
    """Адаптер для вывода результатов в фиксированном текстовом и JSON-формате."""

    @staticmethod
    def format_rational(value: Fraction) -> str:
        """p/q (≈d.ddd): точное значение и приближение в 12 значащих цифр."""
        value = Fraction(value)
        return f"{format_rational(value)} (≈{approximate(value, 12)})"

    @staticmethod
    def report_lines(report: Any) -> List[str]:
        """Строки точного отчёта: границы, живая масса, веса раунда."""
        lines = [
            f"method: {report.method}",
            f"accept_lo: {ReportAdapter.format_rational(report.p_accept_lo)}",
            f"accept_hi: {ReportAdapter.format_rational(report.p_accept_hi)}",
            f"reject_lo: {ReportAdapter.format_rational(report.p_reject_lo)}",
            f"reject_hi: {ReportAdapter.format_rational(report.p_reject_hi)}",
            f"live: {ReportAdapter.format_rational(report.live)}",
            f"horizon: {report.horizon}",
            f"converged: {str(report.converged).lower()}",
        ]
        if report.round is not None:
            lines.append(f"round_accept: {ReportAdapter.format_rational(report.round.accept)}")
            lines.append(f"round_reject: {ReportAdapter.format_rational(report.round.reject)}")
            lines.append(f"round_restart: {ReportAdapter.format_rational(report.round.restart)}")
        if report.warning:
            lines.append(f"warning: {report.warning}")
        return lines

    @staticmethod
    def estimate_lines(estimate: Any) -> List[str]:
        """Строки оценки Монте-Карло: счётчики и интервалы Уилсона."""
        return [
            "method: mc",
            f"trials: {estimate.trials}",
            f"seed: {estimate.seed}",
            f"accepts: {estimate.accepts}",
            f"rejects: {estimate.rejects}",
            f"timeouts: {estimate.timeouts}",
            f"accept_ci: [{estimate.accept_ci[0]:.6f}, {estimate.accept_ci[1]:.6f}]",
            f"reject_ci: [{estimate.reject_ci[0]:.6f}, {estimate.reject_ci[1]:.6f}]",
        ]

    @staticmethod
    def mapping_lines(data: Dict[str, Any], prefix: str = "") -> List[str]:
        lines = []
        for key, value in data.items():
            if isinstance(value, Fraction):
                value = ReportAdapter.format_rational(value)
            elif isinstance(value, bool):
                value = str(value).lower()
            lines.append(f"{prefix}{key}: {value}")
        return lines

    @staticmethod
    def transcript_lines(events: Iterable[Dict[str, Any]]) -> List[str]:
        """round step v:<символ> p:<символ> [МАРКЕР]"""
        lines = []
        for event in events:
            line = f"{event['round']} {event['step']} v:{event['verifier_symbol']} p:{event['prover_symbol']}"
            if event.get("marker"):
                line += f" {event['marker']}"
            lines.append(line)
        return lines

    @staticmethod
    def jsonable(value: Any) -> Any:
        """Рациональные числа — строками "p/q", никогда не float."""
        if isinstance(value, Fraction):
            return format_rational(value)
        if is_dataclass(value) and not isinstance(value, type):
            data = {f.name: ReportAdapter.jsonable(getattr(value, f.name)) for f in fields(value)}
            if hasattr(value, "p_accept_hi"):
                data["p_accept_hi"] = format_rational(value.p_accept_hi)
                data["p_reject_hi"] = format_rational(value.p_reject_hi)
            return data
        if isinstance(value, dict):
            return {str(k): ReportAdapter.jsonable(v) for k, v in value.items()}
        if isinstance(value, (list, tuple, set, frozenset)):
            items = [ReportAdapter.jsonable(v) for v in value]
            return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
        return value

    @staticmethod
    def to_json(value: Any, indent: int = 2) -> str:
        """Возвращает отчёт в формате JSON-строки с упорядоченными ключами."""
        return json.dumps(ReportAdapter.jsonable(value), ensure_ascii=False, indent=indent, sort_keys=True)


def save_transcript(events: Iterable[Dict[str, Any]], file_path: Union[str, Path]) -> Path:
    """Сохраняет стенограмму в текстовый файл, по событию на строку."""
    target = Path(file_path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text("\n".join(ReportAdapter.transcript_lines(events)) + "\n", encoding="utf-8")
    return target
