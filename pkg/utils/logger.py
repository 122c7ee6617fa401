"""
Логирование стенда: настройка стандартного logging и JSON-журнал сессий.

SessionLogger сохраняет параметры прогона, события протокола
и итоговый отчёт в структурированном виде.
"""
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import config

_configured = False


def get_logger(name: str) -> logging.Logger:
    """Возвращает логгер; корневой обработчик настраивается один раз."""
    global _configured
    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("[%(levelname)s] %(message)s"))
        root = logging.getLogger("ctrwb")
        root.addHandler(handler)
        root.setLevel(config.LOG_LEVEL.upper())
        root.propagate = False
        _configured = True
    return logging.getLogger(f"ctrwb.{name}")


class SessionLogger:
    """Класс для журнала одной сессии верификатора и доказывающего."""

    def __init__(self, project: str = config.PROJECT_NAME):
        self.log_data: Dict[str, Any] = {
            "project": project,
            "timestamp": datetime.now().isoformat(),
            "parameters": {},
            "transcript": [],
            "report": {},
        }

    def set_parameters(self, parameters: Dict[str, Any]) -> None:
        self.log_data["parameters"] = dict(parameters)

    def log_event(self, event: Dict[str, Any]) -> None:
        self.log_data["transcript"].append(dict(event))

    def log_events(self, events: List[Dict[str, Any]]) -> None:
        for event in events:
            self.log_event(event)

    def set_report(self, report: Dict[str, Any]) -> None:
        self.log_data["report"] = report

    def save(self, filepath: Optional[str] = None) -> str:
        """Сохраняет журнал в JSON-файл и возвращает путь."""
        if filepath is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filepath = f"{config.LOG_DIR}/session_{timestamp}.json"

        Path(filepath).parent.mkdir(parents=True, exist_ok=True)

        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(self.get_log_data(), f, ensure_ascii=False, indent=2)

        return filepath

    def get_log_data(self) -> Dict[str, Any]:
        """Журнал с числом событий стенограммы."""
        return {**self.log_data, "events": len(self.log_data["transcript"])}
