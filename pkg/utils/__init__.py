"""
Утилиты стенда: логирование и детерминированный генератор
"""
from utils.logger import SessionLogger, get_logger
from utils.rng import DeterministicRNG

__all__ = ["DeterministicRNG", "SessionLogger", "get_logger"]
