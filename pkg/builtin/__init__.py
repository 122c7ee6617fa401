"""
Встроенные машины, языки и распознаватели-«чёрные ящики».
"""
from builtin.blackbox import BlackBoxRecognizer, blackbox_recognizer
from builtin.languages import ORACLES, canonical_language, membership
from builtin.qtwin import encode, load_qtwin, qtwin_operators, qtwin_spec
from builtin.samples import SAMPLES, load_anbn_2dca

__all__ = [
    "ORACLES",
    "SAMPLES",
    "BlackBoxRecognizer",
    "blackbox_recognizer",
    "canonical_language",
    "encode",
    "load_anbn_2dca",
    "load_qtwin",
    "membership",
    "qtwin_operators",
    "qtwin_spec",
]
