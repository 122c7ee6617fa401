"""
Конструкции: ограниченная достижимость, перевод 2nca в 2pca, машины с
вложенным Q_TWIN и обёртки с камешком вокруг чёрных ящиков.
"""
from constructions.compose import VirtualInputRecorder, coin_operator, register_guest
from constructions.pebble import (
    GreaterSquarePebble,
    LapinsRecognizer,
    PebbleWalk,
    build_greater_square_pebble,
    build_lapins_recognizer,
    build_siam_twins_pebble,
    siam_twins_virtual_inputs,
)
from constructions.qcca import (
    USquareRecognizer,
    build_exist_twin_qcca,
    build_usquare_qcca,
    exist_twin_virtual_inputs,
)
from constructions.reachability import Reachability, ReachabilityBound, lemma1_reachable
from constructions.transform import (
    TransformParams,
    audit_exponent,
    fan_out,
    path_weight,
    transform_nca_to_pca,
)

__all__ = [
    "GreaterSquarePebble",
    "LapinsRecognizer",
    "PebbleWalk",
    "Reachability",
    "ReachabilityBound",
    "TransformParams",
    "USquareRecognizer",
    "VirtualInputRecorder",
    "audit_exponent",
    "build_exist_twin_qcca",
    "build_greater_square_pebble",
    "build_lapins_recognizer",
    "build_siam_twins_pebble",
    "build_usquare_qcca",
    "coin_operator",
    "exist_twin_virtual_inputs",
    "fan_out",
    "lemma1_reachable",
    "path_weight",
    "register_guest",
    "siam_twins_virtual_inputs",
    "transform_nca_to_pca",
]
