"""
Интерактивные протоколы: проверяющие, доказывающие, проверка длин, сессии.
"""
from protocols.dtm import DTM, DTMConfig, scanner_dtm
from protocols.gadget import GadgetVerdict, LengthGadget, theorem3_length_gadget
from protocols.provers import (
    AcceptRusher,
    FlatlineProver,
    HonestProver,
    OffByOneProver,
    StallProver,
    StreamProver,
    WrongBranchProver,
    adversarial_provers,
    counter_history,
    honest_prover,
)
from protocols.session import SessionResult, Transcript, predicted_weights, run_session, sample_transcript
from protocols.verifiers import (
    STRATEGIES,
    ProtocolParams,
    StrategyChoice,
    corollary2_verifier,
    theorem1_verifier,
)

__all__ = [
    "DTM",
    "STRATEGIES",
    "AcceptRusher",
    "DTMConfig",
    "FlatlineProver",
    "GadgetVerdict",
    "HonestProver",
    "LengthGadget",
    "OffByOneProver",
    "ProtocolParams",
    "SessionResult",
    "StallProver",
    "StrategyChoice",
    "StreamProver",
    "Transcript",
    "WrongBranchProver",
    "adversarial_provers",
    "corollary2_verifier",
    "counter_history",
    "honest_prover",
    "predicted_weights",
    "run_session",
    "sample_transcript",
    "scanner_dtm",
    "theorem1_verifier",
    "theorem3_length_gadget",
]
