"""Three-party computation over XOR shares, semi-honest and cut-and-choose malicious."""

from .bits import BitString
from .circuit import Circuit, CircuitError, Gate, Op, eval_plaintext, format_circuit, make_circuit, named_circuit, parse_circuit
from .commitment import PRODUCTION, TOY, Commitment, CommitmentError, FieldParams, commit, open_commitment
from .malicious import run_malicious
from .semihonest import run_semi_honest
from .sharing import xor_reconstruct, xor_share
from .transport import Adversary, Metrics, Outcome, ProtocolAbort, RunResult

__all__ = [
    "BitString", "Circuit", "CircuitError", "Gate", "Op", "eval_plaintext", "format_circuit", "make_circuit",
    "named_circuit", "parse_circuit", "PRODUCTION", "TOY", "Commitment", "CommitmentError", "FieldParams",
    "commit", "open_commitment", "run_malicious", "run_semi_honest", "xor_reconstruct", "xor_share",
    "Adversary", "Metrics", "Outcome", "ProtocolAbort", "RunResult",
]
