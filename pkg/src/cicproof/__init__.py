"""cicproof: off-chain execution of heavy contract workloads with succinct,
broker-settled correctness proofs.

A client posts a job with an escrowed fee; a worker executes the computation
off-chain and produces a constant-size QAP-based proof; the broker state
machine verifies the proof and pays the worker or slashes its collateral.
"""

from .field import DEFAULT_MODULUS, FieldElement
from .poly import Polynomial

__version__ = "0.1.0"

__all__ = ["DEFAULT_MODULUS", "FieldElement", "Polynomial", "__version__"]
