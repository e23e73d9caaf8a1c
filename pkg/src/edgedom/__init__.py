"""Exact toolkit for edge domination and total edge domination.

Modules:
  graphs     -- graph/edge-set types and the edge-list text format
  oracle     -- verification predicates and exponential exact oracles
  treedp     -- linear-time four-state dynamic program on trees
  reduction  -- SAT-3 restricted -> total edge domination reduction
  families   -- constructive characterizations of extremal-ratio trees
  cli        -- command-line front end
"""

from .graphs import EdgeSet, Graph, SolveResult, INFINITY
from .errors import (
    EdgedomError,
    EncodingInfeasibleError,
    InvalidCertificateError,
    InvalidInputError,
    InvalidLabelledTreeError,
    InvalidRootError,
    NotATreeError,
    OperationInapplicableError,
    OracleTooLargeError,
)

__all__ = [
    "EdgeSet",
    "Graph",
    "SolveResult",
    "INFINITY",
    "EdgedomError",
    "EncodingInfeasibleError",
    "InvalidCertificateError",
    "InvalidInputError",
    "InvalidLabelledTreeError",
    "InvalidRootError",
    "NotATreeError",
    "OperationInapplicableError",
    "OracleTooLargeError",
]

__version__ = "0.1.0"
