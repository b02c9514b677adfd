"""Linearizability monitoring for stack, queue and anagram-agnostic types.

Histories of timed operations are checked against sequential specifications
using engines whose cost is exponential only in the concurrency width, plus
a brute-force oracle for small inputs.
"""

from .checker_aadt import check_aadt
from .checker_queue import queue_check
from .checker_stack import stack_check
from .frontier import build_frontier_graph, enumerate_partition_states
from .generator import gen_history, mutate_history
from .model import (
    EMPTY,
    History,
    HistoryError,
    Operation,
    concurrency_width,
    parse_history,
    serialize_history,
    validate_history,
)
from .oracle import oracle_check
from .verdict import Verdict, validate_witness

__all__ = [
    "EMPTY",
    "History",
    "HistoryError",
    "Operation",
    "Verdict",
    "build_frontier_graph",
    "check_aadt",
    "concurrency_width",
    "enumerate_partition_states",
    "gen_history",
    "mutate_history",
    "oracle_check",
    "parse_history",
    "queue_check",
    "serialize_history",
    "stack_check",
    "validate_history",
    "validate_witness",
]

__version__ = "0.1.0"
