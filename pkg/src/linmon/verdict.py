"""Verdicts and witness handling shared by all checking engines."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .adt_models import abstract, sequence_member


@dataclass
class Verdict:
    linearizable: bool
    #: sequence of (operation id, assigned timestamp) for positive verdicts
    witness: tuple = None
    stats: dict = field(default_factory=dict)


def assign_witness_times(ops_in_order):
    """Timestamps strictly inside each interval, strictly increasing.

    Valid whenever every prefix of the order is a partition state.  Each
    point is chosen inside (running max of invocation times, running min of
    later response times); both bounds are monotone, so midpoints work.
    """
    n = len(ops_in_order)
    if n == 0:
        return ()
    suffix_min_res = [None] * n
    running = None
    for i in range(n - 1, -1, -1):
        r = ops_in_order[i].res
        running = r if running is None or r < running else running
        suffix_min_res[i] = running
    times = []
    lo = None
    prev = None
    for i, op in enumerate(ops_in_order):
        lo = op.inv if lo is None or op.inv > lo else lo
        left = lo if prev is None or lo > prev else prev
        hi = suffix_min_res[i]
        assert left < hi, "order is not interval-consistent"
        t = (left + hi) / 2
        times.append((op.id, Fraction(t)))
        prev = t
    return tuple(times)


def validate_witness(h, witness) -> list:
    """Violation messages for a claimed witness; empty list means valid."""
    problems = []
    ops = h.by_id()
    if len(witness) != h.n:
        problems.append(f"witness covers {len(witness)} of {h.n} operations")
        return problems
    prev = None
    ordered = []
    for opid, t in witness:
        op = ops.get(opid)
        if op is None:
            problems.append(f"unknown operation id {opid!r}")
            continue
        ordered.append(op)
        if not (op.inv < t < op.res):
            problems.append(f"timestamp outside interval: operation {opid!r}")
        if prev is not None and not t > prev:
            problems.append(f"timestamps not strictly increasing at {opid!r}")
        prev = t
    if len(ordered) == h.n and not sequence_member(h.kind, [abstract(o) for o in ordered]):
        problems.append("witness sequence is not a legal run")
    return problems
