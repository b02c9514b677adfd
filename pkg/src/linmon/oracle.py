"""Brute-force ground truth for small histories.

Enumerates interval-consistent total orders directly from the definition
(an operation may come next iff its invocation precedes every other
unselected operation's response, strictly) and tests each against the
sequential model.  Deliberately shares no code with the frontier graph or
the DP engines.
"""

from __future__ import annotations

from .adt_models import new_object
from .model import History
from .verdict import Verdict, assign_witness_times

DEFAULT_CAP = 10


class CapExceeded(ValueError):
    pass


def _check_cap(h, cap):
    if h.n > cap:
        raise CapExceeded(f"history has {h.n} operations, oracle cap is {cap}")


def enumerate_linearizations(h: History, cap=DEFAULT_CAP):
    """Yield every interval-consistent total order as a tuple of operations."""
    _check_cap(h, cap)
    ops = sorted(h.ops, key=lambda o: o.id)
    n = len(ops)
    chosen = []
    used = [False] * n

    def extend():
        if len(chosen) == n:
            yield tuple(chosen)
            return
        for i, o in enumerate(ops):
            if used[i]:
                continue
            if all(used[j] or j == i or o.inv < ops[j].res for j in range(n)):
                used[i] = True
                chosen.append(o)
                yield from extend()
                chosen.pop()
                used[i] = False

    yield from extend()


def oracle_check(h: History, cap=DEFAULT_CAP) -> Verdict:
    """Search all interval-consistent orders for a legal one.

    Prunes illegal prefixes with the simulated object; the set of orders
    explored is exactly what enumerate_linearizations yields.
    """
    _check_cap(h, cap)
    ops = sorted(h.ops, key=lambda o: o.id)
    n = len(ops)
    obj = new_object(h.kind)
    chosen = []
    used = [False] * n

    def search():
        if len(chosen) == n:
            return True
        for i, o in enumerate(ops):
            if used[i]:
                continue
            if not all(used[j] or j == i or o.inv < ops[j].res for j in range(n)):
                continue
            if not obj.apply(o.method, o.value, o.aux):
                continue
            used[i] = True
            chosen.append(o)
            if search():
                return True
            chosen.pop()
            used[i] = False
            obj.undo()
        return False

    if search():
        return Verdict(True, witness=assign_witness_times(chosen))
    return Verdict(False)
