"""Memoized depth-first search for anagram-agnostic data types.

Walks the frontier graph from the empty state toward the full history,
maintaining one simulated object that is updated on descent and rolled back
on backtrack.  Because any two legal linearizations of the same partition
state leave the object in the same abstract state, a state whose subtree has
been exhausted once can never succeed later, so each state is expanded at
most once.
"""

from __future__ import annotations

from .adt_models import is_aadt, new_object
from .frontier import build_frontier_graph
from .model import History
from .verdict import Verdict, assign_witness_times


def check_aadt(h: History, memoize=True) -> Verdict:
    if not is_aadt(h.kind):
        raise ValueError(f"kind {h.kind!r} is not anagram-agnostic")
    g = build_frontier_graph(h)
    stats = {"states": g.n_states, "visited": 0}
    if h.n == 0:
        return Verdict(True, witness=(), stats=stats)

    obj = new_object(h.kind)
    visited = bytearray(g.n_states) if memoize else None
    expanded = 0
    path = []

    start = g.empty_state
    frames = [[start, iter(g.successors(start))]]
    if memoize:
        visited[start] = 1
    expanded += 1

    found = False
    while frames:
        _, succ_iter = frames[-1]
        advanced = False
        for op_idx, j in succ_iter:
            if memoize and visited[j]:
                continue
            op = g.ops[op_idx]
            if not obj.apply(op.method, op.value, op.aux):
                continue
            if memoize:
                visited[j] = 1
            expanded += 1
            path.append(op)
            if j == g.full_state:
                found = True
                break
            frames.append([j, iter(g.successors(j))])
            advanced = True
            break
        if found:
            break
        if advanced:
            continue
        frames.pop()
        if frames:
            obj.undo()
            path.pop()

    stats["visited"] = expanded
    if found:
        return Verdict(True, witness=assign_witness_times(path), stats=stats)
    return Verdict(False, stats=stats)
