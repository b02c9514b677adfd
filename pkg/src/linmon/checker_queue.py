"""Queue engine: forward dynamic programming over split-sequence states.

A queue run is generated left-to-right as a pair of sequences (a front part
and a tail part) plus at most one tracked value: the value currently sitting
at the queue's front.  Reinterpreted over partition states, an entry
M(S1, S2) holds every tracked value reachable when S1 is the set of front
operations consumed so far and S2 ∖ S1 the pending tail.  Transitions either
move an operation from the pending tail into the front part (front
registration and tail chasing) or append a fresh operation to the tail
(peeks/dequeues of the tracked front, empty dequeues, unmatched insertions).
The history is linearizable once any entry whose second coordinate is the
full history becomes reachable.
"""

from __future__ import annotations

from heapq import heappop, heappush

from .frontier import build_frontier_graph
from .model import EMPTY, History
from .verdict import Verdict, assign_witness_times

# tracked-slot marker for "no registered front value"
NO_FRONT = None


def queue_transitions(h: History, s1_ids, s2_ids, tracked):
    """All one-step targets from an explicit (state, state, value) triple.

    Test/debug surface; the DP below enumerates the same moves from graph
    indices.  Returns (s3_ids, s4_ids, tracked') triples, sorted.
    """
    g = build_frontier_graph(h)
    by_members = {g.members(i): i for i in range(g.n_states)}
    s1 = frozenset(s1_ids)
    s2 = frozenset(s2_ids)
    if s1 not in by_members or s2 not in by_members or not s1 <= s2:
        raise ValueError("not a valid partition-state pair")
    i, j = by_members[s1], by_members[s2]
    succ = [g.successors(x) for x in range(g.n_states)]
    out = []
    for (i2, j2, v2, _op, _coord) in _moves(g, succ, i, j, tracked):
        out.append((g.members(i2), g.members(j2), v2))
    return sorted(out, key=lambda t: (sorted(t[0]), sorted(t[1]), repr(t[2])))


def queue_check(h: History) -> Verdict:
    if h.kind != "queue":
        raise ValueError(f"queue engine cannot check kind {h.kind!r}")
    for o in h.ops:
        if o.method == "peek" and o.value is EMPTY:
            raise ValueError(
                f"failed peeks are unsupported on queues: operation {o.id!r}"
            )
    g = build_frontier_graph(h)
    stats = {"states": g.n_states, "entries": 0, "transitions": 0}
    if h.n == 0:
        return Verdict(True, witness=(), stats=stats)

    size = [g.state_size(i) for i in range(g.n_states)]
    succ = [g.successors(i) for i in range(g.n_states)]

    # entries[(i, j)]: tracked value -> backpointer
    # backpointer: (prev_i, prev_j, prev_v, op_idx, coord) or None for the seed
    entries = {}
    buckets = {}
    heap = []

    def record(i, j, v, bp):
        cell = entries.get((i, j))
        if cell is None:
            cell = entries[(i, j)] = {}
            key = (size[j], size[i])
            bucket = buckets.get(key)
            if bucket is None:
                buckets[key] = bucket = []
                heappush(heap, key)
            bucket.append((i, j))
        if v in cell:
            return False
        cell[v] = bp
        return True

    start = g.empty_state
    record(start, start, NO_FRONT, None)
    accept = None
    transitions = 0

    while heap and accept is None:
        pairs = buckets.pop(heappop(heap))
        for (i, j) in pairs:
            cell = entries[(i, j)]
            for v in list(cell):
                for (i2, j2, v2, op_idx, coord) in _moves(g, succ, i, j, v):
                    transitions += 1
                    if record(i2, j2, v2, (i, j, v, op_idx, coord)):
                        if j2 == g.full_state and accept is None:
                            accept = (i2, j2, v2)
            if accept:
                break

    stats["entries"] = len(entries)
    stats["transitions"] = transitions
    if accept is None:
        return Verdict(False, stats=stats)

    # replay the backpointer chain: front moves consume the pending tail in
    # arrival order, tail appends extend it
    chain = []
    cur = accept
    while True:
        bp = entries[(cur[0], cur[1])][cur[2]]
        if bp is None:
            break
        chain.append((bp[3], bp[4]))
        cur = (bp[0], bp[1], bp[2])
    chain.reverse()
    front, tail = [], []
    for op_idx, coord in chain:
        if coord == "tail":
            tail.append(op_idx)
        else:
            tail.remove(op_idx)
            front.append(op_idx)
    ordered = [g.ops[t] for t in front + tail]
    return Verdict(True, witness=assign_witness_times(ordered), stats=stats)


def _moves(g, succ, i, j, v):
    """Yield (i', j', v', op_idx, coord) for every applicable rule."""
    ops = g.ops
    for op_idx, i2 in succ[i]:
        if not g.contains(j, op_idx):
            continue
        op = ops[op_idx]
        if op.method == "enq":
            if v is NO_FRONT:
                yield (i2, j, op.value, op_idx, "front")
        else:
            yield (i2, j, v, op_idx, "front")
    for op_idx, j2 in succ[j]:
        if g.contains(i, op_idx):
            continue
        op = ops[op_idx]
        if op.method == "enq":
            yield (i, j2, v, op_idx, "tail")
        elif op.method == "peek":
            if v is not NO_FRONT and op.value == v:
                yield (i, j2, v, op_idx, "tail")
        else:  # deq
            if op.value is EMPTY:
                if v is NO_FRONT and i == j:
                    yield (i, j2, NO_FRONT, op_idx, "tail")
            elif v is not NO_FRONT and op.value == v:
                yield (i, j2, NO_FRONT, op_idx, "tail")
