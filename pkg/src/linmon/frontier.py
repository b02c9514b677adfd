"""Partition states and the frontier graph.

A subset S of a history's operations is a partition state when
max inv over S < min res over the complement (strictly; max of the empty set
is -inf, min of the empty set is +inf).  Equivalently, S is a prefix of some
interval-consistent total order.  The strict reading is deliberate: allowing a
witness time to coincide with an endpoint would admit sets that are prefixes
of no linearization once endpoints tie (a=[1,2], b=[2,3] would admit {b}).

States are stored in a canonical compact form.  For a state S let m1 be the
minimum response time over the complement.  Every member of S either responds
before m1 or is one of the at-most-k operations whose interval straddles the
gap just below m1.  So S is determined by (index of m1, bitmask over the
straddling operations), which keeps each state O(1)-sized and makes
deduplication exact.  All states are reachable from the empty set by
single-operation extensions, so enumeration is a breadth-first closure.
"""

from __future__ import annotations

import math
from bisect import bisect_right

from .model import History

_INF = math.inf


def is_partition_state(h: History, ids) -> bool:
    """Direct check of the strict partition-state condition."""
    known = h.by_id()
    ids = set(ids)
    for i in ids:
        if i not in known:
            raise KeyError(f"unknown operation id {i!r}")
    max_inv = max((known[i].inv for i in ids), default=-_INF)
    min_res = min((o.res for o in h.ops if o.id not in ids), default=_INF)
    return max_inv < min_res


class FrontierGraph:
    """Frontier graph over the partition states of one history.

    Nodes are partition states, edges are single-operation extensions.  The
    graph is a DAG graded by state size, with the empty set as unique source
    and the full history as unique sink.
    """

    def __init__(self, h: History):
        self.history = h
        ops = sorted(h.ops, key=lambda o: o.id)
        self.ops = tuple(ops)
        n = len(ops)
        self.n = n
        inv = [o.inv for o in ops]
        res = [o.res for o in ops]
        self._inv = inv
        self._res = res

        pts = sorted({t for o in ops for t in (o.inv, o.res)})
        self._endpoints = pts
        m = len(pts)
        self._m = m
        self._endpoint_index = {t: j for j, t in enumerate(pts)}

        # Gap j sits strictly between pts[j-1] and pts[j]; gap 0 precedes all
        # endpoints and gap m follows them.
        free = [[] for _ in range(m + 1)]
        req_count = [0] * (m + 1)
        res_sorted = sorted(res)
        for j in range(1, m + 1):
            # ops that have responded strictly before any time inside gap j,
            # i.e. with res <= pts[j-1]
            req_count[j] = bisect_right(res_sorted, pts[j - 1])
        self._req_count = req_count
        for idx in range(n):
            a, b = inv[idx], res[idx]
            ja = self._endpoint_index[a]
            jb = self._endpoint_index[b]
            # op straddles every gap j with inv <= pts[j-1] and res >= pts[j]
            for j in range(ja + 1, jb + 1):
                free[j].append(idx)
        self._free = [tuple(f) for f in free]
        self._freepos = [{o: i for i, o in enumerate(f)} for f in self._free]

        # all time comparisons below happen between endpoints, so integer
        # ranks replace Fractions on the hot path; rank m plays +inf
        self._res_rank = [self._endpoint_index[r] for r in res]

        # fmr[j]: rank of the minimum response time among operations invoked
        # at or after pts[j]; m past the last endpoint.
        fmr = [m] * (m + 1)
        order = sorted(range(n), key=lambda i: inv[i], reverse=True)
        running = m
        pos = 0
        for j in range(m - 1, -1, -1):
            while pos < n and inv[order[pos]] >= pts[j]:
                r = self._res_rank[order[pos]]
                if r < running:
                    running = r
                pos += 1
            fmr[j] = running
        self._fmr = fmr

        self._index = {}
        self._gap = []
        self._mask = []
        self._build()

    # -- canonicalization ---------------------------------------------------

    def _canonical(self, j0, chosen):
        """Canonical (gap, mask) key for required(j0) | chosen."""
        j = self._fmr[j0]
        rank = self._res_rank
        for o in self._free[j0]:
            if o not in chosen and rank[o] < j:
                j = rank[o]
        if j == self._m:
            return (self._m, 0)
        mask = 0
        pos = self._freepos[j]
        for o in chosen:
            p = pos.get(o)
            if p is not None:
                mask |= 1 << p
        return (j, mask)

    def _intern(self, key):
        idx = self._index.get(key)
        if idx is None:
            idx = len(self._gap)
            self._index[key] = idx
            self._gap.append(key[0])
            self._mask.append(key[1])
        return idx

    def _build(self):
        start = self._intern(self._canonical(0, frozenset()))
        self.empty_state = start
        frontier = [start]
        seen = {start}
        full = None
        while frontier:
            nxt = []
            for i in frontier:
                if self._gap[i] == self._m and self._mask[i] == 0:
                    full = i
                for _, j in self.successors(i):
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        assert full is not None
        self.full_state = full

    # -- queries ------------------------------------------------------------

    @property
    def n_states(self):
        return len(self._gap)

    def state_size(self, i) -> int:
        return self._req_count[self._gap[i]] + self._mask[i].bit_count()

    def successors(self, i):
        """Edges out of state i as (operation index, successor state index)."""
        j = self._gap[i]
        mask = self._mask[i]
        free = self._free[j]
        if not free and j == self._m:
            return []
        chosen = {free[p] for p in range(len(free)) if mask >> p & 1}
        out = []
        for p, o in enumerate(free):
            if mask >> p & 1:
                continue
            key = self._canonical(j, chosen | {o})
            out.append((o, self._intern(key)))
        return out

    def members(self, i):
        """The state's operations as a frozenset of ids."""
        j = self._gap[i]
        mask = self._mask[i]
        rank = self._res_rank
        ids = {self.ops[idx].id for idx in range(self.n) if rank[idx] < j}
        for p, o in enumerate(self._free[j]):
            if mask >> p & 1:
                ids.add(self.ops[o].id)
        return frozenset(ids)

    def contains(self, i, op_idx) -> bool:
        j = self._gap[i]
        if self._res_rank[op_idx] < j:
            return True
        p = self._freepos[j].get(op_idx)
        return p is not None and self._mask[i] >> p & 1

    def edge_count(self) -> int:
        return sum(len(self.successors(i)) for i in range(self.n_states))


def build_frontier_graph(h: History) -> FrontierGraph:
    return FrontierGraph(h)


def enumerate_partition_states(h: History):
    """All partition states of h, as frozensets of operation ids."""
    g = FrontierGraph(h)
    return {g.members(i) for i in range(g.n_states)}


def successors(g: FrontierGraph, members_set):
    """Edges out of a state given as a frozenset of ids."""
    lookup = {g.members(i): i for i in range(g.n_states)}
    try:
        i = lookup[frozenset(members_set)]
    except KeyError:
        raise KeyError(f"not a state of this graph: {sorted(members_set)}")
    return sorted(
        ((g.ops[o], g.members(j)) for o, j in g.successors(i)),
        key=lambda pair: pair[0].id,
    )


def to_dot(g: FrontierGraph) -> str:
    """DOT rendering; node label is the sorted id list, edge label the op."""
    lines = ["digraph frontier {"]
    order = sorted(range(g.n_states), key=lambda i: (g.state_size(i), sorted(g.members(i))))
    names = {}
    for rank, i in enumerate(order):
        names[i] = f"s{rank}"
        label = "{" + ",".join(sorted(g.members(i))) + "}"
        lines.append(f'  s{rank} [label="{label}"];')
    for i in order:
        for o, j in sorted(g.successors(i), key=lambda e: g.ops[e[0]].id):
            lines.append(f'  {names[i]} -> {names[j]} [label="{g.ops[o].id}"];')
    lines.append("}")
    return "\n".join(lines)
