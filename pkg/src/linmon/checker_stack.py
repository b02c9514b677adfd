"""Stack engine: grammar-table dynamic programming over the frontier graph.

A stack run that starts and ends empty and never empties in between is
generated by a small value-parameterized grammar in Chomsky normal form:

    T(eps) -> Push(v) T(v)         push and track the new top
    T(v)   -> Peek(v) T(v)         peek the tracked top
    T(v)   -> T(eps) T(v)          a nested balanced block, then continue
    T(v)   -> pop(v)               pop the tracked top
    Push(v) -> push(v)
    Peek(v) -> peek(v)

Two input transforms reduce arbitrary stack histories to that shape: failed
(empty-valued) operations become peeks of a sentinel value pushed before
everything else, and non-well-matched histories are closed by mirroring
every operation (push <-> pop) at negated times.  The recognition table is
indexed by pairs of partition states and filled CYK-style in order of
increasing size difference.
"""

from __future__ import annotations

from fractions import Fraction

from .frontier import build_frontier_graph
from .model import BOTTOM, EMPTY, History, Operation
from .verdict import Verdict, assign_witness_times

TEPS = ("T", None)

BOTTOM_ID = "⊥"
MIRROR_SUFFIX = "~"


def _shift(h: History, delta: Fraction) -> History:
    ops = tuple(
        Operation(o.id, o.method, o.value, o.aux, o.inv + delta, o.res + delta)
        for o in h.ops
    )
    return History(kind=h.kind, ops=ops)


def embed_failed(h: History) -> History:
    """Rewrite empty-valued operations as peeks of a fresh sentinel value.

    A push of the sentinel is prepended before every other operation, so any
    legal linearization must open with it; applied unconditionally so the
    grammar's mandatory outer push/pop pair always exists.
    """
    if h.kind != "stack":
        raise ValueError("embed_failed applies to stack histories")
    t_min = min(o.inv for o in h.ops)
    if t_min < 2:
        h = _shift(h, 2 - t_min)
        t_min = Fraction(2)
    ops = []
    for o in h.ops:
        if o.value is EMPTY:
            ops.append(Operation(o.id, "peek", BOTTOM, o.aux, o.inv, o.res))
        else:
            ops.append(o)
    bottom = Operation(BOTTOM_ID, "push", BOTTOM, None, t_min - 2, t_min - 1)
    return History(kind="stack", ops=(bottom, *ops))


_MIRROR_METHOD = {"push": "pop", "pop": "push", "peek": "peek"}


def mirror_close(h: History) -> History:
    """Append a time-reversed copy so every pushed value is eventually popped."""
    if h.kind != "stack":
        raise ValueError("mirror_close applies to stack histories")
    t_max = max(o.res for o in h.ops)
    shifted = _shift(h, -(t_max + 1))  # all times now negative
    mirrored = tuple(
        Operation(o.id + MIRROR_SUFFIX, _MIRROR_METHOD[o.method], o.value, o.aux,
                  -o.res, -o.inv)
        for o in shifted.ops
    )
    combined = shifted.ops + mirrored
    t_min = min(o.inv for o in combined)
    delta = -t_min
    ops = tuple(
        Operation(o.id, o.method, o.value, o.aux, o.inv + delta, o.res + delta)
        for o in combined
    )
    return History(kind="stack", ops=ops)


def terminal_nonterminals(op: Operation):
    """Non-terminals that directly produce this single operation."""
    if op.method == "pop":
        return {("T", op.value)}
    if op.method == "push":
        return {("Push", op.value)}
    return {("Peek", op.value)}


def nt_product(A, B):
    """All left-hand sides P with P -> L R, L in A, R in B."""
    out = set()
    has_teps = TEPS in A
    for tag, v in B:
        if tag != "T" or v is None:
            continue
        if ("Push", v) in A:
            out.add(TEPS)
        if ("Peek", v) in A:
            out.add(("T", v))
        if has_teps:
            out.add(("T", v))
    return out


class ProductionTable:
    """Recognition table over ordered pairs of partition states.

    Sparse: only pairs connected by a chain of frontier edges ever hold a
    non-terminal.  Backpointers record, per (pair, non-terminal), either the
    leaf operation or the first split found.
    """

    def __init__(self, graph):
        self.graph = graph
        self.cells = {}  # (i, j) -> set of non-terminals
        self.back = {}  # (i, j, nt) -> ("leaf", op_idx) | ("split", m, L, R)

    def get(self, i, j):
        return self.cells.get((i, j), frozenset())

    def add(self, i, j, nt, bp):
        cell = self.cells.setdefault((i, j), set())
        if nt in cell:
            return False
        cell.add(nt)
        self.back[(i, j, nt)] = bp
        return True

    def derivation_ops(self, i, j, nt):
        """In-order leaf sequence of the recorded derivation."""
        bp = self.back[(i, j, nt)]
        if bp[0] == "leaf":
            return [bp[1]]
        _, m, left, right = bp
        return self.derivation_ops(i, m, left) + self.derivation_ops(m, j, right)


def one_step_matrix(h: History) -> ProductionTable:
    """Table with only the single-operation (edge) entries populated."""
    g = build_frontier_graph(h)
    table = ProductionTable(g)
    for i in range(g.n_states):
        for op_idx, j in g.successors(i):
            for nt in terminal_nonterminals(g.ops[op_idx]):
                table.add(i, j, nt, ("leaf", op_idx))
    return table


def closure(table: ProductionTable) -> ProductionTable:
    """Naive least fixed point of M := M | (M x M) under nt_product."""
    out = ProductionTable(table.graph)
    for (i, j), cell in table.cells.items():
        for nt in cell:
            out.add(i, j, nt, table.back[(i, j, nt)])
    changed = True
    while changed:
        changed = False
        pairs = list(out.cells.items())
        index_by_left = {}
        for (i, m), cell in pairs:
            index_by_left.setdefault(m, []).append((i, cell))
        for (m, j), right_cell in pairs:
            for i, left_cell in index_by_left.get(m, []):
                for nt in nt_product(left_cell, right_cell):
                    if (i, j) not in out.cells or nt not in out.cells[(i, j)]:
                        left, right = _find_split(left_cell, right_cell, nt)
                        if out.add(i, j, nt, ("split", m, left, right)):
                            changed = True
    return out


def _find_split(left_cell, right_cell, nt):
    for tag, v in right_cell:
        if tag != "T" or v is None:
            continue
        if nt == TEPS and ("Push", v) in left_cell:
            return ("Push", v), ("T", v)
        if nt == ("T", v) and ("Peek", v) in left_cell:
            return ("Peek", v), ("T", v)
        if nt == ("T", v) and TEPS in left_cell:
            return TEPS, ("T", v)
    raise AssertionError("no production justifies this symbol")


def build_production_table(h: History) -> ProductionTable:
    """Full recognition table, filled in nondecreasing size difference."""
    g = build_frontier_graph(h)
    table = ProductionTable(g)
    size = [g.state_size(i) for i in range(g.n_states)]
    # in_by[m][d]: states i with a nonempty (i, m) cell at size difference d
    in_by = [dict() for _ in range(g.n_states)]
    out_by = [dict() for _ in range(g.n_states)]

    def register(i, j):
        d = size[j] - size[i]
        out_by[i].setdefault(d, []).append(j)
        in_by[j].setdefault(d, []).append(i)

    for i in range(g.n_states):
        for op_idx, j in g.successors(i):
            fresh = (i, j) not in table.cells
            for nt in terminal_nonterminals(g.ops[op_idx]):
                table.add(i, j, nt, ("leaf", op_idx))
            if fresh:
                register(i, j)

    max_d = size[g.full_state]
    for d in range(2, max_d + 1):
        created = []
        for m in range(g.n_states):
            for d1, lefts in in_by[m].items():
                d2 = d - d1
                if d2 < 1:
                    continue
                rights = out_by[m].get(d2)
                if not rights:
                    continue
                for i in lefts:
                    left_cell = table.cells[(i, m)]
                    for j in rights:
                        right_cell = table.cells[(m, j)]
                        produced = nt_product(left_cell, right_cell)
                        if not produced:
                            continue
                        fresh = (i, j) not in table.cells
                        for nt in produced:
                            if (i, j, nt) not in table.back:
                                left, right = _find_split(left_cell, right_cell, nt)
                                table.add(i, j, nt, ("split", m, left, right))
                        if fresh:
                            created.append((i, j))
        for i, j in created:
            register(i, j)
    return table


def preprocess(h: History) -> History:
    return mirror_close(embed_failed(h))


def stack_check(h: History) -> Verdict:
    if h.kind != "stack":
        raise ValueError(f"stack engine cannot check kind {h.kind!r}")
    if h.n == 0:
        return Verdict(True, witness=(), stats={"states": 1})
    # positional ids keep user ids from colliding with mirror/sentinel ids
    originals = sorted(h.ops, key=lambda o: o.id)
    renamed = History("stack", tuple(
        Operation(str(t), o.method, o.value, o.aux, o.inv, o.res)
        for t, o in enumerate(originals)
    ))
    pre = preprocess(renamed)
    table = build_production_table(pre)
    g = table.graph
    stats = {"states": g.n_states, "preprocessed_n": pre.n}
    i0, j0 = g.empty_state, g.full_state
    if TEPS not in table.get(i0, j0):
        return Verdict(False, stats=stats)
    leaf_ops = table.derivation_ops(i0, j0, TEPS)
    ordered = []
    for op_idx in leaf_ops:
        opid = g.ops[op_idx].id
        if opid.isdigit():
            ordered.append(originals[int(opid)])
    assert len(ordered) == h.n
    return Verdict(True, witness=assign_witness_times(ordered), stats=stats)
