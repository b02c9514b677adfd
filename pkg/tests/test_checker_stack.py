import random
from fractions import Fraction

import pytest

from linmon.checker_stack import (
    TEPS,
    build_production_table,
    closure,
    embed_failed,
    mirror_close,
    nt_product,
    one_step_matrix,
    preprocess,
    stack_check,
    terminal_nonterminals,
)
from linmon.frontier import build_frontier_graph
from linmon.generator import gen_history, mutate_history
from linmon.model import BOTTOM, EMPTY, History, Operation, validate_history
from linmon.oracle import oracle_check
from linmon.verdict import validate_witness


def op(i, method, value, lo, hi):
    return Operation(i, method, value, None, Fraction(lo), Fraction(hi))


def table_cells(t):
    return {pair: frozenset(cell) for pair, cell in t.cells.items() if cell}


def test_terminals_and_product():
    assert terminal_nonterminals(op("x", "push", 3, 0, 1)) == {("Push", 3)}
    assert terminal_nonterminals(op("x", "pop", 3, 0, 1)) == {("T", 3)}
    assert terminal_nonterminals(op("x", "peek", 3, 0, 1)) == {("Peek", 3)}
    assert nt_product({("Push", 1)}, {("T", 1)}) == {TEPS}
    assert nt_product({("Peek", 1)}, {("T", 1)}) == {("T", 1)}
    assert nt_product({TEPS}, {("T", 2)}) == {("T", 2)}
    assert nt_product({("Push", 1)}, {("T", 2)}) == set()
    assert nt_product({("Push", 1)}, {TEPS}) == set()


def test_embed_failed_rewrites_and_prepends():
    h = History("stack", (op("a", "pop", EMPTY, 1, 2), op("b", "push", 1, 3, 4)))
    e = embed_failed(h)
    assert e.n == 3
    first = min(e.ops, key=lambda o: o.inv)
    assert first.method == "push" and first.value is BOTTOM
    assert first.res < min(o.inv for o in e.ops if o is not first)
    rewritten = e.by_id()["a"]
    assert rewritten.method == "peek" and rewritten.value is BOTTOM


def test_mirror_close_balances_pushes_and_pops():
    h = History("stack", (op("a", "push", 1, 1, 2),))
    m = mirror_close(h)
    assert m.n == 2
    methods = sorted(o.method for o in m.ops)
    assert methods == ["pop", "push"]
    pushes = [o for o in m.ops if o.method == "push"]
    pops = [o for o in m.ops if o.method == "pop"]
    assert pushes[0].res < pops[0].inv
    assert min(o.inv for o in m.ops) >= 0
    assert validate_history(History("stack", tuple(
        o for o in m.ops if o.value is not BOTTOM))) == []


def test_single_overlapping_pair():
    h = History("stack", (op("u", "push", 1, 1, 4), op("o", "pop", 1, 2, 3)))
    v = stack_check(h)
    assert v.linearizable
    assert validate_witness(h, v.witness) == []


def test_lifo_violation_is_caught():
    h = History("stack", (
        op("u1", "push", 1, 1, 2),
        op("u2", "push", 2, 3, 4),
        op("o1", "pop", 1, 5, 6),
        op("o2", "pop", 2, 7, 8),
    ))
    assert not stack_check(h).linearizable
    ok = History("stack", (
        op("u1", "push", 1, 1, 2),
        op("u2", "push", 2, 3, 4),
        op("o2", "pop", 2, 5, 6),
        op("o1", "pop", 1, 7, 8),
    ))
    assert ok and stack_check(ok).linearizable


def test_unmatched_and_failed_ops():
    # push with no pop, and a failed pop that must precede it
    h = History("stack", (op("p", "pop", EMPTY, 1, 2), op("u", "push", 7, 3, 4)))
    assert stack_check(h).linearizable
    h = History("stack", (op("u", "push", 7, 1, 2), op("p", "pop", EMPTY, 3, 4)))
    assert not stack_check(h).linearizable


def test_closure_equals_dp_table():
    rng = random.Random(23)
    for trial in range(30):
        n = rng.randint(1, 6)
        h = gen_history("stack", n, rng.randint(1, min(3, n)), f"clo/{trial}")
        if rng.random() < 0.5:
            h = mutate_history(h, f"clo/{trial}").history
        pre = preprocess(h)
        assert table_cells(build_production_table(pre)) == \
            table_cells(closure(one_step_matrix(pre)))


def test_agreement_with_oracle():
    rng = random.Random(29)
    for trial in range(80):
        n = rng.randint(1, 7)
        h = gen_history("stack", n, rng.randint(1, min(4, n)), f"sagree/{trial}")
        if rng.random() < 0.5:
            h = mutate_history(h, f"sagree/{trial}").history
        v = stack_check(h)
        assert v.linearizable == oracle_check(h).linearizable
        if v.linearizable:
            assert validate_witness(h, v.witness) == []


def test_witness_survives_awkward_user_ids():
    # ids resembling the sentinel and mirror naming must not confuse replay
    h = History("stack", (op("⊥", "push", 1, 1, 4), op("a~", "pop", 1, 2, 3)))
    v = stack_check(h)
    assert v.linearizable
    assert validate_witness(h, v.witness) == []


def test_rejects_other_kinds_and_empty():
    with pytest.raises(ValueError):
        stack_check(History("queue", (op("a", "enq", 1, 1, 2),)))
    assert stack_check(History("stack", ())).linearizable


def test_acceptance_cell_is_teps():
    h = History("stack", (op("u", "push", 1, 1, 4), op("o", "pop", 1, 2, 3)))
    pre = preprocess(h)
    t = build_production_table(pre)
    g = t.graph
    assert TEPS in t.get(g.empty_state, g.full_state)
    leaves = t.derivation_ops(g.empty_state, g.full_state, TEPS)
    assert len(leaves) == pre.n
    # each operation appears exactly once in the derivation
    assert sorted(g.ops[i].id for i in leaves) == sorted(o.id for o in pre.ops)
