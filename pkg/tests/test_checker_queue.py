import random
from fractions import Fraction

import pytest

from linmon.checker_queue import queue_check, queue_transitions
from linmon.generator import gen_history, mutate_history
from linmon.model import EMPTY, History, Operation
from linmon.oracle import oracle_check
from linmon.verdict import validate_witness


def op(i, method, value, lo, hi):
    return Operation(i, method, value, None, Fraction(lo), Fraction(hi))


def test_overlapping_enq_deq():
    h = History("queue", (op("e", "enq", 3, 1, 3), op("d", "deq", 3, 2, 4)))
    v = queue_check(h)
    assert v.linearizable
    assert validate_witness(h, v.witness) == []


def test_sequential_deq_before_enq_fails():
    h = History("queue", (op("d", "deq", 3, 1, 2), op("e", "enq", 3, 3, 4)))
    assert not queue_check(h).linearizable


def test_fifo_violation():
    h = History("queue", (
        op("e1", "enq", 1, 1, 2),
        op("e2", "enq", 2, 3, 4),
        op("d2", "deq", 2, 5, 6),
        op("d1", "deq", 1, 7, 8),
    ))
    assert not queue_check(h).linearizable
    ok = History("queue", (
        op("e1", "enq", 1, 1, 2),
        op("e2", "enq", 2, 3, 4),
        op("d1", "deq", 1, 5, 6),
        op("d2", "deq", 2, 7, 8),
    ))
    assert queue_check(ok).linearizable


def test_empty_deq_needs_an_empty_moment():
    h = History("queue", (
        op("e", "enq", 1, 1, 2),
        op("d0", "deq", EMPTY, 3, 6),
        op("d1", "deq", 1, 4, 5),
    ))
    assert queue_check(h).linearizable
    bad = History("queue", (
        op("e", "enq", 1, 1, 2),
        op("d0", "deq", EMPTY, 3, 4),
        op("d1", "deq", 1, 5, 6),
    ))
    assert not queue_check(bad).linearizable


def test_failed_peek_is_rejected_as_input():
    h = History("queue", (op("p", "peek", EMPTY, 1, 2),))
    with pytest.raises(ValueError):
        queue_check(h)


def test_transitions_from_the_seed():
    h = History("queue", (op("e", "enq", 3, 1, 3), op("d", "deq", 3, 2, 4)))
    # from the seed only tail appends apply, and the deq has no front to match
    moves = queue_transitions(h, frozenset(), frozenset(), None)
    assert moves == [(frozenset(), frozenset({"e"}), None)]
    # once the enq is pending it can register as the tracked front
    moves = queue_transitions(h, frozenset(), frozenset({"e"}), None)
    assert (frozenset({"e"}), frozenset({"e"}), 3) in moves
    # with the front tracked, the matching deq may join the tail
    moves = queue_transitions(h, frozenset({"e"}), frozenset({"e"}), 3)
    assert (frozenset({"e"}), frozenset({"e", "d"}), None) in moves


def test_transitions_reject_non_states():
    h = History("queue", (op("e", "enq", 3, 1, 2), op("d", "deq", 3, 3, 4)))
    with pytest.raises(ValueError):
        queue_transitions(h, frozenset({"d"}), frozenset({"d"}), None)


def test_agreement_with_oracle():
    rng = random.Random(31)
    for trial in range(80):
        n = rng.randint(1, 7)
        h = gen_history("queue", n, rng.randint(1, min(4, n)), f"qagree/{trial}")
        if rng.random() < 0.5:
            h = mutate_history(h, f"qagree/{trial}").history
        v = queue_check(h)
        assert v.linearizable == oracle_check(h).linearizable
        if v.linearizable:
            assert validate_witness(h, v.witness) == []


def test_rejects_other_kinds_and_empty():
    with pytest.raises(ValueError):
        queue_check(History("stack", (op("a", "push", 1, 1, 2),)))
    assert queue_check(History("queue", ())).linearizable


def test_duplicate_values_need_fifo_per_value():
    h = History("queue", (
        op("e1", "enq", 5, 1, 2),
        op("e2", "enq", 5, 3, 4),
        op("d1", "deq", 5, 5, 6),
        op("d2", "deq", 5, 7, 8),
    ))
    v = queue_check(h)
    assert v.linearizable
    assert validate_witness(h, v.witness) == []
