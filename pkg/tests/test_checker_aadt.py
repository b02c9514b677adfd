import random
from fractions import Fraction

import pytest

from linmon.checker_aadt import check_aadt
from linmon.generator import gen_history, mutate_history
from linmon.model import AADT_KINDS, EMPTY, History, Operation
from linmon.oracle import oracle_check
from linmon.verdict import validate_witness


def op(i, method, value, lo, hi, aux=None):
    return Operation(i, method, value, aux, Fraction(lo), Fraction(hi))


def test_rejects_non_aadt_kinds():
    h = History("queue", (op("a", "enq", 1, 1, 2),))
    with pytest.raises(ValueError):
        check_aadt(h)


def test_empty_history():
    v = check_aadt(History("counter", ()))
    assert v.linearizable and v.witness == ()


def test_overlapping_priority_queue_example():
    h = History("priority-queue", (
        op("a", "enq", 1, 1, 3),
        op("b", "enq", 2, 2, 4),
        op("c", "deq", 2, 5, 6),
        op("d", "deq", 1, 5, 6),
    ))
    v = check_aadt(h)
    assert v.linearizable
    assert validate_witness(h, v.witness) == []


def test_needs_reordering_within_overlap():
    # deq(2) overlaps both enqs; only the order enq1 enq2 deq2 works... and
    # only because deq must see the max
    h = History("priority-queue", (
        op("a", "enq", 1, 1, 2),
        op("b", "enq", 2, 3, 6),
        op("c", "deq", 2, 4, 5),
    ))
    assert check_aadt(h).linearizable
    bad = History("priority-queue", (
        op("a", "enq", 1, 1, 2),
        op("b", "enq", 2, 3, 4),
        op("c", "deq", 1, 5, 6),
    ))
    assert not check_aadt(bad).linearizable


def test_memoization_changes_cost_not_verdicts():
    rng = random.Random(5)
    for kind in sorted(AADT_KINDS):
        for trial in range(25):
            n = rng.randint(1, 8)
            h = gen_history(kind, n, rng.randint(1, min(4, n)), f"memo/{trial}")
            if rng.random() < 0.5:
                h = mutate_history(h, f"memo/{trial}").history
            a = check_aadt(h, memoize=True)
            b = check_aadt(h, memoize=False)
            assert a.linearizable == b.linearizable
            assert a.stats["visited"] <= a.stats["states"] + 1


def test_agreement_with_oracle():
    rng = random.Random(17)
    for kind in sorted(AADT_KINDS):
        for trial in range(40):
            n = rng.randint(1, 8)
            h = gen_history(kind, n, rng.randint(1, min(4, n)), f"agree/{trial}")
            if rng.random() < 0.5:
                h = mutate_history(h, f"agree/{trial}").history
            v = check_aadt(h)
            assert v.linearizable == oracle_check(h).linearizable
            if v.linearizable:
                assert validate_witness(h, v.witness) == []


def test_failed_empty_deq():
    h = History("priority-queue", (
        op("a", "deq", EMPTY, 1, 2),
        op("b", "enq", 4, 3, 5),
        op("c", "deq", 4, 4, 6),
    ))
    assert check_aadt(h).linearizable
    bad = History("priority-queue", (
        op("a", "enq", 4, 1, 2),
        op("b", "deq", EMPTY, 3, 4),
    ))
    assert not check_aadt(bad).linearizable
