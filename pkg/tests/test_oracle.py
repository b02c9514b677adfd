from fractions import Fraction
from math import factorial

import pytest

from linmon.model import EMPTY, History, Operation
from linmon.oracle import CapExceeded, enumerate_linearizations, oracle_check
from linmon.verdict import validate_witness


def op(i, method, value, lo, hi, aux=None):
    return Operation(i, method, value, aux, Fraction(lo), Fraction(hi))


def test_disjoint_intervals_have_one_order():
    h = History("queue", (op("a", "enq", 1, 1, 2), op("b", "deq", 1, 3, 4)))
    orders = list(enumerate_linearizations(h))
    assert len(orders) == 1
    assert [o.id for o in orders[0]] == ["a", "b"]


def test_fully_overlapping_intervals_give_all_permutations():
    ops = tuple(op(f"o{i}", "enq", i, 1, 10) for i in range(4))
    h = History("queue", ops)
    orders = list(enumerate_linearizations(h))
    assert len(orders) == factorial(4)
    assert len(set(orders)) == factorial(4)


def test_touching_endpoints_force_the_strict_order():
    # a=[1,2], b=[2,3]: b cannot come first under the strict rule
    h = History("queue", (op("a", "enq", 1, 1, 2), op("b", "enq", 2, 2, 3)))
    orders = [[o.id for o in lin] for lin in enumerate_linearizations(h)]
    assert orders == [["a", "b"]]


def test_verdicts_and_witnesses():
    good = History("queue", (op("e", "enq", 3, 1, 3), op("d", "deq", 3, 2, 4)))
    v = oracle_check(good)
    assert v.linearizable
    assert validate_witness(good, v.witness) == []

    bad = History("queue", (op("d", "deq", 3, 1, 2), op("e", "enq", 3, 3, 4)))
    v = oracle_check(bad)
    assert not v.linearizable
    assert v.witness is None


def test_failed_operations():
    h = History("stack", (op("p", "pop", EMPTY, 1, 2), op("u", "push", 1, 3, 4)))
    assert oracle_check(h).linearizable
    h = History("stack", (op("u", "push", 1, 1, 2), op("p", "pop", EMPTY, 3, 4)))
    assert not oracle_check(h).linearizable


def test_cap():
    ops = tuple(op(f"o{i}", "enq", i, 2 * i, 2 * i + 1) for i in range(11))
    h = History("queue", ops)
    with pytest.raises(CapExceeded):
        oracle_check(h)
    assert oracle_check(History("queue", ops[:10]), cap=10).linearizable
    assert oracle_check(h, cap=11).linearizable


def test_empty_history():
    v = oracle_check(History("queue", ()))
    assert v.linearizable and v.witness == ()
