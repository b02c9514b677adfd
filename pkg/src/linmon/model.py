"""Histories of timed operations on a single concurrent object.

Times are exact rationals throughout.  Rounding is never acceptable here:
whether a set of operations can form a linearization prefix hinges on strict
inequalities between endpoints, and floats would silently merge or reorder
close endpoints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction


class Sentinel:
    """Distinguished non-integer value (identity-based equality)."""

    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


#: value of a failed operation (e.g. a pop against an empty stack)
EMPTY = Sentinel("empty")
#: sentinel pushed by the failed-operation embedding; never legal in input
BOTTOM = Sentinel("bottom")

Value = "int | Sentinel"

ADT_KINDS = {
    "stack": frozenset({"push", "pop", "peek"}),
    "sized-stack": frozenset({"push", "pop", "peek"}),
    "queue": frozenset({"enq", "deq", "peek"}),
    "priority-queue": frozenset({"enq", "deq", "peek"}),
    "depq": frozenset({"enq", "deq", "deq-min", "peek", "peek-min"}),
    "set": frozenset({"add", "remove", "contains"}),
    "multiset": frozenset({"add", "remove", "contains"}),
    "counter": frozenset({"inc", "dec", "read"}),
    "rmw-register": frozenset({"rmw"}),
}

#: kinds whose sequential state is a function of the applied operation multiset
AADT_KINDS = frozenset(
    {"counter", "set", "multiset", "priority-queue", "depq", "rmw-register", "sized-stack"}
)

#: methods that never make sense without a concrete argument
_VALUE_REQUIRED = frozenset({"enq", "push", "add", "remove", "contains", "rmw", "read"})


class HistoryError(ValueError):
    """Raised on malformed history documents."""


@dataclass(frozen=True)
class Operation:
    id: str
    method: str
    value: object  # int | Sentinel
    aux: object  # int | bool | None
    inv: Fraction
    res: Fraction

    def interval(self):
        return (self.inv, self.res)


@dataclass(frozen=True)
class History:
    kind: str
    ops: tuple

    @property
    def n(self):
        return len(self.ops)

    def endpoints(self):
        """Sorted list of the distinct invocation/response times."""
        pts = set()
        for o in self.ops:
            pts.add(o.inv)
            pts.add(o.res)
        return sorted(pts)

    def by_id(self):
        return {o.id: o for o in self.ops}


def _parse_time(raw, opid):
    if isinstance(raw, bool):
        raise HistoryError(f"operation {opid!r}: boolean is not a time")
    if isinstance(raw, int):
        t = Fraction(raw)
    elif isinstance(raw, str):
        try:
            t = Fraction(raw)
        except (ValueError, ZeroDivisionError) as e:
            raise HistoryError(f"operation {opid!r}: unparseable time {raw!r}") from e
    else:
        raise HistoryError(f"operation {opid!r}: time must be integer or 'p/q' string")
    if t < 0:
        raise HistoryError(f"operation {opid!r}: negative time {raw!r}")
    return t


def _format_time(t: Fraction):
    if t.denominator == 1:
        return int(t)
    return f"{t.numerator}/{t.denominator}"


def parse_history(text: str) -> History:
    """Parse and validate a history JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise HistoryError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise HistoryError("top-level value must be an object")
    kind = doc.get("adt")
    if kind not in ADT_KINDS:
        raise HistoryError(f"unknown adt kind {kind!r}")
    raw_ops = doc.get("operations")
    if not isinstance(raw_ops, list):
        raise HistoryError('"operations" must be an array')

    ops = []
    for entry in raw_ops:
        if not isinstance(entry, dict):
            raise HistoryError("operation entries must be objects")
        opid = entry.get("id")
        if not isinstance(opid, str):
            raise HistoryError(f"operation id must be a string, got {opid!r}")
        method = entry.get("method")
        raw_value = entry.get("value")
        if raw_value is None:
            value = EMPTY
        elif isinstance(raw_value, int) and not isinstance(raw_value, bool):
            value = raw_value
        else:
            raise HistoryError(f"operation {opid!r}: value must be integer or null")
        aux = entry.get("aux")
        if aux is not None and not isinstance(aux, (int, bool)):
            raise HistoryError(f"operation {opid!r}: aux must be integer, boolean or null")
        inv = _parse_time(entry.get("inv"), opid)
        res = _parse_time(entry.get("res"), opid)
        ops.append(Operation(id=opid, method=method, value=value, aux=aux, inv=inv, res=res))

    h = History(kind=kind, ops=tuple(ops))
    problems = validate_history(h)
    if problems:
        raise HistoryError("; ".join(problems))
    return h


def serialize_history(h: History) -> str:
    doc = {
        "adt": h.kind,
        "operations": [
            {
                "id": o.id,
                "method": o.method,
                "value": None if o.value is EMPTY else o.value,
                "aux": o.aux,
                "inv": _format_time(o.inv),
                "res": _format_time(o.res),
            }
            for o in h.ops
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def validate_history(h: History) -> list:
    """All invariant violations, one message each.  Empty list means valid."""
    problems = []
    methods = ADT_KINDS.get(h.kind)
    if methods is None:
        return [f"unknown adt kind {h.kind!r}"]
    seen = set()
    for o in h.ops:
        if o.id in seen:
            problems.append(f"duplicate id: operation {o.id!r}")
        seen.add(o.id)
        if o.method not in methods:
            problems.append(
                f"method {o.method!r} illegal for kind {h.kind!r}: operation {o.id!r}"
            )
        if not o.inv < o.res:
            problems.append(f"inv >= res: operation {o.id!r}")
        if o.value is BOTTOM:
            problems.append(f"bottom value in input: operation {o.id!r}")
        elif o.value is not EMPTY and not isinstance(o.value, int):
            problems.append(f"non-integer value: operation {o.id!r}")
        elif o.value is EMPTY and o.method in _VALUE_REQUIRED:
            problems.append(f"method {o.method!r} requires a value: operation {o.id!r}")
    return problems


def concurrency_width(h: History) -> int:
    """Maximum number of operation intervals containing a common time."""
    if not h.ops:
        return 0
    starts = {}
    ends = {}
    for o in h.ops:
        starts[o.inv] = starts.get(o.inv, 0) + 1
        ends[o.res] = ends.get(o.res, 0) + 1
    k = 0
    active = 0
    for t in h.endpoints():
        active += starts.get(t, 0)
        if active > k:
            k = active
        active -= ends.get(t, 0)
    return k


def normalize_times(h: History) -> History:
    """Rank-compress endpoints to small integers, preserving order and ties."""
    rank = {t: Fraction(i) for i, t in enumerate(h.endpoints())}
    ops = tuple(
        Operation(id=o.id, method=o.method, value=o.value, aux=o.aux,
                  inv=rank[o.inv], res=rank[o.res])
        for o in h.ops
    )
    return History(kind=h.kind, ops=ops)
