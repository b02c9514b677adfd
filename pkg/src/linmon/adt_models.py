"""Sequential specifications as simulated objects with undo.

Each model answers one question: does the current state admit this operation
with exactly the recorded value and auxiliary observation?  apply() mutates
and journals an inverse record on success, leaves the state untouched and
returns False otherwise.  undo() pops the journal.

The priority-queue family keeps lazy-deletion heaps so that apply and undo
are both O(log n); everything else is O(1) amortized.
"""

from __future__ import annotations

from collections import Counter, deque, namedtuple
from heapq import heappop, heappush

from .model import AADT_KINDS, ADT_KINDS, EMPTY

AbstractOperation = namedtuple("AbstractOperation", ["method", "value", "aux"])


def abstract(op) -> AbstractOperation:
    return AbstractOperation(op.method, op.value, op.aux)


class SimulatedObject:
    kind = None

    def __init__(self):
        self._journal = []

    def apply(self, method, value, aux=None) -> bool:
        if method not in ADT_KINDS[self.kind]:
            raise ValueError(f"method {method!r} not part of kind {self.kind!r}")
        return self._apply(method, value, aux)

    def apply_op(self, op) -> bool:
        return self.apply(op.method, op.value, op.aux)

    def undo(self):
        if not self._journal:
            raise IndexError("undo on empty journal")
        self._undo(self._journal.pop())

    def journal_depth(self):
        return len(self._journal)

    def fingerprint(self) -> str:
        raise NotImplementedError


class CounterModel(SimulatedObject):
    kind = "counter"

    def __init__(self):
        super().__init__()
        self.value = 0

    def _apply(self, method, value, aux):
        if method == "inc":
            self.value += 1
        elif method == "dec":
            self.value -= 1
        else:  # read
            if value is EMPTY or value != self.value:
                return False
        self._journal.append(method)
        return True

    def _undo(self, rec):
        if rec == "inc":
            self.value -= 1
        elif rec == "dec":
            self.value += 1

    def fingerprint(self):
        return str(self.value)


def _success(aux):
    # missing aux on set-family operations is read as a successful outcome
    return True if aux is None else bool(aux)


class SetModel(SimulatedObject):
    kind = "set"

    def __init__(self):
        super().__init__()
        self.values = set()

    def _apply(self, method, value, aux):
        ok = _success(aux)
        present = value in self.values
        if method == "add":
            if ok == present:
                return False
            if ok:
                self.values.add(value)
            self._journal.append(("add", value, ok))
        elif method == "remove":
            if ok != present:
                return False
            if ok:
                self.values.discard(value)
            self._journal.append(("remove", value, ok))
        else:  # contains
            if ok != present:
                return False
            self._journal.append(("contains", value, ok))
        return True

    def _undo(self, rec):
        method, value, ok = rec
        if ok and method == "add":
            self.values.discard(value)
        elif ok and method == "remove":
            self.values.add(value)

    def fingerprint(self):
        return str(sorted(self.values))


class MultisetModel(SimulatedObject):
    kind = "multiset"

    def __init__(self):
        super().__init__()
        self.counts = Counter()

    def _apply(self, method, value, aux):
        ok = _success(aux)
        present = self.counts[value] > 0
        if method == "add":
            if not ok:
                return False  # multiset insertion cannot fail
            self.counts[value] += 1
            self._journal.append(("add", value))
        elif method == "remove":
            if ok != present:
                return False
            if ok:
                self.counts[value] -= 1
            self._journal.append(("remove", value, ok))
        else:  # contains
            if ok != present:
                return False
            self._journal.append(("contains",))
        return True

    def _undo(self, rec):
        if rec[0] == "add":
            self.counts[rec[1]] -= 1
        elif rec[0] == "remove" and rec[2]:
            self.counts[rec[1]] += 1

    def fingerprint(self):
        return str(sorted(self.counts.elements()))


class _LazyHeap:
    """Min-heap over a logical multiset with O(log n) add/remove/min."""

    __slots__ = ("heap", "pending")

    def __init__(self):
        self.heap = []
        self.pending = Counter()

    def add(self, key):
        if self.pending[key] > 0:
            self.pending[key] -= 1
        else:
            heappush(self.heap, key)

    def remove(self, key):
        self.pending[key] += 1

    def min(self):
        heap, pending = self.heap, self.pending
        while heap and pending[heap[0]] > 0:
            pending[heap[0]] -= 1
            heappop(heap)
        return heap[0] if heap else None


class PriorityQueueModel(SimulatedObject):
    """Max-priority queue: deq and peek act on the current maximum."""

    kind = "priority-queue"
    has_min_end = False

    def __init__(self):
        super().__init__()
        self.contents = Counter()
        self.size = 0
        self._max = _LazyHeap()
        self._min = _LazyHeap() if self.has_min_end else None

    def _insert(self, value):
        self.contents[value] += 1
        self.size += 1
        self._max.add(-value)
        if self._min is not None:
            self._min.add(value)

    def _delete(self, value):
        self.contents[value] -= 1
        self.size -= 1
        self._max.remove(-value)
        if self._min is not None:
            self._min.remove(value)

    def current_max(self):
        top = self._max.min()
        return None if top is None else -top

    def current_min(self):
        return self._min.min()

    def _apply(self, method, value, aux):
        if method == "enq":
            self._insert(value)
            self._journal.append(("enq", value))
            return True
        if method in ("deq", "peek"):
            if value is EMPTY:
                if self.size != 0:
                    return False
                self._journal.append(("noop",))
                return True
            if self.current_max() != value:
                return False
            if method == "deq":
                self._delete(value)
                self._journal.append(("deq", value))
            else:
                self._journal.append(("noop",))
            return True
        # deq-min / peek-min
        if value is EMPTY:
            if self.size != 0:
                return False
            self._journal.append(("noop",))
            return True
        if self.current_min() != value:
            return False
        if method == "deq-min":
            self._delete(value)
            self._journal.append(("deq", value))
        else:
            self._journal.append(("noop",))
        return True

    def _undo(self, rec):
        if rec[0] == "enq":
            self._delete(rec[1])
        elif rec[0] == "deq":
            self._insert(rec[1])

    def fingerprint(self):
        return str(sorted(self.contents.elements()))


class DepqModel(PriorityQueueModel):
    kind = "depq"
    has_min_end = True


class RmwRegisterModel(SimulatedObject):
    """Register whose every write records the observed pre-value in aux."""

    kind = "rmw-register"

    def __init__(self):
        super().__init__()
        self.value = 0

    def _apply(self, method, value, aux):
        if aux is None or aux != self.value or value is EMPTY:
            return False
        self._journal.append(("rmw", self.value))
        self.value = value
        return True

    def _undo(self, rec):
        self.value = rec[1]

    def fingerprint(self):
        return str(self.value)


class StackModel(SimulatedObject):
    kind = "stack"

    def __init__(self):
        super().__init__()
        self.items = []

    def _apply(self, method, value, aux):
        if method == "push":
            self.items.append(value)
            self._journal.append(("push",))
            return True
        if value is EMPTY:
            if self.items:
                return False
            self._journal.append(("noop",))
            return True
        if not self.items or self.items[-1] != value:
            return False
        if method == "pop":
            self._journal.append(("pop", self.items.pop()))
        else:
            self._journal.append(("noop",))
        return True

    def _undo(self, rec):
        if rec[0] == "push":
            self.items.pop()
        elif rec[0] == "pop":
            self.items.append(rec[1])

    def fingerprint(self):
        return str(self.items)


class SizedStackModel(SimulatedObject):
    """Stack whose pushes and pops also report the observed size."""

    kind = "sized-stack"

    def __init__(self):
        super().__init__()
        self.items = []

    def _apply(self, method, value, aux):
        if method == "push":
            if aux != len(self.items) + 1:
                return False
            self.items.append(value)
            self._journal.append(("push",))
            return True
        if value is EMPTY:
            if self.items:
                return False
            self._journal.append(("noop",))
            return True
        if not self.items or self.items[-1] != value:
            return False
        if method == "pop":
            if aux != len(self.items):
                return False
            self._journal.append(("pop", self.items.pop()))
        else:
            self._journal.append(("noop",))
        return True

    def _undo(self, rec):
        if rec[0] == "push":
            self.items.pop()
        elif rec[0] == "pop":
            self.items.append(rec[1])

    def fingerprint(self):
        return str(self.items)


class QueueModel(SimulatedObject):
    kind = "queue"

    def __init__(self):
        super().__init__()
        self.items = deque()

    def _apply(self, method, value, aux):
        if method == "enq":
            self.items.append(value)
            self._journal.append(("enq",))
            return True
        if value is EMPTY:
            if self.items:
                return False
            self._journal.append(("noop",))
            return True
        if not self.items or self.items[0] != value:
            return False
        if method == "deq":
            self._journal.append(("deq", self.items.popleft()))
        else:
            self._journal.append(("noop",))
        return True

    def _undo(self, rec):
        if rec[0] == "enq":
            self.items.pop()
        elif rec[0] == "deq":
            self.items.appendleft(rec[1])

    def fingerprint(self):
        return str(list(self.items))


_MODELS = {
    cls.kind: cls
    for cls in (
        CounterModel, SetModel, MultisetModel, PriorityQueueModel, DepqModel,
        RmwRegisterModel, StackModel, SizedStackModel, QueueModel,
    )
}


def new_object(kind) -> SimulatedObject:
    try:
        return _MODELS[kind]()
    except KeyError:
        raise ValueError(f"unknown adt kind {kind!r}")


def is_aadt(kind) -> bool:
    return kind in AADT_KINDS


def sequence_member(kind, seq) -> bool:
    """Whether the abstract operation sequence is a legal run of the kind."""
    obj = new_object(kind)
    for op in seq:
        if not obj.apply(op.method, op.value, op.aux):
            return False
    return True


def state_fingerprint(obj: SimulatedObject) -> str:
    return obj.fingerprint()
