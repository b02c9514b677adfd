"""Labeled test corpora: linearizable-by-construction histories and mutants."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .adt_models import new_object
from .model import ADT_KINDS, EMPTY, History, Operation

_VALUE_POOL = range(0, 5)


def _propose(rng, kind, obj):
    """A random (method, value, aux) that is legal in the current state."""
    if kind == "counter":
        m = rng.choice(["inc", "inc", "dec", "read"])
        if m == "read":
            return ("read", obj.value, None)
        return (m, EMPTY, None)

    if kind in ("set", "multiset"):
        v = rng.choice(_VALUE_POOL)
        m = rng.choice(["add", "remove", "contains"])
        if kind == "set":
            present = v in obj.values
        else:
            present = obj.counts[v] > 0
        if m == "add":
            ok = True if kind == "multiset" else not present
            return ("add", v, ok)
        if m == "remove":
            return ("remove", v, present)
        return ("contains", v, present)

    if kind in ("priority-queue", "depq"):
        grow = obj.size == 0 or rng.random() < 0.45
        if grow:
            return ("enq", rng.choice(_VALUE_POOL), None)
        methods = ["deq", "peek"] + (["deq-min", "peek-min"] if kind == "depq" else [])
        m = rng.choice(methods)
        if obj.size == 0:
            return (m, EMPTY, None)
        v = obj.current_min() if m.endswith("-min") else obj.current_max()
        return (m, v, None)

    if kind == "rmw-register":
        return ("rmw", rng.choice(_VALUE_POOL), obj.value)

    if kind in ("stack", "sized-stack"):
        grow = not obj.items or rng.random() < 0.45
        size = len(obj.items)
        if grow:
            v = rng.choice(_VALUE_POOL)
            return ("push", v, size + 1 if kind == "sized-stack" else None)
        m = rng.choice(["pop", "pop", "peek"])
        if not obj.items:
            return (m, EMPTY, None)
        top = obj.items[-1]
        if m == "pop":
            return ("pop", top, size if kind == "sized-stack" else None)
        return ("peek", top, None)

    if kind == "queue":
        grow = not obj.items or rng.random() < 0.4
        if grow:
            return ("enq", rng.choice(_VALUE_POOL), None)
        # a failed peek has no transition rule in the queue engine, so the
        # generator never emits one; failed dequeues are fine
        m = rng.choice(["deq", "deq", "peek"])
        if not obj.items:
            return ("deq", EMPTY, None)
        return (m, obj.items[0], None)

    raise ValueError(f"unknown adt kind {kind!r}")


def gen_history(kind, n, k_target, seed) -> History:
    """Deterministic history that is linearizable by construction.

    A legal sequential run is produced first; consecutive operations are
    then grouped into blocks of at most k_target fully nested intervals, so
    the generating order stays a valid linearization and the concurrency
    width never exceeds k_target.
    """
    if kind not in ADT_KINDS:
        raise ValueError(f"unknown adt kind {kind!r}")
    if n < 0 or k_target < 1:
        raise ValueError("need n >= 0 and k_target >= 1")
    if n > 0 and k_target > n:
        raise ValueError(f"k_target {k_target} exceeds history size {n}")
    rng = random.Random(f"{kind}/{n}/{k_target}/{seed}")
    obj = new_object(kind)
    calls = []
    for _ in range(n):
        method, value, aux = _propose(rng, kind, obj)
        applied = obj.apply(method, value, aux)
        assert applied, "generator proposed an illegal operation"
        calls.append((method, value, aux))

    ops = []
    base = 0
    pos = 0
    width = len(str(max(n - 1, 0)))
    while pos < n:
        if rng.random() < 0.6:
            g_size = min(k_target, n - pos)
        else:
            g_size = min(rng.randint(1, k_target), n - pos)
        for t in range(g_size):
            method, value, aux = calls[pos + t]
            ops.append(Operation(
                id=f"op{pos + t:0{width}d}",
                method=method, value=value, aux=aux,
                inv=Fraction(base + t),
                res=Fraction(base + 2 * g_size - t),
            ))
        base += 2 * g_size + 1
        pos += g_size
    return History(kind=kind, ops=tuple(ops))


@dataclass(frozen=True)
class Mutation:
    history: History
    description: str


def mutate_history(h: History, seed) -> Mutation:
    """One random schema-preserving mutation; linearizability not preserved.

    Labels for mutated corpora must come from an oracle, never from the
    mutation kind.
    """
    if h.n == 0:
        raise ValueError("cannot mutate an empty history")
    rng = random.Random(f"mutate/{seed}")
    ops = list(h.ops)
    kinds = ["retarget", "flip-method", "shrink"]
    concrete = [i for i, o in enumerate(ops) if isinstance(o.value, int)]
    if len(concrete) >= 2:
        kinds.append("swap-values")
    if any(isinstance(o.aux, bool) for o in ops):
        kinds.append("flip-aux")
    while True:
        choice = rng.choice(kinds)
        if choice == "swap-values":
            i, j = rng.sample(concrete, 2)
            a, b = ops[i], ops[j]
            ops[i] = Operation(a.id, a.method, b.value, a.aux, a.inv, a.res)
            ops[j] = Operation(b.id, b.method, a.value, b.aux, b.inv, b.res)
            desc = f"swap values of {a.id} and {b.id}"
            break
        if choice == "retarget":
            if not concrete:
                continue
            i = rng.choice(concrete)
            o = ops[i]
            v = rng.choice([x for x in _VALUE_POOL if x != o.value] or [o.value + 1])
            ops[i] = Operation(o.id, o.method, v, o.aux, o.inv, o.res)
            desc = f"retarget {o.id} value {o.value} -> {v}"
            break
        if choice == "flip-method":
            i = rng.randrange(len(ops))
            o = ops[i]
            legal = sorted(ADT_KINDS[h.kind] - {o.method})
            if o.value is EMPTY:
                # keep the document schema-valid: no value-less enq/push/add
                legal = [m for m in legal if m in ("pop", "peek", "deq", "deq-min",
                                                   "peek-min", "inc", "dec")]
                if h.kind == "queue":
                    legal = [m for m in legal if m != "peek"]
            if not legal:
                continue
            m = rng.choice(legal)
            ops[i] = Operation(o.id, m, o.value, o.aux, o.inv, o.res)
            desc = f"flip method of {o.id}: {o.method} -> {m}"
            break
        if choice == "flip-aux":
            pool = [i for i, o in enumerate(ops) if isinstance(o.aux, bool)]
            i = rng.choice(pool)
            o = ops[i]
            ops[i] = Operation(o.id, o.method, o.value, not o.aux, o.inv, o.res)
            desc = f"flip aux of {o.id}"
            break
        if choice == "shrink":
            i = rng.randrange(len(ops))
            o = ops[i]
            span = o.res - o.inv
            ops[i] = Operation(o.id, o.method, o.value, o.aux,
                               o.inv + span / 4, o.res - span / 4)
            desc = f"shrink interval of {o.id}"
            break
    return Mutation(History(kind=h.kind, ops=tuple(ops)), desc)
