"""Instrumented replay: per-operation cost maxima at several window sizes."""

import random
from dataclasses import dataclass, field
from math import log2

from .cost import FIELDS, CostCounters
from .window import LPOP, LPUSH, QUERY, RPOP, RPUSH


def bench_letters(spec):
    """Symbols to draw from; for VPAs calls outweigh returns so the list
    of pending calls grows with the window."""
    a = spec.automaton
    if spec.kind == "vpa":
        return a.calls * 3 + a.returns + a.internals * 2
    return tuple(spec.alphabet)


def bench_stream(size, letters, seed, two_way=True, churn=None, query_every=8):
    """Grow the window to ``size``, thrash it, then drain it from the left.

    The thrash phase alternates runs of pops and pushes of equal length,
    so the size swings between ``3/4 size`` and ``size`` and the deques
    keep crossing their rebuild and resize triggers.  Pushes and thrash
    pops pick a random end in two-way mode.  Draining from one end makes
    every shrinking resize overlap with a guardian rebuild.  A query follows every ``query_every``
    updates.  Yields ``(op, phase)`` pairs, phase being 0 (grow),
    1 (thrash) or 2 (drain).
    """
    rng = random.Random(seed)
    letters = tuple(letters)
    churn = size if churn is None else churn
    run = max(1, min(size // 4, churn // 8)) if size >= 4 else 1
    n = 0
    k = 0

    def side():
        return two_way and rng.random() < 0.5

    def push():
        a = rng.choice(letters)
        return (LPUSH, a) if side() else (RPUSH, a)

    def pop():
        return (RPOP,) if side() else (LPOP,)

    def ops():
        nonlocal n
        while n < size:
            n += 1
            yield push(), 0
        i = 0
        while i < churn:
            popping = (i // run) % 2 == 0
            if popping and n:
                n -= 1
                yield pop(), 1
            else:
                n += 1
                yield push(), 1
            i += 1
        while n:
            n -= 1
            yield (LPOP,), 2

    for item in ops():
        yield item
        k += 1
        if query_every and k % query_every == 0:
            yield (QUERY,), item[1]


@dataclass
class BenchRow:
    size: int
    ops: int = 0
    max_per_op: dict = field(default_factory=dict)
    max_work: int = 0
    max_scaled: float = 0.0
    peak_length: int = 0


def measure(spec, size, seed=0, work_fields=FIELDS, churn=None, query_every=8,
            window=None, after_op=None):
    """Replay a :func:`bench_stream` and record the per-op maxima.

    ``max_work`` is the largest per-op sum over ``work_fields``;
    ``max_scaled`` divides that sum by ``log2(len + 2) + 1`` and is taken
    only over ops of the thrash phase.  ``after_op(window)`` is called after
    every op when given.
    """
    two_way = "2V" in spec.models
    c = CostCounters()
    w = window if window is not None else spec.window(counters=c)
    c = w.counters
    row = BenchRow(size)
    last = c.last_op
    fields = tuple(work_fields)
    max_work = 0
    max_scaled = 0.0
    peak = 0
    ops = 0
    for op, phase in bench_stream(size, bench_letters(spec), seed, two_way, churn, query_every):
        w.apply(op)
        ops += 1
        work = 0
        for f in fields:
            work += last[f]
        if work > max_work:
            max_work = work
        if phase == 1:
            s = work / (log2(w.length + 2) + 1)
            if s > max_scaled:
                max_scaled = s
        if w.length > peak:
            peak = w.length
        if after_op is not None:
            after_op(w)
    row.ops = ops
    row.max_per_op = dict(c.max_per_op)
    row.max_work = max_work
    row.max_scaled = max_scaled
    row.peak_length = peak
    return row


def bench(spec, sizes, seed=0, **kw):
    return [measure(spec, n, seed, **kw) for n in sizes]


def format_table(rows, fields=FIELDS):
    head = ["size", "ops"] + list(fields) + ["work"]
    lines = ["\t".join(head)]
    for r in rows:
        vals = [r.size, r.ops] + [r.max_per_op.get(f, 0) for f in fields] + [r.max_work]
        lines.append("\t".join(str(v) for v in vals))
    return "\n".join(lines)
