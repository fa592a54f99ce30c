"""Naive reference windows, random automata and op-stream generators."""

import random
from collections import deque
from dataclasses import dataclass

from .automata import Dfa
from .doca import Doca
from .errors import ContractError, InputError, ModelViolation
from .vpl import Vpa
from .window import LPOP, LPUSH, MODELS, ONE_WAY_OPS, QUERY, RPOP, RPUSH


class NaiveWindow:
    """The window content itself; pops on an empty window do nothing."""

    def __init__(self, symbols=()):
        self.symbols = deque(symbols)

    def __len__(self):
        return len(self.symbols)

    def word(self):
        return list(self.symbols)

    def apply(self, op):
        return naive_apply(self, op)


def naive_apply(w, op):
    """Apply ``op`` literally; returns the new content, ``None`` for queries."""
    kind = op[0]
    s = w.symbols
    if kind == RPUSH:
        s.append(op[1])
    elif kind == LPUSH:
        s.appendleft(op[1])
    elif kind == LPOP:
        if s:
            s.popleft()
    elif kind == RPOP:
        if s:
            s.pop()
    elif kind == QUERY:
        return None
    else:
        raise InputError(f"unknown op {kind!r}")
    return list(s)


def validate_stream(ops, model):
    """Raise :class:`ModelViolation` at the first op the model forbids.

    Fixed-size models need every push to be followed directly by a pop on
    the opposite side, and allow pops only in that position.
    """
    if model not in MODELS:
        raise InputError(f"unknown model {model!r}")
    one_way = model[0] == "1"
    fixed = model[1] == "F"
    expect = None
    for i, op in enumerate(ops):
        kind = op[0]
        if one_way and kind not in ONE_WAY_OPS:
            raise ModelViolation(i, f"{kind} is not allowed in the {model} model")
        if expect is not None:
            if kind != expect:
                raise ModelViolation(i, f"push must be followed immediately by {expect} in the {model} model")
            expect = None
            continue
        if fixed:
            if kind == RPUSH:
                expect = LPOP
            elif kind == LPUSH:
                expect = RPOP
            elif kind in (LPOP, RPOP):
                raise ModelViolation(i, f"{kind} without a preceding push in the {model} model")
    if expect is not None:
        raise ModelViolation(len(ops), "stream ends before the pop paired with the last push")


def drop_empty_pops(ops, start=0):
    """Remove pops that would hit an empty window (they are no-ops)."""
    out = []
    n = start
    for op in ops:
        kind = op[0]
        if kind in (LPOP, RPOP):
            if not n:
                continue
            n -= 1
        elif kind in (RPUSH, LPUSH):
            n += 1
        out.append(op)
    return out


@dataclass(frozen=True)
class StreamGen:
    """Recipe for a random model-valid op stream.

    ``n`` is the window size for fixed-size models; variable-size streams
    never pop an empty window and, when ``max_size`` is set, stop pushing
    at that size.
    """

    seed: int
    model: str
    alphabet: tuple
    length: int
    n: int = 0
    max_size: int = None
    query_rate: float = 0.2
    push_rate: float = 0.45


def gen_stream(g):
    if g.model not in MODELS:
        raise InputError(f"unknown model {g.model!r}")
    if not g.alphabet:
        raise InputError("stream alphabet is empty")
    rng = random.Random(g.seed)
    alphabet = tuple(g.alphabet)
    two_way = g.model[0] == "2"
    fixed = g.model[1] == "F"
    ops = []
    size = 0
    while len(ops) < g.length:
        r = rng.random()
        left = two_way and rng.random() < 0.5
        if r < g.query_rate or (fixed and len(ops) + 2 > g.length):
            ops.append((QUERY,))
        elif fixed:
            a = rng.choice(alphabet)
            ops.extend([(LPUSH, a), (RPOP,)] if left else [(RPUSH, a), (LPOP,)])
        elif not size or (r < g.query_rate + g.push_rate
                          and (g.max_size is None or size < g.max_size)):
            a = rng.choice(alphabet)
            ops.append((LPUSH, a) if left else (RPUSH, a))
            size += 1
        else:
            ops.append((RPOP,) if left else (LPOP,))
            size -= 1
    return ops


def fill_symbol(alphabet):
    """Symbol used to pre-fill fixed-size windows."""
    return alphabet[0]


@dataclass
class Divergence:
    index: int
    expected: bool
    got: bool
    window: list


@dataclass
class Report:
    queries: int
    divergences: list

    @property
    def ok(self):
        return not self.divergences

    @property
    def first(self):
        return self.divergences[0] if self.divergences else None


def check_equivalence(lang, ops, model="2V", n=0, window=None, stop_at_first=True):
    """Replay ``ops`` on a fast window and on the naive oracle.

    ``lang`` is a :class:`~slidewin.language.LanguageSpec`.  The stream is
    validated against ``model`` and the language's supported ops before
    anything is replayed.
    """
    if model not in lang.models:
        raise ContractError(f"{lang.kind} languages do not support the {model} model")
    validate_stream(ops, model)
    fixed = model[1] == "F"
    fast = window if window is not None else lang.window(fixed=n if fixed else None)
    naive = NaiveWindow()
    if fixed:
        box = fill_symbol(lang.alphabet)
        for _ in range(n):
            fast.push_right(box)
            naive.symbols.append(box)
    ops = drop_empty_pops(ops, len(naive))
    out = []
    queries = 0
    for i, op in enumerate(ops):
        if op[0] == QUERY:
            queries += 1
            got = fast.query()
            want = lang.accepts(naive.word())
            if got != want:
                out.append(Divergence(i, want, got, naive.word()))
                if stop_at_first:
                    break
        else:
            fast.apply(op)
            naive_apply(naive, op)
    return Report(queries, out)


# -- random automata --------------------------------------------------------

def random_dfa(rng, n_states, alphabet):
    alphabet = tuple(alphabet)
    delta = [[rng.randrange(n_states) for _ in alphabet] for _ in range(n_states)]
    finals = {q for q in range(n_states) if rng.random() < 0.5}
    return Dfa(n_states, alphabet, 0, frozenset(finals), delta)


def random_vpa(rng, n_states, calls=("(",), returns=(")",), internals=("c",), stack=("A", "B")):
    Q = range(n_states)
    tcall = {(q, a): (rng.choice(stack), rng.randrange(n_states)) for q in Q for a in calls}
    tret = {(q, b, g): rng.randrange(n_states) for q in Q for b in returns for g in stack}
    tretbot = {(q, b): rng.randrange(n_states) for q in Q for b in returns}
    tint = {(q, a): rng.randrange(n_states) for q in Q for a in internals}
    finals = {q for q in Q if rng.random() < 0.5}
    return Vpa(n_states, calls, returns, internals, stack, 0, finals, tcall, tret, tretbot, tint)


def random_doca(rng, n_states, alphabet=("a", "b"), max_period=3, n_reset=None):
    """Random DOCA; counter changes never take the counter below zero."""
    if n_reset is None:
        n_reset = rng.randrange(0, min(2, n_states - 1) + 1)
    reset = set(rng.sample(range(1, n_states), n_reset)) if n_reset else set()
    stable = [q for q in range(n_states) if q not in reset]
    delta = {}
    for q in stable:
        for a in alphabet:
            delta[(q, a, 0)] = (rng.randrange(n_states), rng.choice((0, 1)))
            delta[(q, a, 1)] = (rng.randrange(n_states), rng.choice((-1, 0, 1)))
    period = {q: rng.randint(1, max_period) for q in reset}
    rmap = {(q, k): rng.choice(stable) for q in reset for k in range(period[q])}
    finals = {q for q in range(n_states) if rng.random() < 0.5}
    return Doca(n_states, reset, tuple(alphabet), 0, finals, delta, period, rmap)
