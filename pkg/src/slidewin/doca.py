"""Logarithmic-latency window for deterministic one-counter languages.

An *effect* is the map ``(q, m) -> (q', m')`` induced by a word ``w``.  It is
stored only for counters ``m <= |w| + p`` (``p`` is the lcm of all reset
periods); larger counters are handled by shifting (runs that never reset)
or by reducing ``m`` modulo ``p`` (runs that do).

The window is cut into power-of-two blocks forming full binary trees, with
root sizes rising then falling from left to right.  A push merges the
smallest roots on its side like a binary carry and the new blocks' effects
are filled in the background, a bounded number of table entries per update.
A query walks the roots, takes every block whose effect is ready and splits
the others, then runs the initial configuration through those effects.
"""

from array import array
from collections import deque
from dataclasses import dataclass, field
from math import lcm, log2

from .cost import CostCounters
from .errors import ContractError, InputError
from .window import Window

C_FACT = 4


@dataclass(frozen=True)
class Doca:
    """Deterministic one-counter automaton with reset states.

    States are ``0 .. n_states-1``; those in ``reset`` are reset states, the
    rest are stable.  ``delta[(q, a, z)] = (q2, d)`` for stable ``q`` and
    ``z = 1 if counter > 0 else 0``; ``period[q]`` and ``rmap[(q, k)]``
    describe reset states.
    """

    n_states: int
    reset: frozenset
    alphabet: tuple
    initial: int
    finals: frozenset
    delta: dict
    period: dict
    rmap: dict
    p: int = field(init=False)
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "reset", frozenset(self.reset))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        n = self.n_states
        if n < 1:
            raise InputError("a DOCA needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("duplicate symbol in alphabet")
        for q in self.reset | self.finals | {self.initial}:
            if not 0 <= q < n:
                raise InputError(f"state {q} out of range")
        if len(self.reset) == n:
            raise InputError("a DOCA needs at least one stable state")
        for q in range(n):
            if q in self.reset:
                k = self.period.get(q)
                if not isinstance(k, int) or k < 1:
                    raise InputError(f"reset state {q} needs a positive period")
                for i in range(k):
                    t = self.rmap.get((q, i))
                    if t is None:
                        raise InputError(f"missing reset mapping for ({q}, {i})")
                    if not 0 <= t < n or t in self.reset:
                        raise InputError(f"reset mapping ({q}, {i}) must lead to a stable state")
                continue
            for a in self.alphabet:
                for z in (0, 1):
                    t = self.delta.get((q, a, z))
                    if t is None:
                        raise InputError(f"missing transition for ({q}, {a}, {z})")
                    q2, d = t
                    if not 0 <= q2 < n:
                        raise InputError(f"transition ({q}, {a}, {z}) targets unknown state {q2}")
                    if d not in (-1, 0, 1):
                        raise InputError(f"transition ({q}, {a}, {z}) has counter change {d}")
                    if z + d < 0:
                        raise InputError(f"transition ({q}, {a}, {z}) would make the counter negative")
        p = 1
        for q in self.reset:
            p = lcm(p, self.period[q])
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "index", {a: i for i, a in enumerate(self.alphabet)})

    @property
    def stable(self):
        return tuple(q for q in range(self.n_states) if q not in self.reset)

    def code(self, a):
        try:
            return self.index[a]
        except KeyError:
            raise InputError(f"unknown symbol {a!r}") from None


def _settle(d, q, m):
    if q in d.reset:
        return d.rmap[(q, m % d.period[q])], 0
    return q, m


def doca_step(d, q, m, a):
    """One letter from configuration ``(q, m)``; the result is stable."""
    if m < 0:
        raise ContractError("counter must be non-negative")
    q, m = _settle(d, q, m)
    try:
        q2, k = d.delta[(q, a, 1 if m else 0)]
    except KeyError:
        raise InputError(f"unknown symbol {a!r}") from None
    return _settle(d, q2, m + k)


def doca_run(d, word, q=None, m=0):
    q = d.initial if q is None else q
    for a in word:
        q, m = doca_step(d, q, m, a)
    return q, m


def doca_accepts(d, word):
    return doca_run(d, word)[0] in d.finals


class Effect:
    """Table of a word's effect on ``Q x [0, length + p]``.

    ``st``/``ct`` hold target state and counter at index ``q * width + m``;
    ``flag[q]`` records whether the run from ``(q, length + p)`` meets a
    reset state, which selects the extrapolation rule.  While an effect is
    being filled, ``filled`` counts the entries written so far.
    """

    __slots__ = ("length", "p", "nq", "width", "st", "ct", "flag", "filled")

    def __init__(self, nq, length, p):
        self.length = length
        self.p = p
        self.nq = nq
        self.width = length + p + 1
        size = nq * self.width
        self.st = array("i", bytes(4 * size))
        self.ct = array("i", bytes(4 * size))
        self.flag = [False] * nq
        self.filled = 0

    @property
    def size(self):
        return self.nq * self.width

    @property
    def complete(self):
        return self.filled == self.nq * self.width

    def apply(self, q, m):
        w = self.width
        top = w - 1
        if m <= top:
            i = q * w + m
            return self.st[i], self.ct[i]
        if self.flag[q]:
            i = q * w + self.length + (m - self.length) % self.p
            return self.st[i], self.ct[i]
        i = q * w + top
        return self.st[i], self.ct[i] + m - top


def identity_effect(d):
    e = Effect(d.n_states, 0, d.p)
    w = e.width
    for q in range(d.n_states):
        for m in range(w):
            # a reset state with no letters read stays unresolved
            e.st[q * w + m] = q
            e.ct[q * w + m] = m
        e.flag[q] = False
    e.filled = e.size
    return e


def effect_of_letter(d, a):
    """Complete effect of a single letter."""
    d.code(a)
    e = Effect(d.n_states, 1, d.p)
    w = e.width
    for q in range(d.n_states):
        for m in range(w):
            q2, m2 = doca_step(d, q, m, a)
            e.st[q * w + m] = q2
            e.ct[q * w + m] = m2
        e.flag[q] = q in d.reset or d.delta[(q, a, 1)][0] in d.reset
    e.filled = e.size
    return e


def effect_compose(e1, e2, out=None, budget=None):
    """Fill entries of the effect of ``uv`` from those of ``u`` and ``v``.

    Starts a fresh table when ``out`` is ``None``.  Writes at most
    ``budget`` entries (all when ``None``) and returns ``(out, written)``.
    """
    if not (e1.complete and e2.complete):
        raise ContractError("effect_compose needs complete operands")
    if out is None:
        out = Effect(e1.nq, e1.length + e2.length, e1.p)
    w = out.width
    size = out.nq * w
    i = out.filled
    stop = size if budget is None else min(size, i + budget)
    st, ct = out.st, out.ct
    w1, top1, len1 = e1.width, e1.width - 1, e1.length
    st1, ct1, fl1 = e1.st, e1.ct, e1.flag
    w2, top2, len2 = e2.width, e2.width - 1, e2.length
    st2, ct2, fl2 = e2.st, e2.ct, e2.flag
    p = out.p
    q, m = divmod(i, w)
    base1 = q * w1
    start = i
    while i < stop:
        if m <= top1:
            j = base1 + m
            q1, m1 = st1[j], ct1[j]
        elif fl1[q]:
            j = base1 + len1 + (m - len1) % p
            q1, m1 = st1[j], ct1[j]
        else:
            j = base1 + top1
            q1, m1 = st1[j], ct1[j] + m - top1
        if m1 <= top2:
            j = q1 * w2 + m1
            st[i], ct[i] = st2[j], ct2[j]
        elif fl2[q1]:
            j = q1 * w2 + len2 + (m1 - len2) % p
            st[i], ct[i] = st2[j], ct2[j]
        else:
            j = q1 * w2 + top2
            st[i], ct[i] = st2[j], ct2[j] + m1 - top2
        i += 1
        m += 1
        if m == w:
            out.flag[q] = fl1[q] or fl2[q1]
            q += 1
            m = 0
            base1 += w1
    out.filled = i
    return out, i - start


class Block:
    """Node of the block forest covering ``2**level`` window symbols."""

    __slots__ = ("level", "left", "right", "sym", "eff", "job", "born", "dead")

    def __init__(self, level, left=None, right=None, sym=None, born=0):
        self.level = level
        self.left = left
        self.right = right
        self.sym = sym
        self.eff = None
        self.job = None
        self.born = born
        self.dead = False

    def __repr__(self):
        state = "done" if self.eff is not None else "pending"
        return f"Block(level={self.level}, {state})"


class Chain:
    """Blocks created by one push, bottom-up; filled in order."""

    __slots__ = ("blocks", "pos")

    def __init__(self, blocks):
        self.blocks = blocks
        self.pos = 0


class BlockForest:
    """Power-of-two block decomposition of the window with lazy effects."""

    def __init__(self, doca, counters=None, budget=None):
        self.doca = doca
        self.ctr = counters if counters is not None else CostCounters()
        self.nq = doca.n_states
        self.p = doca.p
        self.budget = budget if budget is not None else 4 * self.nq * (self.p + 1)
        self.roots = deque()
        self.chains = []
        self.now = 0
        self.length = 0
        self.pending = set()
        self.stored = 0
        self.max_chains = 0
        self._letters = {}

    # -- construction ----------------------------------------------------

    def _leaf(self, a):
        e = self._letters.get(a)
        if e is None:
            e = self._letters[a] = effect_of_letter(self.doca, a)
        b = Block(0, sym=a, born=self.now)
        # leaf tables are shared per letter but charged as if written
        b.eff = e
        self.ctr.node_constructions += 1
        self.ctr.table_entries += e.size
        self.stored += e.size
        return b

    def _node(self, left, right):
        b = Block(left.level + 1, left, right, born=self.now)
        self.ctr.node_constructions += 1
        self.pending.add(b)
        return b

    def push_left(self, a):
        self.now += 1
        roots = self.roots
        cur = self._leaf(a)
        chain = []
        i = 0
        while roots and roots[0].level == i:
            cur = self._node(cur, roots.popleft())
            chain.append(cur)
            i += 1
        roots.appendleft(cur)
        if chain:
            self.chains.append(Chain(chain))
        self.length += 1
        self._advance()

    def push_right(self, a):
        self.now += 1
        roots = self.roots
        cur = self._leaf(a)
        chain = []
        i = 0
        while roots and roots[-1].level == i:
            cur = self._node(roots.pop(), cur)
            chain.append(cur)
            i += 1
        roots.append(cur)
        if chain:
            self.chains.append(Chain(chain))
        self.length += 1
        self._advance()

    def _kill(self, b):
        b.dead = True
        if b.eff is not None:
            self.stored -= b.eff.size
        elif b.job is not None:
            self.stored -= b.job.size
            b.job = None
        self.pending.discard(b)

    def pop_left(self):
        if not self.roots:
            raise ContractError("pop on empty window")
        self.now += 1
        roots = self.roots
        b = roots.popleft()
        while b.level:
            roots.appendleft(b.right)
            self._kill(b)
            b = b.left
        self._kill(b)
        self.length -= 1
        self._advance()
        return b.sym

    def pop_right(self):
        if not self.roots:
            raise ContractError("pop on empty window")
        self.now += 1
        roots = self.roots
        b = roots.pop()
        while b.level:
            roots.append(b.left)
            self._kill(b)
            b = b.right
        self._kill(b)
        self.length -= 1
        self._advance()
        return b.sym

    # -- background completion ------------------------------------------

    def _advance(self):
        keep = []
        for ch in self.chains:
            if self._run_chain(ch):
                keep.append(ch)
        self.chains = keep
        if len(keep) > self.max_chains:
            self.max_chains = len(keep)

    def _run_chain(self, ch):
        """Spend one budget on ``ch``; returns whether work remains."""
        blocks = ch.blocks
        # pops dissolve chains from the top
        while blocks and blocks[-1].dead:
            blocks.pop()
        budget = self.budget
        pos = ch.pos
        n = len(blocks)
        ctr = self.ctr
        while pos < n:
            b = blocks[pos]
            if b.dead:
                return False
            if b.eff is not None:
                pos += 1
                continue
            left, right = b.left.eff, b.right.eff
            if left is None or right is None or budget == 0:
                break
            job = b.job
            if job is None:
                job = b.job = Effect(self.nq, left.length + right.length, self.p)
                self.stored += job.size
            _, wrote = effect_compose(left, right, job, budget)
            ctr.table_entries += wrote
            budget -= wrote
            if job.filled == job.size:
                b.eff = job
                b.job = None
                self.pending.discard(b)
                pos += 1
        ch.pos = pos
        return pos < n

    # -- queries ----------------------------------------------------------

    def factors(self):
        """Completed blocks covering the window from left to right."""
        out = []
        for r in self.roots:
            todo = [r]
            while todo:
                b = todo.pop()
                if b.eff is not None:
                    out.append(b)
                else:
                    todo.append(b.right)
                    todo.append(b.left)
        return out

    def run(self, q, m=0):
        for b in self.factors():
            q, m = b.eff.apply(q, m)
        return q, m

    def contents(self):
        out = []
        for r in self.roots:
            todo = [r]
            while todo:
                b = todo.pop()
                if b.level == 0:
                    out.append(b.sym)
                else:
                    todo.append(b.right)
                    todo.append(b.left)
        return out

    def levels(self):
        return [r.level for r in self.roots]

    # -- invariants -------------------------------------------------------

    def check_shape(self):
        """Root sizes rise then fall and add up to the window length."""
        lv = self.levels()
        k = 0
        while k + 1 < len(lv) and lv[k] < lv[k + 1]:
            k += 1
        if k + 1 < len(lv) and lv[k] == lv[k + 1]:
            k += 1
        for i in range(k + 1, len(lv)):
            if lv[i] >= lv[i - 1]:
                raise AssertionError(f"root levels {lv} are not rising then falling")
        if sum(1 << a for a in lv) != self.length:
            raise AssertionError("root sizes do not add up to the window length")

    def check_ages(self):
        """Every block old enough must have a finished effect."""
        for b in self.pending:
            if b.dead:
                raise AssertionError("dead block left in the pending set")
            if self.now - b.born >= (1 << b.level) - 1:
                raise AssertionError(
                    f"level-{b.level} block aged {self.now - b.born} has no effect yet"
                )

    def check_trees(self):
        """Full traversal: binary shape, ages and stored effect values."""
        for r in self.roots:
            todo = [r]
            while todo:
                b = todo.pop()
                if b.dead:
                    raise AssertionError("dead block reachable from a root")
                if b.level == 0:
                    if b.left is not None or b.right is not None:
                        raise AssertionError("leaf with children")
                    if b.eff is None:
                        raise AssertionError("leaf without effect")
                    continue
                if b.left.level != b.level - 1 or b.right.level != b.level - 1:
                    raise AssertionError("children must be half-size blocks")
                if b.eff is None and b not in self.pending:
                    raise AssertionError("unfinished block missing from the pending set")
                if b.eff is not None and b.eff.length != 1 << b.level:
                    raise AssertionError("effect length does not match block size")
                todo.append(b.left)
                todo.append(b.right)
        self.check_ages()

    def check(self):
        self.check_shape()
        self.check_ages()


class DocaWindow(Window):
    """Two-way window over the language of a DOCA."""

    def __init__(self, doca, counters=None, budget=None):
        super().__init__(counters)
        self.doca = doca
        self.forest = BlockForest(doca, self.counters, budget)

    def _check_symbol(self, a):
        if a not in self.doca.index:
            raise InputError(f"unknown symbol {a!r}")

    def _rpush(self, a):
        self._check_symbol(a)
        self.forest.push_right(a)

    def _lpush(self, a):
        self._check_symbol(a)
        self.forest.push_left(a)

    def _lpop(self):
        self.forest.pop_left()

    def _rpop(self):
        self.forest.pop_right()

    def _query(self):
        q, _ = self.forest.run(self.doca.initial, 0)
        return q in self.doca.finals

    def contents(self):
        return self.forest.contents()

    def factor_bound(self):
        return C_FACT * (log2(self.length + 2) + 1)
