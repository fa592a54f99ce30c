"""Space-frugal windows: a marked binary counter, length languages and
left ideals.

* :class:`MarkedCounter` is a redundant binary counter whose increment and
  decrement only touch bits next to a marked position.
* :class:`LenWindow` decides languages that depend only on the window length.
* :class:`PathSummary` decides regular left ideals ``Σ*L`` under one-way
  updates by tracking, for each state of the reversal automaton, the shortest
  window suffix that drives it into the accepting sink.
* :class:`ComboWindow` evaluates a boolean formula over such windows.
"""

from .automata import final_sink
from .cost import CostCounters
from .errors import ContractError, InputError
from .window import ONE_WAY_OPS, OP_KINDS, Window


class MarkedCounter:
    """Counter stored as a bit string ``s`` with a marked position ``x``.

    Positions are numbered from the right (rightmost is 0).  Every bit to
    the right of the mark is zero.  ``y`` is one past the highest set bit,
    so the counter is zero exactly when ``y == 0``.
    """

    __slots__ = ("_bits", "ell", "x", "y", "_ctr", "_next", "_moved")

    def __init__(self, counters=None, ell=1):
        if ell < 1:
            raise InputError("counter needs at least one bit")
        self._ctr = counters if counters is not None else CostCounters()
        self._bits = bytearray(max(4, 2 * ell))
        self.ell = ell
        self.x = 0
        self.y = 0
        self._next = None
        self._moved = 0

    def is_zero(self):
        return self.y == 0

    def bit(self, i):
        return self._bits[i] if i < self.ell else 0

    def _set(self, i, b):
        self._bits[i] = b
        if self._next is not None:
            self._next[i] = b
        self._ctr.bit_writes += 1

    def _grow_storage(self):
        # migrate two cells per update into a buffer twice as large
        nxt = self._next
        if nxt is None:
            if 2 * self.ell < len(self._bits):
                return
            nxt = self._next = bytearray(2 * len(self._bits))
            self._moved = 0
        bits = self._bits
        i = self._moved
        stop = min(i + 2, self.ell)
        while i < stop:
            nxt[i] = bits[i]
            i += 1
        self._ctr.entry_copies += stop - self._moved
        self._moved = i
        if i >= self.ell:
            self._bits = nxt
            self._next = None

    def inc(self):
        x = self.x
        bits = self._bits
        if bits[x] == 0:
            if x == 0:
                self._set(0, 1)
                if self.y == 0:
                    self.y = 1
            else:
                self.x = x - 1
        elif x + 1 == self.ell or bits[x + 1] == 0:
            if x + 1 == self.ell:
                self.ell += 1
            self._set(x + 1, 1)
            self._set(x, 0)
            if self.y == x + 1:
                self.y = x + 2
        else:
            self._set(x, 0)
            self.x = x + 1
        self._grow_storage()

    def dec(self):
        if self.y == 0:
            raise ContractError("decrement of a zero counter")
        x = self.x
        bits = self._bits
        if bits[x] == 1:
            if x == 0:
                self._set(0, 0)
                if self.y == 1:
                    self.y = 0
            else:
                self._set(x - 1, 1)
                self.x = x - 1
        elif x + 1 < self.ell and bits[x + 1] == 1:
            self._set(x + 1, 0)
            self._set(x, 1)
            if self.y == x + 2:
                self.y = x + 1
        else:
            self.x = x + 1
        self._grow_storage()

    def render(self):
        """Bit string, most significant first, with the mark underlined."""
        out = []
        for i in range(self.ell - 1, -1, -1):
            b = str(self.bit(i))
            out.append(f"{b}̲" if i == self.x else b)
        return "".join(out)

    def state(self):
        return (tuple(self.bit(i) for i in range(self.ell)), self.x)

    def value(self):
        """Decode by counting decrements to zero on a copy (testing aid)."""
        c = MarkedCounter(ell=self.ell)
        c._bits[: self.ell] = self._bits[: self.ell]
        c.x, c.y = self.x, self.y
        k = 0
        while not c.is_zero():
            c.dec()
            k += 1
        return k


def _as_set(values, n, what):
    s = frozenset(values)
    for v in s:
        if not 0 <= v < n:
            raise InputError(f"{what} element {v} outside [0, {n})")
    return s


class LenWindow(Window):
    """Window for a length language given by period ``N`` and sets ``A``, ``B``.

    A word of length ``n`` is accepted iff ``n >= N and n % N in A`` or
    ``n < N and n in B``.
    """

    def __init__(self, N, A, B, counters=None):
        super().__init__(counters)
        if N < 1:
            raise InputError("period N must be positive")
        self.N = N
        self.A = _as_set(A, N, "A")
        self.B = _as_set(B, N, "B")
        self.small = 0
        self.large = False
        self.r = 0
        self.m = MarkedCounter(self.counters)

    def _grow(self):
        if self.large:
            self.m.inc()
            self.r = self.r + 1 if self.r + 1 < self.N else 0
        elif self.small + 1 == self.N:
            self.large = True
            self.r = 0
        else:
            self.small += 1

    def _shrink(self):
        if self.large:
            if self.m.is_zero():
                self.large = False
                self.small = self.N - 1
            else:
                self.m.dec()
                self.r = self.r - 1 if self.r else self.N - 1
        else:
            self.small -= 1

    def _rpush(self, a):
        self._grow()

    def _lpush(self, a):
        self._grow()

    def _lpop(self):
        self._shrink()

    def _rpop(self):
        self._shrink()

    def _query(self):
        if self.large:
            return self.r in self.A
        return self.small in self.B

    def accepts_length(self, n):
        return (n % self.N in self.A) if n >= self.N else (n in self.B)


def validate_len(dfa, N, A, B, limit=None):
    """Check that ``dfa`` is a length language described by ``(N, A, B)``.

    Tracks the set of states reachable by words of each length up to
    ``limit`` (default ``4N``); raises :class:`InputError` on mismatch.
    """
    A, B = frozenset(A), frozenset(B)
    limit = 4 * N if limit is None else limit
    reach = {dfa.initial}
    for n in range(limit + 1):
        hit = reach & dfa.finals
        if hit and hit != reach:
            raise InputError(f"membership of length-{n} words depends on more than length")
        expect = (n % N in A) if n >= N else (n in B)
        if bool(hit) != expect:
            raise InputError(f"length {n}: automaton says {bool(hit)}, (N, A, B) says {expect}")
        reach = {t for q in reach for t in dfa.delta[q]}
    return True


class PathSummary(Window):
    """One-way window for a regular left ideal.

    ``rev`` is a DFA for the reversed language whose single final state is a
    sink.  Each active chunk holds a set of states (a bitmask) and the
    offset ``m`` of the suffix that first drives those states into the sink,
    measured from the left end of the window.
    """

    allowed_ops = ONE_WAY_OPS

    def __init__(self, rev, counters=None):
        super().__init__(counters)
        sink = final_sink(rev)
        if sink is None:
            raise InputError("reversal automaton needs a unique final sink state")
        self.rev = rev
        self.sink = sink
        self._index = rev.index
        n = rev.n_states
        k = len(rev.alphabet)
        pred = [[0] * n for _ in range(k)]
        for p in range(n):
            for c in range(k):
                pred[c][rev.delta[p][c]] |= 1 << p
        self._pred = pred
        self._not_sink = ~(1 << sink)
        self._start = 1 << rev.initial
        self.masks = [0] * n
        self.offsets = [0] * n
        self.active = []
        self._free = list(range(n - 1, -1, -1))
        self._add(1 << sink, 0)

    def _add(self, mask, m):
        i = self._free.pop()
        self.masks[i] = mask
        self.offsets[i] = m
        self.active.append(i)

    def _rpush(self, a):
        c = self._index.get(a)
        if c is None:
            raise InputError(f"unknown symbol {a!r}")
        pred = self._pred[c]
        keep = []
        masks = self.masks
        for i in self.active:
            bits = masks[i]
            pre = 0
            while bits:
                low = bits & -bits
                pre |= pred[low.bit_length() - 1]
                bits ^= low
            pre &= self._not_sink
            if pre:
                masks[i] = pre
                keep.append(i)
            else:
                self._free.append(i)
        self.active = keep
        self._add(1 << self.sink, self.length + 1)

    def _lpop(self):
        keep = []
        offsets = self.offsets
        for i in self.active:
            if offsets[i] == 0:
                self._free.append(i)
            else:
                offsets[i] -= 1
                keep.append(i)
        self.active = keep

    def _query(self):
        masks = self.masks
        start = self._start
        return any(masks[i] & start for i in self.active)

    def chunks(self):
        """Active chunks as ``(frozenset of states, suffix length)`` pairs."""
        out = []
        for i in self.active:
            bits = self.masks[i]
            states = frozenset(q for q in range(self.rev.n_states) if bits >> q & 1)
            out.append((states, self.length - self.offsets[i]))
        return out


AND, OR, NOT = "and", "or", "not"


class ComboWindow(Window):
    """Boolean combination of windows, all fed the same ops.

    ``formula`` is a leaf window or a tuple ``("and", f, g)``,
    ``("or", f, g)`` or ``("not", f)``.
    """

    def __init__(self, formula, counters=None):
        super().__init__(counters)
        self.formula = formula
        self.leaves = []
        self._collect(formula)
        if not self.leaves:
            raise InputError("formula has no leaves")
        allowed = frozenset(OP_KINDS)
        for leaf in self.leaves:
            allowed &= leaf.allowed_ops
        self.allowed_ops = allowed

    def _collect(self, f):
        if isinstance(f, Window):
            self.leaves.append(f)
            return
        if not isinstance(f, tuple) or not f:
            raise InputError(f"bad formula node {f!r}")
        op, *args = f
        want = {AND: 2, OR: 2, NOT: 1}.get(op)
        if want is None or len(args) != want:
            raise InputError(f"bad formula node {f!r}")
        for g in args:
            self._collect(g)

    def _rpush(self, a):
        for leaf in self.leaves:
            leaf.push_right(a)

    def _lpush(self, a):
        for leaf in self.leaves:
            leaf.push_left(a)

    def _lpop(self):
        for leaf in self.leaves:
            leaf.pop_left()

    def _rpop(self):
        for leaf in self.leaves:
            leaf.pop_right()

    def _query(self):
        return self._eval(self.formula)

    def _eval(self, f):
        if isinstance(f, Window):
            return f.query()
        if f[0] == NOT:
            return not self._eval(f[1])
        if f[0] == AND:
            return self._eval(f[1]) and self._eval(f[2])
        return self._eval(f[1]) or self._eval(f[2])

