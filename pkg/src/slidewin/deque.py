"""Worst-case constant-time aggregation deques over a finite monoid.

:class:`GuardianDeque` keeps a circular buffer of monoid elements
``m_lo .. m_{hi-1}`` together with a *guardian* index ``p``: for every ``i``
left of ``p`` it stores the suffix product ``m_i .. m_{p-1}`` and for every
``j >= p`` the prefix product ``m_p .. m_j``.  Pushes add one product, pops
drop one, and the product of the whole buffer needs a single multiplication.
When the guardian drifts out of the middle half a replacement guardian is
built in the background at a fixed number of products per operation.

:class:`ResizingDeque` removes the capacity bound by running a current and a
next :class:`GuardianDeque` side by side, loading the next one a few entries
per operation so that it is ready when the window doubles or quarters.

Absolute indices are used throughout (``lo`` may go negative); slot ``i``
lives at ``i % capacity``.
"""

from .cost import CostCounters
from .errors import ContractError, StructuralError

SMALL_THRESHOLD = 16
REBUILD_UNITS = 8
CATCH_UP = 5
MIN_CAPACITY = 16


class GuardianDeque:
    """Fixed-capacity two-way aggregation deque.

    ``value`` maps a payload to its monoid element; it is called once per
    push and the result is cached, so it must be stable while the payload is
    stored.  When ``value`` is ``None`` the payload is the element itself.
    """

    __slots__ = (
        "capacity", "_mul", "_one", "_value", "_ctr",
        "_items", "_vals", "_suf", "_pre", "_nsuf", "_npre",
        "lo", "hi", "p", "_pending", "_np", "_nsl", "_npr",
        "fallback_rebuilds", "guardian_starts",
    )

    def __init__(self, capacity, monoid, counters=None, value=None):
        if capacity < 1:
            raise StructuralError("capacity must be positive")
        self.capacity = capacity
        self._mul = monoid.mul
        self._one = monoid.identity
        self._value = value
        self._ctr = counters if counters is not None else CostCounters()
        self._items = [None] * capacity
        self._vals = [None] * capacity
        self._suf = [None] * capacity
        self._pre = [None] * capacity
        self._nsuf = [None] * capacity
        self._npre = [None] * capacity
        self.lo = self.hi = self.p = 0
        self._pending = False
        self._np = self._nsl = self._npr = 0
        self.fallback_rebuilds = 0
        self.guardian_starts = 0

    def __len__(self):
        return self.hi - self.lo

    def __bool__(self):
        return self.hi != self.lo

    @property
    def guardian(self):
        """1-based position of the guardian inside the current content."""
        return self.p - self.lo + 1

    @property
    def pending(self):
        return self._pending

    def peek_left(self):
        if self.hi == self.lo:
            raise ContractError("peek on empty deque")
        return self._items[self.lo % self.capacity]

    def peek_right(self):
        if self.hi == self.lo:
            raise ContractError("peek on empty deque")
        return self._items[(self.hi - 1) % self.capacity]

    def __iter__(self):
        cap = self.capacity
        items = self._items
        for i in range(self.lo, self.hi):
            yield items[i % cap]

    def values(self):
        cap = self.capacity
        return [self._vals[i % cap] for i in range(self.lo, self.hi)]

    def product(self):
        lo, hi, p = self.lo, self.hi, self.p
        cap = self.capacity
        if lo < p:
            left = self._suf[lo % cap]
            if hi > p:
                self._ctr.compositions += 1
                return self._mul(left, self._pre[(hi - 1) % cap])
            return left
        if hi > p:
            return self._pre[(hi - 1) % cap]
        return self._one

    # -- updates ---------------------------------------------------------

    def push_right(self, x):
        lo, hi, cap = self.lo, self.hi, self.capacity
        if hi - lo >= cap:
            raise StructuralError("push on full deque")
        v = x if self._value is None else self._value(x)
        i = hi % cap
        self._items[i] = x
        self._vals[i] = v
        if hi == self.p:
            self._pre[i] = v
        else:
            self._ctr.compositions += 1
            self._pre[i] = self._mul(self._pre[(hi - 1) % cap], v)
        self.hi = hi + 1
        self._after()

    def push_left(self, x):
        lo, hi, cap = self.lo, self.hi, self.capacity
        if hi - lo >= cap:
            raise StructuralError("push on full deque")
        v = x if self._value is None else self._value(x)
        j = lo - 1
        i = j % cap
        self._items[i] = x
        self._vals[i] = v
        if lo == self.p:
            self._suf[i] = v
        else:
            self._ctr.compositions += 1
            self._suf[i] = self._mul(v, self._suf[lo % cap])
        self.lo = j
        if lo == self.hi:
            # first element of an empty deque: keep it right of the guardian
            self.p = j
            self._pre[i] = v
        self._after()

    def pop_right(self):
        lo, hi, cap = self.lo, self.hi, self.capacity
        if hi == lo:
            raise StructuralError("pop on empty deque")
        j = hi - 1
        i = j % cap
        x = self._items[i]
        self._items[i] = self._vals[i] = None
        self.hi = j
        if hi == self.p:
            # right half was empty: every stored suffix contains the popped
            # element, so the guardian has to be rebuilt synchronously
            if j > lo:
                self.fallback_rebuilds += 1
                self._rebuild_now(lo + (j - lo) // 2)
            else:
                self.p = j
        elif self._pending and self._npr >= j:
            self._npr = j - 1
        self._after()
        return x

    def pop_left(self):
        lo, hi, cap = self.lo, self.hi, self.capacity
        if hi == lo:
            raise StructuralError("pop on empty deque")
        i = lo % cap
        x = self._items[i]
        self._items[i] = self._vals[i] = None
        self.lo = lo + 1
        if lo == self.p:
            # left half was empty: the prefixes all start with the popped one
            if hi > lo + 1:
                self.fallback_rebuilds += 1
                self._rebuild_now(lo + 1 + (hi - lo - 1) // 2)
            else:
                self.p = lo + 1
        elif self._pending and self._nsl < lo + 1:
            self._nsl = lo + 1
        self._after()
        return x

    # -- guardian maintenance -------------------------------------------

    def _after(self):
        lo, hi = self.lo, self.hi
        n = hi - lo
        pr = self.p - lo + 1
        if n < SMALL_THRESHOLD:
            self._pending = False
            if n >= 2:
                low = max(2, (n + 3) // 4)
                high = max(2, (3 * n) // 4)
                if pr < low or pr > high:
                    self._rebuild_now(lo + n // 2)
            elif n == 0:
                self.p = lo
            return
        if self._pending:
            if not lo <= self._np < hi:
                self._start(n)
        elif 4 * pr < n or 4 * pr > 3 * n:
            self._start(n)
        if self._pending:
            self._advance()

    def _start(self, n):
        np = self.lo + (n + 1) // 2 - 1
        self._np = np
        self._nsl = np
        self._npr = np - 1
        self._pending = True
        self.guardian_starts += 1

    def _advance(self):
        lo, hi, cap = self.lo, self.hi, self.capacity
        np, nsl, npr = self._np, self._nsl, self._npr
        rem_l = nsl - lo
        rem_r = hi - 1 - npr
        total = rem_l + rem_r
        if total > REBUILD_UNITS:
            total = REBUILD_UNITS
        # favour the side with more outstanding work
        k_l = (total + rem_l - rem_r) // 2
        k_l = max(k_l, total - rem_r, 0)
        k_l = min(k_l, rem_l, total)
        k_r = total - k_l
        vals, mul = self._vals, self._mul
        if k_l:
            nsuf = self._nsuf
            for _ in range(k_l):
                i = nsl - 1
                v = vals[i % cap]
                if i == np - 1:
                    nsuf[i % cap] = v
                else:
                    nsuf[i % cap] = mul(v, nsuf[nsl % cap])
                    self._ctr.compositions += 1
                nsl = i
        if k_r:
            npre = self._npre
            for _ in range(k_r):
                j = npr + 1
                v = vals[j % cap]
                if j == np:
                    npre[j % cap] = v
                else:
                    npre[j % cap] = mul(npre[npr % cap], v)
                    self._ctr.compositions += 1
                npr = j
        self._nsl, self._npr = nsl, npr
        if nsl == lo and npr == hi - 1:
            self._swap()

    def _swap(self):
        self.p = self._np
        self._suf, self._nsuf = self._nsuf, self._suf
        self._pre, self._npre = self._npre, self._pre
        self._pending = False

    def _rebuild_now(self, np):
        lo, hi, cap = self.lo, self.hi, self.capacity
        self._np = np
        self._nsl = np
        self._npr = np - 1
        vals, mul = self._vals, self._mul
        nsuf, npre = self._nsuf, self._npre
        count = 0
        if np > lo:
            acc = vals[(np - 1) % cap]
            nsuf[(np - 1) % cap] = acc
            for i in range(np - 2, lo - 1, -1):
                acc = mul(vals[i % cap], acc)
                nsuf[i % cap] = acc
                count += 1
        if np < hi:
            acc = vals[np % cap]
            npre[np % cap] = acc
            for j in range(np + 1, hi):
                acc = mul(acc, vals[j % cap])
                npre[j % cap] = acc
                count += 1
        self._ctr.compositions += count
        self._swap()

    def check(self):
        """Recompute every stored product naively; raise on mismatch."""
        cap = self.capacity
        lo, hi, p = self.lo, self.hi, self.p
        if not lo <= p <= hi:
            raise AssertionError(f"guardian {p} outside [{lo}, {hi}]")
        acc = None
        for i in range(p - 1, lo - 1, -1):
            v = self._vals[i % cap]
            acc = v if acc is None else self._mul(v, acc)
            if self._suf[i % cap] != acc:
                raise AssertionError(f"suffix product at {i} is stale")
        acc = None
        for j in range(p, hi):
            v = self._vals[j % cap]
            acc = v if acc is None else self._mul(acc, v)
            if self._pre[j % cap] != acc:
                raise AssertionError(f"prefix product at {j} is stale")


class CircularBuffer:
    """Double-ended buffer with O(1) indexing and de-amortized growth.

    Once the buffer is half full a ring of twice the size is allocated and
    two cells are migrated per update, so no single update copies more than
    two entries.
    """

    __slots__ = ("_ring", "_cap", "lo", "hi", "_new", "_cursor", "_end", "_ctr")

    def __init__(self, capacity=16, counters=None):
        self._cap = max(2, capacity)
        self._ring = [None] * self._cap
        self.lo = self.hi = 0
        self._new = None
        self._cursor = self._end = 0
        self._ctr = counters if counters is not None else CostCounters()

    def __len__(self):
        return self.hi - self.lo

    def __getitem__(self, k):
        n = self.hi - self.lo
        if k < 0:
            k += n
        if not 0 <= k < n:
            raise IndexError(k)
        return self._ring[(self.lo + k) % self._cap]

    def __iter__(self):
        for k in range(self.hi - self.lo):
            yield self[k]

    def push_right(self, x):
        i = self.hi
        self._ring[i % self._cap] = x
        if self._new is not None:
            self._new[i % len(self._new)] = x
        self.hi = i + 1
        self._tick()

    def push_left(self, x):
        i = self.lo - 1
        self._ring[i % self._cap] = x
        if self._new is not None:
            self._new[i % len(self._new)] = x
        self.lo = i
        self._tick()

    def pop_right(self):
        if self.hi == self.lo:
            raise ContractError("pop on empty buffer")
        self.hi -= 1
        i = self.hi
        x = self._ring[i % self._cap]
        self._ring[i % self._cap] = None
        if self._new is not None:
            self._new[i % len(self._new)] = None
            if self._end > i:
                self._end = i
        self._tick()
        return x

    def pop_left(self):
        if self.hi == self.lo:
            raise ContractError("pop on empty buffer")
        i = self.lo
        x = self._ring[i % self._cap]
        self._ring[i % self._cap] = None
        if self._new is not None:
            self._new[i % len(self._new)] = None
        self.lo = i + 1
        self._tick()
        return x

    def _tick(self):
        new = self._new
        if new is None:
            if 2 * (self.hi - self.lo) < self._cap:
                return
            new = self._new = [None] * (2 * self._cap)
            self._cursor = self.lo
            self._end = self.hi
        cur = max(self._cursor, self.lo)
        end = min(self._end, self.hi)
        ring, cap, ncap = self._ring, self._cap, len(new)
        copied = 0
        while cur < end and copied < 2:
            new[cur % ncap] = ring[cur % cap]
            cur += 1
            copied += 1
        self._ctr.entry_copies += copied
        self._cursor = cur
        if cur >= end:
            self._ring = new
            self._cap = ncap
            self._new = None


class ResizingDeque:
    """Unbounded two-way aggregation deque with worst-case O(1) updates.

    With ``fixed=n`` the deque is sized once for windows of length ``n`` (one
    extra slot covers the push half of a push/pop pair) and never resizes.
    """

    __slots__ = (
        "_monoid", "_ctr", "_value", "n", "cur", "nxt", "copy", "loaded",
        "fixed", "swaps", "unready_swaps", "_initial",
    )

    def __init__(self, monoid, counters=None, value=None, capacity=MIN_CAPACITY, fixed=None):
        self._monoid = monoid
        self._ctr = counters if counters is not None else CostCounters()
        self._value = value
        self.fixed = fixed
        self.swaps = 0
        self.unready_swaps = 0
        self.nxt = None
        self.loaded = 0
        if fixed is not None:
            self.n = fixed + 1
            self.cur = GuardianDeque(self.n, monoid, self._ctr, value)
            self.copy = None
        else:
            self._initial = max(MIN_CAPACITY, capacity)
            self.n = self._initial
            self.cur = GuardianDeque(self.n, monoid, self._ctr, value)
            self.copy = CircularBuffer(self.n, self._ctr)

    @property
    def counters(self):
        return self._ctr

    def __len__(self):
        return self.cur.hi - self.cur.lo

    def __bool__(self):
        return self.cur.hi != self.cur.lo

    def __iter__(self):
        return iter(self.cur)

    def product(self):
        return self.cur.product()

    def peek_left(self):
        return self.cur.peek_left()

    def peek_right(self):
        return self.cur.peek_right()

    def push_right(self, x):
        self._ctr.daba_ops += 1
        self.cur.push_right(x)
        if self.copy is not None:
            self.copy.push_right(x)
            self._sync(0, x)

    def push_left(self, x):
        self._ctr.daba_ops += 1
        self.cur.push_left(x)
        if self.copy is not None:
            self.copy.push_left(x)
            self._sync(1, x)

    def pop_right(self):
        if not self:
            raise ContractError("pop on empty window")
        self._ctr.daba_ops += 1
        x = self.cur.pop_right()
        if self.copy is not None:
            self.copy.pop_right()
            self._sync(2, None)
        return x

    def pop_left(self):
        if not self:
            raise ContractError("pop on empty window")
        self._ctr.daba_ops += 1
        x = self.cur.pop_left()
        if self.copy is not None:
            self.copy.pop_left()
            self._sync(3, None)
        return x

    def _target(self, size):
        n = self.n
        if 2 * size > n:
            return 2 * n
        if n > self._initial:
            return n // 2
        return None

    def _sync(self, kind, x):
        size = len(self.copy)
        want = self._target(size)
        nxt = self.nxt
        if want is None:
            self.nxt = None
            self.loaded = 0
            return
        if nxt is None or nxt.capacity != want:
            nxt = self.nxt = GuardianDeque(want, self._monoid, self._ctr, self._value)
            self.loaded = 0
        elif kind == 1:
            nxt.push_left(x)
            self.loaded += 1
        elif kind == 3:
            if self.loaded:
                nxt.pop_left()
                self.loaded -= 1
        elif kind == 2:
            if self.loaded > size:
                nxt.pop_right()
                self.loaded -= 1
        loaded = self.loaded
        if loaded < size:
            copy = self.copy
            stop = min(size, loaded + CATCH_UP)
            while loaded < stop:
                nxt.push_right(copy[loaded])
                loaded += 1
            self.loaded = loaded
        n = self.n
        if (size == n and want == 2 * n) or (4 * size == n and want == n // 2):
            self._swap(size)

    def _swap(self, size):
        if self.loaded != size:
            # never expected; keep correctness by finishing the load here
            self.unready_swaps += 1
            while self.loaded < size:
                self.nxt.push_right(self.copy[self.loaded])
                self.loaded += 1
        self.cur = self.nxt
        self.n = self.cur.capacity
        self.nxt = None
        self.loaded = 0
        self.swaps += 1
