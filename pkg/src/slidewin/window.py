"""Op vocabulary and the common base class of all window algorithms.

An op is a tuple whose first item is its kind: ``("R", a)`` pushes ``a`` on
the right, ``("L", a)`` on the left, ``("PL",)`` and ``("PR",)`` pop from
the left and right end and ``("Q",)`` asks whether the window is in the
language.
"""

from .cost import CostCounters
from .errors import ContractError, InputError

RPUSH = "R"
LPUSH = "L"
LPOP = "PL"
RPOP = "PR"
QUERY = "Q"

OP_KINDS = (RPUSH, LPUSH, LPOP, RPOP, QUERY)
MODELS = ("1F", "1V", "2F", "2V")
ONE_WAY_OPS = frozenset((RPUSH, LPOP, QUERY))


def format_op(op):
    return " ".join(str(x) for x in op)


class Window:
    """Two-way variable-size window over some language.

    Subclasses implement ``_rpush``, ``_lpush``, ``_lpop``, ``_rpop`` and
    ``_query``.  The public methods keep the length, reject pops on an empty
    window and bracket every update with the cost counters.
    """

    allowed_ops = frozenset(OP_KINDS)

    def __init__(self, counters=None):
        self.counters = counters if counters is not None else CostCounters()
        self.length = 0

    def __len__(self):
        return self.length

    def push_right(self, a):
        c = self.counters
        c.begin()
        try:
            self._rpush(a)
        finally:
            c.end()
        self.length += 1

    def push_left(self, a):
        c = self.counters
        c.begin()
        try:
            self._lpush(a)
        finally:
            c.end()
        self.length += 1

    def pop_left(self):
        if not self.length:
            raise ContractError("pop on empty window")
        c = self.counters
        c.begin()
        try:
            self._lpop()
        finally:
            c.end()
        self.length -= 1

    def pop_right(self):
        if not self.length:
            raise ContractError("pop on empty window")
        c = self.counters
        c.begin()
        try:
            self._rpop()
        finally:
            c.end()
        self.length -= 1

    def query(self):
        """Is the current window content in the language?"""
        c = self.counters
        c.begin()
        try:
            return self._query()
        finally:
            c.end()

    def apply(self, op):
        """Run one op; returns the answer for queries and ``None`` otherwise."""
        kind = op[0]
        if kind not in self.allowed_ops:
            raise ContractError(f"{type(self).__name__} does not support op {kind!r}")
        if kind == QUERY:
            return self.query()
        if kind == RPUSH:
            self.push_right(op[1])
        elif kind == LPOP:
            self.pop_left()
        elif kind == LPUSH:
            self.push_left(op[1])
        elif kind == RPOP:
            self.pop_right()
        else:
            raise InputError(f"unknown op {kind!r}")
        return None

    def run(self, ops):
        """Apply ``ops`` and collect the query answers."""
        out = []
        for op in ops:
            r = self.apply(op)
            if r is not None:
                out.append(r)
        return out

    def _rpush(self, a):
        raise ContractError(f"{type(self).__name__} does not support rightpush")

    def _lpush(self, a):
        raise ContractError(f"{type(self).__name__} does not support leftpush")

    def _lpop(self):
        raise ContractError(f"{type(self).__name__} does not support leftpop")

    def _rpop(self):
        raise ContractError(f"{type(self).__name__} does not support rightpop")

    def _query(self):
        raise NotImplementedError
