"""Work-unit instrumentation.

Every fast structure bumps plain integer attributes on a shared
:class:`CostCounters`; the owning window brackets each public operation with
:meth:`CostCounters.begin` / :meth:`CostCounters.end` so that per-operation
maxima can be read off afterwards.
"""

from operator import attrgetter

FIELDS = (
    "compositions",
    "entry_copies",
    "node_constructions",
    "table_entries",
    "bit_writes",
    "daba_ops",
)

_snapshot = attrgetter(*FIELDS)


class CostCounters:
    __slots__ = FIELDS + ("ops", "max_per_op", "last_op", "_mark")

    def __init__(self):
        for f in FIELDS:
            setattr(self, f, 0)
        self.ops = 0
        self.max_per_op = dict.fromkeys(FIELDS, 0)
        self.last_op = dict.fromkeys(FIELDS, 0)
        self._mark = None

    def snapshot(self):
        return _snapshot(self)

    def begin(self):
        self._mark = _snapshot(self)

    def end(self):
        now = _snapshot(self)
        mx = self.max_per_op
        last = self.last_op
        for f, a, b in zip(FIELDS, self._mark, now):
            d = b - a
            last[f] = d
            if d > mx[f]:
                mx[f] = d
        self.ops += 1
        self._mark = None

    def totals(self):
        return dict(zip(FIELDS, self.snapshot()))

    def reset_maxima(self):
        self.max_per_op = dict.fromkeys(FIELDS, 0)

    def __repr__(self):
        return f"CostCounters(totals={self.totals()}, max_per_op={self.max_per_op})"
