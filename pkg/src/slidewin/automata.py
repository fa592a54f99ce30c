"""Deterministic finite automata and their transformation monoids.

A state transform is stored as a plain tuple ``t`` of length ``|Q|`` where
``t[q]`` is the image of ``q``.  Composition is left to right:
``compose(f, g)[q] == g[f[q]]``, i.e. first ``f`` then ``g``, which matches
reading a word from left to right.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import InputError, ResourceError

StateTransform = tuple

REVERSE_STATE_CAP = 1 << 20


def identity_transform(n):
    if n < 1:
        raise InputError("a transform needs at least one state")
    return tuple(range(n))


def compose(f, g):
    """Return ``f`` followed by ``g``."""
    if len(f) != len(g):
        raise InputError(f"cannot compose transforms over {len(f)} and {len(g)} states")
    return tuple([g[x] for x in f])


class TransformMonoid:
    """The full transformation monoid ``Q^Q`` for ``n`` states.

    This is the "monoid context" handed to the aggregation deques: it only
    needs ``identity`` and ``mul``.
    """

    __slots__ = ("n", "identity")

    def __init__(self, n):
        self.n = n
        self.identity = identity_transform(n)

    def mul(self, f, g):
        return tuple([g[x] for x in f])

    def __repr__(self):
        return f"TransformMonoid({self.n})"


@dataclass(frozen=True)
class Dfa:
    """Complete DFA over an ordered alphabet.

    ``delta[q][c]`` is the successor of state ``q`` on the symbol with code
    ``c`` (its index in ``alphabet``).
    """

    n_states: int
    alphabet: tuple
    initial: int
    finals: frozenset
    delta: tuple
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        n = self.n_states
        if n < 1:
            raise InputError("a DFA needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("duplicate symbol in alphabet")
        if not 0 <= self.initial < n:
            raise InputError(f"initial state {self.initial} out of range")
        for q in self.finals:
            if not 0 <= q < n:
                raise InputError(f"final state {q} out of range")
        if len(self.delta) != n:
            raise InputError("transition table must have one row per state")
        k = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise InputError(f"transition row {q} is not total")
            for t in row:
                if not 0 <= t < n:
                    raise InputError(f"transition target {t} out of range")
        object.__setattr__(self, "index", {a: i for i, a in enumerate(self.alphabet)})

    @classmethod
    def from_table(cls, alphabet, initial, finals, table):
        """Build from ``table[q][symbol] -> state`` dictionaries."""
        alphabet = tuple(alphabet)
        delta = [[row[a] for a in alphabet] for row in table]
        return cls(len(table), alphabet, initial, frozenset(finals), delta)

    def code(self, a):
        try:
            return self.index[a]
        except KeyError:
            raise InputError(f"unknown symbol {a!r}") from None

    def step(self, q, a):
        return self.delta[q][self.code(a)]

    def letter_transforms(self):
        """Transforms of all letters, indexed by symbol code."""
        k = len(self.alphabet)
        return tuple(tuple(self.delta[q][c] for q in range(self.n_states)) for c in range(k))


def transform_of_letter(dfa, a):
    c = dfa.code(a)
    return tuple(row[c] for row in dfa.delta)


def dfa_accepts(dfa, word):
    q = dfa.initial
    delta = dfa.delta
    code = dfa.code
    for a in word:
        q = delta[q][code(a)]
    return q in dfa.finals


def run_codes(dfa, codes, q=None):
    """Run on already-interned symbol codes; returns the reached state."""
    if q is None:
        q = dfa.initial
    delta = dfa.delta
    for c in codes:
        q = delta[q][c]
    return q


def reverse_determinize(dfa, cap=REVERSE_STATE_CAP):
    """Subset construction for the reversal language.

    A subset ``S`` of original states stands for the set of states from which
    the (not yet reversed) suffix read so far leads into a final state.  The
    result accepts ``w`` iff ``reversed(w)`` is accepted by ``dfa``.
    """
    n = dfa.n_states
    k = len(dfa.alphabet)
    # pred[c][q]: bitmask of states p with delta(p, c) == q
    pred = [[0] * n for _ in range(k)]
    for p in range(n):
        for c in range(k):
            pred[c][dfa.delta[p][c]] |= 1 << p

    start = 0
    for q in dfa.finals:
        start |= 1 << q
    ids = {start: 0}
    subsets = [start]
    rows = []
    todo = deque([start])
    while todo:
        s = todo.popleft()
        row = []
        for c in range(k):
            t = 0
            bits = s
            while bits:
                low = bits & -bits
                t |= pred[c][low.bit_length() - 1]
                bits ^= low
            if t not in ids:
                if len(subsets) >= cap:
                    raise ResourceError(f"reversal automaton exceeds {cap} states")
                ids[t] = len(subsets)
                subsets.append(t)
                todo.append(t)
            row.append(ids[t])
        rows.append(row)
    finals = {i for i, s in enumerate(subsets) if s >> dfa.initial & 1}
    return Dfa(len(subsets), dfa.alphabet, 0, frozenset(finals), rows)


def reachable_states(dfa):
    seen = {dfa.initial}
    todo = [dfa.initial]
    while todo:
        q = todo.pop()
        for t in dfa.delta[q]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def to_sink_form(dfa):
    """Restrict to reachable states and merge all finals into one sink.

    Valid only for right ideals (languages closed under appending letters),
    which is exactly what the reversal of a left ideal is.  Raises
    :class:`InputError` when some final state can leave the final set.
    """
    reach = reachable_states(dfa)
    finals = dfa.finals & reach
    for q in finals:
        for t in dfa.delta[q]:
            if t not in finals:
                raise InputError("language is not a left ideal: a final state of the "
                                 "reversal automaton reaches a non-final state")
    keep = sorted(q for q in reach if q not in finals)
    new = {q: i for i, q in enumerate(keep)}
    sink = len(keep)
    for q in finals:
        new[q] = sink
    k = len(dfa.alphabet)
    rows = [[new[dfa.delta[q][c]] for c in range(k)] for q in keep]
    rows.append([sink] * k)
    return Dfa(len(rows), dfa.alphabet, new[dfa.initial], frozenset([sink]), rows)


def final_sink(dfa):
    """The unique final state if it is a sink, else ``None``."""
    if len(dfa.finals) != 1:
        return None
    (f,) = dfa.finals
    if all(t == f for t in dfa.delta[f]):
        return f
    return None
