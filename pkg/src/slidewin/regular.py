"""Constant-latency window for any regular language.

Each window symbol becomes an entry of a :class:`ResizingDeque` whose value is
the letter's state transform; the window product applied to the initial
state decides membership.
"""

from .automata import TransformMonoid
from .deque import ResizingDeque
from .errors import InputError
from .window import Window


class RegularWindow(Window):
    """Sliding window over the language of ``dfa``.

    Entries are symbol codes; their transforms come from a per-automaton
    cache, so a push costs one cache lookup plus the deque update.
    """

    def __init__(self, dfa, fixed=None, counters=None):
        super().__init__(counters)
        self.dfa = dfa
        self._letters = dfa.letter_transforms()
        self._index = dfa.index
        self._initial = dfa.initial
        self._finals = dfa.finals
        self.deque = ResizingDeque(
            TransformMonoid(dfa.n_states), self.counters,
            value=self._letters.__getitem__, fixed=fixed,
        )

    def _code(self, a):
        c = self._index.get(a)
        if c is None:
            raise InputError(f"unknown symbol {a!r}")
        return c

    def _rpush(self, a):
        self.deque.push_right(self._code(a))

    def _lpush(self, a):
        self.deque.push_left(self._code(a))

    def _lpop(self):
        self.deque.pop_left()

    def _rpop(self):
        self.deque.pop_right()

    def _query(self):
        t = self.deque.product()
        return t[self._initial] in self._finals

    def contents(self):
        alphabet = self.dfa.alphabet
        return [alphabet[c] for c in self.deque]
