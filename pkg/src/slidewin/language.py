"""A parsed language of any supported class, with its fast window and oracle."""

from dataclasses import dataclass, field

from .automata import dfa_accepts
from .counter import AND, NOT, OR, ComboWindow, LenWindow, PathSummary
from .doca import DocaWindow, doca_accepts
from .errors import InputError
from .regular import RegularWindow
from .vpl import VplWindow, vpa_accepts
from .window import MODELS

CLASSES = ("dfa", "vpa", "doca", "len", "li", "combo")
DEFAULT_ALPHABET = ("a", "b")


@dataclass
class LanguageSpec:
    """``kind`` selects how ``automaton`` is read.

    * ``dfa``/``vpa``/``doca``: the automaton itself.
    * ``len``: a triple ``(N, A, B)``.
    * ``li``: a DFA for the reversed language with a final sink;
      ``original`` keeps the DFA for the language when it was given instead.
    * ``combo``: a formula over the names in ``parts``.
    """

    kind: str
    automaton: object
    alphabet: tuple = DEFAULT_ALPHABET
    original: object = None
    parts: dict = field(default_factory=dict)
    paths: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in CLASSES:
            raise InputError(f"unknown language class {self.kind!r}")
        self.alphabet = tuple(self.alphabet)
        if self.kind == "combo":
            self._check_formula(self.automaton)

    def _check_formula(self, f):
        if isinstance(f, str):
            if f not in self.parts:
                raise InputError(f"formula uses undefined name {f!r}")
            return
        arity = {AND: 2, OR: 2, NOT: 1}.get(f[0] if isinstance(f, tuple) and f else None)
        if arity is None or len(f) != arity + 1:
            raise InputError(f"bad formula node {f!r}")
        for g in f[1:]:
            self._check_formula(g)

    @property
    def models(self):
        if self.kind == "li":
            return ("1F", "1V")
        if self.kind == "combo":
            out = set(MODELS)
            for part in self.parts.values():
                out &= set(part.models)
            return tuple(m for m in MODELS if m in out)
        return MODELS

    def window(self, fixed=None, counters=None):
        """A fresh fast window; ``fixed`` sizes it for fixed-size models."""
        k = self.kind
        if k == "dfa":
            return RegularWindow(self.automaton, fixed=fixed, counters=counters)
        if k == "vpa":
            return VplWindow(self.automaton, counters=counters)
        if k == "doca":
            return DocaWindow(self.automaton, counters=counters)
        if k == "len":
            N, A, B = self.automaton
            return LenWindow(N, A, B, counters=counters)
        if k == "li":
            return PathSummary(self.automaton, counters=counters)
        return ComboWindow(self._build(self.automaton, fixed), counters=counters)

    def _build(self, f, fixed):
        if isinstance(f, str):
            return self.parts[f].window(fixed=fixed)
        return (f[0],) + tuple(self._build(g, fixed) for g in f[1:])

    def accepts(self, word):
        """Reference membership test on an explicit word."""
        k = self.kind
        if k == "dfa":
            return dfa_accepts(self.automaton, word)
        if k == "vpa":
            return vpa_accepts(self.automaton, word)
        if k == "doca":
            return doca_accepts(self.automaton, word)
        if k == "len":
            N, A, B = self.automaton
            n = len(word)
            return (n % N in A) if n >= N else (n in B)
        if k == "li":
            if self.original is not None:
                return dfa_accepts(self.original, word)
            return dfa_accepts(self.automaton, list(reversed(word)))
        return self._eval(self.automaton, word)

    def _eval(self, f, word):
        if isinstance(f, str):
            return self.parts[f].accepts(word)
        if f[0] == NOT:
            return not self._eval(f[1], word)
        if f[0] == AND:
            return self._eval(f[1], word) and self._eval(f[2], word)
        return self._eval(f[1], word) or self._eval(f[2], word)
