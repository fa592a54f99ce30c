"""Low-latency sliding window membership for regular, visibly pushdown and
one-counter languages."""

from .automata import Dfa, TransformMonoid, compose, dfa_accepts, reverse_determinize
from .cost import CostCounters
from .counter import ComboWindow, LenWindow, MarkedCounter, PathSummary
from .deque import CircularBuffer, GuardianDeque, ResizingDeque
from .doca import BlockForest, Doca, DocaWindow, Effect, doca_accepts, doca_run
from .errors import (
    ContractError, InputError, ModelViolation, ParseError, ResourceError, SlidewinError,
    StructuralError,
)
from .formats import dump_language, dump_ops, load_language, parse_language, parse_ops
from .language import LanguageSpec
from .oracle import NaiveWindow, StreamGen, check_equivalence, gen_stream, naive_apply
from .regular import RegularWindow
from .vpl import Vpa, VplWindow, vpa_accepts, vpa_run
from .window import MODELS, Window

__all__ = [
    "Dfa", "TransformMonoid", "compose", "dfa_accepts", "reverse_determinize",
    "CostCounters", "ComboWindow", "LenWindow", "MarkedCounter", "PathSummary",
    "CircularBuffer", "GuardianDeque", "ResizingDeque",
    "BlockForest", "Doca", "DocaWindow", "Effect", "doca_accepts", "doca_run",
    "ContractError", "InputError", "ModelViolation", "ParseError", "ResourceError",
    "SlidewinError", "StructuralError",
    "dump_language", "dump_ops", "load_language", "parse_language", "parse_ops",
    "LanguageSpec", "NaiveWindow", "StreamGen", "check_equivalence", "gen_stream",
    "naive_apply", "RegularWindow", "Vpa", "VplWindow", "vpa_accepts", "vpa_run",
    "MODELS", "Window",
]
