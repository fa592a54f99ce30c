"""Exception hierarchy shared by every window implementation."""


class SlidewinError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SlidewinError, ValueError):
    """Malformed automaton, unknown symbol or inconsistent argument."""


class ResourceError(SlidewinError):
    """A construction exceeded its configured size cap."""


class StructuralError(SlidewinError):
    """Capacity overflow/underflow of a bounded structure."""


class ContractError(SlidewinError):
    """An operation was called outside its precondition (e.g. pop on empty)."""


class ModelViolation(SlidewinError):
    """An op stream does not respect the selected sliding window model."""

    def __init__(self, index, message):
        super().__init__(f"op {index}: {message}")
        self.index = index


class ParseError(InputError):
    """Line-numbered error in a language or op-stream file."""

    def __init__(self, lineno, message, source=None):
        where = f"{source}:" if source else "line "
        super().__init__(f"{where}{lineno}: {message}")
        self.lineno = lineno
