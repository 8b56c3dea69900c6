"""Exception hierarchy shared by every module."""


class CharsubError(Exception):
    """Base class for all library errors."""


class DescriptorMismatch(CharsubError, TypeError):
    """An element, character or sequence does not belong to the given group."""


class CapExceeded(CharsubError):
    """A finite-group enumeration would exceed the brute-force cap."""

    def __init__(self, size, cap):
        super().__init__(f"group of order {size} exceeds brute-force cap {cap}")
        self.size = size
        self.cap = cap


class Undecidable(CharsubError):
    """No structural rule decides the requested quantity for this input."""


class PreconditionError(CharsubError, ValueError):
    """An operation was called outside its documented domain."""


class ParseError(CharsubError, ValueError):
    def __init__(self, message, text="", pos=0, line=None):
        if pos is None:
            loc = ""
        elif line is None:
            loc = f" at column {pos + 1}"
        else:
            loc = f" at line {line}, column {pos + 1}"
        super().__init__(f"{message}{loc}: {text!r}" if text else f"{message}{loc}")
        self.pos = pos
        self.line = line
