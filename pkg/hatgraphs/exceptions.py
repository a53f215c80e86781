"""Error hierarchy shared by the engines and the command line."""

from typing import Any


class HatError(Exception):
    """Base class for every error raised by hatgraphs."""


class InvalidPermutationError(HatError, ValueError):
    pass


class OverCapError(HatError):
    """An explicit element enumeration would exceed its cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"group of order {order} exceeds the element cap {cap}")
        self.order = order
        self.cap = cap


class CosetLimitExceeded(HatError):
    def __init__(self, max_cosets: int):
        super().__init__(f"coset enumeration did not close within {max_cosets} cosets")
        self.max_cosets = max_cosets


class IndexOverCapError(HatError):
    def __init__(self, index: int, max_vertices: int):
        super().__init__(f"subgroup index {index} exceeds max_vertices={max_vertices}")
        self.index = index
        self.max_vertices = max_vertices


class BudgetExceededError(HatError):
    pass


class PreconditionError(HatError, ValueError):
    pass


class FormatError(HatError, ValueError):
    def __init__(self, message: str, path: str | None = None, line_no: int | None = None):
        location = ""
        if path is not None:
            location = f"{path}:{line_no}: " if line_no is not None else f"{path}: "
        elif line_no is not None:
            location = f"line {line_no}: "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line_no = line_no


class FalsificationError(HatError):
    """A statement the software certifies failed on a computed instance."""

    def __init__(self, check: str, witness: Any = None):
        super().__init__(f"check {check!r} failed" + (f" (witness: {witness})" if witness is not None else ""))
        self.check = check
        self.witness = witness
