"""Error types raised by the toolkit."""

from dataclasses import dataclass
from typing import Optional, Tuple


class GraphError(ValueError):
    """Invalid graph construction input."""

    def __init__(self, message: str, edge: Optional[Tuple[int, int]] = None) -> None:
        super().__init__(message)
        self.edge = edge


class StreamError(ValueError):
    """Stream violating the model it is consumed under."""

    def __init__(self, message: str, index: Optional[int] = None) -> None:
        super().__init__(message)
        self.index = index


class FormatError(ValueError):
    """Malformed graph, path, stream or RS file."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class InstanceError(ValueError):
    """Generator parameters outside the construction's preconditions."""


class BudgetExceededError(RuntimeError):
    """Exact search stopped after exhausting its node budget."""

    def __init__(self, expansions: int) -> None:
        super().__init__(f"exact search exceeded budget after {expansions} expansions")
        self.expansions = expansions


@dataclass(frozen=True)
class Violation:
    """First failed check of a validator; validators return None when valid."""

    kind: str
    position: int
    detail: str = ""
