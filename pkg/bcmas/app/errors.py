from typing import Optional


class BcError(Exception):
    """Base class for every domain error raised by bcmas."""


class SourceError(BcError):
    """An error tied to a position in `.bc` source text."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(self.located())

    def located(self) -> str:
        if self.line is None:
            return self.message
        return f"{self.line}:{self.col}: {self.message}"


class ParseError(SourceError):
    pass


class GroundingError(SourceError):
    pass


class ModelError(BcError):
    """Undeclared symbols, ill-formed laws or clashing fresh symbols."""


class SolverLimitError(BcError):
    pass


class CompositionError(BcError):
    pass


class ResolutionError(BcError):
    pass
