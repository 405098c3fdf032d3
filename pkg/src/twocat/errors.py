"""Exception hierarchy shared by all modules."""
from __future__ import annotations


class TwoCatError(Exception):
    """Base class for every error raised by the package."""


class ConfigurationError(TwoCatError):
    pass


class MixedFields(TwoCatError):
    pass


class DivisionByZero(TwoCatError, ZeroDivisionError):
    pass


class NoRealEmbedding(TwoCatError):
    pass


class UnknownGen(TwoCatError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return Exception.__str__(self)


class NotComposable(TwoCatError):
    pass


class NoStar(TwoCatError):
    pass


class NotACell(TwoCatError):
    pass


class NotInCone(TwoCatError):
    pass


class MalformedWitness(TwoCatError, ValueError):
    pass


class NotTransitive(TwoCatError):
    pass


class NonUniqueMaximal(TwoCatError):
    pass


class PreconditionError(TwoCatError):
    pass


class NotActionClosed(TwoCatError):
    def __init__(self, gen: str, source: str, target: str):
        super().__init__(
            f"{gen} sends {source} into {target}, outside the subset")
        self.gen = gen
        self.source = source
        self.target = target


class HypothesisFailed(TwoCatError):
    def __init__(self, clause: str, detail: str):
        super().__init__(f"hypothesis ({clause}) failed: {detail}")
        self.clause = clause
        self.detail = detail


class NotLocal(TwoCatError):
    pass


class NotSubalgebra(TwoCatError):
    pass


class ParseError(TwoCatError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.col = col


class SemanticError(TwoCatError):
    def __init__(self, message: str, line: int = 0):
        where = f"line {line}: " if line else ""
        super().__init__(where + message)
        self.message = message
        self.line = line
