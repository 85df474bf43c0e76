"""Exception hierarchy shared by every module.

Each error carries the CLI exit code it maps to, so the command line layer
never has to know which module raised.
"""
from __future__ import annotations


class CatCausalError(Exception):
    exit_code = 1


class ParseError(CatCausalError):
    exit_code = 3


class ValidationError(CatCausalError):
    exit_code = 2

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class ScaleExceeded(CatCausalError):
    exit_code = 4


# fincat
class MissingComposite(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class BadIdentity(ValidationError):
    pass


class CyclicQuiver(ValidationError):
    pass


class NotAFunctor(ValidationError):
    pass


# simplex
class IndexOutOfRange(ValidationError):
    pass


class RankMismatch(ValidationError):
    pass


class IncompatibleFaces(ValidationError):
    pass


# causal
class UnknownVariable(ValidationError):
    pass


class UnknownEdge(ValidationError):
    pass


class OverlappingArguments(ValidationError):
    pass


class GroundSetMismatch(ValidationError):
    pass


class VariableSetMismatch(ValidationError):
    pass


# elements
class NonFunctorial(ValidationError):
    pass


class MissingAction(ValidationError):
    pass


class DanglingRow(ValidationError):
    pass


class UnknownRow(ValidationError):
    pass


class NonCommutingSquare(ValidationError):
    pass


class NotPullbackInstance(ValidationError):
    pass


# homology
class BoundarySquareNonzero(CatCausalError):
    pass


class TruncationMismatch(ValidationError):
    pass
