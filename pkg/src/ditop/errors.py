"""Exception hierarchy. Every error raised by the package derives from DitopError."""

from __future__ import annotations


class DitopError(Exception):
    """Base class; `details` is a JSON-serializable dict for machine-readable reports."""

    kind = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), **self.details}


# scene geometry

class SceneError(DitopError):
    pass


class SceneFormatError(SceneError):
    pass


class DegenerateBox(SceneError):
    pass


class BoxOutOfAmbient(SceneError):
    pass


class MarkedPointForbidden(SceneError):
    pass


class IdentificationConflict(SceneError):
    pass


# path engine

class BudgetExceeded(DitopError):
    pass


class NotTwoDimensional(DitopError):
    pass


# categorical checks

class InexactHomSet(DitopError):
    pass


class SubsetBudgetExceeded(DitopError):
    pass


class NotAPospace(DitopError):
    pass


class CoverInvalid(DitopError):
    pass


class InclusionNotFunctorial(DitopError):
    pass


class IncompatibleRetracts(DitopError):
    pass


# PV front-end

class PvError(DitopError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None, **details):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message, line=line, column=column, **details)
        self.line = line
        self.column = column


class PvSyntaxError(PvError):
    pass


class UnknownResource(PvError):
    pass


class UnmatchedRelease(PvError):
    pass


class ReleaseBeforeAcquire(PvError):
    pass


class DoubleAcquire(PvError):
    pass


class TooManyProcesses(PvError):
    pass
