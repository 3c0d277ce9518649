"""Exception hierarchy shared by every module.

Each class carries the process exit code the CLI maps it to, so that the
command layer never needs a lookup table of its own.
"""

from __future__ import annotations


class DefectForgeError(Exception):
    exit_code = 1


class InvalidInput(DefectForgeError):
    exit_code = 2


class PreconditionViolated(DefectForgeError):
    exit_code = 2


class NotInPosition(PreconditionViolated):
    """The forms have a nontrivial common zero at every sampled point."""

    def __init__(self, message: str, subset: tuple[int, ...] | None = None):
        super().__init__(message)
        self.subset = subset


class ResourceLimit(DefectForgeError):
    exit_code = 3

    def __init__(self, message: str, detail=None):
        super().__init__(message)
        self.detail = detail


class PipelineFailure(DefectForgeError):
    exit_code = 4

    def __init__(self, message: str, stage: str | None = None, candidates=None):
        super().__init__(message if stage is None else f"[{stage}] {message}")
        self.stage = stage
        self.candidates = candidates or []


class Inconclusive(DefectForgeError):
    exit_code = 5


class CurveOnDivisor(DefectForgeError):
    exit_code = 6

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class ParseError(DefectForgeError):
    exit_code = 65

    def __init__(self, message: str, line: int, column: int, token: str = ""):
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}"
        tok = f" (near {token!r})" if token else ""
        super().__init__(f"{where}: {message}{tok}")
