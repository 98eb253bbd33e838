"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RttLabError(Exception):
    """Base class for all errors raised by rttlab."""


class EmptyGraphError(RttLabError, ValueError):
    pass


class HostMismatchError(RttLabError, ValueError):
    pass


class PatternError(RttLabError, ValueError):
    pass


class ResourceError(RttLabError):
    """A search ran out of budget.

    ``lower`` and ``upper`` are the best certified bounds known when the
    search stopped; ``witness`` is the best object found so far (if any).
    """

    def __init__(self, message: str, *, lower=None, upper=None, witness=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.witness = witness


class CertificateError(RttLabError):
    """A certificate failed re-verification of its own witnesses."""


class ConstructionError(RttLabError):
    """A randomized construction or assembly pipeline gave up.

    ``stage`` names the pipeline step that failed and ``metrics`` carries
    diagnostics from the closest attempt.
    """

    def __init__(self, message: str, *, stage: str, metrics: dict | None = None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.metrics = metrics or {}


class ParseError(RttLabError, ValueError):
    def __init__(self, message: str, *, position: int | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"byte {position}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.position = position
        self.line = line
