"""Exception hierarchy shared by every subpackage."""


class FocusedSLSError(Exception):
    """Base class for all errors raised by focusedsls."""


class InstanceError(FocusedSLSError, ValueError):
    """An explicit instance (or one of its text lines) is invalid."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(InstanceError):
    """Malformed input file."""


class CapExceeded(FocusedSLSError):
    """An enumeration or support cap was hit. Never silently truncated."""


class SupportCapExceeded(CapExceeded):
    pass


class EnumerationCapExceeded(CapExceeded):
    pass


class StepCapExceeded(CapExceeded):
    """A walk ran out of steps before reaching a flawless state."""

    def __init__(self, steps, trajectory=None):
        self.steps = steps
        self.trajectory = trajectory
        super().__init__(f"step cap exceeded after {steps} steps")


class PreconditionError(FocusedSLSError):
    """A verifier was called on an instance that violates its hypotheses."""
