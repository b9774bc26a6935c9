"""Exception types shared across the package."""


class SizeLimitError(RuntimeError):
    """An enumeration or construction exceeded its configured cap."""


class StructureError(ValueError):
    """An input violates a structural invariant it was contracted to satisfy."""


class ConvergenceError(RuntimeError):
    """An iterative solver ran out of iterations."""

    def __init__(self, message: str, last_estimate: float):
        super().__init__(message)
        self.last_estimate = last_estimate
