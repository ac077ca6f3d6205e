"""Exception types shared across the library."""


class InputError(ValueError):
    """Malformed or inconsistent input (dimension mismatch, bad simplex, ...)."""


class ResourceLimitError(RuntimeError):
    """A configured budget (simplex count, search size, window size) was exceeded."""


class AcyclicityError(RuntimeError):
    """A matching expected to be acyclic contains a directed cycle."""

    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__(f"matching is not acyclic; witness cycle of length {len(cycle)}")
