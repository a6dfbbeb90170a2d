"""Exception types shared across the package."""


class GraphParseError(ValueError):
    """Malformed graph file. Carries the 1-based line number of the offense."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CapacityError(ValueError):
    """Requested exact computation exceeds the hard size guard."""


class DivergenceError(RuntimeError):
    """Integration produced a non-finite state. Carries the failing step index."""

    def __init__(self, step: int):
        super().__init__(f"non-finite phase state at step {step}")
        self.step = step


class ConfigError(ValueError):
    """Invalid or unknown entries in a run configuration document."""
