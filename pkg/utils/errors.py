"""
Error types shared by the sensing, simulation and command layers
"""

# Exit codes are a stable contract for scripts wrapping the CLI
EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4


class InvalidArgumentError(ValueError):
    """A single argument is out of its domain"""

    def __init__(self, parameter, message):
        self.parameter = parameter
        super().__init__(f"{parameter}: {message}")


class OrderingError(ValueError):
    """An event arrived with a timestamp older than one already applied"""

    def __init__(self, timestamp_ms, last_seen_ms):
        self.timestamp_ms = timestamp_ms
        self.last_seen_ms = last_seen_ms
        super().__init__(
            f"timestamp {timestamp_ms} ms is older than last seen {last_seen_ms} ms"
        )


class ValidationError(ValueError):
    """A structured input (scenario, config, CSV) has one or more violations"""

    def __init__(self, violations, source=None):
        self.violations = list(violations)
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(prefix + "; ".join(self.violations))
