class MalformedInput(ValueError):
    """Input text could not be parsed into a network topology."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(ValueError):
    """Invalid combination of pipeline parameters."""


class InvalidPlan(ValueError):
    """A merge plan is not a matching on the clique tree."""
