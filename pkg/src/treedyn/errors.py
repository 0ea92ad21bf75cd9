class TreeDynError(ValueError):
    """Base class for rejected inputs and failed preconditions."""


class InvalidTreeError(TreeDynError):
    pass


class PatternError(TreeDynError):
    pass


class SnowflakeError(TreeDynError):
    pass


class ForcingError(TreeDynError):
    pass


class MapError(TreeDynError):
    pass


class SynthesisError(TreeDynError):
    pass


class PatternFileError(TreeDynError):
    """Malformed pattern file; ``line`` is 1-based, 0 when not tied to a line."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class InvariantViolation(RuntimeError):
    """A property guaranteed by the theory failed to hold; indicates a bug."""


class BudgetExceededError(TreeDynError):
    """The loop budget ran out before some periods could be decided."""

    def __init__(self, periods: list[int]):
        self.periods = list(periods)
        super().__init__(f"loop budget exceeded for periods {self.periods}")
