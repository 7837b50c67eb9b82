"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ConstraintError(ValueError):
    """A parameter tuple or instance violates a named side condition."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"violated: {condition}" + (f" ({detail})" if detail else ""))


class InsufficientLevelsError(ValueError):
    """The g sequence is too short for the requested vector; extend it."""


class OracleBudgetError(RuntimeError):
    """Brute-force enumeration would exceed its budget."""


class TieExplosionError(RuntimeError):
    """Too many greedy sets because of ties at the threshold."""
