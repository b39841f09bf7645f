"""Error hierarchy for phasekit.

Verification outcomes are never raised; they are carried in reports.
These exceptions cover bad arguments and broken API contracts only.
"""


class PhaseKitError(Exception):
    """Base class for all phasekit errors."""


class DomainError(PhaseKitError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ContractError(PhaseKitError, ValueError):
    """An API contract was violated (wrong basis kind, disallowed combination)."""


class BasisMismatchError(ContractError):
    """Operands live on different Fock bases."""

    def __init__(self, left, right, operation: str):
        self.left = left
        self.right = right
        super().__init__(
            f"{operation}: basis mismatch ({left.describe()} vs {right.describe()})"
        )


class TruncationError(DomainError):
    """A prepared state loses too much norm to basis truncation."""

    def __init__(self, message: str, required_dim: int):
        self.required_dim = required_dim
        super().__init__(f"{message}; required minimum dimension is {required_dim}")
