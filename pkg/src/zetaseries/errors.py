"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain an evaluator is defined on."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class BudgetExceededError(RuntimeError):
    """Requested tolerance unreachable within the configured term budget.

    Carries the best evaluation achieved so far in ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class AlternationError(ValueError):
    """Series handed to the alternating accelerator does not alternate in sign."""


class BranchConsistencyError(ArithmeticError):
    """Imaginary residual of a branch-sensitive evaluation exceeds its cap,
    signalling a wrong cut convention."""


class ReportWriteError(OSError):
    """Report sink failed mid-write; output may be partial."""
