"""Work-budget guard for full-domain sweeps.

Census cells and value histograms are costed in point evaluations before any
work starts; anything above the budget is refused unless explicitly forced.
The default of 10^10 keeps desk-scale cells fast while refusing the paper's
large cells (e.g. m=17, n=3 needs ~6*10^14 evaluations).
"""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10_000_000_000
ENV_VAR = "RINGCENSUS_BUDGET"


class BudgetError(RuntimeError):
    """Raised when an operation would exceed the evaluation budget."""

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


def budget_limit() -> int:
    """Current budget: RINGCENSUS_BUDGET when set, else the default."""
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be positive")
    return value
