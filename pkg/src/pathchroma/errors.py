"""Shared exception types."""


class BudgetExceeded(Exception):
    """An enumeration or search ran past its configured budget.

    Raised instead of returning a verdict, so an exhausted budget is never
    mistaken for a contract violation or an UNSAT result.
    """
