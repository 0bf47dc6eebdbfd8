from __future__ import annotations


class HypothesisError(ValueError):
    """Input is well formed but violates a hypothesis a formula needs."""

    def __init__(self, message: str, terms: dict | None = None):
        super().__init__(message)
        self.terms = terms or {}


class InvariantError(RuntimeError):
    """An internal consistency check failed."""
