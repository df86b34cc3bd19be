"""Exceptions and the counterexample certificate shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class GroupSpecError(ValueError):
    """Malformed or unsupported group spec; `position` is the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


class InvalidActionError(ValueError):
    pass


class SearchBoundExceeded(RuntimeError):
    pass


class InvalidOperatorError(ValueError):
    pass


class CenterConditionViolated(ValueError):
    def __init__(self, witness: int, message: str = ""):
        super().__init__(message or f"pi_H B(h) is not central for h = {witness}")
        self.witness = witness


class CompatibilityError(ValueError):
    def __init__(self, witness: int, message: str = ""):
        super().__init__(message or f"twist compatibility fails at g = {witness}")
        self.witness = witness


class IntertwiningError(ValueError):
    """A map between RB-groups is not a homomorphism of RB-groups."""


class InvalidBraceError(ValueError):
    pass


class InvalidPostGroupError(ValueError):
    pass


class RecursionInconsistency(ValueError):
    """Seeds for a Z_{p^2} candidate contradict the defining recursion."""


@dataclass(frozen=True)
class Violation:
    """First failing instance of an identity: its arguments and the two sides."""

    witness: tuple
    lhs: Any
    rhs: Any

    def to_json(self) -> dict:
        key = "pair" if len(self.witness) == 2 else "triple"
        return {key: list(self.witness), "lhs": _plain(self.lhs), "rhs": _plain(self.rhs)}


def _plain(x):
    return list(x) if isinstance(x, tuple) else x
