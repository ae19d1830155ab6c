"""Exceptions raised by dualtree, each mapped to a CLI exit code."""
from __future__ import annotations

from typing import Any, Sequence


class LabError(Exception):
    """Base class for every dualtree failure."""

    exit_code = 1


class ParseError(LabError, ValueError):
    """Malformed text, JSON document or rule description."""

    exit_code = 2


class DomainError(LabError, ValueError):
    """Input outside the domain of an operation."""

    exit_code = 3


class LetterOutOfRange(DomainError):
    def __init__(self, level: int, letter: int, size: int) -> None:
        super().__init__(f"letter {letter} out of range 1..{size} at level {level}")
        self.level = level
        self.letter = letter
        self.size = size


class UnknownState(DomainError):
    def __init__(self, state: str, known: Sequence[str] = ()) -> None:
        detail = f" (known: {', '.join(known)})" if known else ""
        super().__init__(f"unknown state {state!r}{detail}")
        self.state = state


class NotInvertibleError(DomainError):
    """A state function collapses two letters."""

    def __init__(self, level: int, state: str, letters: tuple[int, int]) -> None:
        super().__init__(
            f"state function of {state!r} at level {level} is not invertible: "
            f"letters {letters[0]} and {letters[1]} share an image"
        )
        self.level = level
        self.state = state
        self.letters = letters


class NotStateInvertibleError(DomainError):
    """The map q -> phi_i(q, x) collapses two states."""

    def __init__(self, level: int, letter: int, states: tuple[str, str]) -> None:
        super().__init__(
            f"letter {letter} at level {level} sends states {states[0]!r} and {states[1]!r} "
            "to the same state"
        )
        self.level = level
        self.letter = letter
        self.states = states


class VerificationError(LabError):
    """A computed result failed its own check."""

    exit_code = 4

    def __init__(self, message: str, expected: Any = None, actual: Any = None) -> None:
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class SearchExhausted(VerificationError):
    """A bounded search ended without the result its theory guarantees."""


class BudgetExceeded(LabError):
    """An exhaustive computation would exceed the configured budget."""

    exit_code = 5
