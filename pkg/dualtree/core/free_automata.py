"""The 2-state automaton A, its symmetric companion B, and the levels lambda_n."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from .alphabet import ChangingAlphabet, make_alphabet
from .automaton import Automaton, LevelTables
from .errors import DomainError
from .settings import DEFAULTS

logger = logging.getLogger(__name__)

A, B = "a", "b"
A_INV, B_INV = "a^-1", "b^-1"
STATES_A = (A, B)
STATES_B = (A, B, A_INV, B_INV)


def cycle(size: int) -> Tuple[int, ...]:
    """sigma_i = (1 2 ... r_i) as a 1-based table."""
    return tuple(x % size + 1 for x in range(1, size + 1))


def cycle_inverse(size: int) -> Tuple[int, ...]:
    return tuple(size if x == 1 else x - 1 for x in range(1, size + 1))


def transposition(size: int) -> Tuple[int, ...]:
    """tau_i = (1 2)."""
    return tuple({1: 2, 2: 1}.get(x, x) for x in range(1, size + 1))


def _swap_on(letter: int, size: int, pair: Tuple[str, str]) -> Dict[str, Tuple[str, ...]]:
    first, second = pair
    return {
        first: tuple(second if x == letter else first for x in range(1, size + 1)),
        second: tuple(first if x == letter else second for x in range(1, size + 1)),
    }


@dataclass(frozen=True)
class AutomatonARule:
    kind: str = "woryna"

    def tables(self, automaton: Automaton, level: int) -> LevelTables:
        size = automaton.alphabet.size(level)
        transition = _swap_on(1, size, (A, B))
        output = {A: cycle(size), B: transposition(size)}
        return LevelTables(level, size, transition, output)


@dataclass(frozen=True)
class AutomatonBRule:
    kind: str = "woryna-B"

    def tables(self, automaton: Automaton, level: int) -> LevelTables:
        size = automaton.alphabet.size(level)
        transition = {**_swap_on(1, size, (A, B)), **_swap_on(2, size, (A_INV, B_INV))}
        output = {
            A: cycle(size),
            A_INV: cycle_inverse(size),
            B: transposition(size),
            B_INV: transposition(size),
        }
        return LevelTables(level, size, transition, output)


def _admissible(alphabet: ChangingAlphabet) -> ChangingAlphabet:
    if alphabet.admissible:
        return alphabet
    return make_alphabet(alphabet, admissible=True)


@lru_cache(maxsize=32)
def build_automaton_A(alphabet: ChangingAlphabet) -> Automaton:
    """Automaton A: letter 1 swaps a and b, a acts as the full cycle, b as (1 2)."""
    return Automaton(STATES_A, _admissible(alphabet), AutomatonARule(), "A")


@lru_cache(maxsize=32)
def build_automaton_B(alphabet: ChangingAlphabet) -> Automaton:
    """Automaton B, the union of A with its renamed inverse, in closed form."""
    return Automaton(STATES_B, _admissible(alphabet), AutomatonBRule(), "B")


def lambda_index(alphabet: ChangingAlphabet, n: int, scan_cap: int = DEFAULTS.lambda_scan_cap) -> int:
    """Least level i with r_i > 2n."""
    if n < 0:
        raise DomainError(f"length must be nonnegative, got {n}")
    for level in range(1, scan_cap + 1):
        if alphabet.size(level) > 2 * n:
            return level
    raise DomainError(
        f"no level up to {scan_cap} has more than {2 * n} letters; is {alphabet.describe()!r} unbounded?"
    )
