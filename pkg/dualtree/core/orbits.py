"""Dual-map orbits of freely irreducible words under the automaton B."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .alphabet import ChangingAlphabet, TreeWord
from .automaton import StateWord
from .duality import dual_apply
from .errors import DomainError, SearchExhausted, VerificationError
from .patterns import NEG, POS, Sign, decompose, is_freely_irreducible, pattern_of, tilde
from .settings import DEFAULTS
from .stabilization import check_budget, level_maps, realize_word, transport_word
from .free_automata import A, A_INV, B, B_INV, build_automaton_B, lambda_index

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SwapWitness:
    """A letter z at ``level`` with D_{level,z}(xi) = xi_I tilde(xi_II)."""

    xi: StateWord
    level: int
    letter: int
    image: StateWord


def _letters_for(pattern: Sequence[Sign], positive: str, negative: str) -> StateWord:
    return tuple(positive if sign is POS else negative for sign in pattern)


def swap_witness(pattern: Sequence[Sign], alphabet: ChangingAlphabet) -> SwapWitness:
    """Build xi following ``pattern`` and a single letter swapping its second part.

    When the first part ends positive, xi uses a and b^-1 and the letter is
    r_i - (number of a in the first part) + 1. When it ends negative, xi uses
    a^-1 and b and the letter is (number of a^-1 in the first part) + 2. With an
    empty first part the letter is 1 or 2 depending on the leading sign.
    """
    pattern = tuple(pattern)
    if not pattern:
        raise DomainError("pattern must be nonempty")
    automaton = build_automaton_B(alphabet)
    level = lambda_index(automaton.alphabet, len(pattern))
    size = automaton.alphabet.size(level)
    first, second = decompose(pattern)
    ending = first[-1] if first else second[0]
    if ending is POS:
        xi = _letters_for(pattern, A, B_INV)
        letter = size - first.count(POS) + 1 if first else 1
    else:
        xi = _letters_for(pattern, B, A_INV)
        letter = first.count(NEG) + 2 if first else 2
    expected = xi[: len(first)] + tilde(xi[len(first):])
    image = dual_apply(automaton, level, [letter], xi)
    if image != expected:
        raise VerificationError(
            f"letter {letter} at level {level} does not swap the second part of {' '.join(xi)}",
            expected=expected,
            actual=image,
        )
    return SwapWitness(xi, level, letter, image)


@dataclass(frozen=True)
class Orbit:
    """Words reachable from ``start`` with the level-``level`` letters reaching them."""

    start: StateWord
    level: int
    paths: Dict[StateWord, Tuple[int, ...]]

    @property
    def words(self) -> List[StateWord]:
        return sorted(self.paths)

    def __contains__(self, word: object) -> bool:
        return word in self.paths


def _check_pair(xi: Sequence[str], eta: Sequence[str]) -> None:
    for word in (xi, eta):
        if not is_freely_irreducible(word):
            raise DomainError(f"{' '.join(word)!r} is not freely irreducible")
    if pattern_of(xi) != pattern_of(eta):
        raise DomainError(f"{' '.join(xi)!r} and {' '.join(eta)!r} follow different patterns")


def orbit(
    alphabet: ChangingAlphabet,
    xi: Sequence[str],
    budget: int = DEFAULTS.restriction_budget,
    limit: int = DEFAULTS.bfs_limit,
) -> Orbit:
    """Breadth-first orbit of xi under the restricted dual maps of level lambda_|xi|."""
    xi = tuple(xi)
    automaton = build_automaton_B(alphabet)
    n = len(xi)
    check_budget(automaton.states, n, budget)
    level = lambda_index(automaton.alphabet, n)
    generators: List[Tuple[int, Dict[StateWord, StateWord]]] = []
    seen_tables = set()
    for letter, restricted in enumerate(level_maps(automaton, level, n, budget), start=1):
        if restricted.images not in seen_tables:
            seen_tables.add(restricted.images)
            generators.append((letter, restricted.as_dict()))
    paths: Dict[StateWord, Tuple[int, ...]] = {xi: ()}
    queue = deque([xi])
    while queue:
        current = queue.popleft()
        for letter, table in generators:
            following = table[current]
            if following not in paths:
                if len(paths) >= limit:
                    raise SearchExhausted(f"orbit of {' '.join(xi)!r} exceeds {limit} words")
                paths[following] = paths[current] + (letter,)
                queue.append(following)
    logger.debug("orbit of %r at level %d has %d words", xi, level, len(paths))
    return Orbit(xi, level, paths)


def connect_irreducible(
    alphabet: ChangingAlphabet,
    xi: Sequence[str],
    eta: Sequence[str],
    budget: int = DEFAULTS.restriction_budget,
    limit: int = DEFAULTS.bfs_limit,
) -> TreeWord:
    """A word w at level lambda_n with D_{lambda_n,w}(xi) = eta."""
    xi, eta = tuple(xi), tuple(eta)
    _check_pair(xi, eta)
    automaton = build_automaton_B(alphabet)
    found = orbit(alphabet, xi, budget, limit)
    path = found.paths.get(eta)
    if path is None:
        raise SearchExhausted(
            f"{' '.join(eta)!r} is not in the orbit of {' '.join(xi)!r}", expected=eta, actual=found.words
        )
    n = len(xi)
    word = realize_word(automaton, found.level, path, found.level, n, budget)
    image = dual_apply(automaton, found.level, word, xi)
    if image != eta:
        raise VerificationError("connecting word does not reach its target", expected=eta, actual=image)
    logger.info("connected %r to %r with %s at level %d", xi, eta, list(word.letters), found.level)
    return word


@dataclass(frozen=True)
class EqualLengthPair:
    """Words w and v at level 1 of equal length with D_{1,w}(xi) = eta and D_{1,v}(xi) = zeta."""

    first: TreeWord
    second: TreeWord


def padding_letter(alphabet: ChangingAlphabet, level: int, n: int) -> int:
    """A letter at ``level`` whose dual map fixes every state word of length n."""
    letter = n + 2
    if letter > alphabet.size(level) - n + 1:
        raise DomainError(f"level {level} has no letter in {n + 2}..r_{level} - {n} + 1")
    return letter


def _pad(alphabet: ChangingAlphabet, word: TreeWord, length: int, n: int) -> TreeWord:
    letters = list(word.letters)
    while len(letters) < length:
        letters.append(padding_letter(alphabet, word.base_level + len(letters), n))
    return TreeWord(word.base_level, tuple(letters))


def connect_equal_length(
    alphabet: ChangingAlphabet,
    xi: Sequence[str],
    eta: Sequence[str],
    zeta: Sequence[str],
    minimum: int,
    budget: int = DEFAULTS.restriction_budget,
    limit: int = DEFAULTS.bfs_limit,
) -> EqualLengthPair:
    """Words of one common length >= ``minimum`` at level 1 sending xi to eta and to zeta.

    Both words start with a run of 1s long enough to reach a stabilized level,
    continue with a connecting word moved down from lambda_n, and the shorter
    one is padded with letters whose dual maps fix Q^n.
    """
    xi, eta, zeta = tuple(xi), tuple(eta), tuple(zeta)
    _check_pair(xi, eta)
    _check_pair(xi, zeta)
    automaton = build_automaton_B(alphabet)
    alphabet = automaton.alphabet
    n = len(xi)
    check_budget(automaton.states, n, budget)
    level = lambda_index(alphabet, n)
    lead = TreeWord(1, (1,) * max(minimum, level))
    moved = dual_apply(automaton, 1, lead, xi)
    words = []
    for target in (eta, zeta):
        tail = connect_irreducible(alphabet, moved, target, budget, limit)
        words.append(lead.concat(transport_word(automaton, tail, lead.end_level, n, budget)))
    length = max(len(word) for word in words)
    first, second = (_pad(alphabet, word, length, n) for word in words)
    for word, target in ((first, eta), (second, zeta)):
        image = dual_apply(automaton, 1, word, xi)
        if image != target:
            raise VerificationError("equal-length word does not reach its target", expected=target, actual=image)
    return EqualLengthPair(first, second)

