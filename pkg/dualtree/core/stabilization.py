"""n-equivalence of dual mappings, stabilization certificates and word transport between levels."""
from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .alphabet import TreeWord
from .automaton import Automaton, StateWord
from .duality import _inverse_columns, dual_step
from .errors import BudgetExceeded, DomainError
from .settings import DEFAULTS

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _domain(states: Tuple[str, ...], n: int) -> Tuple[Tuple[StateWord, ...], Dict[StateWord, int]]:
    words = tuple(itertools.product(states, repeat=n))
    return words, {word: index for index, word in enumerate(words)}


def check_budget(states: Sequence[str], n: int, budget: int) -> None:
    if n < 0:
        raise DomainError(f"restriction length must be nonnegative, got {n}")
    size = len(states) ** n
    if size > budget:
        raise BudgetExceeded(f"|Q|^n = {len(states)}^{n} = {size} exceeds the restriction budget {budget}")


@dataclass(frozen=True, eq=False)
class RestrictedDualMap:
    """A map Q^n -> Q^n stored as the images of Q^n in product order."""

    states: Tuple[str, ...]
    n: int
    images: Tuple[StateWord, ...]
    source: Tuple[Any, ...] = field(default=("composite",))

    def __post_init__(self) -> None:
        if len(self.images) != len(self.states) ** self.n:
            raise DomainError(f"restricted map needs {len(self.states) ** self.n} images, got {len(self.images)}")

    @property
    def domain(self) -> Tuple[StateWord, ...]:
        return _domain(self.states, self.n)[0]

    def __getitem__(self, xi: Sequence[str]) -> StateWord:
        index = _domain(self.states, self.n)[1].get(tuple(xi))
        if index is None:
            raise DomainError(f"{list(xi)} is not a word of length {self.n} over {list(self.states)}")
        return self.images[index]

    def as_dict(self) -> Dict[StateWord, StateWord]:
        return dict(zip(self.domain, self.images))

    def _positions(self) -> Tuple[int, ...]:
        index = _domain(self.states, self.n)[1]
        return tuple(index[image] for image in self.images)

    def is_identity(self) -> bool:
        return self.images == self.domain

    def is_bijection(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def then(self, other: "RestrictedDualMap") -> "RestrictedDualMap":
        """Apply ``self`` first, then ``other``."""
        _check_compatible(self, other)
        return RestrictedDualMap(self.states, self.n, tuple(other[image] for image in self.images))

    def inverse(self) -> "RestrictedDualMap":
        if not self.is_bijection():
            raise DomainError("restricted map is not a bijection")
        preimage: List[StateWord] = [()] * len(self.images)
        for word, position in zip(self.domain, self._positions()):
            preimage[position] = word
        return RestrictedDualMap(self.states, self.n, tuple(preimage))

    def power(self, exponent: int) -> "RestrictedDualMap":
        result = identity_map(self.states, self.n)
        for _ in range(exponent):
            result = result.then(self)
        return result

    def order(self) -> int:
        """Least p >= 1 with self^p the identity (self must be a bijection)."""
        if not self.is_bijection():
            raise DomainError("restricted map is not a bijection")
        positions = self._positions()
        seen = [False] * len(positions)
        order = 1
        for start in range(len(positions)):
            if seen[start]:
                continue
            length = 0
            current = start
            while not seen[current]:
                seen[current] = True
                current = positions[current]
                length += 1
            order = math.lcm(order, length)
        return order


def identity_map(states: Sequence[str], n: int) -> RestrictedDualMap:
    states = tuple(states)
    return RestrictedDualMap(states, n, _domain(states, n)[0], ("identity",))


def _check_compatible(first: RestrictedDualMap, second: RestrictedDualMap) -> None:
    if first.n != second.n:
        raise DomainError(f"restriction lengths differ: {first.n} vs {second.n}")
    if first.states != second.states:
        raise DomainError("restricted maps act on different state sets")


@lru_cache(maxsize=8192)
def _restricted_images(automaton: Automaton, level: int, letter: int, n: int) -> Tuple[StateWord, ...]:
    words = _domain(automaton.states, n)[0]
    return tuple(dual_step(automaton, level, letter, xi) for xi in words)


def restrict_dual(
    automaton: Automaton, level: int, letter: int, n: int, budget: int = DEFAULTS.restriction_budget
) -> RestrictedDualMap:
    """D_{i,x} restricted to Q^n, materialized exhaustively."""
    check_budget(automaton.states, n, budget)
    automaton.tables(level).check_letter(letter)
    images = _restricted_images(automaton, level, letter, n)
    return RestrictedDualMap(automaton.states, n, images, (level, letter))


def maps_n_equivalent(first: RestrictedDualMap, second: RestrictedDualMap) -> bool:
    _check_compatible(first, second)
    return first.images == second.images


def level_maps(
    automaton: Automaton, level: int, n: int, budget: int = DEFAULTS.restriction_budget
) -> List[RestrictedDualMap]:
    """Restricted D_{i,x} for every letter x of level i, in ascending order."""
    size = automaton.alphabet.size(level)
    return [restrict_dual(automaton, level, x, n, budget) for x in range(1, size + 1)]


def _first_letters(maps: Iterable[RestrictedDualMap]) -> Dict[Tuple[StateWord, ...], int]:
    first: Dict[Tuple[StateWord, ...], int] = {}
    for letter, restricted in enumerate(maps, start=1):
        first.setdefault(restricted.images, letter)
    return first


@dataclass(frozen=True)
class LevelMatch:
    """Outcome of comparing the dual-map sets of two levels.

    ``forward`` sends each letter of the first level to the least matching
    letter of the second, ``backward`` the other way round. When the levels are
    not equivalent ``unmatched`` names the first (level, letter) without a partner.
    """

    equivalent: bool
    forward: Dict[int, int]
    backward: Dict[int, int]
    unmatched: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.equivalent


def levels_n_equivalent(
    automaton: Automaton, level: int, other: int, n: int, budget: int = DEFAULTS.restriction_budget
) -> LevelMatch:
    """Set-wise n-equivalence of {D_{i,x}} and {D_{i',x}}."""
    left = level_maps(automaton, level, n, budget)
    right = level_maps(automaton, other, n, budget)
    left_index, right_index = _first_letters(left), _first_letters(right)
    forward: Dict[int, int] = {}
    backward: Dict[int, int] = {}
    for letter, restricted in enumerate(left, start=1):
        partner = right_index.get(restricted.images)
        if partner is None:
            return LevelMatch(False, forward, backward, (level, letter))
        forward[letter] = partner
    for letter, restricted in enumerate(right, start=1):
        partner = left_index.get(restricted.images)
        if partner is None:
            return LevelMatch(False, forward, backward, (other, letter))
        backward[letter] = partner
    return LevelMatch(True, forward, backward)


def stabilization_certificate(
    automaton: Automaton,
    n: int,
    window: int,
    search_bound: int = DEFAULTS.search_bound,
    budget: int = DEFAULTS.restriction_budget,
) -> Optional[int]:
    """Smallest level L <= search_bound with L ~n j for every j in [L, L + window].

    This is a finite-window certificate, not a proof of stabilization.
    """
    if window < 1:
        raise DomainError(f"window must be at least 1, got {window}")
    check_budget(automaton.states, n, budget)
    signatures: Dict[int, frozenset] = {}

    def signature(level: int) -> frozenset:
        if level not in signatures:
            signatures[level] = frozenset(m.images for m in level_maps(automaton, level, n, budget))
        return signatures[level]

    for candidate in range(1, search_bound + 1):
        base = signature(candidate)
        if all(signature(j) == base for j in range(candidate + 1, candidate + window + 1)):
            logger.info("levels %d..%d are %d-equivalent", candidate, candidate + window, n)
            return candidate
    return None


def class_table(
    automaton: Automaton, levels: Iterable[int], n: int, budget: int = DEFAULTS.restriction_budget
) -> Dict[Tuple[int, int], str]:
    """Label each (level, letter) by the n-equivalence class of its dual map."""
    labels: Dict[Tuple[StateWord, ...], str] = {}
    table: Dict[Tuple[int, int], str] = {}
    for level in levels:
        for letter, restricted in enumerate(level_maps(automaton, level, n, budget), start=1):
            if restricted.images not in labels:
                labels[restricted.images] = "Id" if restricted.is_identity() else f"C{len(labels)}"
            table[(level, letter)] = labels[restricted.images]
    return table


def dual_inverse_mod_n(
    automaton: Automaton,
    level: int,
    letter: int,
    n: int,
    budget: int = DEFAULTS.restriction_budget,
    power_cap: int = DEFAULTS.power_cap,
) -> int:
    """Least p >= 1 with D_{i,x}^p ~n Id, so that D_{i,x}^{-1} ~n D_{i,x}^{p-1}."""
    _inverse_columns(automaton, level)
    restricted = restrict_dual(automaton, level, letter, n, budget)
    order = restricted.order()
    if order > power_cap:
        raise BudgetExceeded(f"order {order} of D_({level},{letter}) on Q^{n} exceeds the power cap {power_cap}")
    return order


def _matching_letter(
    automaton: Automaton, target_level: int, images: Tuple[StateWord, ...], n: int, budget: int
) -> int:
    for letter, restricted in enumerate(level_maps(automaton, target_level, n, budget), start=1):
        if restricted.images == images:
            return letter
    raise DomainError(f"level {target_level} has no letter whose dual map matches on Q^{n}")


def realize_word(
    automaton: Automaton,
    source_level: int,
    letters: Sequence[int],
    base: int,
    n: int,
    budget: int = DEFAULTS.restriction_budget,
) -> TreeWord:
    """Turn a sequence of level-``source_level`` generators into a word at ``base``.

    The j-th letter of the result is the least letter of level base + j - 1 whose
    restricted dual map equals that of the j-th generator.
    """
    out = []
    for offset, letter in enumerate(letters):
        images = restrict_dual(automaton, source_level, letter, n, budget).images
        out.append(_matching_letter(automaton, base + offset, images, n, budget))
    return TreeWord(base, tuple(out))


def transport_word(
    automaton: Automaton, word: TreeWord, base: int, n: int, budget: int = DEFAULTS.restriction_budget
) -> TreeWord:
    """A word at ``base`` whose letters match ``word`` level by level up to n-equivalence."""
    out = []
    for offset, (level, letter) in enumerate(word.levels()):
        images = restrict_dual(automaton, level, letter, n, budget).images
        out.append(_matching_letter(automaton, base + offset, images, n, budget))
    return TreeWord(base, tuple(out))


def restrict_word(
    automaton: Automaton, word: TreeWord, n: int, budget: int = DEFAULTS.restriction_budget
) -> RestrictedDualMap:
    """D_{i,w} restricted to Q^n."""
    result = identity_map(automaton.states, n)
    for level, letter in word.levels():
        result = result.then(restrict_dual(automaton, level, letter, n, budget))
    return RestrictedDualMap(automaton.states, n, result.images, ("word", word.base_level, word.letters))


def closure(generators: Sequence[RestrictedDualMap], limit: int = DEFAULTS.bfs_limit) -> Dict[Tuple[StateWord, ...], Tuple[int, ...]]:
    """Every composition of generators, with the generator indices of a shortest path.

    The identity is included with the empty path.
    """
    if not generators:
        return {}
    start = identity_map(generators[0].states, generators[0].n)
    paths: Dict[Tuple[StateWord, ...], Tuple[int, ...]] = {start.images: ()}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        path = paths[current.images]
        for index, generator in enumerate(generators):
            following = current.then(generator)
            if following.images not in paths:
                if len(paths) >= limit:
                    raise BudgetExceeded(f"closure exceeds {limit} elements")
                paths[following.images] = path + (index,)
                queue.append(following)
    logger.debug("closure of %d generators has %d elements", len(generators), len(paths))
    return paths
