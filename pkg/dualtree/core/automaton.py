"""Automata over a changing alphabet and their action on tree words."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

from .alphabet import ChangingAlphabet, TreeWord
from .errors import DomainError, LetterOutOfRange, NotInvertibleError, UnknownState

logger = logging.getLogger(__name__)

StateWord = Tuple[str, ...]
WordLike = Union[TreeWord, Sequence[int]]


@dataclass(frozen=True)
class LevelTables:
    """Transition and output tables of one level.

    ``transition[q][x - 1]`` is phi_i(q, x) and ``output[q][x - 1]`` is psi_i(q, x).
    """

    level: int
    size: int
    transition: Mapping[str, Tuple[str, ...]]
    output: Mapping[str, Tuple[int, ...]]

    def check_letter(self, letter: int) -> None:
        if not 1 <= letter <= self.size:
            raise LetterOutOfRange(self.level, letter, self.size)

    def step(self, state: str, letter: int) -> Tuple[str, int]:
        """Return (next state, output letter)."""
        self.check_letter(letter)
        return self.transition[state][letter - 1], self.output[state][letter - 1]

    def state_function(self, state: str) -> Dict[int, int]:
        return {x: y for x, y in enumerate(self.output[state], start=1)}

    def state_map(self, letter: int) -> Dict[str, str]:
        """The map q -> phi_i(q, x) for a fixed letter."""
        self.check_letter(letter)
        return {q: targets[letter - 1] for q, targets in self.transition.items()}


class LevelRule(Protocol):
    """Produces the tables of an automaton at a given level."""

    kind: str

    def tables(self, automaton: "Automaton", level: int) -> LevelTables: ...


@dataclass(frozen=True, eq=False)
class Automaton:
    """A finite automaton whose tables are produced lazily, level by level."""

    states: Tuple[str, ...]
    alphabet: ChangingAlphabet
    rule: LevelRule
    name: str = ""
    _cache: Dict[int, LevelTables] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise DomainError("an automaton needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise DomainError(f"duplicate state names in {list(self.states)}")

    def check_state(self, state: str) -> None:
        if state not in self.states:
            raise UnknownState(state, self.states)

    def check_states(self, word: Iterable[str]) -> None:
        for state in word:
            self.check_state(state)

    def tables(self, level: int) -> LevelTables:
        """Tables at ``level``, built once and memoized."""
        cached = self._cache.get(level)
        if cached is not None:
            return cached
        size = self.alphabet.size(level)
        built = self.rule.tables(self, level)
        _validate_tables(self, built, level, size)
        logger.debug("materialized level %d of %s (%d letters)", level, self.name or self.rule.kind, size)
        # Concurrent callers may both build; the results are identical.
        self._cache[level] = built
        return built

    def renamed(self, mapping: Mapping[str, str], name: str = "") -> "Automaton":
        """Copy of this automaton with some states renamed."""
        for old in mapping:
            self.check_state(old)
        new_states = tuple(mapping.get(q, q) for q in self.states)
        if len(set(new_states)) != len(new_states):
            raise DomainError(f"renaming {dict(mapping)} merges states")
        return Automaton(new_states, self.alphabet, RenamedRule(self, dict(mapping)), name or self.name)


def _validate_tables(automaton: Automaton, tables: LevelTables, level: int, size: int) -> None:
    if tables.size != size:
        raise DomainError(f"level {level} tables cover {tables.size} letters but r_{level} = {size}")
    known = set(automaton.states)
    for state in automaton.states:
        targets = tables.transition.get(state)
        outputs = tables.output.get(state)
        if targets is None or outputs is None:
            raise DomainError(f"level {level} tables have no row for state {state!r}")
        if len(targets) != size or len(outputs) != size:
            raise DomainError(f"level {level} row of {state!r} does not cover letters 1..{size}")
        for target in targets:
            if target not in known:
                raise UnknownState(target, automaton.states)
        for letter in outputs:
            if not 1 <= letter <= size:
                raise LetterOutOfRange(level, letter, size)


def as_word(word: WordLike, level: int) -> TreeWord:
    if isinstance(word, TreeWord):
        if word.base_level != level:
            raise DomainError(f"word is based at level {word.base_level}, expected {level}")
        return word
    return TreeWord(level, tuple(word))


def state_function(automaton: Automaton, level: int, state: str) -> Dict[int, int]:
    """sigma_{i,q} as a table x -> psi_i(q, x)."""
    automaton.check_state(state)
    return automaton.tables(level).state_function(state)


def apply_state(automaton: Automaton, level: int, state: str, word: WordLike) -> Tuple[TreeWord, str]:
    """Image of ``word`` under A_{i,q} together with the state reached after reading it."""
    automaton.check_state(state)
    word = as_word(word, level)
    current = state
    out: List[int] = []
    for lvl, letter in word.levels():
        current, image = automaton.tables(lvl).step(current, letter)
        out.append(image)
    return TreeWord(level, tuple(out)), current


def apply_state_word_traced(
    automaton: Automaton, level: int, xi: Sequence[str], word: WordLike
) -> Tuple[TreeWord, List[str]]:
    """A_{i,xi}(w) and the final state of each pass, leftmost state first."""
    automaton.check_states(xi)
    current = as_word(word, level)
    finals: List[str] = []
    for state in xi:
        current, final = apply_state(automaton, level, state, current)
        finals.append(final)
    if not xi:
        for lvl, letter in current.levels():
            automaton.alphabet.check_letter(lvl, letter)
    return current, finals


def apply_state_word(automaton: Automaton, level: int, xi: Sequence[str], word: WordLike) -> TreeWord:
    """A_{i,xi}(w) = A_{i,q_n}(... A_{i,q_1}(w))."""
    return apply_state_word_traced(automaton, level, xi, word)[0]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded check: ``ok`` or the first counterexample found."""

    ok: bool
    counterexample: Optional[Tuple[Any, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


def first_collision(mapping: Sequence[Any]) -> Optional[Tuple[int, int]]:
    """First pair of 0-based positions (earlier, later) sharing an image, scanning ascending."""
    seen: Dict[Any, int] = {}
    for position, image in enumerate(mapping):
        if image in seen:
            return seen[image], position
        seen[image] = position
    return None


def is_invertible_up_to(automaton: Automaton, bound: int) -> Verdict:
    """Check that every state function is a bijection on levels 1..bound."""
    for level in range(1, bound + 1):
        tables = automaton.tables(level)
        for state in automaton.states:
            collision = first_collision(tables.output[state])
            if collision is not None:
                first, second = collision
                return Verdict(False, (level, state, first + 1, second + 1))
    return Verdict(True)


@dataclass(frozen=True)
class ExplicitRule:
    """Materialized per-level tables with a tail rule.

    ``tail`` is "repeat-last" (the last listed level repeats forever) or
    "cycle" (the listed levels repeat periodically).
    """

    levels: Tuple[LevelTables, ...]
    tail: str = "repeat-last"
    kind: str = "explicit"

    def __post_init__(self) -> None:
        if not self.levels:
            raise DomainError("explicit rule needs at least one level")
        if self.tail not in ("repeat-last", "cycle"):
            raise DomainError(f"unknown tail rule {self.tail!r}")

    def tables(self, automaton: Automaton, level: int) -> LevelTables:
        count = len(self.levels)
        if level <= count:
            index = level - 1
        elif self.tail == "repeat-last":
            index = count - 1
        else:
            index = (level - 1) % count
        source = self.levels[index]
        size = automaton.alphabet.size(level)
        if level > count and source.size != size:
            raise DomainError(
                f"tables are listed for levels 1..{count} only: the {self.tail} tail gives "
                f"{source.size} letters at level {level} but r_{level} = {size}"
            )
        return LevelTables(level, source.size, source.transition, source.output)


@dataclass(frozen=True)
class InverseRule:
    """phi'_i(q, x) = phi_i(q, s(x)) and psi'_i(q, x) = s(x), with s the inverse of sigma_{i,q}."""

    source: Automaton
    kind: str = "inverse"

    def tables(self, automaton: Automaton, level: int) -> LevelTables:
        base = self.source.tables(level)
        transition: Dict[str, Tuple[str, ...]] = {}
        output: Dict[str, Tuple[int, ...]] = {}
        for state in self.source.states:
            sigma = base.output[state]
            collision = first_collision(sigma)
            if collision is not None:
                raise NotInvertibleError(level, state, (collision[0] + 1, collision[1] + 1))
            preimage = [0] * base.size
            for x, y in enumerate(sigma, start=1):
                preimage[y - 1] = x
            output[state] = tuple(preimage)
            transition[state] = tuple(base.transition[state][x - 1] for x in preimage)
        return LevelTables(level, base.size, transition, output)


@dataclass(frozen=True)
class RenamedRule:
    source: Automaton
    mapping: Mapping[str, str]
    kind: str = "renamed"

    def tables(self, automaton: Automaton, level: int) -> LevelTables:
        base = self.source.tables(level)
        rename = lambda q: self.mapping.get(q, q)  # noqa: E731
        transition = {rename(q): tuple(rename(t) for t in row) for q, row in base.transition.items()}
        output = {rename(q): row for q, row in base.output.items()}
        return LevelTables(level, base.size, transition, output)


@dataclass(frozen=True)
class UnionRule:
    left: Automaton
    right: Automaton
    kind: str = "union"

    def tables(self, automaton: Automaton, level: int) -> LevelTables:
        first = self.left.tables(level)
        second = self.right.tables(level)
        return LevelTables(
            level,
            first.size,
            {**first.transition, **second.transition},
            {**first.output, **second.output},
        )


def invert(automaton: Automaton, name: str = "") -> Automaton:
    """The inverse automaton; invertibility is checked per level when queried."""
    return Automaton(automaton.states, automaton.alphabet, InverseRule(automaton), name or f"inverse of {automaton.name}")


def union(first: Automaton, second: Automaton, rename: Optional[Mapping[str, str]] = None, name: str = "") -> Automaton:
    """Disjoint union; ``rename`` is applied to the states of ``second``."""
    if first.alphabet.rule != second.alphabet.rule:
        raise DomainError(
            f"alphabets differ: {first.alphabet.describe()!r} vs {second.alphabet.describe()!r}"
        )
    if rename:
        second = second.renamed(rename)
    clash = sorted(set(first.states) & set(second.states))
    if clash:
        raise DomainError(f"state names collide in union: {', '.join(clash)}")
    return Automaton(first.states + second.states, first.alphabet, UnionRule(first, second), name)


def same_tables_up_to(first: Automaton, second: Automaton, bound: int) -> bool:
    """Whether two automata have identical tables on levels 1..bound."""
    if set(first.states) != set(second.states):
        return False
    for level in range(1, bound + 1):
        a, b = first.tables(level), second.tables(level)
        if a.size != b.size:
            return False
        for state in first.states:
            if a.transition[state] != b.transition[state] or a.output[state] != b.output[state]:
                return False
    return True
