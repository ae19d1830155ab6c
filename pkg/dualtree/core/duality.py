"""Dual mappings D_{i,x} and D_{i,w} acting on state words."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .automaton import Automaton, StateWord, Verdict, WordLike, as_word, first_collision
from .errors import DomainError, NotStateInvertibleError

logger = logging.getLogger(__name__)


def dual_step(automaton: Automaton, level: int, letter: int, xi: Sequence[str]) -> StateWord:
    """D_{i,x}(xi): feed x to q_1, thread each output letter into the next state."""
    tables = automaton.tables(level)
    tables.check_letter(letter)
    automaton.check_states(xi)
    out: List[str] = []
    x = letter
    for state in xi:
        out.append(tables.transition[state][x - 1])
        x = tables.output[state][x - 1]
    return tuple(out)


def dual_apply(automaton: Automaton, level: int, word: WordLike, xi: Sequence[str]) -> StateWord:
    """D_{i,w}(xi) = D_{i+m-1,x_m}(... D_{i,x_1}(xi))."""
    word = as_word(word, level)
    current: StateWord = tuple(xi)
    automaton.check_states(current)
    for lvl, letter in word.levels():
        current = dual_step(automaton, lvl, letter, current)
    return current


def is_state_invertible_up_to(automaton: Automaton, bound: int) -> Verdict:
    """Check that q -> phi_i(q, x) is a bijection for every level up to ``bound`` and every letter."""
    for level in range(1, bound + 1):
        tables = automaton.tables(level)
        for letter in range(1, tables.size + 1):
            column = [tables.transition[q][letter - 1] for q in automaton.states]
            collision = first_collision(column)
            if collision is not None:
                first, second = collision
                return Verdict(False, (level, letter, automaton.states[first], automaton.states[second]))
    return Verdict(True)


def _inverse_columns(automaton: Automaton, level: int) -> List[Dict[str, str]]:
    tables = automaton.tables(level)
    columns: List[Dict[str, str]] = []
    for letter in range(1, tables.size + 1):
        inverse: Dict[str, str] = {}
        for state in automaton.states:
            target = tables.transition[state][letter - 1]
            if target in inverse:
                raise NotStateInvertibleError(level, letter, (inverse[target], state))
            inverse[target] = state
        columns.append(inverse)
    return columns


def dual_step_inverse(automaton: Automaton, level: int, letter: int, image: Sequence[str]) -> StateWord:
    """The unique xi with D_{i,x}(xi) = image, recovered letter by letter."""
    tables = automaton.tables(level)
    tables.check_letter(letter)
    automaton.check_states(image)
    if not image:
        return ()
    columns = _inverse_columns(automaton, level)
    out: List[str] = []
    x = letter
    for target in image:
        state = columns[x - 1][target]
        out.append(state)
        x = tables.output[state][x - 1]
    return tuple(out)


def dual_apply_inverse(automaton: Automaton, level: int, word: WordLike, image: Sequence[str]) -> StateWord:
    """The unique xi with D_{i,w}(xi) = image."""
    word = as_word(word, level)
    current: StateWord = tuple(image)
    for lvl, letter in reversed(list(word.levels())):
        current = dual_step_inverse(automaton, lvl, letter, current)
    return current


class DualArrow(NamedTuple):
    source: int
    target: int
    input_state: str
    output_state: str

    @property
    def label(self) -> str:
        return f"{self.input_state}|{self.output_state}"


@dataclass(frozen=True)
class DualGraphComponent:
    """Gamma_i: one arrow x -> psi_i(q, x) labelled q|phi_i(q, x) per letter and state."""

    level: int
    vertices: Tuple[int, ...]
    arrows: Tuple[DualArrow, ...]

    def arrow(self, vertex: int, input_state: str) -> DualArrow:
        for candidate in self.arrows:
            if candidate.source == vertex and candidate.input_state == input_state:
                return candidate
        raise DomainError(f"no arrow from vertex {vertex} with input {input_state!r} at level {self.level}")

    def follow(self, start: int, states: Sequence[str]) -> StateWord:
        """Output entries along the path from ``start`` whose input entries are ``states``."""
        vertex = start
        out: List[str] = []
        for state in states:
            step = self.arrow(vertex, state)
            out.append(step.output_state)
            vertex = step.target
        return tuple(out)


def dual_graph_component(automaton: Automaton, level: int) -> DualGraphComponent:
    tables = automaton.tables(level)
    vertices = tuple(range(1, tables.size + 1))
    arrows = tuple(
        DualArrow(x, tables.output[q][x - 1], q, tables.transition[q][x - 1])
        for x in vertices
        for q in automaton.states
    )
    return DualGraphComponent(level, vertices, arrows)
