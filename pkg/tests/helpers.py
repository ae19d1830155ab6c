"""Small explicit automata used across the suites."""
from __future__ import annotations

from dualtree.core.alphabet import make_alphabet
from dualtree.core.automaton import Automaton, ExplicitRule, LevelTables

CONSTANT_TWO = make_alphabet("prefix 2 repeat-last")


def identity_level(level, states, size=2):
    letters = tuple(range(1, size + 1))
    return LevelTables(level, size, {q: (q,) * size for q in states}, {q: letters for q in states})


def collapsing_output_automaton():
    """One state whose output table is constant at level 3."""
    levels = (
        identity_level(1, ("p",)),
        identity_level(2, ("p",)),
        LevelTables(3, 2, {"p": ("p", "p")}, {"p": (1, 1)}),
        identity_level(4, ("p",)),
    )
    return Automaton(("p",), CONSTANT_TWO, ExplicitRule(levels), "collapse")


def merging_transition_automaton():
    """Letter 1 at level 2 sends both states to p."""
    states = ("p", "q")
    levels = (
        identity_level(1, states),
        LevelTables(2, 2, {"p": ("p", "p"), "q": ("p", "q")}, {"p": (1, 2), "q": (1, 2)}),
        identity_level(3, states),
    )
    return Automaton(states, CONSTANT_TWO, ExplicitRule(levels), "merge")


def alternating_automaton():
    """Odd levels swap p and q on every letter, even levels fix them."""
    states = ("p", "q")
    swap = LevelTables(1, 2, {"p": ("q", "q"), "q": ("p", "p")}, {"p": (1, 2), "q": (1, 2)})
    return Automaton(states, CONSTANT_TWO, ExplicitRule((swap, identity_level(2, states)), tail="cycle"), "alt")
