"""DOT rendering of automaton levels and dual-graph components."""
from __future__ import annotations

from collections import defaultdict
from typing import Dict, List

import graphviz

from .automaton import Automaton
from .duality import dual_graph_component


def _vertex(level: int, name: object) -> str:
    # graphviz reads "node:port" in edge endpoints, so ids avoid the colon
    return f"{level}/{name}"


def _add_vertex(g: graphviz.Digraph, level: int, name: object) -> None:
    g.node(_vertex(level, name), label=graphviz.nohtml(f"{level}:{name}"))


def automaton_digraph(automaton: Automaton, level: int) -> graphviz.Digraph:
    """Arrows (i, q) -> (i + 1, phi_i(q, x)) labelled by x; parallel arrows share one edge."""
    tables = automaton.tables(level)
    g = graphviz.Digraph(f"level_{level}", graph_attr={"label": f"{automaton.name or 'automaton'} level {level}", "rankdir": "LR"})
    g.attr("node", shape="circle")
    for q in automaton.states:
        _add_vertex(g, level, q)
    for q in sorted(set(t for row in tables.transition.values() for t in row), key=automaton.states.index):
        _add_vertex(g, level + 1, q)
    for q in automaton.states:
        grouped: Dict[str, List[int]] = defaultdict(list)
        for x, target in enumerate(tables.transition[q], start=1):
            grouped[target].append(x)
        for target, letters in grouped.items():
            label = ", ".join(str(x) for x in letters)
            g.edge(_vertex(level, q), _vertex(level + 1, target), label=graphviz.nohtml(label))
    return g


def dual_digraph(automaton: Automaton, level: int) -> graphviz.Digraph:
    """Gamma_i with one arrow x -> psi_i(q, x) labelled q|phi_i(q, x) per letter and state."""
    component = dual_graph_component(automaton, level)
    g = graphviz.Digraph(f"dual_{level}", graph_attr={"label": f"dual graph level {level}"})
    g.attr("node", shape="circle")
    for x in component.vertices:
        _add_vertex(g, level, x)
    for arrow in component.arrows:
        g.edge(_vertex(level, arrow.source), _vertex(level, arrow.target), label=graphviz.nohtml(arrow.label))
    return g


def export_dot(automaton: Automaton, levels: List[int], dual: bool = False) -> str:
    """DOT source for each requested level, one digraph after another."""
    render = dual_digraph if dual else automaton_digraph
    return "\n".join(render(automaton, level).source for level in levels)
