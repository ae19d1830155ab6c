"""Automaton definition files (JSON)."""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Mapping

from . import utils
from .alphabet import make_alphabet
from .automaton import Automaton, ExplicitRule, LevelTables
from .errors import ParseError
from .settings import DEFAULTS
from .free_automata import STATES_A, STATES_B, build_automaton_A, build_automaton_B

logger = logging.getLogger(__name__)

PRESETS = {"woryna": (STATES_A, build_automaton_A), "woryna-B": (STATES_B, build_automaton_B)}


def _letter(key: Any, where: str) -> int:
    try:
        return int(key)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: letter {key!r} is not an integer") from exc


def _level_from_dict(data: Any, states: tuple[str, ...], index: int) -> LevelTables:
    where = f"level {index}"
    if not isinstance(data, Mapping):
        raise ParseError(f"{where}: expected an object with transition and output")
    transition_raw = data.get("transition")
    output_raw = data.get("output")
    if not isinstance(transition_raw, Mapping) or not isinstance(output_raw, Mapping):
        raise ParseError(f"{where}: transition and output must be objects keyed by state")
    transition: Dict[str, tuple[str, ...]] = {}
    output: Dict[str, tuple[int, ...]] = {}
    size = None
    for state in states:
        row_t = transition_raw.get(state)
        row_o = output_raw.get(state)
        if not isinstance(row_t, Mapping) or not isinstance(row_o, Mapping):
            raise ParseError(f"{where}: missing row for state {state!r}")
        row_t = {_letter(k, where): v for k, v in row_t.items()}
        row_o = {_letter(k, where): v for k, v in row_o.items()}
        letters_t, letters_o = sorted(row_t), sorted(row_o)
        if size is None:
            size = len(letters_t)
        expected = list(range(1, size + 1))
        if letters_t != expected or letters_o != expected:
            raise ParseError(f"{where}: rows of {state!r} must cover letters 1..{size}")
        transition[state] = tuple(str(row_t[x]) for x in expected)
        output[state] = tuple(_letter(row_o[x], where) for x in expected)
    return LevelTables(index, size or 0, transition, output)


def automaton_from_dict(data: Any) -> Automaton:
    """Build an automaton from a decoded definition document."""
    if not isinstance(data, Mapping):
        raise ParseError("automaton definition must be a JSON object")
    rule = data.get("rule")
    if not isinstance(rule, Mapping) or "kind" not in rule:
        raise ParseError("automaton definition needs a rule with a kind")
    kind = rule["kind"]
    name = str(data.get("name", ""))
    if kind in PRESETS:
        states, build = PRESETS[kind]
        declared = data.get("states")
        if declared is not None and tuple(declared) != states:
            raise ParseError(f"{kind} automata have states {list(states)}, got {declared!r}")
        return build(make_alphabet(data.get("alphabet"), admissible=True))
    if kind != "explicit":
        raise ParseError(f"unknown rule kind {kind!r}")
    states = data.get("states")
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise ParseError("states must be an array of names")
    levels = rule.get("levels")
    if not isinstance(levels, list) or not levels:
        raise ParseError("explicit rule needs a nonempty array of levels")
    tables = tuple(_level_from_dict(level, tuple(states), index) for index, level in enumerate(levels, start=1))
    tail = rule.get("tail", "repeat-last")
    return Automaton(tuple(states), make_alphabet(data.get("alphabet")), ExplicitRule(tables, tail), name)


def automaton_to_dict(automaton: Automaton, levels: int = DEFAULTS.check_levels) -> Dict[str, Any]:
    """Definition document; rule-defined automata are materialized on ``levels`` levels."""
    doc: Dict[str, Any] = {"states": list(automaton.states), "alphabet": automaton.alphabet.as_dict()}
    if automaton.name:
        doc["name"] = automaton.name
    kind = automaton.rule.kind
    if kind in PRESETS:
        doc["rule"] = {"kind": kind}
        return doc
    if isinstance(automaton.rule, ExplicitRule):
        count, tail = len(automaton.rule.levels), automaton.rule.tail
    else:
        count, tail = levels, "repeat-last"
        logger.debug("materializing %d levels of a %s automaton", levels, kind)
    rows = []
    for level in range(1, count + 1):
        tables = automaton.tables(level)
        rows.append(
            {
                "transition": {
                    q: {str(x): t for x, t in enumerate(tables.transition[q], start=1)} for q in automaton.states
                },
                "output": {q: {str(x): y for x, y in enumerate(tables.output[q], start=1)} for q in automaton.states},
            }
        )
    doc["rule"] = {"kind": "explicit", "levels": rows, "tail": tail}
    return doc


def loads_automaton(text: str) -> Automaton:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"automaton file is not valid JSON: {exc}") from exc
    return automaton_from_dict(data)


def load_automaton(path: Path) -> Automaton:
    """Read an automaton definition file."""
    if not path.exists():
        raise ParseError(f"automaton file {path} not found")
    return loads_automaton(path.read_text(encoding="utf-8"))


def dumps_automaton(automaton: Automaton, levels: int = DEFAULTS.check_levels) -> str:
    return json.dumps(automaton_to_dict(automaton, levels), indent=2, ensure_ascii=False)


def dump_automaton(automaton: Automaton, path: Path, levels: int = DEFAULTS.check_levels) -> Path:
    utils.write_json(path, automaton_to_dict(automaton, levels))
    return path
