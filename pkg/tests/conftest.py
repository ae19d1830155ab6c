"""Shared fixtures: the alphabet r_i = i + 1 and the automata A and B over it."""
from __future__ import annotations

import pytest

from dualtree.core.alphabet import make_alphabet
from dualtree.core.free_automata import build_automaton_A, build_automaton_B


@pytest.fixture(scope="session")
def alphabet():
    return make_alphabet("affine 1 1 2", admissible=True)


@pytest.fixture(scope="session")
def automaton_a(alphabet):
    return build_automaton_A(alphabet)


@pytest.fixture(scope="session")
def automaton_b(alphabet):
    return build_automaton_B(alphabet)


@pytest.fixture
def data_home(tmp_path, monkeypatch):
    monkeypatch.setenv("DUALTREE_HOME", str(tmp_path / "home"))
    return tmp_path / "home"
