from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from dualtree.core.alphabet import TreeWord, iter_words
from dualtree.core.errors import BudgetExceeded, DomainError
from dualtree.core.stabilization import (
    RestrictedDualMap,
    class_table,
    closure,
    dual_inverse_mod_n,
    identity_map,
    level_maps,
    levels_n_equivalent,
    maps_n_equivalent,
    realize_word,
    restrict_dual,
    restrict_word,
    stabilization_certificate,
    transport_word,
)
from dualtree.core.free_automata import A, A_INV, B, B_INV, STATES_B, lambda_index

from .helpers import alternating_automaton


def test_restrict_dual_identity_for_large_letters(automaton_b):
    restricted = restrict_dual(automaton_b, 3, 3, 1)
    assert restricted.is_identity()
    assert restricted.source == (3, 3)


def test_restrict_dual_letter_one(automaton_b):
    for level in (1, 2, 5):
        table = restrict_dual(automaton_b, level, 1, 1).as_dict()
        assert table == {(A,): (B,), (B,): (A,), (A_INV,): (A_INV,), (B_INV,): (B_INV,)}


def test_single_state_restriction_is_the_transition_column(automaton_b):
    tables = automaton_b.tables(4)
    for x in automaton_b.alphabet.letters(4):
        restricted = restrict_dual(automaton_b, 4, x, 1)
        assert {q[0]: image[0] for q, image in restricted.as_dict().items()} == tables.state_map(x)


def test_budget(automaton_b):
    with pytest.raises(BudgetExceeded):
        restrict_dual(automaton_b, 1, 1, 7)
    with pytest.raises(BudgetExceeded):
        restrict_dual(automaton_b, 1, 1, 3, budget=63)
    assert len(restrict_dual(automaton_b, 1, 1, 3, budget=64).images) == 64


def test_maps_n_equivalent(automaton_b):
    t = restrict_dual(automaton_b, 3, 2, 2)
    assert maps_n_equivalent(t, t)
    assert maps_n_equivalent(restrict_dual(automaton_b, 4, 3, 1), restrict_dual(automaton_b, 5, 4, 1))
    assert not maps_n_equivalent(restrict_dual(automaton_b, 1, 1, 1), restrict_dual(automaton_b, 1, 2, 1))
    with pytest.raises(DomainError):
        maps_n_equivalent(restrict_dual(automaton_b, 1, 1, 1), restrict_dual(automaton_b, 1, 1, 2))


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 60)), min_size=3, max_size=6), st.integers(1, 2))
def test_n_equivalence_is_an_equivalence(automaton_b, picks, n):
    maps = [restrict_dual(automaton_b, i, (x - 1) % automaton_b.alphabet.size(i) + 1, n) for i, x in picks]
    for f, g, h in itertools.product(maps, repeat=3):
        assert maps_n_equivalent(f, f)
        assert maps_n_equivalent(f, g) == maps_n_equivalent(g, f)
        if maps_n_equivalent(f, g) and maps_n_equivalent(g, h):
            assert maps_n_equivalent(f, h)


def test_monotonicity(automaton_b):
    pairs = [((i, x), (j, y)) for i in range(1, 6) for j in range(1, 6)
             for x in automaton_b.alphabet.letters(i) for y in automaton_b.alphabet.letters(j)]
    for (i, x), (j, y) in pairs:
        if maps_n_equivalent(restrict_dual(automaton_b, i, x, 2), restrict_dual(automaton_b, j, y, 2)):
            assert maps_n_equivalent(restrict_dual(automaton_b, i, x, 1), restrict_dual(automaton_b, j, y, 1))


def test_levels_n_equivalent(automaton_b):
    match = levels_n_equivalent(automaton_b, 2, 3, 1)
    assert match
    assert match.forward == {1: 1, 2: 2, 3: 3}
    assert match.backward == {1: 1, 2: 2, 3: 3, 4: 3}
    assert levels_n_equivalent(automaton_b, 4, 4, 2)
    failed = levels_n_equivalent(automaton_b, 1, 2, 1)
    assert not failed
    assert failed.unmatched == (2, 3)


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 4), (3, 6)])
def test_stabilization_matches_lambda(automaton_b, alphabet, n, expected):
    assert lambda_index(alphabet, n) == expected
    assert stabilization_certificate(automaton_b, n, 4) == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_stabilized_levels_and_identity_complement(automaton_b, alphabet, n):
    level = lambda_index(alphabet, n)
    for j in range(level, level + 5):
        assert levels_n_equivalent(automaton_b, level, j, n)
        for x in range(n + 2, alphabet.size(j) - n + 2):
            assert restrict_dual(automaton_b, j, x, n).is_identity()


def test_alternating_levels_never_stabilize():
    automaton = alternating_automaton()
    assert stabilization_certificate(automaton, 1, 4, search_bound=20) is None
    assert stabilization_certificate(automaton, 1, 1, search_bound=20) is None


def test_window_must_be_positive(automaton_b):
    with pytest.raises(DomainError):
        stabilization_certificate(automaton_b, 1, 0)


def test_dual_inverse_mod_n(automaton_b):
    assert dual_inverse_mod_n(automaton_b, 3, 1, 1) == 2
    assert dual_inverse_mod_n(automaton_b, 3, 4, 1) == 1
    p = dual_inverse_mod_n(automaton_b, 3, 1, 2)
    restricted = restrict_dual(automaton_b, 3, 1, 2)
    power = identity_map(STATES_B, 2)
    for step in range(1, p + 1):
        power = power.then(restricted)
        assert power.is_identity() == (step == p)
    assert maps_n_equivalent(restricted.power(p - 1), restricted.inverse())


def test_power_cap(automaton_b):
    with pytest.raises(BudgetExceeded):
        dual_inverse_mod_n(automaton_b, 3, 1, 1, power_cap=1)


def test_restricted_map_rejects_wrong_size():
    with pytest.raises(DomainError):
        RestrictedDualMap(("p", "q"), 1, (("p",),))


def test_class_table_labels(automaton_b):
    table = class_table(automaton_b, [1, 2, 3], 1)
    assert table[(2, 3)] == "Id"
    assert table[(3, 3)] == table[(3, 4)] == "Id"
    assert table[(1, 1)] == table[(2, 1)] == table[(3, 1)]
    assert table[(1, 1)] != table[(1, 2)]


def test_transport_to_lambda(automaton_b, alphabet):
    for n in (1, 2):
        level = lambda_index(alphabet, n)
        for start in range(level, level + 3):
            for length in range(4):
                for w in iter_words(alphabet, start, length):
                    moved = transport_word(automaton_b, w, level, n)
                    assert moved.base_level == level
                    assert maps_n_equivalent(restrict_word(automaton_b, w, n), restrict_word(automaton_b, moved, n))


def test_word_sets_agree_between_stabilized_levels(automaton_b, alphabet):
    n = 2
    level = lambda_index(alphabet, n)
    at_lambda = {restrict_word(automaton_b, w, n).images for length in range(3) for w in iter_words(alphabet, level, length)}
    later = {restrict_word(automaton_b, w, n).images for length in range(3) for w in iter_words(alphabet, level + 2, length)}
    assert at_lambda == later


@pytest.mark.parametrize("n", [1, 2])
def test_generated_group_is_realized_at_lambda(automaton_b, alphabet, n):
    level = lambda_index(alphabet, n)
    generators = level_maps(automaton_b, level, n)
    inverses = [g.inverse() for g in generators]
    plain = closure(generators)
    assert set(closure(generators + inverses)) == set(plain)
    for later in range(level + 1, level + 3):
        assert set(closure(generators + level_maps(automaton_b, later, n))) == set(plain)
    for images, path in plain.items():
        letters = [index + 1 for index in path]
        word = realize_word(automaton_b, level, letters, level, n)
        assert restrict_word(automaton_b, word, n).images == images


def test_realize_word_uses_least_letters(automaton_b):
    word = realize_word(automaton_b, 2, [3, 1], 3, 1)
    assert word == TreeWord(3, (3, 1))


def test_closure_limit(automaton_b):
    with pytest.raises(BudgetExceeded):
        closure(level_maps(automaton_b, 4, 2), limit=2)


def test_budget_applies_to_certificates(automaton_b):
    with pytest.raises(BudgetExceeded):
        stabilization_certificate(automaton_b, 7, 2)


