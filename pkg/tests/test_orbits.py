from __future__ import annotations

import itertools

import pytest

from dualtree.core.alphabet import TreeWord
from dualtree.core.duality import dual_apply
from dualtree.core.errors import BudgetExceeded, DomainError, SearchExhausted
from dualtree.core.orbits import (
    connect_equal_length,
    connect_irreducible,
    orbit,
    padding_letter,
    swap_witness,
)
from dualtree.core.patterns import (
    NEG,
    POS,
    decompose_word,
    enumerate_irreducible,
    enumerate_reduced,
    is_freely_irreducible,
    pattern_of,
    tilde,
)
from dualtree.core.free_automata import A, A_INV, B, B_INV, lambda_index


def words_by_pattern(max_length):
    groups = {}
    for xi in enumerate_reduced(max_length):
        groups.setdefault(pattern_of(xi), []).append(xi)
    return groups


def test_swap_single_letter(alphabet):
    witness = swap_witness((POS,), alphabet)
    assert (witness.xi, witness.level, witness.letter, witness.image) == ((A,), 2, 1, (B,))


def test_swap_alternating(alphabet):
    witness = swap_witness((POS, NEG), alphabet)
    assert witness.xi == (A, B_INV)
    assert (witness.level, witness.letter) == (4, 1)
    assert witness.image == (B, A_INV)


def test_swap_repeated_sign(alphabet):
    witness = swap_witness((POS, POS), alphabet)
    assert witness.xi == (A, A)
    assert (witness.level, witness.letter) == (4, 5)
    assert witness.image == (A, B)


def test_swap_negative_first_part(alphabet):
    witness = swap_witness((NEG, NEG), alphabet)
    assert witness.xi == (A_INV, A_INV)
    assert witness.letter == 3
    assert witness.image == (A_INV, B_INV)


def test_swap_every_short_pattern(automaton_b, alphabet):
    for length in range(1, 6):
        for pattern in itertools.product((POS, NEG), repeat=length):
            witness = swap_witness(pattern, alphabet)
            first, second = decompose_word(witness.xi)
            assert pattern_of(witness.xi) == pattern
            assert is_freely_irreducible(witness.xi)
            assert witness.level == lambda_index(alphabet, length)
            assert witness.image == first + tilde(second)
            assert dual_apply(automaton_b, witness.level, [witness.letter], witness.xi) == witness.image


def test_swap_empty_pattern(alphabet):
    with pytest.raises(DomainError):
        swap_witness((), alphabet)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_orbit_is_the_whole_pattern_class(alphabet, n):
    for xi in enumerate_reduced(n, n):
        found = orbit(alphabet, xi)
        assert found.level == lambda_index(alphabet, n)
        assert found.words == sorted(enumerate_irreducible(pattern_of(xi)))
        assert xi in found


def test_connect_examples(automaton_b, alphabet):
    assert connect_irreducible(alphabet, [A], [B]) == TreeWord(2, (1,))
    assert connect_irreducible(alphabet, [A, B_INV], [A, B_INV]) == TreeWord(4, ())
    word = connect_irreducible(alphabet, [A, B_INV], [B, A_INV])
    assert dual_apply(automaton_b, 4, word, [A, B_INV]) == (B, A_INV)


def test_connect_every_short_pair(automaton_b, alphabet):
    for words in words_by_pattern(3).values():
        for xi, eta in itertools.product(words, repeat=2):
            word = connect_irreducible(alphabet, xi, eta)
            assert word.base_level == lambda_index(alphabet, len(xi))
            assert dual_apply(automaton_b, word.base_level, word, xi) == eta


def test_connect_rejects_bad_pairs(alphabet):
    with pytest.raises(DomainError):
        connect_irreducible(alphabet, [A, A_INV], [A, A_INV])
    with pytest.raises(DomainError):
        connect_irreducible(alphabet, [A, B], [A, B_INV])


def test_connect_budget(alphabet):
    with pytest.raises(BudgetExceeded):
        connect_irreducible(alphabet, [A, B], [B, A], budget=15)
    with pytest.raises(BudgetExceeded):
        connect_equal_length(alphabet, [A, B], [B, A], [A, B], 1, budget=15)


def test_orbit_limit(alphabet):
    with pytest.raises(SearchExhausted):
        orbit(alphabet, [A, A, A], limit=2)


def test_padding_letter(alphabet):
    assert padding_letter(alphabet, 3, 1) == 3
    assert padding_letter(alphabet, 6, 2) == 4
    with pytest.raises(DomainError):
        padding_letter(alphabet, 1, 1)


def test_equal_length_fixing_words(automaton_b, alphabet):
    pair = connect_equal_length(alphabet, [A], [A], [A], 3)
    assert len(pair.first) == len(pair.second) >= 3
    assert pair.first.base_level == pair.second.base_level == 1
    assert dual_apply(automaton_b, 1, pair.first, [A]) == (A,)
    assert dual_apply(automaton_b, 1, pair.second, [A]) == (A,)


@pytest.mark.parametrize("minimum", [1, 3, 6])
def test_equal_length_every_short_triple(automaton_b, alphabet, minimum):
    for words in words_by_pattern(2).values():
        for xi, eta, zeta in itertools.product(words, repeat=3):
            pair = connect_equal_length(alphabet, xi, eta, zeta, minimum)
            assert len(pair.first) == len(pair.second) >= minimum
            assert dual_apply(automaton_b, 1, pair.first, xi) == eta
            assert dual_apply(automaton_b, 1, pair.second, xi) == zeta
