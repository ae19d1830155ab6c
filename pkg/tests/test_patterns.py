from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from dualtree.core.alphabet import iter_words
from dualtree.core.duality import dual_apply
from dualtree.core.errors import DomainError, ParseError
from dualtree.core.patterns import (
    GROUP_LETTERS,
    NEG,
    POS,
    count_reduced,
    decompose,
    decompose_word,
    enumerate_irreducible,
    enumerate_reduced,
    format_pattern,
    free_reduce,
    inverse_word,
    is_freely_irreducible,
    parse_pattern,
    pattern_of,
    second_part_shape,
    shape_words,
    sign_of,
    tilde,
)
from dualtree.core.free_automata import A, A_INV, B, B_INV

GROUP_WORDS = st.lists(st.sampled_from(GROUP_LETTERS), max_size=8)


def all_words(max_length):
    for length in range(max_length + 1):
        yield from itertools.product(GROUP_LETTERS, repeat=length)


def test_pattern_of():
    assert pattern_of([A, B_INV, A]) == (POS, NEG, POS)
    assert pattern_of([]) == ()
    assert sign_of(B) is POS
    assert sign_of(A_INV) is NEG
    with pytest.raises(DomainError):
        sign_of("c")


@pytest.mark.parametrize("text", ["+-+", "* *^-1 *", "pos neg pos", "+ - +", "* *' *"])
def test_parse_pattern(text):
    assert parse_pattern(text) == (POS, NEG, POS)


def test_parse_pattern_edge_cases():
    assert parse_pattern("  ") == ()
    assert format_pattern((POS, NEG)) == "* *^-1"
    with pytest.raises(ParseError):
        parse_pattern("+x")


def test_freely_irreducible():
    assert not is_freely_irreducible([A, A_INV])
    assert not is_freely_irreducible([B, B_INV, A])
    assert is_freely_irreducible([A, B_INV])
    assert is_freely_irreducible([])
    assert all(is_freely_irreducible([q]) for q in GROUP_LETTERS)
    with pytest.raises(DomainError):
        is_freely_irreducible([A, "c"])


def test_tilde_examples():
    assert tilde([A, B_INV]) == (B, A_INV)
    assert tilde([]) == ()


@given(GROUP_WORDS)
def test_tilde_properties(xi):
    assert tilde(tilde(xi)) == tuple(xi)
    assert pattern_of(tilde(xi)) == pattern_of(xi)
    assert is_freely_irreducible(tilde(xi)) == is_freely_irreducible(xi)


@given(GROUP_WORDS)
def test_free_reduce_properties(xi):
    reduced = free_reduce(xi)
    assert is_freely_irreducible(reduced)
    assert free_reduce(reduced) == reduced
    assert free_reduce(tuple(xi) + inverse_word(xi)) == ()


def test_free_reduce_examples():
    assert free_reduce([A, B, B_INV, A_INV]) == ()
    assert free_reduce([A, A_INV, B]) == (B,)
    assert inverse_word([A, B_INV]) == (B, A_INV)


@pytest.mark.parametrize(
    "pattern, first, second",
    [
        ((POS, NEG), (), (POS, NEG)),
        ((POS, POS, NEG), (POS,), (POS, NEG)),
        ((POS, POS), (POS,), (POS,)),
        ((NEG,), (), (NEG,)),
        ((POS, NEG, NEG, POS, NEG), (POS, NEG), (NEG, POS, NEG)),
    ],
)
def test_decompose_examples(pattern, first, second):
    assert decompose(pattern) == (first, second)


def valid_splits(pattern):
    splits = []
    for index in range(len(pattern)):
        head, tail = pattern[:index], pattern[index:]
        alternating = all(x != y for x, y in zip(tail, tail[1:]))
        if alternating and (not head or head[-1] == tail[0]):
            splits.append((head, tail))
    return splits


def test_decomposition_is_unique():
    for length in range(1, 8):
        for pattern in itertools.product((POS, NEG), repeat=length):
            splits = valid_splits(pattern)
            assert splits == [decompose(pattern)]


def test_decompose_word_splits_at_the_pattern_index():
    xi = (A, B, A_INV, B)
    assert decompose_word(xi) == ((A,), (B, A_INV, B))
    with pytest.raises(DomainError):
        decompose([])
    with pytest.raises(DomainError):
        decompose_word([])


def test_second_part_shape():
    assert second_part_shape((POS, NEG, POS)) == (POS, 1, 1)
    assert second_part_shape((NEG, POS)) == (NEG, 1, 0)
    assert second_part_shape((POS,)) == (POS, 0, 1)
    with pytest.raises(DomainError):
        second_part_shape(())
    with pytest.raises(DomainError):
        second_part_shape((POS, POS))


def test_only_two_irreducible_words_follow_a_second_part_shape():
    for leading in (POS, NEG):
        for l, r in itertools.product(range(4), (0, 1)):
            if (l, r) == (0, 0) or l + r > 3:
                continue
            other = NEG if leading is POS else POS
            pattern = (leading, other) * l + (leading,) * r
            words = set(enumerate_irreducible(pattern))
            assert words == set(shape_words(leading, l, r))
            assert len(words) == 2


def test_shape_words_examples():
    assert shape_words(POS, 1, 1) == ((A, B_INV, A), (B, A_INV, B))
    assert shape_words(NEG, 1, 0) == ((A_INV, B), (B_INV, A))


def test_enumerate_irreducible_matches_brute_force():
    for length in range(1, 6):
        for pattern in itertools.product((POS, NEG), repeat=length):
            expected = [w for w in itertools.product(GROUP_LETTERS, repeat=length)
                        if pattern_of(w) == pattern and is_freely_irreducible(w)]
            assert sorted(enumerate_irreducible(pattern)) == sorted(expected)


def test_reduced_word_counts():
    assert [count_reduced(n) for n in range(7)] == [1, 4, 12, 36, 108, 324, 972]
    assert len(list(enumerate_reduced(6, 6))) == 972
    assert len(list(enumerate_reduced(6))) == 1456
    assert list(enumerate_reduced(1)) == [(A,), (B,), (A_INV,), (B_INV,)]
    assert next(iter(enumerate_reduced(2, 2))) == (A, A)


def test_dual_maps_preserve_patterns_and_irreducibility(automaton_b, alphabet):
    for level in (1, 2, 3):
        words = [w for length in range(4) for w in iter_words(alphabet, level, length)]
        for xi in all_words(4):
            for w in words:
                image = dual_apply(automaton_b, level, w, xi)
                assert pattern_of(image) == pattern_of(xi)
                assert is_freely_irreducible(image) == is_freely_irreducible(xi)


def test_second_part_is_fixed_or_swapped(automaton_b, alphabet):
    for level in (1, 2, 3):
        words = [w for length in range(4) for w in iter_words(alphabet, level, length)]
        for xi in enumerate_reduced(4):
            first, second = decompose_word(xi)
            for w in words:
                image = dual_apply(automaton_b, level, w, xi)
                head = dual_apply(automaton_b, level, w, first)
                assert image in (head + second, head + tilde(second))
