from __future__ import annotations

import pytest

from dualtree.core.alphabet import AffineRule, ExplicitPrefixRule, TreeWord, iter_words, make_alphabet
from dualtree.core.errors import DomainError, LetterOutOfRange, ParseError


def test_affine_sizes():
    alphabet = make_alphabet("affine 1 1 2")
    assert alphabet.size(1) == 2
    assert alphabet.size(5) == 6


def test_prefix_repeat_last():
    alphabet = make_alphabet("prefix 2,2,3 repeat-last")
    assert [alphabet.size(i) for i in range(1, 6)] == [2, 2, 3, 3, 3]


def test_prefix_with_affine_tail():
    alphabet = make_alphabet("prefix 2,3 affine 1 1 2")
    assert [alphabet.size(i) for i in range(1, 5)] == [2, 3, 4, 5]


def test_mapping_form_matches_text_form():
    text = make_alphabet("prefix 2,2,3 repeat-last")
    mapping = make_alphabet({"kind": "explicit_prefix", "sizes": [2, 2, 3], "tail": "repeat-last"})
    assert text.rule == mapping.rule
    assert make_alphabet(text.as_dict()).rule == text.rule


def test_bounded_rule_is_not_admissible():
    with pytest.raises(DomainError):
        make_alphabet("affine 0 0 2", admissible=True)


def test_decreasing_prefix_is_not_admissible():
    with pytest.raises(DomainError):
        make_alphabet("prefix 3,2 affine 1 1 2", admissible=True)


def test_size_one_is_not_admissible():
    with pytest.raises(DomainError):
        make_alphabet("prefix 1 affine 0 1 2", admissible=True)


@pytest.mark.parametrize("text", ["", "affine 1 1", "affine x 1 2", "prefix", "spiral 1 2 3", "affine 1 -1 2"])
def test_malformed_rules(text):
    with pytest.raises(ParseError):
        make_alphabet(text)


def test_level_zero_is_rejected():
    with pytest.raises(DomainError):
        make_alphabet("affine 1 1 2").size(0)


def test_tree_word_levels_and_validation():
    alphabet = make_alphabet("affine 1 1 2")
    word = TreeWord(2, (3, 1, 4))
    assert list(word.levels()) == [(2, 3), (3, 1), (4, 4)]
    assert word.end_level == 5
    assert word.validate(alphabet) is word
    with pytest.raises(LetterOutOfRange):
        TreeWord(1, (3,)).validate(alphabet)


def test_tree_word_concat_requires_matching_levels():
    head = TreeWord(1, (1, 2))
    assert head.concat(TreeWord(3, (4,))) == TreeWord(1, (1, 2, 4))
    with pytest.raises(DomainError):
        head.concat(TreeWord(2, (1,)))


def test_iter_words_counts_and_order():
    alphabet = make_alphabet("affine 1 1 2")
    words = list(iter_words(alphabet, 1, 3))
    assert len(words) == 2 * 3 * 4
    assert words[0].letters == (1, 1, 1)
    assert words[-1].letters == (2, 3, 4)
    assert [w.letters for w in words] == sorted(w.letters for w in words)


def test_rule_descriptions_round_trip():
    for rule in (AffineRule(1, 1, 2), ExplicitPrefixRule((2, 3), AffineRule(1, 1, 2)), ExplicitPrefixRule((2,), None)):
        assert make_alphabet(rule.describe()).rule == rule
