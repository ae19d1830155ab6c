"""Group words over {a, b, a^-1, b^-1}: patterns, reduction and the two-part decomposition."""
from __future__ import annotations

import itertools
from enum import Enum
from typing import Iterator, List, Sequence, Tuple

from .automaton import StateWord
from .errors import DomainError, ParseError
from .free_automata import A, A_INV, B, B_INV

GROUP_LETTERS = (A, B, A_INV, B_INV)
INVERSES = {A: A_INV, A_INV: A, B: B_INV, B_INV: B}
TILDE = {A: B, B: A, A_INV: B_INV, B_INV: A_INV}


class Sign(str, Enum):
    POS = "*"
    NEG = "*^-1"


POS, NEG = Sign.POS, Sign.NEG
Pattern = Tuple[Sign, ...]

_SIGN_TOKENS = {"*": POS, "+": POS, "pos": POS, "*^-1": NEG, "*'": NEG, "-": NEG, "neg": NEG}


def _check_group_word(xi: Sequence[str]) -> StateWord:
    for letter in xi:
        if letter not in INVERSES:
            raise DomainError(f"{letter!r} is not one of {', '.join(GROUP_LETTERS)}")
    return tuple(xi)


def sign_of(letter: str) -> Sign:
    if letter in (A, B):
        return POS
    if letter in (A_INV, B_INV):
        return NEG
    raise DomainError(f"{letter!r} is not one of {', '.join(GROUP_LETTERS)}")


def pattern_of(xi: Sequence[str]) -> Pattern:
    return tuple(sign_of(letter) for letter in xi)


def parse_pattern(text: str) -> Pattern:
    """Read ``"+-+"``, ``"* *^-1 *"`` or ``"pos neg pos"``."""
    text = text.strip()
    if not text:
        return ()
    tokens = text.split() if any(ch.isspace() for ch in text) else list(text)
    try:
        return tuple(_SIGN_TOKENS[token.lower()] for token in tokens)
    except KeyError as exc:
        raise ParseError(f"malformed pattern {text!r}: use + and - (or * and *^-1)") from exc


def format_pattern(pattern: Sequence[Sign]) -> str:
    return " ".join(sign.value for sign in pattern)


def is_freely_irreducible(xi: Sequence[str]) -> bool:
    """No adjacent pair cancels."""
    xi = _check_group_word(xi)
    return all(INVERSES[left] != right for left, right in zip(xi, xi[1:]))


def tilde(xi: Sequence[str]) -> StateWord:
    """Swap a with b and a^-1 with b^-1."""
    return tuple(TILDE[letter] for letter in _check_group_word(xi))


def inverse_word(xi: Sequence[str]) -> StateWord:
    return tuple(INVERSES[letter] for letter in reversed(_check_group_word(xi)))


def free_reduce(xi: Sequence[str]) -> StateWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: List[str] = []
    for letter in _check_group_word(xi):
        if stack and stack[-1] == INVERSES[letter]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _split_index(pattern: Sequence[Sign]) -> int:
    """Start of the longest alternating suffix."""
    if not pattern:
        raise DomainError("cannot decompose an empty pattern")
    index = len(pattern) - 1
    while index > 0 and pattern[index - 1] != pattern[index]:
        index -= 1
    return index


def decompose(pattern: Sequence[Sign]) -> Tuple[Pattern, Pattern]:
    """Split V into (V_I, V_II) with V_II alternating and V_I ending on V_II's first sign."""
    pattern = tuple(pattern)
    index = _split_index(pattern)
    return pattern[:index], pattern[index:]


def decompose_word(xi: Sequence[str]) -> Tuple[StateWord, StateWord]:
    xi = _check_group_word(xi)
    index = _split_index(pattern_of(xi))
    return xi[:index], xi[index:]


def second_part_shape(second: Sequence[Sign]) -> Tuple[Sign, int, int]:
    """(leading sign, l, r) for a second part (s s')^l s^r, r in {0, 1}."""
    second = tuple(second)
    if not second:
        raise DomainError("second part is empty")
    if any(left == right for left, right in zip(second, second[1:])):
        raise DomainError(f"{format_pattern(second)!r} does not alternate")
    return second[0], len(second) // 2, len(second) % 2


def shape_words(leading: Sign, l: int, r: int) -> Tuple[StateWord, StateWord]:
    """The two freely irreducible words following the second-part shape."""
    if leading is POS:
        first = (A, B_INV) * l + (A,) * r
    else:
        first = (A_INV, B) * l + (A_INV,) * r
    return first, tilde(first)


def enumerate_irreducible(pattern: Sequence[Sign]) -> Iterator[StateWord]:
    """All freely irreducible words following ``pattern``, in lexicographic order of (a, b) choices."""
    choices = [(A, B) if sign is POS else (A_INV, B_INV) for sign in pattern]
    for word in itertools.product(*choices):
        if is_freely_irreducible(word):
            yield word


def enumerate_reduced(max_length: int, min_length: int = 1) -> Iterator[StateWord]:
    """Freely reduced words by length, then lexicographically in the order a, b, a^-1, b^-1."""
    for length in range(min_length, max_length + 1):
        for word in itertools.product(GROUP_LETTERS, repeat=length):
            if is_freely_irreducible(word):
                yield word


def count_reduced(length: int) -> int:
    """Reduced words of exactly ``length`` letters over two generators."""
    return 1 if length == 0 else 4 * 3 ** (length - 1)
