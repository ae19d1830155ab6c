"""Changing alphabets and words over them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator, Mapping, Sequence, Union

from .errors import DomainError, LetterOutOfRange, ParseError

REPEAT_LAST = "repeat-last"

# Levels inspected when a rule must be monotone but has an infinite tail.
_ADMISSIBILITY_SLACK = 8


@dataclass(frozen=True)
class AffineRule:
    """r_i = max(floor, offset + slope * i)."""

    offset: int
    slope: int
    floor: int

    def size(self, level: int) -> int:
        return max(self.floor, self.offset + self.slope * level)

    def as_dict(self) -> dict[str, Any]:
        return {"kind": "affine", "offset": self.offset, "slope": self.slope, "floor": self.floor}

    def describe(self) -> str:
        return f"affine {self.offset} {self.slope} {self.floor}"


@dataclass(frozen=True)
class ExplicitPrefixRule:
    """Listed sizes for the first levels, then a tail rule.

    ``tail`` is ``None`` for "repeat-last".
    """

    sizes: tuple[int, ...]
    tail: AffineRule | None = None

    def size(self, level: int) -> int:
        if level <= len(self.sizes):
            return self.sizes[level - 1]
        if self.tail is None:
            return self.sizes[-1]
        return self.tail.size(level)

    def as_dict(self) -> dict[str, Any]:
        tail: Any = REPEAT_LAST if self.tail is None else self.tail.as_dict()
        return {"kind": "explicit_prefix", "sizes": list(self.sizes), "tail": tail}

    def describe(self) -> str:
        tail = REPEAT_LAST if self.tail is None else self.tail.describe()
        return f"prefix {','.join(map(str, self.sizes))} {tail}"


AlphabetRule = Union[AffineRule, ExplicitPrefixRule]


@dataclass(frozen=True)
class ChangingAlphabet:
    """The sequence of letter sets X_i = {1, ..., r_i}."""

    rule: AlphabetRule
    admissible: bool = False

    def size(self, level: int) -> int:
        if level < 1:
            raise DomainError(f"levels start at 1, got {level}")
        return self.rule.size(level)

    def letters(self, level: int) -> range:
        return range(1, self.size(level) + 1)

    def check_letter(self, level: int, letter: int) -> None:
        size = self.size(level)
        if not 1 <= letter <= size:
            raise LetterOutOfRange(level, letter, size)

    @property
    def unbounded(self) -> bool:
        if isinstance(self.rule, AffineRule):
            return self.rule.slope >= 1
        return self.rule.tail is not None and self.rule.tail.slope >= 1

    def prefix_sizes(self, count: int) -> tuple[int, ...]:
        return tuple(self.size(level) for level in range(1, count + 1))

    def as_dict(self) -> dict[str, Any]:
        return self.rule.as_dict()

    def describe(self) -> str:
        return self.rule.describe()


@dataclass(frozen=True)
class TreeWord:
    """A word x_1 ... x_m whose j-th letter lives at level base_level + j - 1."""

    base_level: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.base_level < 1:
            raise DomainError(f"base level must be at least 1, got {self.base_level}")
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    @property
    def end_level(self) -> int:
        """Level of the letter that would follow this word."""
        return self.base_level + len(self.letters)

    def levels(self) -> Iterator[tuple[int, int]]:
        """Yield (level, letter) pairs."""
        for offset, letter in enumerate(self.letters):
            yield self.base_level + offset, letter

    def concat(self, other: "TreeWord") -> "TreeWord":
        if other.base_level != self.end_level:
            raise DomainError(
                f"cannot append a word based at level {other.base_level} to a word ending before level {self.end_level}"
            )
        return TreeWord(self.base_level, self.letters + other.letters)

    def prefix(self, length: int) -> "TreeWord":
        return TreeWord(self.base_level, self.letters[:length])

    def validate(self, alphabet: ChangingAlphabet) -> "TreeWord":
        for level, letter in self.levels():
            alphabet.check_letter(level, letter)
        return self


def iter_words(alphabet: ChangingAlphabet, base_level: int, length: int) -> Iterator[TreeWord]:
    """All words of the given length at a base level, in lexicographic order."""
    ranges = [alphabet.letters(base_level + j) for j in range(length)]
    for letters in itertools.product(*ranges):
        yield TreeWord(base_level, letters)


def _parse_int(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{name} must be an integer, got {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{name} must be an integer, got {value!r}") from exc


def _affine_from(values: Sequence[Any]) -> AffineRule:
    if len(values) != 3:
        raise ParseError(f"affine rule takes offset, slope and floor, got {list(values)!r}")
    offset, slope, floor = (_parse_int(v, n) for v, n in zip(values, ("offset", "slope", "floor")))
    if slope < 0:
        raise ParseError(f"affine slope must be nonnegative, got {slope}")
    if floor < 1:
        raise ParseError(f"affine floor must be at least 1, got {floor}")
    return AffineRule(offset, slope, floor)


def _rule_from_text(text: str) -> AlphabetRule:
    parts = text.split()
    if not parts:
        raise ParseError("empty alphabet rule")
    kind, args = parts[0].lower(), parts[1:]
    if kind == "affine":
        return _affine_from(args)
    if kind in ("prefix", "explicit_prefix"):
        if not args:
            raise ParseError("prefix rule needs a list of sizes")
        sizes = tuple(_parse_int(v, "size") for v in args[0].split(",") if v)
        tail_args = args[1:] or [REPEAT_LAST]
        if tail_args == [REPEAT_LAST]:
            return _prefix_rule(sizes, None)
        if tail_args[0].lower() == "affine":
            return _prefix_rule(sizes, _affine_from(tail_args[1:]))
        raise ParseError(f"unknown tail rule {' '.join(tail_args)!r}")
    raise ParseError(f"unknown alphabet rule kind {kind!r}")


def _rule_from_mapping(data: Mapping[str, Any]) -> AlphabetRule:
    kind = data.get("kind")
    if kind == "affine":
        return _affine_from([data.get("offset"), data.get("slope"), data.get("floor")])
    if kind == "explicit_prefix":
        raw = data.get("sizes")
        if not isinstance(raw, (list, tuple)):
            raise ParseError("explicit_prefix rule needs a list of sizes")
        sizes = tuple(_parse_int(v, "size") for v in raw)
        tail = data.get("tail", REPEAT_LAST)
        if tail == REPEAT_LAST:
            return _prefix_rule(sizes, None)
        if isinstance(tail, Mapping) and tail.get("kind") == "affine":
            return _prefix_rule(sizes, _rule_from_mapping(tail))  # type: ignore[arg-type]
        raise ParseError(f"unknown tail rule {tail!r}")
    raise ParseError(f"unknown alphabet rule kind {kind!r}")


def _prefix_rule(sizes: tuple[int, ...], tail: AffineRule | None) -> ExplicitPrefixRule:
    if not sizes:
        raise ParseError("explicit_prefix rule needs at least one size")
    if any(size < 1 for size in sizes):
        raise ParseError(f"alphabet sizes must be at least 1, got {list(sizes)}")
    return ExplicitPrefixRule(sizes, tail)


def _check_admissible(alphabet: ChangingAlphabet) -> None:
    if not alphabet.unbounded:
        raise DomainError(f"alphabet {alphabet.describe()!r} is bounded; a slope of at least 1 is required")
    checked = _ADMISSIBILITY_SLACK
    if isinstance(alphabet.rule, ExplicitPrefixRule):
        checked += len(alphabet.rule.sizes)
    sizes = alphabet.prefix_sizes(checked + 1)
    for level, size in enumerate(sizes, start=1):
        if size < 2:
            raise DomainError(f"alphabet size r_{level} = {size} is below 2")
    for level, (size, following) in enumerate(zip(sizes, sizes[1:]), start=1):
        if following < size:
            raise DomainError(f"alphabet decreases at level {level}: r_{level} = {size} > r_{level + 1} = {following}")


def make_alphabet(rule_spec: Any, admissible: bool = False) -> ChangingAlphabet:
    """Build a changing alphabet from a rule object, a JSON mapping or rule text."""
    if isinstance(rule_spec, ChangingAlphabet):
        rule: AlphabetRule = rule_spec.rule
    elif isinstance(rule_spec, (AffineRule, ExplicitPrefixRule)):
        rule = rule_spec
    elif isinstance(rule_spec, str):
        rule = _rule_from_text(rule_spec)
    elif isinstance(rule_spec, Mapping):
        rule = _rule_from_mapping(rule_spec)
    else:
        raise ParseError(f"cannot build an alphabet from {rule_spec!r}")
    alphabet = ChangingAlphabet(rule, admissible)
    if admissible:
        _check_admissible(alphabet)
    return alphabet
