"""Nontriviality witnesses for reduced group words acting through B."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .alphabet import ChangingAlphabet, TreeWord
from .automaton import StateWord, apply_state_word
from .duality import dual_step
from .errors import DomainError, VerificationError
from .patterns import (
    decompose_word,
    enumerate_reduced,
    free_reduce,
    inverse_word,
    is_freely_irreducible,
    pattern_of,
    second_part_shape,
    tilde,
)
from .settings import DEFAULTS
from .free_automata import A, A_INV, B, B_INV, build_automaton_B, cycle, cycle_inverse, transposition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreenessWitness:
    word: TreeWord
    image: TreeWord

    @property
    def depth(self) -> int:
        return len(self.word)


def freeness_witness(
    alphabet: ChangingAlphabet, xi: Sequence[str], depth_cap: int = DEFAULTS.depth_cap
) -> Optional[FreenessWitness]:
    """Length-lexicographically least u at level 1 moved by B_{1,xi}, or None below the cap.

    Only fixed prefixes matter, and a fixed prefix p is extended by x into a
    witness exactly when B_{1+|p|,D_{1,p}(xi)} moves x. Prefixes sharing their
    dual state word behave alike, so each level keeps the least one.
    """
    xi = tuple(xi)
    if not xi:
        raise DomainError("the empty word acts trivially")
    if not is_freely_irreducible(xi):
        raise DomainError(f"{' '.join(xi)!r} is not freely reduced")
    automaton = build_automaton_B(alphabet)
    frontier: List[Tuple[Tuple[int, ...], StateWord]] = [((), xi)]
    for depth in range(1, depth_cap + 1):
        level = depth
        children: Dict[StateWord, Tuple[int, ...]] = {}
        for prefix, state_word in frontier:
            for letter in automaton.alphabet.letters(level):
                moved = apply_state_word(automaton, level, state_word, [letter]).letters[0]
                candidate = prefix + (letter,)
                if moved != letter:
                    word = TreeWord(1, candidate)
                    image = apply_state_word(automaton, 1, xi, word)
                    if image == word:
                        raise VerificationError("witness is fixed by the group word", expected=word, actual=image)
                    logger.debug("witness for %r at depth %d: %s", xi, depth, candidate)
                    return FreenessWitness(word, image)
                children.setdefault(dual_step(automaton, level, letter, state_word), candidate)
        frontier = sorted(((prefix, state_word) for state_word, prefix in children.items()))
    logger.info("no witness for %r up to depth %d", xi, depth_cap)
    return None


@dataclass(frozen=True)
class SweepRow:
    xi: StateWord
    witness: Optional[FreenessWitness]

    @property
    def depth(self) -> Optional[int]:
        return None if self.witness is None else self.witness.depth


@dataclass
class FreenessSweep:
    max_length: int
    depth_cap: int
    rows: List[SweepRow] = field(default_factory=list)

    @property
    def missing(self) -> List[StateWord]:
        return [row.xi for row in self.rows if row.witness is None]

    @property
    def max_depth(self) -> int:
        return max((row.depth or 0 for row in self.rows), default=0)


def freeness_sweep(
    alphabet: ChangingAlphabet,
    max_length: int,
    depth_cap: int = DEFAULTS.depth_cap,
    workers: int = DEFAULTS.workers,
) -> FreenessSweep:
    """Witnesses for every nonempty reduced word up to ``max_length``, in enumeration order."""
    if max_length < 1:
        raise DomainError(f"maximum length must be at least 1, got {max_length}")
    automaton = build_automaton_B(alphabet)
    words = list(enumerate_reduced(max_length))

    def run(xi: StateWord) -> SweepRow:
        return SweepRow(xi, freeness_witness(automaton.alphabet, xi, depth_cap))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, words))
    else:
        rows = [run(xi) for xi in words]
    sweep = FreenessSweep(max_length, depth_cap, rows)
    logger.info("swept %d words, max depth %d, %d without witness", len(rows), sweep.max_depth, len(sweep.missing))
    return sweep


def eta_words(l: int, r: int) -> Tuple[StateWord, StateWord]:
    """eta_1 = a^r (b^-1 a)^(2l) b^-r and eta_2 = a^-r (b a^-1)^(2l) b^r."""
    eta1 = (A,) * r + (B_INV, A) * (2 * l) + (B_INV,) * r
    eta2 = (A_INV,) * r + (B, A_INV) * (2 * l) + (B,) * r
    return eta1, eta2


def _compose(*tables: Tuple[int, ...]) -> Tuple[int, ...]:
    """Right-to-left composition of 1-based permutation tables."""
    result = tuple(range(1, len(tables[0]) + 1))
    for table in reversed(tables):
        result = tuple(table[x - 1] for x in result)
    return result


def _power(table: Tuple[int, ...], exponent: int) -> Tuple[int, ...]:
    result = tuple(range(1, len(table) + 1))
    for _ in range(exponent):
        result = _compose(table, result)
    return result


def proof_level(alphabet: ChangingAlphabet, l: int, r: int, scan_cap: int = DEFAULTS.lambda_scan_cap) -> int:
    """Least level with r_i > 2l + r + 2."""
    bound = 2 * l + r + 2
    for level in range(1, scan_cap + 1):
        if alphabet.size(level) > bound:
            return level
    raise DomainError(f"no level up to {scan_cap} has more than {bound} letters")


@dataclass(frozen=True)
class ProofPermutations:
    level: int
    l: int
    r: int
    pi1: Tuple[int, ...]
    pi2: Tuple[int, ...]
    checks: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def proof_permutations(alphabet: ChangingAlphabet, level: int, l: int, r: int) -> ProofPermutations:
    """pi_1 = tau^r (sigma tau)^(2l) sigma^r and pi_2 = tau^r (sigma^-1 tau)^(2l) sigma^-r at ``level``.

    Checks that pi_1 moves 3 to 3 + 2l + r, that pi_2 moves r_i to r_i - 2l - r,
    and that both agree with the one-letter action of eta_1 and eta_2 on B.
    """
    if r not in (0, 1):
        raise DomainError(f"r must be 0 or 1, got {r}")
    if l < 0 or (l, r) == (0, 0):
        raise DomainError(f"need l >= 0 and (l, r) != (0, 0), got ({l}, {r})")
    automaton = build_automaton_B(alphabet)
    size = automaton.alphabet.size(level)
    if size <= 2 * l + r + 2:
        raise DomainError(f"r_{level} = {size} must exceed 2l + r + 2 = {2 * l + r + 2}")
    sigma, sigma_inv, tau = cycle(size), cycle_inverse(size), transposition(size)
    pi1 = _compose(_power(tau, r), _power(_compose(sigma, tau), 2 * l), _power(sigma, r))
    pi2 = _compose(_power(tau, r), _power(_compose(sigma_inv, tau), 2 * l), _power(sigma_inv, r))
    eta1, eta2 = eta_words(l, r)

    def one_letter(eta: StateWord) -> Tuple[int, ...]:
        return tuple(apply_state_word(automaton, level, eta, [x]).letters[0] for x in range(1, size + 1))

    checks = {
        "pi1(3) = 3 + 2l + r": pi1[2] == 3 + 2 * l + r,
        "pi2(r_i) = r_i - 2l - r": pi2[size - 1] == size - 2 * l - r,
        "pi1 = eta1 on one letter": one_letter(eta1) == pi1,
        "pi2 = eta2 on one letter": one_letter(eta2) == pi2,
    }
    result = ProofPermutations(level, l, r, pi1, pi2, checks)
    if not result.ok:
        failed = [name for name, passed in checks.items() if not passed]
        raise VerificationError(f"permutation checks failed: {', '.join(failed)}", expected=True, actual=checks)
    return result


@dataclass(frozen=True)
class SecondPartQuotient:
    """xi_II^-1 tilde(xi_II), freely reduced, and which eta word it is."""

    second: StateWord
    l: int
    r: int
    quotient: StateWord
    label: str


def second_part_quotient(xi: Sequence[str]) -> SecondPartQuotient:
    xi = tuple(xi)
    if not xi or not is_freely_irreducible(xi):
        raise DomainError(f"{' '.join(xi)!r} must be nonempty and freely irreducible")
    _, second = decompose_word(xi)
    _, l, r = second_part_shape(pattern_of(second))
    quotient = free_reduce(inverse_word(second) + tilde(second))
    eta1, eta2 = eta_words(l, r)
    candidates = {
        "eta1": eta1,
        "eta1^-1": inverse_word(eta1),
        "eta2": eta2,
        "eta2^-1": inverse_word(eta2),
    }
    for label, candidate in candidates.items():
        if candidate == quotient:
            return SecondPartQuotient(second, l, r, quotient, label)
    raise VerificationError("second-part quotient is none of the eta words", expected=candidates, actual=quotient)
