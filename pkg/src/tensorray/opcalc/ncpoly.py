"""Noncommutative operator words and polynomials over Q(n).

A Word is a sequence over the alphabet {I, J, D, DELTA} plus a count of
|y|^2 factors (RAD).  Letters are stored in written order: the rightmost
letter acts first on a field.  RAD commutes with everything and is kept
as a count, never positioned.

Rank flow: scanning a word right to left from the base rank, I raises the
rank by 2, J lowers it by 2, D raises by 1, DELTA lowers by 1.  A word
whose running rank ever drops below 0 acts as the zero operator (e.g. J
applied at rank < 2) and is eliminated at construction.

An NCPoly is a finite sum of words with DimRational coefficients, all
sharing one base rank and one output rank.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .dimrat import DimRational

__all__ = ["I", "J", "D", "DELTA", "Word", "NCPoly", "RankFlowError", "adjoint"]

I, J, D, DELTA = "i", "j", "d", "delta"
_STEP = {I: +2, J: -2, D: +1, DELTA: -1}
_ADJOINT = {I: J, J: I, D: DELTA, DELTA: D}
_ORDER = {I: 0, J: 1, D: 2, DELTA: 3}


class RankFlowError(ValueError):
    """A word or polynomial violates the declared rank structure."""


@dataclass(frozen=True)
class Word:
    """One monomial in the operators i, j, d, delta and |y|^2."""

    letters: tuple[str, ...] = ()
    rad: int = 0

    def __post_init__(self):
        for ell in self.letters:
            if ell not in _STEP:
                raise ValueError(f"unknown letter {ell!r}")
        if self.rad < 0:
            raise ValueError("rad count must be >= 0")

    def output_rank(self, base_rank: int) -> int | None:
        """Rank after acting on base_rank, or None when the word is zero."""
        rank = base_rank
        for ell in reversed(self.letters):
            rank += _STEP[ell]
            if rank < 0:
                return None
        return rank

    def derivative_order(self) -> int:
        return sum(1 for ell in self.letters if ell in (D, DELTA))

    def d_pair_count(self) -> int:
        return sum(1 for ell in self.letters if ell == D) // 2

    def count(self, letter: str) -> int:
        return sum(1 for ell in self.letters if ell == letter)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, self.rad + other.rad)

    def strip_rad(self) -> "Word":
        return Word(self.letters, 0)

    def sort_key(self):
        return (tuple(_ORDER[ell] for ell in self.letters), self.rad)

    def __str__(self) -> str:
        parts = []
        if self.rad:
            parts.append("|y|^2" if self.rad == 1 else f"|y|^{2 * self.rad}")
        run_start = 0
        letters = self.letters
        for t in range(1, len(letters) + 1):
            if t == len(letters) or letters[t] != letters[run_start]:
                count = t - run_start
                sym = letters[run_start]
                parts.append(sym if count == 1 else f"{sym}^{count}")
                run_start = t
        return " ".join(parts) if parts else "1"


IDENTITY_WORD = Word()


class NCPoly:
    """Finite sum of words with coefficients in Q(n), fixed rank signature."""

    __slots__ = ("base_rank", "out_rank", "terms")

    def __init__(
        self,
        base_rank: int,
        terms: Mapping[Word, DimRational] | Iterable[tuple[Word, DimRational]] = (),
        out_rank: int | None = None,
    ):
        if base_rank < 0:
            raise ValueError("base rank must be >= 0")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Word, DimRational] = {}
        for word, coeff in items:
            coeff = DimRational(coeff)
            if coeff.is_zero():
                continue
            rank = word.output_rank(base_rank)
            if rank is None:
                continue  # degenerate word, acts as zero
            if out_rank is None:
                out_rank = rank
            elif rank != out_rank:
                raise RankFlowError(
                    f"word '{word}' maps rank {base_rank} to {rank}, expected {out_rank}"
                )
            if word in clean:
                coeff = clean[word] + coeff
                if coeff.is_zero():
                    del clean[word]
                    continue
            clean[word] = coeff
        if out_rank is None:
            out_rank = base_rank
        object.__setattr__(self, "base_rank", base_rank)
        object.__setattr__(self, "out_rank", out_rank)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    # ---- constructors ----------------------------------------------------
    @classmethod
    def identity(cls, base_rank: int) -> "NCPoly":
        return cls(base_rank, {IDENTITY_WORD: DimRational(1)})

    @classmethod
    def zero(cls, base_rank: int, out_rank: int | None = None) -> "NCPoly":
        return cls(base_rank, {}, out_rank=out_rank)

    @classmethod
    def monomial(cls, base_rank: int, word: Word, coeff=1) -> "NCPoly":
        return cls(base_rank, {word: DimRational(coeff)})

    # ---- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Word, DimRational]]:
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def max_derivative_order(self) -> int:
        return max((w.derivative_order() for w in self.terms), default=0)

    def coefficient(self, word: Word) -> DimRational:
        return self.terms.get(word, DimRational(0))

    # ---- algebra -----------------------------------------------------------
    def _check_compatible(self, other: "NCPoly") -> None:
        if self.base_rank != other.base_rank or self.out_rank != other.out_rank:
            raise RankFlowError(
                f"rank signature mismatch: ({self.base_rank}->{self.out_rank}) vs "
                f"({other.base_rank}->{other.out_rank})"
            )

    def __add__(self, other: "NCPoly") -> "NCPoly":
        if other.is_zero():
            return NCPoly(self.base_rank, self.terms, out_rank=self.out_rank)
        if self.is_zero():
            return NCPoly(other.base_rank, other.terms, out_rank=other.out_rank)
        self._check_compatible(other)
        merged = dict(self.terms)
        for word, coeff in other.terms.items():
            merged[word] = merged.get(word, DimRational(0)) + coeff
        return NCPoly(self.base_rank, merged, out_rank=self.out_rank)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (other * DimRational(-1))

    def __mul__(self, scalar) -> "NCPoly":
        scalar = DimRational(scalar)
        return NCPoly(
            self.base_rank,
            {w: c * scalar for w, c in self.terms.items()},
            out_rank=self.out_rank,
        )

    __rmul__ = __mul__

    def compose(self, other: "NCPoly") -> "NCPoly":
        """Operator composition self(other(...)); other acts first."""
        if other.out_rank != self.base_rank:
            raise RankFlowError(
                f"cannot compose: inner output rank {other.out_rank} != outer base rank {self.base_rank}"
            )
        out: dict[Word, DimRational] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 * w2
                if word.output_rank(other.base_rank) is None:
                    continue
                coeff = c1 * c2
                if word in out:
                    coeff = out[word] + coeff
                    if coeff.is_zero():
                        del out[word]
                        continue
                if not coeff.is_zero():
                    out[word] = coeff
        return NCPoly(other.base_rank, out, out_rank=self.out_rank)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        if self.base_rank != other.base_rank:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    def __hash__(self):
        raise TypeError("NCPoly is not hashable")

    # ---- transforms ----------------------------------------------------------
    def specialize(self, n0: int) -> "NCPoly":
        """Exact evaluation of every coefficient at n = n0."""
        return NCPoly(
            self.base_rank,
            {w: DimRational(c.specialize(n0)) for w, c in self.terms.items()},
            out_rank=self.out_rank,
        )

    def coefficients_as_fractions(self) -> dict[Word, Fraction]:
        """Constant coefficients as exact fractions (poly must be n-free)."""
        out = {}
        for w, c in self.terms.items():
            if c.depends_on_n():
                raise ValueError("coefficients still depend on n; specialize first")
            out[w] = c.specialize(2)  # constant: any n works
        return out

    def __str__(self) -> str:
        from .textform import serialize

        return serialize(self)

    __repr__ = __str__


def adjoint(p: NCPoly) -> NCPoly:
    """Formal adjoint: reverse each word, swap i<->j and d<->delta.

    Each derivative letter contributes a sign -1 ((d)* = -delta and
    (delta)* = -d); i and j are mutually adjoint with no sign.  RAD counts
    and coefficients are otherwise unchanged (coefficients are real).
    """
    terms: dict[Word, DimRational] = {}
    for word, coeff in p.terms.items():
        new_letters = tuple(_ADJOINT[ell] for ell in reversed(word.letters))
        sign = -1 if word.derivative_order() % 2 else 1
        new_word = Word(new_letters, word.rad)
        new_coeff = coeff * sign
        if new_word in terms:
            new_coeff = terms[new_word] + new_coeff
        terms[new_word] = new_coeff
    return NCPoly(p.out_rank, terms, out_rank=p.base_rank)
