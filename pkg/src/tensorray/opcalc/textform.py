"""Canonical text form for operator polynomials.

Terms are sorted by letter codes with the radial count last; a term reads
"coeff * word" with the coefficient omitted when it is +/-1 (unless the
word is the identity).  Examples:

    -|y|^2 d^2
    (n - 1) * 1
    2/3 * 1 + 1/3 * i j
    -1/(n - 1) * j d^2
"""
from __future__ import annotations

import re

from .dimrat import DimRational, parse_coefficient
from .ncpoly import DELTA, NCPoly, Word

__all__ = ["serialize", "parse", "ParseError"]

_LETTERS = {"i", "j", "d", "delta"}


class ParseError(ValueError):
    """Malformed operator text; carries the character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _coeff_text(coeff: DimRational) -> str:
    text = str(coeff)
    if " " in text or "/" in text:
        if not (text.startswith("(") and text.endswith(")")):
            return f"({text})"
    return text


def serialize(p: NCPoly) -> str:
    """Human-readable canonical form; empty polynomial serializes to '0'."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for word, coeff in p.sorted_terms():
        wtext = str(word)
        if coeff == 1 and wtext != "1":
            term = wtext
        elif coeff == DimRational(-1) and wtext != "1":
            term = f"-{wtext}"
        elif wtext == "1":
            term = _coeff_text(coeff)
        else:
            term = f"{_coeff_text(coeff)} * {wtext}"
        if parts:
            if term.startswith("-"):
                parts.append(" - ")
                term = term[1:]
            else:
                parts.append(" + ")
        parts.append(term)
    return "".join(parts)


def _split_terms(text: str) -> list[tuple[int, str, int]]:
    """Split on top-level +/- into (sign, term text, start position)."""
    terms = []
    depth = 0
    sign = 1
    start = 0
    i = 0
    # leading sign
    stripped = text.lstrip()
    offset = len(text) - len(stripped)
    if stripped.startswith("-"):
        sign = -1
        start = offset + 1
        i = start
    elif stripped.startswith("+"):
        start = offset + 1
        i = start
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parenthesis", i)
        elif ch in "+-" and depth == 0 and i > start:
            prev = text[i - 1]
            if prev in "*/^eE(" or prev == " " and text[: i].rstrip().endswith(("*", "/", "^", "+", "-")):
                i += 1
                continue
            # a +/- separated from the previous token by whitespace splits terms
            if prev == " ":
                terms.append((sign, text[start:i], start))
                sign = 1 if ch == "+" else -1
                start = i + 1
        i += 1
    if depth != 0:
        raise ParseError("unbalanced parenthesis", len(text))
    terms.append((sign, text[start:], start))
    return terms


_FACTOR_RE = re.compile(r"\|y\|\^(\d+)|(delta|[ijd])(?:\^(\d+))?")


def _parse_word(text: str, pos: int) -> Word:
    letters: list[str] = []
    rad = 0
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        match = _FACTOR_RE.match(text, i)
        if match is None or (text[i] == "1" and len(text[i:].strip()) == 1):
            if text[i:].strip() == "1":
                break
            raise ParseError(f"unexpected factor {text[i:]!r}", pos + i)
        if match.group(1) is not None:
            power = int(match.group(1))
            if power % 2 != 0:
                raise ParseError("radial factor must have even power", pos + i)
            rad += power // 2
        else:
            letter = match.group(2)
            count = int(match.group(3)) if match.group(3) else 1
            letters.extend([letter] * count)
        i = match.end()
    return Word(tuple(letters), rad)


def _split_coeff_word(term: str, pos: int) -> tuple[str | None, str]:
    """Split a term at the first top-level ' * ' into coefficient and word."""
    depth = 0
    for i in range(len(term) - 2):
        ch = term[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and term[i : i + 3] == " * ":
            return term[:i], term[i + 3 :]
    stripped = term.strip()
    if stripped and (stripped[0] in "ijd|" or stripped == "1"):
        # a bare word (identity word "1" included)
        if stripped == "1":
            return "1", "1"
        return None, term
    return term, "1"


def parse(text: str, base_rank: int) -> NCPoly:
    """Parse the canonical text form back into a polynomial.

    The base rank cannot be inferred from the text and must be supplied.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input", 0)
    if stripped == "0":
        return NCPoly.zero(base_rank)
    terms: list[tuple[Word, DimRational]] = []
    for sign, term_text, pos in _split_terms(text):
        if not term_text.strip():
            raise ParseError("empty term", pos)
        coeff_text, word_text = _split_coeff_word(term_text, pos)
        word = _parse_word(word_text, pos)
        if coeff_text is None:
            coeff = DimRational(1)
        else:
            try:
                coeff = parse_coefficient(coeff_text)
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
        terms.append((word, coeff * sign))
    return NCPoly(base_rank, terms)
