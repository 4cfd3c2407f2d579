"""Exact rational functions of the ambient-dimension symbol n.

Coefficients of every operator in the derivation pipeline live in Q(n).
A DimRational wraps a sympy expression kept in cancelled form, so the
numerator and denominator are integer-coefficient polynomials with
gcd 1 and a positive leading denominator coefficient.  Specialization at
an integer n >= 2 yields an exact fractions.Fraction.
"""
from __future__ import annotations

from fractions import Fraction

import sympy

__all__ = ["N_SYMBOL", "DimRational", "PoleError"]

N_SYMBOL = sympy.Symbol("n")


class PoleError(ZeroDivisionError):
    """Raised when a coefficient is specialized at a zero of its denominator."""


def _canonical(expr: sympy.Expr) -> sympy.Expr:
    expr = sympy.cancel(sympy.together(sympy.expand(expr)))
    num, den = sympy.fraction(expr)
    num = sympy.expand(num)
    den = sympy.expand(den)
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    # normalize: integer contents, positive leading coefficient downstairs
    lead = sympy.LC(sympy.Poly(den, N_SYMBOL)) if den.has(N_SYMBOL) else den
    if lead.is_negative:
        num, den = -num, -den
    return num / den if den != 1 else num


class DimRational:
    """Immutable element of Q(n)."""

    __slots__ = ("expr",)

    def __init__(self, value):
        if isinstance(value, DimRational):
            expr = value.expr
        elif isinstance(value, Fraction):
            expr = sympy.Rational(value.numerator, value.denominator)
        elif isinstance(value, int):
            expr = sympy.Integer(value)
        elif isinstance(value, sympy.Expr):
            bad = value.free_symbols - {N_SYMBOL}
            if bad:
                raise ValueError(f"unexpected symbols {bad}; only n is allowed")
            expr = _canonical(value)
        else:
            raise TypeError(f"cannot build DimRational from {type(value)}")
        object.__setattr__(self, "expr", expr)

    def __setattr__(self, name, value):
        raise AttributeError("DimRational is immutable")

    # ---- constructors -------------------------------------------------
    @classmethod
    def fraction(cls, p: int, q: int = 1) -> "DimRational":
        return cls(Fraction(p, q))

    @classmethod
    def n(cls) -> "DimRational":
        return cls(N_SYMBOL)

    # ---- structure -----------------------------------------------------
    def numerator_poly(self) -> sympy.Poly:
        num, _ = sympy.fraction(self.expr)
        return sympy.Poly(num, N_SYMBOL)

    def denominator_poly(self) -> sympy.Poly:
        _, den = sympy.fraction(self.expr)
        return sympy.Poly(den, N_SYMBOL)

    def is_zero(self) -> bool:
        return self.expr == 0

    def is_integer_polynomial(self) -> bool:
        """True when the denominator is 1 and all coefficients are integers."""
        num, den = sympy.fraction(self.expr)
        if den != 1:
            return False
        return all(c.is_Integer for c in sympy.Poly(num, N_SYMBOL).all_coeffs())

    # ---- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "DimRational":
        if isinstance(other, DimRational):
            return other
        return DimRational(other)

    def __add__(self, other):
        return DimRational(self.expr + self._coerce(other).expr)

    __radd__ = __add__

    def __sub__(self, other):
        return DimRational(self.expr - self._coerce(other).expr)

    def __rsub__(self, other):
        return DimRational(self._coerce(other).expr - self.expr)

    def __mul__(self, other):
        return DimRational(self.expr * self._coerce(other).expr)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Q(n)")
        return DimRational(self.expr / o.expr)

    def __neg__(self):
        return DimRational(-self.expr)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (DimRational, int, Fraction)):
            return NotImplemented
        diff = self.expr - self._coerce(other).expr
        return sympy.simplify(diff) == 0

    def __hash__(self):
        return hash(sympy.srepr(self.expr))

    # ---- evaluation ------------------------------------------------------
    def specialize(self, n0: int) -> Fraction:
        """Exact value at n = n0 (n0 >= 2)."""
        if n0 < 2:
            raise ValueError("dimension must be >= 2")
        num, den = sympy.fraction(self.expr)
        den_val = den.subs(N_SYMBOL, n0)
        if den_val == 0:
            raise PoleError(f"denominator vanishes at n = {n0}")
        val = sympy.Rational(num.subs(N_SYMBOL, n0), den_val)
        return Fraction(int(val.p), int(val.q))

    def depends_on_n(self) -> bool:
        return self.expr.has(N_SYMBOL)

    def as_num_den_strings(self) -> tuple[str, str]:
        num, den = sympy.fraction(self.expr)
        return _poly_text(num), _poly_text(den)

    def __str__(self) -> str:
        num, den = sympy.fraction(self.expr)
        num_s = _poly_text(num)
        if den == 1:
            return num_s
        den_s = _poly_text(den)
        if num.is_Atom or num.is_Mul and not num.is_Add:
            pass
        num_s = f"({num_s})" if num.is_Add else num_s
        den_s = f"({den_s})" if not den.is_Atom else den_s
        return f"{num_s}/{den_s}"

    __repr__ = __str__


def _poly_text(expr: sympy.Expr) -> str:
    return sympy.sstr(expr).replace("**", "^")


def parse_coefficient(text: str) -> DimRational:
    """Parse a coefficient like '-3/2', '(n - 1)', '(2*n^2 + 1)/(n - 3)'."""
    cleaned = text.replace("^", "**")
    try:
        expr = sympy.sympify(cleaned, locals={"n": N_SYMBOL}, rational=True)
    except (sympy.SympifyError, SyntaxError) as exc:
        raise ValueError(f"cannot parse coefficient {text!r}: {exc}") from None
    if not isinstance(expr, sympy.Expr):
        raise ValueError(f"cannot parse coefficient {text!r}")
    return DimRational(expr)
