"""Closed-form regression fixtures for the operator pipeline at r = 0, 1, 2.

The fixtures encode the explicit coefficient formulas for the assembled
operators, with all pi-power prefactors multiplied out so every compared
coefficient is a rational function of n.  They are built directly from
factorial formulas, independently of the recurrence/split/assembly route,
and reference_compare diffs the two term by term in Q(n).

Corrections applied relative to the source tables (each verified
numerically; see the flow-based Laplacian check in the test suite and the
cross-path/isometry suites):

  * the order-1 rank-lowering polynomial at k = -1 is  -m(m-1) j,
    not +m(m+1) j; this propagates into the first-order algebraic
    operator (the bracket gains -2p(m-1)(2m+n-3) in place of
    +2p(m+1)(2m+n-3)) and into the second-order tables;
  * the radial split populates buckets with l > |k| (the k = 0 polynomial
    at order 2 has a genuine second-order part), so the second-order
    operator with l = 1 carries i^p j^p d^2 j words for m >= 2 and its
    j d^2 coefficient differs from the printed one.

`printed_first_order_bracket` keeps the uncorrected variant so the
discrepancy itself is regression-tested.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .dimrat import N_SYMBOL, DimRational
from .ncpoly import D, DELTA, I, J, NCPoly, Word
from .pipeline import a_operator, a_p_coefficient, a_tilde, gamma_coef, p_polys

__all__ = [
    "ref_p1",
    "ref_a_zeroth",
    "ref_a_tilde_first",
    "ref_a_tilde_second",
    "reference_compare",
    "printed_first_order_bracket",
]

_N = DimRational(N_SYMBOL)


def _ij_word(p: int, q: int, tail: tuple[str, ...] = ()) -> Word:
    return Word((I,) * p + (J,) * q + tail)


def ref_p1(m: int) -> dict[int, NCPoly]:
    """Order-1 polynomials: {-1: -m(m-1) j, 0: m(m+n-3) 1, 1: -|y|^2 d^2}."""
    out = {
        1: NCPoly.monomial(m, Word((D, D), rad=1), -1),
        0: NCPoly.monomial(m, Word(), DimRational(m) * (m + _N - 3)),
        -1: NCPoly.monomial(m, Word((J,)), -m * (m - 1)),
    }
    return out


def ref_a_zeroth(m: int) -> NCPoly:
    """Zeroth-order operator: Gamma prefactor times sum_k a_k(m, n) i^k j^k.

    The pi powers cancel between the prefactor and a_k, leaving

        gamma(m, 0) * 2^m (m!)^3 / (2m)! * 2^(-2k) / ((k!)^2 (m-2k)!).
    """
    lead = gamma_coef(m, 0) * DimRational(
        Fraction(2**m * math.factorial(m) ** 3, math.factorial(2 * m))
    )
    terms = {}
    for k in range(m // 2 + 1):
        coeff = lead * DimRational(
            Fraction(1, 2 ** (2 * k) * math.factorial(k) ** 2 * math.factorial(m - 2 * k))
        )
        terms[_ij_word(k, k)] = coeff
    return NCPoly(m, terms, out_rank=m)


def printed_first_order_bracket(m: int, p: int) -> DimRational:
    """The uncorrected first-order bracket (kept for documentation tests)."""
    return DimRational(2 * p * (m + 1)) * (2 * m + _N - 3) + DimRational(m - 1) * (
        DimRational(m) * (m + _N - 3) + 1
    )


def _first_order_bracket(m: int, p: int) -> DimRational:
    """Corrected bracket: (m-1)[m(m+n-3) + 1 - 2p(2m+n-3)]."""
    return DimRational(m - 1) * (DimRational(m) * (m + _N - 3) + 1 - 2 * p * (2 * m + _N - 3))


def ref_a_tilde_first(m: int, l: int, as_printed: bool = False) -> NCPoly:
    """First-order operators before symmetrization.

    l = 0: identity for m <= 1, else sum_p alpha_p i^p j^p with

        alpha_p = gamma(m,0) * m (m!)^2 (m-2)! / (2m)!
                  * 2^(m-2p) / ((p!)^2 (m-2p)!) * bracket(m, p)

    l = 1: -sum_p alpha_p i^p j^(p+1) d^2 with

        alpha_p = gamma(m,1) * m!(m+1)!(m+2)!/(2m+2)!
                  * 2^(m-2p) / (p!(p+1)!(m-2p)!).
    """
    if l == 1:
        lead = gamma_coef(m, 1) * DimRational(
            Fraction(
                math.factorial(m) * math.factorial(m + 1) * math.factorial(m + 2),
                math.factorial(2 * m + 2),
            )
        )
        terms = {}
        for p in range(m // 2 + 1):
            alpha = lead * DimRational(
                Fraction(
                    2 ** (m - 2 * p),
                    math.factorial(p) * math.factorial(p + 1) * math.factorial(m - 2 * p),
                )
            )
            terms[_ij_word(p, p + 1, (D, D))] = -alpha
        return NCPoly(m, terms, out_rank=m)
    if l != 0:
        raise ValueError("first-order operators have l in {0, 1}")
    if m <= 1:
        return NCPoly.identity(m)
    lead = gamma_coef(m, 0) * DimRational(
        Fraction(
            m * math.factorial(m) ** 2 * math.factorial(m - 2),
            math.factorial(2 * m),
        )
    )
    bracket = printed_first_order_bracket if as_printed else _first_order_bracket
    terms = {}
    for p in range(m // 2 + 1):
        alpha = lead * DimRational(
            Fraction(2 ** (m - 2 * p), math.factorial(p) ** 2 * math.factorial(m - 2 * p))
        ) * bracket(m, p)
        terms[_ij_word(p, p)] = alpha
    return NCPoly(m, terms, out_rank=m)


def ref_a_tilde_second(m: int, l: int) -> NCPoly:
    """Second-order operators before symmetrization (corrected closed forms).

    With S = m(m+n-3) and T = 2m+n-3:

    l = 0: 1 for m = 0;  (n-1) 1 for m = 1;  for m >= 2
           sum_p gamma(m,0) a_p(m,0) [ (S+1)^2 - 4pT(S+1) + 4p^2 T(T-2) ] i^p j^p
    l = 1: sum_p [ (m+1)(m+2) gamma(m,0) a_p(m,0)
                   - 2(m^2+mn-m+n) gamma(m,1) a_p(m,1) ] i^p j^(p+1) d^2
           + m(m-1) gamma(m,0) sum_p a_p(m,0) i^p j^p d^2 j
    l = 2: gamma(m,2) sum_p a_p(m,2) i^p j^(p+2) d^4
    """
    if l == 0:
        if m == 0:
            return NCPoly.identity(0)
        if m == 1:
            return NCPoly.monomial(1, Word(), _N - 1)
        s = DimRational(m) * (m + _N - 3)
        t = 2 * m + _N - 3
        terms = {}
        for p in range(m // 2 + 1):
            bracket = (s + 1) * (s + 1) - 4 * p * t * (s + 1) + 4 * p * p * t * (t - 2)
            terms[_ij_word(p, p)] = gamma_coef(m, 0) * DimRational(a_p_coefficient(m, 0, p)) * bracket
        return NCPoly(m, terms, out_rank=m)
    if l == 1:
        quad = DimRational(m * m) + DimRational(m) * _N - m + _N  # m^2 + mn - m + n
        terms: dict[Word, DimRational] = {}
        for p in range(m // 2 + 1):
            coeff = gamma_coef(m, 0) * DimRational(
                (m + 1) * (m + 2) * a_p_coefficient(m, 0, p)
            ) - 2 * quad * gamma_coef(m, 1) * DimRational(a_p_coefficient(m, 1, p))
            terms[_ij_word(p, p + 1, (D, D))] = coeff
        if m >= 2:
            lead = gamma_coef(m, 0) * DimRational(m * (m - 1))
            for p in range(m // 2 + 1):
                terms[_ij_word(p, p, (D, D, J))] = lead * DimRational(a_p_coefficient(m, 0, p))
        return NCPoly(m, terms, out_rank=m)
    if l == 2:
        terms = {}
        for p in range(m // 2 + 1):
            terms[_ij_word(p, p + 2, (D, D, D, D))] = gamma_coef(m, 2) * DimRational(
                a_p_coefficient(m, 2, p)
            )
        return NCPoly(m, terms, out_rank=m)
    raise ValueError("second-order operators have l in {0, 1, 2}")


def _diff_polys(pipeline: NCPoly, fixture: NCPoly) -> list[dict]:
    diffs = []
    words = set(pipeline.terms) | set(fixture.terms)
    for word in sorted(words, key=lambda w: w.sort_key()):
        a = pipeline.coefficient(word)
        b = fixture.coefficient(word)
        if a != b:
            diffs.append({"word": str(word), "pipeline": str(a), "fixture": str(b)})
    return diffs


def reference_compare(m: int, r: int) -> dict:
    """Diff the pipeline output against the closed-form fixtures for (m, r).

    Exact comparison in Q(n); a mismatch is reported, not raised, so the
    verification suites can render it.
    """
    if r not in (0, 1, 2):
        raise ValueError("fixtures cover r in {0, 1, 2}")
    entries = []
    if r == 0:
        entries.append(("A(m,0,0)", a_operator(m, 0, 0), ref_a_zeroth(m)))
    elif r == 1:
        entries.append(("Atilde(m,1,0)", a_tilde(m, 1, 0), ref_a_tilde_first(m, 0)))
        entries.append(("Atilde(m,1,1)", a_tilde(m, 1, 1), ref_a_tilde_first(m, 1)))
        p1 = p_polys(1, m)
        ref1 = ref_p1(m)
        for k in (-1, 0, 1):
            entries.append((f"P(1,{k})", p1[k], ref1[k]))
    else:
        for l in (0, 1, 2):
            entries.append((f"Atilde(m,2,{l})", a_tilde(m, 2, l), ref_a_tilde_second(m, l)))
    checks = []
    for name, pipe, fix in entries:
        diffs = _diff_polys(pipe, fix)
        checks.append({"name": name, "m": m, "match": not diffs, "diffs": diffs})
    return {"m": m, "r": r, "match": all(c["match"] for c in checks), "checks": checks}
