"""Derivation pipeline for the sphere operators entering the norm identities.

The chain, all exact over Q(n) for a concrete integer rank m:

    p_polys       three-term recurrence for the polynomials P^(r,k)
    radial_split  P^(q,k) = sum_l |y|^(2l) P^(q,k,l)
    gamma_coef    rationalized Gamma-ratio weight
    c_operator    algebraic contraction operator as sum_p a_p i^p j^(p+k)
    b_operator    weighted sum over k of gamma * C * P^(q,k,l)
    a_tilde       binomial sum over q
    a_operator    self-adjoint symmetrization (A + A*)/2

Depth is capped at MAX_ORDER: coefficient size and word count grow fast
with r, and everything downstream is budgeted for r <= 2.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .dimrat import N_SYMBOL, DimRational
from .ncpoly import D, DELTA, I, J, NCPoly, RankFlowError, Word, adjoint

__all__ = [
    "MAX_ORDER",
    "p_polys",
    "radial_split",
    "gamma_coef",
    "c_operator",
    "b_operator",
    "a_tilde",
    "a_operator",
    "rank_flow_check",
    "derivation_report",
]

#: recursion depth cap; coefficient growth makes deeper orders impractical
MAX_ORDER = 8

_D2_RAD = Word((D, D), rad=1)  # the block |y|^2 d^2


def _check_order(r: int) -> None:
    if r < 0:
        raise ValueError("order must be >= 0")
    if r > MAX_ORDER:
        raise ValueError(f"order {r} exceeds the cap {MAX_ORDER}")


@lru_cache(maxsize=None)
def p_polys(r: int, m: int) -> dict[int, NCPoly]:
    """Polynomials P^(r,k) in |y|^2 d^2 and j for a rank-m base field.

    Keys run over k = -r .. r; P^(r,k) maps rank m to rank m + 2k.  Words
    whose rank flow dips below zero (a contraction applied at rank < 2)
    are dropped: they act as the zero operator.
    """
    _check_order(r)
    if m < 0:
        raise ValueError("rank must be >= 0")
    if r == 0:
        return {0: NCPoly.identity(m)}
    prev = p_polys(r - 1, m)

    def prev_at(k: int) -> NCPoly:
        if k in prev:
            return prev[k]
        return NCPoly.zero(m, out_rank=max(m + 2 * k, 0))

    out: dict[int, NCPoly] = {}
    for k in range(-r, r + 1):
        acc = NCPoly.zero(m, out_rank=m + 2 * k if m + 2 * k >= 0 else 0)
        p_km1 = prev_at(k - 1)
        if not p_km1.is_zero():
            acc = acc + NCPoly.monomial(p_km1.out_rank, _D2_RAD, -1).compose(p_km1)
        c_id = (m + 2 * k) * (m + N_SYMBOL + 2 * k - 3)
        p_k = prev_at(k)
        if not p_k.is_zero():
            acc = acc + p_k * DimRational(c_id)
        p_kp1 = prev_at(k + 1)
        c_j = -(m + 2 * k + 2) * (m + 2 * k + 1)
        if not p_kp1.is_zero() and c_j != 0:
            acc = acc + NCPoly.monomial(p_kp1.out_rank, Word((J,))).compose(p_kp1) * DimRational(c_j)
        out[k] = acc
    return out


def radial_split(p: NCPoly) -> dict[int, NCPoly]:
    """Bucket the terms of a P-polynomial by |y|^2 count, stripping the marker.

    Every word produced by p_polys carries one |y|^2 per d^2 block; a word
    violating that is an internal inconsistency.

    Note: the split can be nonempty for l up to the order r, not only up
    to |k|; e.g. the k = 0 polynomial at r = 2 has a genuine second-order
    part (m+1)(m+2) |y|^2 j d^2 + m(m-1) |y|^2 d^2 j.
    """
    out: dict[int, NCPoly] = {}
    for word, coeff in p.terms.items():
        if word.rad != word.d_pair_count():
            raise RankFlowError(
                f"word '{word}' has {word.rad} radial factors but {word.d_pair_count()} d^2 blocks"
            )
        bucket = out.setdefault(word.rad, NCPoly.zero(p.base_rank, out_rank=p.out_rank))
        out[word.rad] = bucket + NCPoly.monomial(p.base_rank, word.strip_rad(), coeff)
    return out


@lru_cache(maxsize=None)
def gamma_coef(m: int, k: int) -> DimRational:
    """The Gamma-ratio weight as an exact rational function of n.

    With M = m + k >= 0 the ratio collapses (all sqrt(pi) factors cancel) to

        (2M)! / (4^M M!) * prod_{t=0}^{M-1} 2 / (n - 1 + 2t).
    """
    big_m = m + k
    if big_m < 0:
        raise ValueError(f"m + k = {big_m} must be >= 0")
    value = DimRational(Fraction(math.factorial(2 * big_m), 4**big_m * math.factorial(big_m)))
    for t in range(big_m):
        value = value * DimRational(2) / DimRational(N_SYMBOL - 1 + 2 * t)
    return value


def a_p_coefficient(m: int, k: int, p: int) -> Fraction:
    """Expansion coefficient of i^p j^(p+k) in the contraction operator."""
    return Fraction(
        2 ** (m - 2 * p)
        * math.factorial(m)
        * math.factorial(m + k)
        * math.factorial(m + 2 * k),
        math.factorial(m - 2 * p)
        * math.factorial(p)
        * math.factorial(p + k)
        * math.factorial(2 * m + 2 * k),
    )


@lru_cache(maxsize=None)
def c_operator(m: int, k: int) -> NCPoly:
    """Contraction with the symmetrized Kronecker power, expanded in i and j.

    Maps rank m+2k to rank m; coefficients are plain rationals.  The sum
    runs over p from max(0, -k) to floor(m/2); when that range is empty
    (always the case for m + 2k < 0) the operator is zero.
    """
    if m < 0:
        raise ValueError("rank must be >= 0")
    if m + 2 * k < 0:
        return NCPoly.zero(0, out_rank=m)
    terms = {}
    for p in range(max(0, -k), m // 2 + 1):
        word = Word((I,) * p + (J,) * (p + k))
        terms[word] = DimRational(a_p_coefficient(m, k, p))
    return NCPoly(m + 2 * k, terms, out_rank=m)


@lru_cache(maxsize=None)
def b_operator(m: int, q: int, l: int) -> NCPoly:
    """Assemble gamma * C * P^(q,k,l) summed over admissible k.

    A value of k is admissible when m + 2k >= 0 (otherwise the P-block has
    no surviving words on a rank-m field) and the l-bucket of its radial
    split is nonzero.  No |k| >= l restriction applies: the split can
    populate l > |k| buckets (see radial_split).
    """
    if not 0 <= l <= q:
        raise ValueError(f"need 0 <= l <= q, got l={l}, q={q}")
    _check_order(q)
    polys = p_polys(q, m)
    acc = NCPoly.zero(m, out_rank=m)
    for k in range(-q, q + 1):
        if m + 2 * k < 0:
            continue
        p_qk = polys.get(k)
        if p_qk is None or p_qk.is_zero():
            continue
        split = radial_split(p_qk)
        p_qkl = split.get(l)
        if p_qkl is None or p_qkl.is_zero():
            continue
        acc = acc + c_operator(m, k).compose(p_qkl) * gamma_coef(m, k)
    return acc


@lru_cache(maxsize=None)
def a_tilde(m: int, r: int, l: int) -> NCPoly:
    """Binomial-weighted sum of b_operator over q = l .. r (maps m to m)."""
    if not 0 <= l <= r:
        raise ValueError(f"need 0 <= l <= r, got l={l}, r={r}")
    _check_order(r)
    acc = NCPoly.zero(m, out_rank=m)
    for q in range(l, r + 1):
        acc = acc + b_operator(m, q, l) * DimRational(math.comb(r, q))
    return acc


@lru_cache(maxsize=None)
def a_operator(m: int, r: int, l: int) -> NCPoly:
    """Self-adjoint operator (a_tilde + adjoint(a_tilde)) / 2."""
    at = a_tilde(m, r, l)
    return (at + adjoint(at)) * DimRational(Fraction(1, 2))


def rank_flow_check(p: NCPoly, expected_order: int | None = None) -> dict:
    """Validate rank flow and homogeneous differential order of a polynomial.

    Every word must map base_rank to out_rank (checked at construction, so
    re-verified here defensively) and, when expected_order is given, carry
    exactly that many derivative letters.  Violations raise RankFlowError
    naming the offending word.
    """
    orders = set()
    for word in p.terms:
        rank = word.output_rank(p.base_rank)
        if rank != p.out_rank:
            raise RankFlowError(
                f"word '{word}' maps rank {p.base_rank} to {rank}, expected {p.out_rank}"
            )
        orders.add(word.derivative_order())
        if expected_order is not None and word.derivative_order() != expected_order:
            raise RankFlowError(
                f"word '{word}' has derivative order {word.derivative_order()}, "
                f"expected {expected_order}"
            )
    return {
        "base_rank": p.base_rank,
        "out_rank": p.out_rank,
        "terms": len(p.terms),
        "orders": sorted(orders),
        "ok": True,
    }


def derivation_report(m: int, r: int, n0: int | None = None) -> dict:
    """Machine-readable derivation of the operator bank for (m, r).

    n0 = None keeps coefficients symbolic in n; an integer evaluates them
    exactly.  The report embeds the self-adjointness, order and rank-flow
    check results per l.
    """
    from .textform import serialize

    banks = []
    for l in range(r + 1):
        a = a_operator(m, r, l)
        poly = a.specialize(n0) if n0 is not None else a
        terms = []
        for word, coeff in poly.sorted_terms():
            num, den = coeff.as_num_den_strings()
            terms.append({"word": str(word), "coeff_num": num, "coeff_den": den})
        checks = {
            "self_adjoint": adjoint(a) == a,
            "order": rank_flow_check(a, expected_order=2 * l)["orders"] == ([2 * l] if a.terms else []),
            "rank_flow": rank_flow_check(a)["ok"],
        }
        banks.append(
            {
                "m": m,
                "r": r,
                "l": l,
                "text": serialize(poly),
                "terms": terms,
                "checks": checks,
            }
        )
    return {"m": m, "r": r, "n": "symbolic" if n0 is None else n0, "operators": banks}
