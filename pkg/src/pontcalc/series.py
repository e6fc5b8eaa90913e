"""Univariate exact polynomial helpers for series cross-checks.

The truncated log/exp cycle operations are polynomial expressions in a
single ring element, so their composites can be predicted by ordinary
polynomial arithmetic over Q.  These helpers provide that independent
path: coefficient lists (index = power) with Fraction entries, plus a
Horner evaluator that substitutes a cycle for the variable.

Composing the truncated series shows exactly what "exp and log are
inverse" means here: exp_after_log(g) equals 1 + T up to order g + 1,
with an explicit residual supported in powers >= g + 2.  The residual is
the part the nilpotency axiom kills; in the free ring it is nonzero and
these coefficients are the witness.
"""

from __future__ import annotations

from fractions import Fraction

from .cycles import Cycle, RingContext, pontryagin


def log_series_coeffs(order: int) -> list[Fraction]:
    """Coefficients of T - T^2/2 + ... +- T^order / order."""
    return [Fraction(0)] + [Fraction((-1) ** (j + 1), j) for j in range(1, order + 1)]


def exp_series_coeffs(order: int) -> list[Fraction]:
    """Coefficients of 1 + T + T^2/2! + ... + T^order / order!."""
    coeffs = [Fraction(1)]
    factorial = 1
    for j in range(1, order + 1):
        factorial *= j
        coeffs.append(Fraction(1, factorial))
    return coeffs


def poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_compose(outer: list[Fraction], inner: list[Fraction]) -> list[Fraction]:
    """Full composition outer(inner(T)), no truncation (Horner)."""
    result = [Fraction(0)]
    for c in reversed(outer):
        result = poly_mul(result, inner)
        if not result:
            result = [Fraction(0)]
        result[0] += c
    while len(result) > 1 and result[-1] == 0:
        result.pop()
    return result


def exp_after_log(g: int) -> list[Fraction]:
    """Coefficients of E(L(T)) for the order-(g+1) truncations E, L."""
    order = g + 1
    return poly_compose(exp_series_coeffs(order), log_series_coeffs(order))


def log_after_exp(g: int) -> list[Fraction]:
    """Coefficients of L(E(T) - 1) for the order-(g+1) truncations."""
    order = g + 1
    e = exp_series_coeffs(order)
    e_minus_one = [e[0] - 1] + e[1:]
    return poly_compose(log_series_coeffs(order), e_minus_one)


def poly_eval_at_cycle(coeffs: list[Fraction], base: Cycle, ctx: RingContext) -> Cycle:
    """Evaluate sum coeffs[j] * base^{*j} by Horner's rule in the cycle ring."""
    result = Cycle.zero(ctx.rank)
    unit = Cycle.unit(ctx.rank)
    for c in reversed(coeffs):
        result = pontryagin(result, base, ctx) + unit.scale(c)
    return result
