"""Closed formulas for Poincaré polynomials, point counts and Euler
characteristics, all in the half-degree variable t = q^2."""

from __future__ import annotations

import math
from typing import Sequence

from .hesscore import JordanType, m_max, m_sing
from .paving import euler_characteristic, poincare_tymoczko
from .poly import Poly
from .symgrp import codim_one_euler_formula, s, schubert_poincare, w0

QPolynomial = Poly


def q_int(n: int) -> Poly:
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return Poly([1] * n)


def q_factorial(n: int) -> Poly:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = Poly([1])
    for j in range(1, n + 1):
        out = out * q_int(j)
    return out


def q_int_at(n: int, p: int) -> int:
    return sum(p ** j for j in range(n))


def q_factorial_at(n: int, p: int) -> int:
    return math.prod(q_int_at(j, p) for j in range(1, n + 1))


def _check_multiplicities(n: int, d: Sequence[int]) -> tuple[int, ...]:
    d = tuple(int(a) for a in d)
    if not d or any(a < 1 for a in d):
        raise ValueError(f"multiplicities must be positive, got {d}")
    if sum(d) > n:
        raise ValueError(f"geometric multiplicities {d} exceed n={n}")
    return d


def poincare_mmax_closed(n: int, d: Sequence[int]) -> Poly:
    """[n-2]!([n][n-2] + t^{n-2} * sum_j [d_j]).

    ``d`` lists the geometric multiplicities, i.e. the dimensions of the
    eigenspaces of x (the number of Jordan blocks per eigenvalue).
    """
    if n < 2:
        raise ValueError("m_max needs n >= 2")
    d = _check_multiplicities(n, d)
    tail = Poly()
    for dj in d:
        tail = tail + q_int(dj)
    return q_factorial(n - 2) * (q_int(n) * q_int(n - 2) + tail.shift(n - 2))


def poincare_mmax_for_type(jtype: JordanType) -> Poly:
    return poincare_mmax_closed(jtype.n, jtype.geometric_multiplicities())


def eigenline_count_formula(n: int, k: int, p: int) -> int:
    """|B_p(y, H(m_max))| when y has k invariant lines in F_p^n."""
    if not 0 <= k <= q_int_at(n, p):
        raise ValueError(f"k={k} out of range [0, [{n}]_{p}]")
    return q_factorial_at(n - 2, p) * (q_int_at(n, p) * q_int_at(n - 2, p) + k * p ** (n - 2))


def schubert_codim1_poincare(n: int, i: int) -> Poly:
    """[n-2]!([n][n-1] - t^{2n-3} - t^{2n-4}) for X_{s_i w_0}, i in {2, n-2}."""
    if n < 4:
        raise ValueError("needs n >= 4")
    if i not in (2, n - 2):
        raise ValueError(f"i must be 2 or n-2, got {i}")
    return q_factorial(n - 2) * (q_int(n) * q_int(n - 1) - Poly.monomial(2 * n - 3) - Poly.monomial(2 * n - 4))


def echess_poincare(n: int, case: str) -> Poly:
    """B(x, H(1, n-1, ..., n-1, n)) for x nilpotent of rank two."""
    if n < 4:
        raise ValueError("needs n >= 4")
    if case == "square-zero":
        return q_factorial(n - 2) * (q_int(n - 2) * q_int(n - 3) + Poly([1, 1]).shift(n - 3))
    if case == "non-square-zero":
        return q_factorial(n - 2) * (q_int(n - 2) + q_int(n - 3) ** 2 * Poly.monomial(1))
    raise ValueError(f"unknown case {case!r}")


def echess_euler_formula(n: int, case: str) -> int:
    extra = {"square-zero": 8, "non-square-zero": 7}[case]
    return math.factorial(n - 2) * (n * n - 5 * n + extra)


def echess_type(n: int, case: str) -> JordanType:
    """Representative nilpotent type: (2,2,1^{n-4}) or (3,1^{n-3})."""
    if case == "square-zero":
        return JordanType(((2, 2) + (1,) * (n - 4),))
    if case == "non-square-zero":
        return JordanType(((3,) + (1,) * (n - 3),))
    raise ValueError(f"unknown case {case!r}")


# ---------------------------------------------------------------------------
# irreducibility


def top_degree(n: int) -> int:
    """t-degree (n^2 - n - 2)/2, the dimension of a codimension-one variety."""
    return (n * n - n - 2) // 2


def is_monic_at_top(poly: Poly, n: int) -> bool:
    return poly.coeff(top_degree(n)) == 1


def irreducible_mmax(jtype: JordanType) -> str:
    """'irreducible', 'reducible' or 'degenerate-scalar' for B(x, H(m_max)).

    x - c has rank one exactly when the eigenvalue c has geometric
    multiplicity n-1. For n = 2 such an x is either nilpotent, giving a
    single point, or has two distinct eigenvalues, giving two points.
    """
    n = jtype.n
    if jtype.is_scalar():
        return "degenerate-scalar"
    if n == 2:
        return "reducible" if jtype.r == 2 else "irreducible"
    return "reducible" if max(jtype.geometric_multiplicities()) == n - 1 else "irreducible"


def classification_report(jtype: JordanType) -> dict:
    n = jtype.n
    verdict = irreducible_mmax(jtype)
    out = {"type": str(jtype), "n": n, "classification": verdict,
           "geometric_multiplicities": list(jtype.geometric_multiplicities())}
    if n >= 2:
        poly = poincare_mmax_for_type(jtype)
        out["poincare"] = poly.to_list()
        out["top_coefficient"] = poly.coeff(top_degree(n))
        out["monic"] = is_monic_at_top(poly, n)
    return out


# ---------------------------------------------------------------------------
# Schubert varieties versus Hessenberg varieties


def schubert_vs_hessenberg_report(n: int) -> dict:
    """Same Poincaré polynomial, different singular loci."""
    if n < 4:
        raise ValueError("needs n >= 4")
    hess = poincare_mmax_closed(n, (n - 2,))
    schub = schubert_codim1_poincare(n, 2)
    schub_enum = {i: schubert_poincare(s(i, n) * w0(n)) if n <= 6 else None for i in (2, n - 2)}
    sing_schubert = codim_one_euler_formula(n)
    sing_hess = {c: echess_euler_formula(n, c) for c in ("square-zero", "non-square-zero")}
    return {
        "n": n,
        "hessenberg_poincare": hess.to_list(),
        "schubert_poincare": schub.to_list(),
        "poincare_equal": hess == schub and all(v is None or v == schub for v in schub_enum.values()),
        "schubert_singular_euler": sing_schubert,
        "hessenberg_singular_euler": sing_hess,
        "euler_distinct": sing_schubert not in sing_hess.values(),
    }


def echess_report(n: int, case: str) -> dict:
    """Closed form against the paving for the representative type."""
    jtype = echess_type(n, case)
    closed = echess_poincare(n, case)
    paving = poincare_tymoczko(jtype, m_sing(n))
    return {
        "n": n,
        "case": case,
        "type": str(jtype),
        "closed": closed.to_list(),
        "tymoczko": paving.to_list(),
        "euler": closed(1),
        "euler_formula": echess_euler_formula(n, case),
        "euler_cells": euler_characteristic(jtype, m_sing(n)),
        "agree": closed == paving,
    }


def mmax_report(jtype: JordanType) -> dict:
    closed = poincare_mmax_for_type(jtype)
    paving = poincare_tymoczko(jtype, m_max(jtype.n))
    return {"type": str(jtype), "closed": closed.to_list(), "tymoczko": paving.to_list(), "agree": closed == paving}
