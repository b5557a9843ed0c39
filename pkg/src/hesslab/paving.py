"""Affine paving of Hessenberg varieties by Schubert cells.

For x = s + nil in HFPJF the cell C_w meets B(x, H(m)) iff nil lies in
w H(m) w^{-1}, and the intersection is an affine space whose dimension is
a count of inversions of w^{-1}. Summing t^dim over nonempty cells gives
the Poincaré polynomial in t = q^2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hesscore import CanonicalMatrix, HessenbergVector, JordanType, hfpjf
from .poly import Poly
from .symgrp import Permutation, all_permutations, length

BettiPolynomial = Poly


@dataclass(frozen=True)
class CellDatum:
    w: Permutation
    nonempty: bool
    dim: int
    row_dims: tuple[int, ...]


def cell_nonempty(w: Permutation, x: CanonicalMatrix, m: HessenbergVector) -> bool:
    winv = w.inverse()
    n = x.n
    for i in range(n):
        for j in range(n):
            if x.nil[i, j] != 0 and winv(i + 1) > m(winv(j + 1)):
                return False
    return True


def cell_dimension(w: Permutation, x: CanonicalMatrix, m: HessenbergVector) -> CellDatum:
    n = x.n
    if not cell_nonempty(w, x, m):
        return CellDatum(w, False, 0, (0,) * (n - 1))
    winv = w.inverse()
    diag = x.diagonal()
    pivot_col = x.pivot_in_row()
    row_dims = [0] * max(n - 1, 0)
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            if winv(i) <= winv(k):
                continue
            if diag[i - 1] == diag[k - 1]:
                j0 = pivot_col.get(k - 1)
                counted = j0 is None or m(winv(j0 + 1)) >= winv(i)
            else:
                counted = m(winv(k)) >= winv(i)
            if counted:
                row_dims[i - 1] += 1
    return CellDatum(w, True, sum(row_dims), tuple(row_dims))


def cell_data(x: CanonicalMatrix, m: HessenbergVector) -> list[CellDatum]:
    return [cell_dimension(w, x, m) for w in all_permutations(x.n)]


def _canonical(arg) -> CanonicalMatrix:
    return arg if isinstance(arg, CanonicalMatrix) else hfpjf(arg)


def poincare_tymoczko(jtype: JordanType | CanonicalMatrix, m: HessenbergVector) -> Poly:
    x = _canonical(jtype)
    if m.n != x.n:
        raise ValueError("Hessenberg vector size does not match the matrix")
    coeffs = [0] * (x.n * (x.n - 1) // 2 + 1)
    for cell in cell_data(x, m):
        if cell.nonempty:
            coeffs[cell.dim] += 1
    return Poly(coeffs)


def euler_characteristic(jtype: JordanType | CanonicalMatrix, m: HessenbergVector) -> int:
    x = _canonical(jtype)
    return sum(1 for w in all_permutations(x.n) if cell_nonempty(w, x, m))


def flag_variety_poincare(n: int) -> Poly:
    """Sum of t^{l(w)} over S_n, by direct enumeration."""
    coeffs = [0] * (n * (n - 1) // 2 + 1)
    for w in all_permutations(n):
        coeffs[length(w)] += 1
    return Poly(coeffs)
