"""Exact linear algebra over prime fields and over the rationals.

Matrices are small (n <= 6 or so) and dense, so plain nested tuples and
Gaussian elimination are used throughout. ``FpMatrix`` carries its modulus
alongside the residues; ``ExactMatrix`` holds ``Fraction`` entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union


class SingularMatrixError(ValueError):
    """Raised when an inverse is requested for a singular matrix."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def primes(start: int = 2):
    """Yield primes >= start in increasing order."""
    k = max(start, 2)
    while True:
        if is_prime(k):
            yield k
        k += 1


@dataclass(frozen=True)
class FpMatrix:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        rows = tuple(tuple(int(a) % self.p for a in row) for row in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        _same_field(self, other)
        return FpMatrix(self.p, _matmul(self.rows, other.rows, self.p))

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        _same_field(self, other)
        return FpMatrix(self.p, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        _same_field(self, other)
        return FpMatrix(self.p, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scalar_shift(self, lam: int) -> "FpMatrix":
        """Return ``M - lam*I``."""
        return FpMatrix(self.p, tuple(
            tuple(a - lam if i == j else a for j, a in enumerate(row)) for i, row in enumerate(self.rows)))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(a) for a in row) for row in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(_matmul(self.rows, other.rows, None))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scalar_shift(self, lam) -> "ExactMatrix":
        return ExactMatrix(tuple(
            tuple(a - lam if i == j else a for j, a in enumerate(row)) for i, row in enumerate(self.rows)))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def reduce_mod(self, p: int) -> FpMatrix:
        """Entrywise reduction; entries must be integers."""
        for row in self.rows:
            for a in row:
                if a.denominator != 1:
                    raise ValueError("cannot reduce a non-integer entry mod p")
        return FpMatrix(p, tuple(tuple(int(a) for a in row) for row in self.rows))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for row in self.rows for a in row)

    def to_lists(self) -> list[list]:
        return [[int(a) if a.denominator == 1 else str(a) for a in row] for row in self.rows]


Matrix = Union[FpMatrix, ExactMatrix]


def _same_field(a: FpMatrix, b: FpMatrix):
    if a.p != b.p:
        raise ValueError(f"moduli differ: {a.p} vs {b.p}")
    if a.n != b.n:
        raise ValueError("dimension mismatch")


def _matmul(a, b, p):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = 0
            for t in range(k):
                s += ai[t] * b[t][j]
            row.append(s % p if p else s)
        out.append(tuple(row))
    return tuple(out)


def _field_of(M: Matrix):
    return M.p if isinstance(M, FpMatrix) else None


def _inv(a, p):
    return pow(a, -1, p) if p else 1 / Fraction(a)


def row_reduce(rows: Sequence[Sequence], p: int | None = None):
    """Reduced row echelon form.

    Works over F_p when ``p`` is given and over Q otherwise. Returns
    ``(rref_rows, pivot_columns)``; rows need not be square.
    """
    A = [[(a % p) if p else Fraction(a) for a in row] for row in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = _inv(A[r][c], p)
        A[r] = [(a * inv) % p if p else a * inv for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [((a - f * b) % p) if p else a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank_of_rows(rows, p: int | None = None) -> int:
    return len(row_reduce(rows, p)[1])


def mat_rank(M: Matrix) -> int:
    return rank_of_rows(M.rows, _field_of(M))


def kernel_dim(M: Matrix, lam=0) -> int:
    """Nullity of ``M - lam*I``."""
    return M.n - mat_rank(M.scalar_shift(lam))


def kernel_basis(rows, p: int | None = None) -> list[list]:
    """Basis of the right kernel of a (not necessarily square) matrix."""
    R, piv = row_reduce(rows, p)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0 if p else Fraction(0)] * ncols
        v[f] = 1 if p else Fraction(1)
        for r, c in enumerate(piv):
            v[c] = (-R[r][f]) % p if p else -R[r][f]
        basis.append(v)
    return basis


def q_integer(n: int, q: int) -> int:
    """``[n]_q = 1 + q + ... + q^(n-1)``, the number of lines in F_q^n."""
    return sum(q ** j for j in range(n))


def fixed_line_count(y: FpMatrix) -> int:
    """Number of y-invariant lines in F_p^n, via eigenspace dimensions."""
    return sum(q_integer(kernel_dim(y, lam), y.p) for lam in range(y.p))


def projective_points(n: int, p: int):
    """Normalized representatives of the lines in F_p^n.

    Each line is represented by the vector whose first nonzero coordinate
    is 1.
    """
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def fixed_lines_scan(y: FpMatrix) -> int:
    """Exhaustive count of lines L with yL ⊆ L."""
    p, n = y.p, y.n
    count = 0
    for v in projective_points(n, p):
        yv = [sum(y.rows[i][k] * v[k] for k in range(n)) % p for i in range(n)]
        lead = next(i for i in range(n) if v[i])
        c = yv[lead]
        if all((yv[i] - c * v[i]) % p == 0 for i in range(n)):
            count += 1
    return count


def in_hessenberg(a: Matrix, m) -> bool:
    """True iff ``a[i][j] == 0`` whenever ``i > m(j)`` (1-based)."""
    m = tuple(m)
    if len(m) != a.n:
        raise ValueError("Hessenberg vector and matrix sizes differ")
    for j in range(a.n):
        for i in range(m[j], a.n):
            if a.rows[i][j] != 0:
                return False
    return True


def inverse(g: Matrix) -> Matrix:
    p = _field_of(g)
    n = g.n
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(g.rows)]
    R, piv = row_reduce(aug, p)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is not invertible")
    rows = tuple(tuple(r[n:]) for r in R)
    return FpMatrix(p, rows) if p else ExactMatrix(rows)


def conjugate(g: Matrix, x: Matrix) -> Matrix:
    """Return ``g^{-1} x g``."""
    if type(g) is not type(x):
        raise TypeError("g and x must live over the same field")
    return inverse(g) @ x @ g


def determinant(rows, p: int | None = None):
    """Determinant by elimination (numeric entries)."""
    A = [[(a % p) if p else Fraction(a) for a in row] for row in rows]
    n = len(A)
    det = 1 if p else Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0 if p else Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c]
        inv = _inv(A[c][c], p)
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                A[i] = [((a - f * b) % p) if p else a - f * b for a, b in zip(A[i], A[c])]
    return det % p if p else det


def permutation_matrix(word: Sequence[int], p: int | None = None) -> Matrix:
    """Matrix sending e_j to e_{w_j} (1-based one-line notation)."""
    n = len(word)
    rows = [[0] * n for _ in range(n)]
    for j, wj in enumerate(word):
        rows[wj - 1][j] = 1
    rows = tuple(tuple(r) for r in rows)
    return FpMatrix(p, rows) if p else ExactMatrix(rows)


def elementary(n: int, i: int, j: int, p: int | None = None) -> Matrix:
    """Matrix unit E_{ij} (1-based)."""
    rows = tuple(tuple(int(r == i - 1 and c == j - 1) for c in range(n)) for r in range(n))
    return FpMatrix(p, rows) if p else ExactMatrix(rows)


def span_contains(basis, v, p: int | None = None) -> bool:
    """Whether ``v`` lies in the span of the vectors in ``basis``."""
    if not basis:
        return all(a == 0 for a in v)
    return rank_of_rows(list(basis) + [list(v)], p) == rank_of_rows(basis, p)
