"""Affine patches of B(x, H(m_max)) and the determinant that cuts them out.

Around a flag gB the open set gU_-B/B has coordinates z_{ji} (i < j), the
entries of a lower unitriangular u. The variety meets the patch in the
hypersurface det(A_g) = 0 with

    A_g = [x g u_1 | g u_1 | ... | g u_{n-1}].

Everything here works over Q (``Fraction`` coefficients) or over F_p
(coefficients reduced mod p), chosen by the type of the input matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ffla import (ExactMatrix, FpMatrix, SingularMatrixError, determinant, in_hessenberg,
                   inverse, kernel_basis, rank_of_rows, span_contains)
from .hesscore import HessenbergVector

Var = tuple[int, int]              # (j, i) for z_{ji}
Monomial = tuple[tuple[Var, int], ...]


class NotInVarietyError(ValueError):
    """gB is not a point of B(x, H(m_max))."""


def var_name(v: Var) -> str:
    j, i = v
    return f"z{j}{i}" if j < 10 and i < 10 else f"z{j}_{i}"


def patch_variables(n: int) -> list[Var]:
    """All z_{ji}, 1 <= i < j <= n, sorted by (j, i)."""
    return [(j, i) for j in range(2, n + 1) for i in range(1, j)]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for v, e in b:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class MultiPoly:
    """Sparse polynomial in the z_{ji}; zero coefficients are never stored."""

    __slots__ = ("terms", "p")

    def __init__(self, terms: dict | None = None, p: int | None = None):
        self.p = p
        clean = {}
        for mono, c in (terms or {}).items():
            c = c % p if p else Fraction(c)
            if c:
                clean[tuple(sorted(mono))] = c
        self.terms: dict[Monomial, Fraction | int] = clean

    @classmethod
    def const(cls, c, p: int | None = None) -> "MultiPoly":
        return cls({(): c}, p)

    @classmethod
    def var(cls, v: Var, p: int | None = None) -> "MultiPoly":
        return cls({((v, 1),): 1}, p)

    def _check(self, other: "MultiPoly"):
        if self.p != other.p:
            raise ValueError("coefficient fields differ")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out, self.p)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()}, self.p)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return MultiPoly({m: c * other for m, c in self.terms.items()}, self.p)
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out, self.p)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((), 0)

    def total_degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly({m: c for m, c in self.terms.items() if _mono_degree(m) == d}, self.p)

    def variables(self) -> set[Var]:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, mono: Iterable[tuple[Var, int]]):
        return self.terms.get(tuple(sorted(mono)), 0)

    def evaluate(self, values: dict[Var, Fraction | int]):
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                term *= Fraction(values.get(v, 0)) ** e if not self.p else pow(values.get(v, 0), e, self.p)
            total += term
        return total % self.p if self.p else total

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-_mono_degree(t[0]), t[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for k, (m, c) in enumerate(self._sorted_terms()):
            neg = (not self.p) and c < 0
            a = -c if neg else c
            body = "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)
            if not body:
                piece = str(a)
            elif a == 1:
                piece = body
            else:
                piece = f"{a}*{body}"
            if k == 0:
                out = ("-" if neg else "") + piece
            else:
                out += (" - " if neg else " + ") + piece
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiPoly({self.render()!r}, p={self.p})"

    def to_json(self) -> list[dict]:
        return [{"exponents": {var_name(v): e for v, e in m}, "coeff": str(c)}
                for m, c in self._sorted_terms()]


# ---------------------------------------------------------------------------
# patch matrices


def _field(*mats) -> int | None:
    ps = {m.p if isinstance(m, FpMatrix) else None for m in mats}
    if len(ps) != 1:
        raise TypeError("matrices must live over the same field")
    return ps.pop()


def _columns(g) -> list[list]:
    return [[g.rows[r][c] for r in range(g.n)] for c in range(g.n)]


def _matvec(x, v, p):
    out = [sum(a * b for a, b in zip(row, v)) for row in x.rows]
    return [a % p for a in out] if p else out


def _check_invertible(g, p):
    if determinant(g.rows, p) == 0:
        raise SingularMatrixError("g is singular")


def patch_matrix(x, g) -> list[list[MultiPoly]]:
    """Entries of A_g as polynomials in the z_{ji}."""
    p = _field(x, g)
    n = g.n
    _check_invertible(g, p)
    v = _columns(g)
    xv = [_matvec(x, col, p) for col in v]

    def column(base: list[list], i: int) -> list[MultiPoly]:
        # base[i-1] + sum_{j>i} z_{ji} base[j-1]
        col = []
        for r in range(n):
            terms = {(): base[i - 1][r]}
            for j in range(i + 1, n + 1):
                terms[(((j, i), 1),)] = base[j - 1][r]
            col.append(MultiPoly(terms, p))
        return col

    cols = [column(xv, 1)] + [column(v, i) for i in range(1, n)]
    return [[cols[c][r] for c in range(n)] for r in range(n)]


def poly_determinant(M: list[list[MultiPoly]], p: int | None) -> MultiPoly:
    """Laplace expansion along columns, memoised on the remaining rows."""
    n = len(M)
    memo: dict[tuple[int, int], MultiPoly] = {}

    def rec(col: int, rows: int) -> MultiPoly:
        if col == n:
            return MultiPoly.const(1, p)
        key = (col, rows)
        if key in memo:
            return memo[key]
        acc = MultiPoly(None, p)
        sign = 1
        for r in range(n):
            if not rows >> r & 1:
                continue
            entry = M[r][col]
            if not entry.is_zero():
                sub = rec(col + 1, rows & ~(1 << r))
                if not sub.is_zero():
                    term = entry * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return rec(0, (1 << n) - 1)


def patch_determinant(x, g) -> MultiPoly:
    """det(A_g); its constant term vanishes iff gB lies in B(x, H(m_max))."""
    p = _field(x, g)
    return poly_determinant(patch_matrix(x, g), p)


def in_mmax_variety(x, g) -> bool:
    """x v_1 lies in span(v_1, ..., v_{n-1})."""
    p = _field(x, g)
    v = _columns(g)
    return span_contains(v[: g.n - 1], _matvec(x, v[0], p), p)


def _det_cols(cols, p):
    n = len(cols)
    return determinant([[cols[c][r] for c in range(n)] for r in range(n)], p)


def linear_part(x, g, check: bool = False) -> MultiPoly:
    """Degree-one part of det(A_g) from the closed D_0, D_i expressions.

    D_0 = sum_{j>=2} z_{j1} det[x v_j | v_1 .. v_{n-1}]
    D_i = z_{ni} det[x v_1 | v_1 .. v_{i-1} | v_n | v_{i+1} .. v_{n-1}]

    With ``check=True`` the result is compared with the truncation of the
    full determinant.
    """
    p = _field(x, g)
    n = g.n
    _check_invertible(g, p)
    if not in_mmax_variety(x, g):
        raise NotInVarietyError("gB is not in B(x, H(m_max))")
    v = _columns(g)
    terms: dict = {}
    for j in range(2, n + 1):
        c = _det_cols([_matvec(x, v[j - 1], p)] + v[: n - 1], p)
        terms[(((j, 1), 1),)] = terms.get((((j, 1), 1),), 0) + c
    xv1 = _matvec(x, v[0], p)
    for i in range(1, n):
        cols = [xv1] + v[: i - 1] + [v[n - 1]] + v[i: n - 1]
        c = _det_cols(cols, p)
        key = (((n, i), 1),)
        terms[key] = terms.get(key, 0) + c
    lin = MultiPoly(terms, p)
    if check:
        trunc = patch_determinant(x, g).homogeneous_part(1)
        if trunc != lin:
            raise ArithmeticError(f"D-formula linear part {lin} disagrees with truncation {trunc}")
    return lin


def is_smooth_point_mmax(x, g) -> bool:
    """Jacobian criterion at the origin of the patch."""
    return not linear_part(x, g).is_zero()


def sing_vector(n: int) -> HessenbergVector:
    """(1, n-1, ..., n-1, n); for n = 2 this is (1, 2)."""
    if n < 2:
        raise ValueError("needs n >= 2")
    return HessenbergVector((1,) + (n - 1,) * (n - 2) + (n,))


def in_sing_candidate(x, g) -> bool:
    """g^{-1} x g lies in H(1, n-1, ..., n-1, n)."""
    p = _field(x, g)
    _check_invertible(g, p)
    y = inverse(g) @ x @ g
    return in_hessenberg(y, sing_vector(g.n))


def in_sing_candidate_subspaces(x, g) -> bool:
    """Same test phrased on columns: v_1 is an eigenvector of x and
    span(v_1, ..., v_{n-1}) is x-stable."""
    p = _field(x, g)
    _check_invertible(g, p)
    n = g.n
    v = _columns(g)
    if not span_contains([v[0]], _matvec(x, v[0], p), p):
        return False
    hyper = v[: n - 1]
    return all(span_contains(hyper, _matvec(x, col, p), p) for col in hyper)


@dataclass
class PatchReport:
    determinant: MultiPoly
    linear_part: MultiPoly
    smooth: bool
    in_sing_candidate: bool

    def to_json(self) -> dict:
        return {
            "determinant": self.determinant.render(),
            "linear_part": self.linear_part.render(),
            "smooth": self.smooth,
            "in_sing_candidate": self.in_sing_candidate,
        }


def patch_report(x, g) -> PatchReport:
    det = patch_determinant(x, g)
    lin = linear_part(x, g)
    if det.homogeneous_part(1) != lin:
        raise ArithmeticError("linear part mismatch")
    return PatchReport(det, lin, not lin.is_zero(), in_sing_candidate(x, g))


# ---------------------------------------------------------------------------
# square-free initial terms


@dataclass(frozen=True)
class VarOrder:
    """Total order on the variables, listed from greatest to least."""

    variables: tuple[Var, ...]

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("repeated variable in order")

    def rank(self) -> dict[Var, int]:
        size = len(self.variables)
        return {v: size - k for k, v in enumerate(self.variables)}

    def key(self, mono: Monomial, rank: dict | None = None) -> tuple[int, ...]:
        # lex order: variables written in decreasing order, compared left to
        # right, a proper prefix being smaller
        rank = rank or self.rank()
        return tuple(sorted((rank[v] for v, e in mono for _ in range(e)), reverse=True))

    def initial(self, f: MultiPoly) -> Monomial:
        if f.is_zero():
            raise ValueError("zero polynomial has no initial term")
        rank = self.rank()
        return max(f.terms, key=lambda m: self.key(m, rank))

    def names(self) -> list[str]:
        return [var_name(v) for v in self.variables]


def is_squarefree(mono: Monomial) -> bool:
    return all(e <= 1 for _, e in mono)


@dataclass
class Witness:
    status: str                 # "ok", "degenerate" or "failure"
    order: VarOrder | None
    determinant: MultiPoly
    initial: Monomial | None
    verified: bool
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("ok", "degenerate") and self.verified

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "order": self.order.names() if self.order else None,
            "determinant": self.determinant.render(),
            "initial": "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in self.initial)
            if self.initial is not None else None,
            "verified": self.verified,
            "reason": self.reason,
        }


def _ell_coefficients(y, p) -> list[list]:
    """Row i holds (const, coeff of z_21, ..., coeff of z_n1) of l_{i+1}."""
    return [list(row) for row in y.rows]


def _ell_collapses(a, k: int) -> bool:
    """l_1 = c and l_i = c z_{i1} for 2 <= i <= k, for a common constant c.

    This is exactly the vanishing of the k x k determinant
    [l | u_1 | ... | u_{k-1}] restricted to its first k rows.
    """
    n = len(a)
    c = a[0][0]
    if any(a[0][j] != 0 for j in range(1, n)):
        return False
    for i in range(1, k):
        for j in range(n):
            want = c if j == i else 0
            if a[i][j] != want:
                return False
    return True


def _order_with_front(front: list[Var], n: int) -> VarOrder:
    rest = [v for v in patch_variables(n) if v not in front]
    return VarOrder(tuple(front) + tuple(rest))


def _witness_order(a, n: int) -> VarOrder:
    front: list[Var] = []
    k = n
    while k > 3:
        if _ell_collapses(a, k - 1):
            # det is +-(l_k - c z_k1): linear, every monomial square-free
            return _order_with_front(front, n)
        front.append((k, k - 1))
        k -= 1
    a12, a13 = a[0][1], a[0][2]
    if a13 != 0:
        front += [(3, 2), (3, 1)]
    elif a12 != 0:
        front += [(3, 1), (2, 1)]
    return _order_with_front(front, n)


def squarefree_witness(x, g) -> Witness:
    """A lexicographic order whose initial term of det(A_g) is square-free.

    Runs the recursion on L = [y u_1 | u_1 | ... | u_{n-1}], y = g^{-1} x g,
    peeling z_{k,k-1} off the top while the leading minor is nonzero, then
    settling the 3 x 3 case from the two coefficients of l_1 that can create
    squares. The chosen order is checked against the expanded determinant.
    """
    p = _field(x, g)
    n = g.n
    if n < 2:
        raise ValueError("needs n >= 2")
    det = patch_determinant(x, g)
    if det.constant_term() != 0:
        raise NotInVarietyError("gB is not in B(x, H(m_max))")
    y = inverse(g) @ x @ g
    a = _ell_coefficients(y, p)
    if _ell_collapses(a, n):
        if not det.is_zero():
            return Witness("failure", None, det, None, False, "collapse test disagrees with expansion")
        return Witness("degenerate", _order_with_front([], n), det, None, True, "determinant is zero")
    if n == 2:
        order = _order_with_front([], n)
        init = order.initial(det)
        if is_squarefree(init):
            return Witness("ok", order, det, init, True)
        return Witness("failure", None, det, init, False, "single variable with a squared initial term")
    order = _witness_order(a, n)
    if det.is_zero():
        return Witness("failure", order, det, None, False, "expansion vanished but collapse test did not")
    init = order.initial(det)
    ok = is_squarefree(init)
    return Witness("ok" if ok else "failure", order, det, init, ok,
                   "" if ok else "initial term is not square-free")


# ---------------------------------------------------------------------------
# sample points


def _rand_vec(n, rng, lo=-3, hi=3):
    return [Fraction(rng.randint(lo, hi)) for _ in range(n)]


def _combination(basis: list[list], n: int, rng) -> list:
    coeffs = _rand_vec(len(basis), rng)
    return [sum(c * b[r] for c, b in zip(coeffs, basis)) for r in range(n)]


def _extend_basis(vectors: list[list], n: int, rng, within: list[list] | None = None,
                  target: int | None = None) -> list[list]:
    """Add random vectors (from span(within) if given) until ``target`` independent."""
    vecs = [list(v) for v in vectors]
    target = n if target is None else target
    while len(vecs) < target:
        if within:
            cand = _combination(within, n, rng)
        else:
            cand = _rand_vec(n, rng)
        if rank_of_rows(vecs + [cand]) == len(vecs) + 1:
            vecs.append(cand)
    return vecs


def _from_columns(cols: list[list]) -> ExactMatrix:
    n = len(cols)
    return ExactMatrix(tuple(tuple(cols[c][r] for c in range(n)) for r in range(n)))


def random_mmax_point(x: ExactMatrix, rng: random.Random) -> ExactMatrix:
    """A random g with gB in B(x, H(m_max)), x v_1 placed in the hyperplane."""
    n = x.n
    if n < 3:
        raise ValueError("needs n >= 3; for n = 2 the variety is a set of eigenlines")
    while True:
        v1 = _rand_vec(n, rng)
        if any(v1):
            break
    xv1 = _matvec(x, v1, None)
    start = [v1] if rank_of_rows([v1, xv1]) == 1 else [v1, xv1]
    hyper = _extend_basis(start, n, rng, target=n - 1) if n > 1 else []
    return _from_columns(_extend_basis(hyper, n, rng))


def _eigenvalues(x: ExactMatrix) -> list[Fraction]:
    """Eigenvalues found among the diagonal entries (x triangular) or by
    probing small integers."""
    cands = {x[i, i] for i in range(x.n)} | {Fraction(k) for k in range(-6, 7)}
    return sorted(c for c in cands if rank_of_rows(x.scalar_shift(c).rows) < x.n)


def random_sing_point(x: ExactMatrix, rng: random.Random, tries: int = 200) -> ExactMatrix | None:
    """A random g with v_1 an eigenvector of x and span(v_1..v_{n-1}) x-stable.

    x-stable hyperplanes are kernels of left eigenvectors; v_1 is drawn from
    an eigenspace inside that kernel.
    """
    n = x.n
    eig = _eigenvalues(x)
    xt = [[x[j, i] for j in range(n)] for i in range(n)]
    for _ in range(tries):
        mu = rng.choice(eig)
        left = kernel_basis([[xt[i][j] - (mu if i == j else 0) for j in range(n)] for i in range(n)])
        phi = _combination(left, n, rng)
        if not any(phi):
            continue
        lam = rng.choice(eig)
        rows = [[x[i, j] - (lam if i == j else 0) for j in range(n)] for i in range(n)] + [phi]
        space = kernel_basis(rows)
        if not space:
            continue
        v1 = _combination(space, n, rng)
        if not any(v1):
            continue
        hyperplane = kernel_basis([phi])
        hyper = _extend_basis([v1], n, rng, within=hyperplane, target=n - 1)
        return _from_columns(_extend_basis(hyper, n, rng))
    return None


def random_unitriangular_centralizer(x: ExactMatrix, rng: random.Random) -> ExactMatrix:
    """I + sum_k a_k N^k with N the strictly upper part of a triangular x.

    For x in canonical form N is the nilpotent Jordan part, so the result
    is unitriangular and commutes with x.
    """
    n = x.n
    N = ExactMatrix(tuple(tuple(x[i, j] if j > i else 0 for j in range(n)) for i in range(n)))
    out = ExactMatrix.identity(n)
    power = ExactMatrix.identity(n)
    for _ in range(1, n):
        power = power @ N
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        out = out + ExactMatrix(tuple(tuple(c * a for a in row) for row in power.rows))
    return out
