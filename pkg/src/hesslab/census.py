"""Exhaustive point counts of Hessenberg varieties over F_p.

Every flag over F_p has a unique representative u*w_dot with u upper
unitriangular and supported on the positions (i<j) that are inversions of
w^{-1}. For each such flag we conjugate x by it and test the result
against the Hessenberg staircase.

The vectorised path reduces each conjugate to its *profile*: for every
column, the lowest row holding a nonzero entry. A matrix lies in H(m) iff
its profile is bounded by m entrywise, so a single sweep over the flag
variety answers all Hessenberg vectors at once.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .ffla import ExactMatrix, FpMatrix, in_hessenberg, is_prime, permutation_matrix, primes
from .hesscore import CanonicalMatrix, HessenbergVector, JordanType, hfpjf
from .paving import cell_dimension, poincare_tymoczko
from .poly import Poly, interpolate
from .symgrp import Permutation, all_permutations


class InadmissiblePrimeError(ValueError):
    """The prime collapses two distinct entries of the canonical matrix."""


@dataclass(frozen=True)
class FlagRep:
    w: Permutation
    free_values: tuple[tuple[tuple[int, int], int], ...]

    def values(self) -> dict[tuple[int, int], int]:
        return dict(self.free_values)


@dataclass
class CountReport:
    p: int
    total: int
    per_cell: dict[Permutation, int]
    admissible: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "total": self.total,
            "per_cell": {str(w): c for w, c in sorted(self.per_cell.items()) if c},
            "admissible": self.admissible,
        }


# ---------------------------------------------------------------------------
# admissibility


def _entries(x) -> set[Fraction]:
    if isinstance(x, CanonicalMatrix):
        x = x.x
    return {a for row in x.rows for a in row}


def _is_scalar(x) -> bool:
    if isinstance(x, CanonicalMatrix):
        x = x.x
    n = x.n
    return all(x[i, j] == (x[0, 0] if i == j else 0) for i in range(n) for j in range(n))


def admissible_prime(x, p: int) -> bool:
    """True iff no two distinct entries of x are congruent mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if _is_scalar(x):
        return True
    vals = sorted(_entries(x))
    for a, b in itertools.combinations(vals, 2):
        d = b - a
        if d.denominator == 1 and d.numerator % p == 0:
            return False
    return True


def admissibility_report(x: CanonicalMatrix, p: int) -> dict:
    return {
        "p": p,
        "divisibility_ok": admissible_prime(x, p),
        "bound_ok": p > 2 * x.m_s,
        "m_s": x.m_s,
    }


# ---------------------------------------------------------------------------
# enumeration


def free_positions(w: Permutation) -> list[tuple[int, int]]:
    """Positions (i, j), i < j, 1-based, with (i<j) an inversion of w^{-1}."""
    winv = w.inverse()
    n = w.n
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if winv(i) > winv(j)]


def enumerate_cell(w: Permutation, p: int) -> Iterator[FlagRep]:
    """All p^{l(w)} representatives of the Schubert cell, odometer order."""
    free = free_positions(w)
    for vals in itertools.product(range(p), repeat=len(free)):
        yield FlagRep(w, tuple(zip(free, vals)))


def enumerate_flags(n: int, p: int) -> Iterator[FlagRep]:
    for w in all_permutations(n):
        yield from enumerate_cell(w, p)


def flag_count(n: int, p: int) -> int:
    """[n]_p! = number of complete flags in F_p^n."""
    return math.prod(sum(p ** j for j in range(k)) for k in range(1, n + 1))


def unipotent_of(rep: FlagRep, n: int, p: int) -> list[list[int]]:
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for (i, j), a in rep.free_values:
        u[i - 1][j - 1] = a % p
    return u


def unitriangular_inverse(u: list[list[int]], p: int) -> list[list[int]]:
    """Inverse of an upper unitriangular matrix by back-substitution."""
    n = len(u)
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            s = 0
            for k in range(i + 1, j + 1):
                s += u[i][k] * inv[k][j]
            inv[i][j] = (-s) % p
    return inv


def flag_matrix(rep: FlagRep, p: int) -> FpMatrix:
    """g = u * w_dot, a representative of the flag."""
    n = rep.w.n
    u = FpMatrix(p, tuple(tuple(r) for r in unipotent_of(rep, n, p)))
    return u @ permutation_matrix(rep.w.word, p)


def conjugate_by_flag(y: FpMatrix, rep: FlagRep) -> FpMatrix:
    """(u w_dot)^{-1} y (u w_dot), with u^{-1} from back-substitution."""
    p, n = y.p, y.n
    u = unipotent_of(rep, n, p)
    uinv = unitriangular_inverse(u, p)
    inner = FpMatrix(p, tuple(tuple(r) for r in uinv)) @ y @ FpMatrix(p, tuple(tuple(r) for r in u))
    word = rep.w.word
    # (w_dot^{-1} a w_dot)[i][j] = a[w_i][w_j]
    return FpMatrix(p, tuple(tuple(inner.rows[word[i] - 1][word[j] - 1] for j in range(n)) for i in range(n)))


def flag_in_variety(y: FpMatrix, rep: FlagRep, m: HessenbergVector) -> bool:
    return in_hessenberg(conjugate_by_flag(y, rep), m)


# ---------------------------------------------------------------------------
# vectorised profiles


def _cell_profile_counts(args) -> Counter:
    X, word, p, chunk = args
    n = X.shape[0]
    w = Permutation(word)
    free = free_positions(w)
    L = len(free)
    perm = np.array(word, dtype=np.int64) - 1
    eye = np.eye(n, dtype=np.int64)
    weights = (n + 1) ** np.arange(n, dtype=np.int64)
    rows_idx = np.arange(1, n + 1, dtype=np.int64)[None, :, None]
    out: Counter = Counter()
    total = p ** L
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        size = stop - start
        idx = np.arange(start, stop, dtype=np.int64)
        N = np.zeros((size, n, n), dtype=np.int64)
        for k in range(L - 1, -1, -1):
            i, j = free[k]
            N[:, i - 1, j - 1] = idx % p
            idx //= p
        U = N + eye
        # (I + N)^{-1} = sum_k (-N)^k, N nilpotent
        term = np.broadcast_to(eye, (size, n, n)).copy()
        Uinv = term.copy()
        for _ in range(n - 1):
            term = (-(term @ N)) % p
            Uinv = (Uinv + term) % p
        Y = ((Uinv @ X) % p @ U) % p
        A = Y[:, perm[:, None], perm[None, :]]
        lowest = ((A != 0) * rows_idx).max(axis=1)
        codes, counts = np.unique(lowest @ weights, return_counts=True)
        for c, k in zip(codes.tolist(), counts.tolist()):
            out[c] += k
    return out


def decode_profile(code: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        code, r = divmod(code, n + 1)
        out.append(r)
    return tuple(out)


def profile_fits(profile: tuple[int, ...], m: HessenbergVector) -> bool:
    return all(r <= mj for r, mj in zip(profile, m.m))


def _as_fp(x, p: int) -> FpMatrix:
    if isinstance(x, FpMatrix):
        if x.p != p:
            raise ValueError(f"matrix lives over F_{x.p}, not F_{p}")
        return x
    if isinstance(x, CanonicalMatrix):
        x = x.x
    if isinstance(x, ExactMatrix):
        return x.reduce_mod(p)
    return FpMatrix(p, tuple(tuple(r) for r in x))


def census_profiles(y, p: int, jobs: int = 1, chunk: int = 1 << 15) -> dict[Permutation, Counter]:
    """Per cell, the multiset of column profiles of all conjugates.

    ``jobs > 1`` partitions cells over worker processes; results merge by
    addition so the output does not depend on the partition.
    """
    y = _as_fp(y, p)
    X = np.array(y.rows, dtype=np.int64)
    cells = list(all_permutations(y.n))
    tasks = [(X, w.word, p, chunk) for w in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cell_profile_counts, tasks))
    else:
        results = [_cell_profile_counts(t) for t in tasks]
    n = y.n
    return {
        w: Counter({decode_profile(c, n): k for c, k in res.items()})
        for w, res in zip(cells, results)
    }


def tally(profiles: dict[Permutation, Counter], m: HessenbergVector) -> dict[Permutation, int]:
    return {w: sum(k for prof, k in cnt.items() if profile_fits(prof, m)) for w, cnt in profiles.items()}


def count_points(y, m: HessenbergVector, p: int, jobs: int = 1) -> CountReport:
    """|{gB : g^{-1} y g in H(m)}| over F_p, tallied per Schubert cell."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fp = _as_fp(y, p)
    if m.n != fp.n:
        raise ValueError("Hessenberg vector size does not match the matrix")
    per_cell = tally(census_profiles(fp, p, jobs=jobs), m)
    if isinstance(y, (CanonicalMatrix, ExactMatrix)):
        admissible = admissible_prime(y, p)
    else:
        admissible = True
    return CountReport(p, sum(per_cell.values()), per_cell, admissible)


def count_points_scalar(y: FpMatrix, m: HessenbergVector) -> CountReport:
    """Reference path: one pure-Python conjugation per flag."""
    per_cell = {}
    for w in all_permutations(y.n):
        per_cell[w] = sum(1 for rep in enumerate_cell(w, y.p) if flag_in_variety(y, rep, m))
    return CountReport(y.p, sum(per_cell.values()), per_cell, True)


def count_partial_solutions(w: Permutation, y, m: HessenbergVector, i: int, p: int) -> int:
    """|Z_i|: unipotents of the cell supported in rows >= i that already
    satisfy the Hessenberg conditions in rows >= i."""
    fp = _as_fp(y, p)
    n = fp.n
    winv = w.inverse()
    free = [(a, b) for a, b in free_positions(w) if a >= i]
    checks = [(j, k) for j in range(i, n + 1) for k in range(j + 1, n + 1) if m(winv(k)) < winv(j)]
    count = 0
    for vals in itertools.product(range(p), repeat=len(free)):
        u = [[int(r == c) for c in range(n)] for r in range(n)]
        for (a, b), v in zip(free, vals):
            u[a - 1][b - 1] = v
        uinv = unitriangular_inverse(u, p)
        Y = FpMatrix(p, tuple(map(tuple, uinv))) @ fp @ FpMatrix(p, tuple(map(tuple, u)))
        if all(Y.rows[j - 1][k - 1] == 0 for j, k in checks):
            count += 1
    return count


# ---------------------------------------------------------------------------
# comparison with the paving


@dataclass
class HeuristicReport:
    jtype: str
    m: tuple[int, ...]
    p: int
    total: int
    expected_total: int
    discrepancies: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.total == self.expected_total and not self.discrepancies

    def to_json(self) -> dict:
        return {
            "type": self.jtype,
            "m": list(self.m),
            "p": self.p,
            "total": self.total,
            "expected_total": self.expected_total,
            "passed": self.passed,
            "discrepancies": self.discrepancies,
        }


def verify_from_profiles(x: CanonicalMatrix, m: HessenbergVector, p: int, profiles) -> HeuristicReport:
    per_cell = tally(profiles, m)
    expected = poincare_tymoczko(x, m)(p)
    bad = []
    for w, got in per_cell.items():
        cell = cell_dimension(w, x, m)
        want = p ** cell.dim if cell.nonempty else 0
        if got != want:
            bad.append({"w": str(w), "count": got, "expected": want})
    return HeuristicReport(str(x.type), m.m, p, sum(per_cell.values()), expected, bad)


def verify_heuristic(jtype: JordanType | CanonicalMatrix, m: HessenbergVector, p: int,
                     jobs: int = 1) -> HeuristicReport:
    """Census total and per-cell counts against the paving at p."""
    x = jtype if isinstance(jtype, CanonicalMatrix) else hfpjf(jtype)
    if not admissible_prime(x, p):
        raise InadmissiblePrimeError(f"p={p} is not admissible for type {x.type}")
    return verify_from_profiles(x, m, p, census_profiles(x, p, jobs=jobs))


# ---------------------------------------------------------------------------
# Poincaré polynomials from counts alone


@dataclass
class CensusPolynomial:
    poly: Poly
    method: str
    primes: list[int]
    totals: dict[int, int]
    degree_bound: int

    def to_json(self) -> dict:
        return {
            "coefficients": self.poly.to_list(),
            "method": self.method,
            "primes": self.primes,
            "totals": {str(p): t for p, t in self.totals.items()},
            "degree_bound": self.degree_bound,
        }


class CensusError(RuntimeError):
    pass


def _floor_log(value: int, base: int) -> int:
    k = 0
    acc = base
    while acc <= value:
        acc *= base
        k += 1
    return k


def census_poincare(jtype: JordanType | CanonicalMatrix, m: HessenbergVector,
                    max_flags: int = 3_000_000, jobs: int = 1) -> CensusPolynomial:
    """Poincaré polynomial recovered from point counts, without the paving.

    The polynomial has nonnegative coefficients and constant term 1, so
    P(p) - 1 >= p^D bounds its degree D at every sampled prime. Admissible
    primes are sampled in increasing order until D + 1 values are known,
    then the polynomial is interpolated exactly. When the flag budget runs
    out first, each cell's count is read as a power of p, checked to give
    the same exponent at every sampled prime, and the exponents are summed.
    """
    x = jtype if isinstance(jtype, CanonicalMatrix) else hfpjf(jtype)
    n = x.n
    bound = n * (n - 1) // 2
    samples: dict[int, dict[Permutation, int]] = {}
    for p in primes():
        if flag_count(n, p) > max_flags:
            break
        if not admissible_prime(x, p):
            continue
        per_cell = tally(census_profiles(x, p, jobs=jobs), m)
        samples[p] = per_cell
        total = sum(per_cell.values())
        bound = min(bound, _floor_log(total - 1, p) if total > 1 else 0)
        if len(samples) >= bound + 1:
            break
    if not samples:
        raise CensusError("no admissible prime fits in the flag budget")
    totals = {p: sum(c.values()) for p, c in samples.items()}
    if len(samples) >= bound + 1:
        coeffs = interpolate(sorted(totals.items()))
        if any(c.denominator != 1 or c < 0 for c in coeffs):
            raise CensusError(f"interpolated coefficients are not nonnegative integers: {coeffs}")
        poly = Poly(int(c) for c in coeffs)
        method = "lagrange"
    else:
        exps: Counter = Counter()
        cells = set().union(*(set(c) for c in samples.values()))
        for w in cells:
            seen = set()
            for p, per_cell in samples.items():
                cnt = per_cell.get(w, 0)
                if cnt == 0:
                    seen.add(None)
                    continue
                e = _floor_log(cnt, p)
                if p ** e != cnt:
                    raise CensusError(f"cell {w} has {cnt} points over F_{p}, not a power of p")
                seen.add(e)
            if len(seen) != 1:
                raise CensusError(f"cell {w} behaves inconsistently across primes: {seen}")
            e = seen.pop()
            if e is not None:
                exps[e] += 1
        poly = Poly(exps.get(k, 0) for k in range(max(exps, default=0) + 1))
        method = "cellwise"
    for p, t in totals.items():
        if poly(p) != t:
            raise CensusError(f"recovered polynomial gives {poly(p)} at p={p}, census has {t}")
    return CensusPolynomial(poly, method, sorted(samples), totals, bound)
