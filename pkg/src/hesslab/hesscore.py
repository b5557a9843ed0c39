"""Hessenberg vectors, Jordan types and canonical (HFPJF) representatives."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .ffla import ExactMatrix


@dataclass(frozen=True)
class HessenbergVector:
    m: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(a) for a in self.m)
        n = len(m)
        if n == 0:
            raise ValueError("empty Hessenberg vector")
        for i, mi in enumerate(m, start=1):
            if not i <= mi <= n:
                raise ValueError(f"m({i}) = {mi} must lie in [{i}, {n}]")
        if any(a > b for a, b in zip(m, m[1:])):
            raise ValueError(f"{m} is not weakly increasing")
        object.__setattr__(self, "m", m)

    @property
    def n(self) -> int:
        return len(self.m)

    def __call__(self, i: int) -> int:
        return self.m[i - 1]

    def __iter__(self):
        return iter(self.m)

    def __len__(self):
        return len(self.m)

    def __str__(self):
        return ",".join(map(str, self.m))


def m_max(n: int) -> HessenbergVector:
    if n < 2:
        raise ValueError("m_max needs n >= 2")
    return HessenbergVector((n - 1,) + (n,) * (n - 1))


def m_sing(n: int) -> HessenbergVector:
    if n < 3:
        raise ValueError("m_sing needs n >= 3")
    return HessenbergVector((1,) + (n - 1,) * (n - 2) + (n,))


def m_full(n: int) -> HessenbergVector:
    return HessenbergVector((n,) * n)


def all_hessenberg_vectors(n: int) -> Iterator[HessenbergVector]:
    """All Catalan(n) Hessenberg vectors of size n."""

    def rec(prefix):
        i = len(prefix) + 1
        if i > n:
            yield HessenbergVector(tuple(prefix))
            return
        lo = max(i, prefix[-1] if prefix else 1)
        for v in range(lo, n + 1):
            yield from rec(prefix + [v])

    yield from rec([])


def parse_hessenberg(text: str, n: int | None = None) -> HessenbergVector:
    """Parse ``"3,4,4,4"`` or one of the aliases ``max``, ``sing``, ``full``."""
    t = text.strip().lower()
    if t in ("max", "sing", "full"):
        if n is None:
            raise ValueError(f"alias {t!r} needs the size n")
        return {"max": m_max, "sing": m_sing, "full": m_full}[t](n)
    try:
        m = tuple(int(tok) for tok in t.strip("()[]").split(","))
    except ValueError:
        raise ValueError(f"cannot parse Hessenberg vector {text!r}") from None
    hv = HessenbergVector(m)
    if n is not None and hv.n != n:
        raise ValueError(f"Hessenberg vector has size {hv.n}, expected {n}")
    return hv


# ---------------------------------------------------------------------------
# Jordan types


def _check_partition(lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(a) for a in lam)
    if not lam or any(a <= 0 for a in lam):
        raise ValueError(f"{lam} is not a nonempty partition")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not weakly decreasing")
    return lam


@dataclass(frozen=True)
class JordanType:
    """One partition per distinct eigenvalue, recording Jordan block sizes."""

    partitions: tuple[tuple[int, ...], ...]
    eigenvalues: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(_check_partition(lam) for lam in self.partitions)
        if not parts:
            raise ValueError("a Jordan type needs at least one partition")
        eig = tuple(int(c) for c in self.eigenvalues) or tuple(range(1, len(parts) + 1))
        if len(eig) != len(parts):
            raise ValueError("one eigenvalue per partition is required")
        if len(set(eig)) != len(eig):
            raise ValueError("eigenvalues must be pairwise distinct")
        object.__setattr__(self, "partitions", parts)
        object.__setattr__(self, "eigenvalues", eig)

    @property
    def n(self) -> int:
        return sum(sum(lam) for lam in self.partitions)

    @property
    def r(self) -> int:
        return len(self.partitions)

    def geometric_multiplicities(self) -> tuple[int, ...]:
        """dim ker(x - c_i) for each eigenvalue: the number of Jordan blocks."""
        return tuple(len(lam) for lam in self.partitions)

    def algebraic_multiplicities(self) -> tuple[int, ...]:
        return tuple(sum(lam) for lam in self.partitions)

    def is_scalar(self) -> bool:
        return self.r == 1 and all(a == 1 for a in self.partitions[0])

    def is_nilpotent_shape(self) -> bool:
        """Single eigenvalue, so x - c*I is nilpotent."""
        return self.r == 1

    def with_eigenvalues(self, eig: Sequence[int]) -> "JordanType":
        return JordanType(self.partitions, tuple(eig))

    def __str__(self):
        parts = json.dumps([list(lam) for lam in self.partitions], separators=(",", ":"))
        eig = json.dumps(list(self.eigenvalues), separators=(",", ":"))
        return f"{parts} @ {eig}"


def parse_jordan_type(text: str) -> JordanType:
    """Parse ``"[[2,2],[2]] @ [1,-1]"``; the eigenvalue part is optional."""
    head, _, tail = text.partition("@")
    try:
        parts = json.loads(head)
        eig = json.loads(tail) if tail.strip() else []
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot parse Jordan type {text!r}: {exc}") from None
    if not isinstance(parts, list) or not all(isinstance(lam, list) for lam in parts):
        raise ValueError(f"Jordan type must be a list of partitions, got {head.strip()!r}")
    return JordanType(tuple(tuple(lam) for lam in parts), tuple(eig))


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def all_jordan_types(n: int, ordered: bool = True) -> Iterator[JordanType]:
    """Every Jordan type of size n with default eigenvalues 1..r.

    With ``ordered=False`` lists of partitions that differ only by the
    order of blocks are yielded once.
    """
    seen = set()

    def rec(remaining, acc):
        if remaining == 0:
            key = tuple(acc) if ordered else tuple(sorted(acc))
            if key not in seen:
                seen.add(key)
                yield JordanType(tuple(acc))
            return
        for size in range(1, remaining + 1):
            for lam in integer_partitions(size):
                yield from rec(remaining - size, acc + [lam])

    yield from rec(n, [])


# ---------------------------------------------------------------------------
# Canonical matrices


def highest_form(lam: Sequence[int]) -> ExactMatrix:
    """0-1 nilpotent of Jordan type lam with right-justified pivot columns.

    Boxes of the Young diagram are labelled column by column, each column
    from the bottom up; entry (i, j) is 1 when box i sits immediately left
    of box j.
    """
    lam = _check_partition(lam)
    n = sum(lam)
    label = {}
    k = 1
    for col in range(lam[0]):
        height = sum(1 for part in lam if part > col)
        for row in range(height - 1, -1, -1):
            label[(row, col)] = k
            k += 1
    rows = [[0] * n for _ in range(n)]
    for (row, col), i in label.items():
        j = label.get((row, col + 1))
        if j is not None:
            rows[i - 1][j - 1] = 1
    return ExactMatrix(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class CanonicalMatrix:
    s: ExactMatrix
    nil: ExactMatrix
    type: JordanType

    @property
    def n(self) -> int:
        return self.s.n

    @property
    def m_s(self) -> int:
        return int(max(abs(self.s[i, i]) for i in range(self.n)))

    @property
    def x(self) -> ExactMatrix:
        return self.s + self.nil

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.s[i, i] for i in range(self.n))

    def pivot_in_row(self) -> dict[int, int]:
        """0-based row -> column of the pivot of nil in that row."""
        return {i: j for i, j in pivots(self.nil)}


def hfpjf(jtype: JordanType) -> CanonicalMatrix:
    n = jtype.n
    s_rows = [[0] * n for _ in range(n)]
    n_rows = [[0] * n for _ in range(n)]
    offset = 0
    for lam, c in zip(jtype.partitions, jtype.eigenvalues):
        size = sum(lam)
        block = highest_form(lam)
        for a in range(size):
            s_rows[offset + a][offset + a] = c
            for b in range(size):
                n_rows[offset + a][offset + b] = block[a, b]
        offset += size
    return CanonicalMatrix(
        ExactMatrix(tuple(tuple(r) for r in s_rows)),
        ExactMatrix(tuple(tuple(r) for r in n_rows)),
        jtype,
    )


def pivots(x: ExactMatrix) -> set[tuple[int, int]]:
    """Nonzero entries with only zeros below them in their column and
    to their left in their row (0-based positions)."""
    n = x.n
    out = set()
    for i in range(n):
        for j in range(n):
            if x[i, j] == 0:
                continue
            if all(x[k, j] == 0 for k in range(i + 1, n)) and all(x[i, l] == 0 for l in range(j)):
                out.add((i, j))
    return out


def parse_int_matrix(text: str) -> ExactMatrix:
    """Row-major JSON array of arrays; entries may be ints or rational strings."""
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("rows", data.get("matrix"))
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix must be a JSON array of arrays")
    return ExactMatrix(tuple(tuple(Fraction(a) for a in row) for row in data))

