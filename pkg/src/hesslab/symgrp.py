"""Permutations in one-line notation, Bruhat order, Schubert data.

Permutations are 1-based: ``Permutation((2, 3, 1))`` sends 1 -> 2,
2 -> 3, 3 -> 1. Products compose right to left, ``(u * v)(i) = u(v(i))``,
so ``s(2) * w0(n)`` swaps the values 2 and 3 of the longest element.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .poly import Poly


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(a) for a in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word} is not a permutation of 1..{len(word)}")
        object.__setattr__(self, "word", word)

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __len__(self):
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.word[other.word[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, wi in enumerate(self.word, start=1):
            inv[wi - 1] = i
        return Permutation(tuple(inv))

    def inversions(self) -> set[tuple[int, int]]:
        return inversions(self)

    def length(self) -> int:
        return length(self)

    def __str__(self):
        return ",".join(map(str, self.word))

    def __repr__(self):
        return f"Permutation({list(self.word)})"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def w0(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def s(i: int, n: int) -> Permutation:
    """Simple reflection exchanging i and i+1."""
    if not 1 <= i < n:
        raise ValueError(f"s_{i} is not a simple reflection of S_{n}")
    word = list(range(1, n + 1))
    word[i - 1], word[i] = word[i], word[i - 1]
    return Permutation(tuple(word))


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in lexicographic order of one-line notation."""
    for word in itertools.permutations(range(1, n + 1)):
        yield Permutation(word)


def inversions(w: Permutation) -> set[tuple[int, int]]:
    return {(i + 1, j + 1) for i in range(w.n) for j in range(i + 1, w.n) if w.word[i] > w.word[j]}


def length(w: Permutation) -> int:
    word = w.word
    return sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])


def tableau_entry(w: Permutation, p: int, q: int) -> int:
    """I_{p,q}(w): the p-th smallest of w_1, ..., w_q."""
    if not 1 <= p <= q <= w.n:
        raise ValueError(f"need 1 <= p <= q <= {w.n}, got p={p}, q={q}")
    return sorted(w.word[:q])[p - 1]


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """Tableau criterion: v <= w iff every sorted prefix of v is dominated by w's."""
    if v.n != w.n:
        raise ValueError("size mismatch")
    pv: list[int] = []
    pw: list[int] = []
    for q in range(v.n - 1):
        _insort(pv, v.word[q])
        _insort(pw, w.word[q])
        if any(a > b for a, b in zip(pv, pw)):
            return False
    return True


def _insort(lst, x):
    k = len(lst)
    while k and lst[k - 1] > x:
        k -= 1
    lst.insert(k, x)


def bruhat_cover_closure(n: int) -> dict[Permutation, set[Permutation]]:
    """Bruhat order computed independently of the tableau criterion.

    Returns ``below[w] = {u : u <= w}`` built as the transitive closure of
    the relations ``w*t < w`` for transpositions t with
    ``l(w*t) = l(w) - 1``.
    """
    perms = sorted(all_permutations(n), key=length)
    below: dict[Permutation, set[Permutation]] = {}
    for w in perms:
        lw = length(w)
        acc = {w}
        word = list(w.word)
        for i in range(n):
            for j in range(i + 1, n):
                if word[i] > word[j]:
                    u = word.copy()
                    u[i], u[j] = u[j], u[i]
                    up = Permutation(tuple(u))
                    if length(up) == lw - 1:
                        acc |= below[up]
        below[w] = acc
    return below


def bruhat_interval_below(w: Permutation) -> list[Permutation]:
    return [u for u in all_permutations(w.n) if bruhat_leq(u, w)]


def schubert_poincare(w: Permutation) -> Poly:
    """Sum of t^{l(u)} over u <= w (cells of the Schubert variety X_w)."""
    coeffs = [0] * (length(w) + 1)
    for u in all_permutations(w.n):
        if bruhat_leq(u, w):
            coeffs[length(u)] += 1
    return Poly(coeffs)


def schubert_euler(w: Permutation) -> int:
    return sum(1 for u in all_permutations(w.n) if bruhat_leq(u, w))


def _replace(word: tuple[int, ...], positions, values) -> Permutation:
    out = list(word)
    for pos, val in zip(positions, values):
        out[pos] = val
    return Permutation(tuple(out))


def ls_singular_set(w: Permutation) -> set[Permutation]:
    """Z_w: the permutations v certified by one of the two 4-point patterns.

    For each v and each quadruple i<j<k<l of positions of w, the positions
    i'<j'<k'<l' in v are forced by the value conditions, so they are read
    off from v^{-1} rather than searched.
    """
    n = w.n
    W = w.word
    result: set[Permutation] = set()
    quads = list(itertools.combinations(range(n), 4))
    for v in all_permutations(n):
        if not bruhat_leq(v, w):
            continue
        V = v.word
        pos = {val: idx for idx, val in enumerate(V)}
        for i, j, k, l in quads:
            # pattern (1): w_k < w_l < w_i < w_j
            if W[k] < W[l] < W[i] < W[j]:
                ip, jp, kp, lp = pos[W[k]], pos[W[i]], pos[W[l]], pos[W[j]]
                if ip < jp < kp < lp:
                    vprime = _replace(W, (i, j, k, l), (W[k], W[i], W[l], W[j]))
                    wprime = _replace(V, (ip, jp, kp, lp), (V[jp], V[lp], V[ip], V[kp]))
                    if bruhat_leq(vprime, v) and bruhat_leq(v, wprime) and bruhat_leq(wprime, w):
                        result.add(v)
                        break
            # pattern (2): w_l < w_j < w_k < w_i
            if W[l] < W[j] < W[k] < W[i]:
                ip, jp, kp, lp = pos[W[j]], pos[W[l]], pos[W[i]], pos[W[k]]
                if ip < jp < kp < lp:
                    vprime = _replace(W, (i, j, k, l), (W[j], W[l], W[i], W[k]))
                    wprime = _replace(V, (ip, jp, kp, lp), (V[kp], V[ip], V[lp], V[jp]))
                    if bruhat_leq(vprime, v) and bruhat_leq(v, wprime) and bruhat_leq(wprime, w):
                        result.add(v)
                        break
    return result


def bruhat_maximal(elements: Iterable[Permutation]) -> set[Permutation]:
    elems = set(elements)
    return {v for v in elems if not any(u != v and bruhat_leq(v, u) for u in elems)}


def ls_singular_maximal(w: Permutation) -> set[Permutation]:
    """Bruhat-maximal elements of Z_w; their Schubert varieties cover Sing(X_w)."""
    return bruhat_maximal(ls_singular_set(w))


def v2(n: int) -> Permutation:
    """[n, n-1, ..., 5, 2, 1, 4, 3]: the singular locus of X_{s_2 w_0}."""
    if n < 4:
        raise ValueError("v2 needs n >= 4")
    return Permutation(tuple(n + 1 - i for i in range(1, n - 3)) + (2, 1, 4, 3))


def vn2(n: int) -> Permutation:
    """[n-2, n-3, n, n-1, n-4, ..., 1]: the singular locus of X_{s_{n-2} w_0}."""
    if n < 4:
        raise ValueError("vn2 needs n >= 4")
    return Permutation((n - 2, n - 3, n, n - 1) + tuple(n + 1 - i for i in range(5, n + 1)))


def codim_one_euler_formula(n: int) -> int:
    return math.factorial(n - 2) * (n * n - 5 * n + 6)


_SW0 = re.compile(r"^\s*s(\d+)\s*w0\s*@\s*n\s*=\s*(\d+)\s*$")
_W0 = re.compile(r"^\s*w0\s*@\s*n\s*=\s*(\d+)\s*$")


def parse_permutation(text: str) -> Permutation:
    """Parse ``"5,2,1,4,3"``, ``"w0@n=4"`` or ``"s2w0@n=5"``."""
    m = _SW0.match(text)
    if m:
        i, n = int(m.group(1)), int(m.group(2))
        return s(i, n) * w0(n)
    m = _W0.match(text)
    if m:
        return w0(int(m.group(1)))
    try:
        word = tuple(int(tok) for tok in text.strip().strip("[]").split(","))
    except ValueError:
        raise ValueError(f"cannot parse permutation {text!r}") from None
    return Permutation(word)

