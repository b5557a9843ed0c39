"""Dense integer polynomials in one variable.

Poincaré polynomials of Hessenberg varieties have vanishing odd Betti
numbers, so they are stored in the half-degree variable ``t = q**2``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class Poly:
    """Integer polynomial ``c[0] + c[1]*t + ...`` with trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return Poly((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(size))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def render(self, var: str = "t") -> str:
        """Human-readable form; ``var='q'`` doubles every exponent."""
        if not self.coeffs:
            return "0"
        scale = 2 if var == "q" else 1
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = k * scale
            if e == 0:
                mono = str(abs(c))
            else:
                base = var if e == 1 else f"{var}^{e}"
                mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
            parts.append(("-" if c < 0 else "+", mono))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def __str__(self):
        return self.render()


def interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Exact Lagrange interpolation through ``(x, y)`` pairs.

    Returns the coefficient list (length ``len(points)``) of the unique
    polynomial of degree below ``len(points)``.
    """
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    k = len(points)
    result = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # multiply basis by (t - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d + 1] += c
                nxt[d] -= c * xj
            basis = nxt
            denom *= Fraction(xi) - xj
        scale = Fraction(yi) / denom
        for d, c in enumerate(basis):
            result[d] += c * scale
    return result
