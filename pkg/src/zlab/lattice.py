"""Exact linear algebra over integer symmetric bilinear forms.

Every scalar is a ``fractions.Fraction``; values of the shape a + b*sqrt(m)
are modelled by :class:`QuadraticIrrational`.  Nothing in this module (or in
the modules built on top of it) rounds: chamber membership and wall crossings
are discontinuous in the input, so a single rounding error could flip an
answer.  Floating point appears only in reporting helpers (``__float__``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import LatticeMismatch, NotNegativeDefinite, SignatureError

Rational = Union[int, Fraction]

# ---------------------------------------------------------------------------
# quadratic irrationals
# ---------------------------------------------------------------------------


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s**2 * m with m squarefree; return (s, m)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return 1, n
    s, m, d = 1, n, 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
            s *= d
        d += 1
    return s, m


class QuadraticIrrational:
    """An exact real number a + b*sqrt(m) with rational a, b and integer m >= 0.

    Instances are kept in a canonical form that makes equality decidable:
    the radicand is squarefree, and a rational value is always stored as
    (a, 0, 0).  Arithmetic stays inside a single quadratic field; combining
    two irrationals with different radicands raises ``ValueError``.
    """

    __slots__ = ("_a", "_b", "_m")

    def __init__(self, a: Rational = 0, b: Rational = 0, m: int = 0) -> None:
        a = Fraction(a)
        b = Fraction(b)
        m = int(m)
        if m < 0:
            raise ValueError("radicand must be non-negative")
        if b == 0 or m == 0:
            a, b, m = (a, Fraction(0), 0)
        else:
            s, mf = squarefree_split(m)
            if mf == 1:
                a, b, m = (a + b * s, Fraction(0), 0)
            else:
                b, m = b * s, mf
        self._a, self._b, self._m = a, b, m

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def m(self) -> int:
        return self._m

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self._a

    # -- arithmetic --------------------------------------------------------

    @classmethod
    def _coerce(cls, value: object) -> "QuadraticIrrational | None":
        if isinstance(value, QuadraticIrrational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        return None

    def _common_radicand(self, other: "QuadraticIrrational") -> int:
        if self._m == 0:
            return other._m
        if other._m == 0 or other._m == self._m:
            return self._m
        raise ValueError(f"mixed radicands {self._m} and {other._m}")

    def __add__(self, other: object) -> "QuadraticIrrational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self._common_radicand(o)
        return QuadraticIrrational(self._a + o._a, self._b + o._b, m)

    __radd__ = __add__

    def __neg__(self) -> "QuadraticIrrational":
        return QuadraticIrrational(-self._a, -self._b, self._m)

    def __sub__(self, other: object) -> "QuadraticIrrational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "QuadraticIrrational":
        return -(self - other)

    def __mul__(self, other: object) -> "QuadraticIrrational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self._common_radicand(o)
        return QuadraticIrrational(
            self._a * o._a + self._b * o._b * m,
            self._a * o._b + self._b * o._a,
            m,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticIrrational":
        if self._a == 0 and self._b == 0:
            raise ZeroDivisionError("inverse of zero")
        # (a + b sqrt(m))(a - b sqrt(m)) = a^2 - b^2 m, nonzero for m squarefree
        norm = self._a * self._a - self._b * self._b * self._m
        return QuadraticIrrational(self._a / norm, -self._b / norm, self._m)

    def __truediv__(self, other: object) -> "QuadraticIrrational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "QuadraticIrrational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "QuadraticIrrational":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = QuadraticIrrational(1)
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons -------------------------------------------------------

    def sign(self) -> int:
        a, b, m = self._a, self._b, self._m
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 m
        lhs, rhs = a * a, b * b * m
        if a > 0:
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def _cmp(self, other: object) -> "int | None":
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # canonical forms are unique, so triples decide equality even when
        # the radicands differ (ordering across fields would not be as easy)
        return (self._a, self._b, self._m) == (o._a, o._b, o._m)

    def __lt__(self, other: object) -> bool:
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c < 0

    def __le__(self, other: object) -> bool:
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c <= 0

    def __gt__(self, other: object) -> bool:
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c > 0

    def __ge__(self, other: object) -> bool:
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c >= 0

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self._a)
        return hash((self._a, self._b, self._m))

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * math.sqrt(self._m)

    def __repr__(self) -> str:
        return f"QuadraticIrrational({self._a!r}, {self._b!r}, {self._m})"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self._a)
        return f"{self._a} + {self._b}*sqrt({self._m})"


def sqrt_fraction(value: Rational) -> QuadraticIrrational:
    """Exact square root of a non-negative rational, as a + b*sqrt(m)."""
    value = Fraction(value)
    if value < 0:
        raise ValueError("square root of a negative rational")
    # sqrt(p/q) = sqrt(p*q)/q
    radicand = value.numerator * value.denominator
    return QuadraticIrrational(0, Fraction(1, value.denominator), radicand)


# ---------------------------------------------------------------------------
# exact matrix routines
# ---------------------------------------------------------------------------

Matrix = Sequence[Sequence[Rational]]


def _to_fraction_rows(matrix: Matrix) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in row] for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError("matrix is not symmetric")
    return rows


def signature(gram: Matrix) -> tuple[int, int, int]:
    """Inertia (n_plus, n_minus, n_zero) of a symmetric matrix.

    Computed by exact symmetric Gaussian reduction (congruence to a diagonal
    form), so the result is not subject to eigenvalue rounding.
    """
    a = _to_fraction_rows(gram)
    n = len(a)
    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                # fold row/column j into k; the new diagonal entry is 2*a[k][j]
                for i in range(n):
                    a[k][i] += a[j][i]
                for i in range(n):
                    a[i][k] += a[i][j]
        pivot = a[k][k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        factors = [a[i][k] / pivot for i in range(k + 1, n)]
        for i in range(k + 1, n):
            f = factors[i - k - 1]
            if f == 0:
                continue
            row_i, row_k = a[i], a[k]
            for j in range(k, n):
                row_i[j] -= f * row_k[j]
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
    return pos, neg, zero


def is_negative_definite(gram: Matrix) -> bool:
    n = len(gram)
    return signature(gram) == (0, n, 0)


def solve_symmetric(matrix: Matrix, rhs: Sequence[Rational]) -> list[Fraction]:
    """Exact solution of matrix @ x = rhs; raises ValueError if singular."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("singular matrix")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            f = a[r][col] / pivot
            for c in range(col, n + 1):
                a[r][c] -= f * a[col][c]
    return [a[i][n] / a[i][i] for i in range(n)]


def invert_matrix(matrix: Matrix) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("singular matrix")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        inv[col] = [x / pivot for x in inv[col]]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            f = a[r][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def inverse_is_nonpositive(matrix: Matrix) -> bool:
    """True iff every entry of the inverse of a negative definite matrix is <= 0.

    For negative definite matrices whose off-diagonal entries are all
    non-negative this is expected to hold; the point of keeping it as a
    runtime check is that the property is *tested*, never assumed.
    """
    if not is_negative_definite(matrix):
        raise NotNegativeDefinite("matrix is not negative definite")
    inverse = invert_matrix(matrix)
    return all(entry <= 0 for row in inverse for entry in row)


# ---------------------------------------------------------------------------
# lattices and divisor classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionLattice:
    """A free Z-module with an integer symmetric pairing of signature (1, rank-1).

    The signature constraint is verified exactly at construction time; it is
    what makes negative-definiteness arguments for curve supports work.
    """

    gram: tuple[tuple[int, ...], ...]
    basis_labels: tuple[str, ...]

    def __init__(self, gram: Matrix, basis_labels: Sequence[str]) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        labels = tuple(str(s) for s in basis_labels)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        if any(Fraction(x) != x for row in gram for x in row):
            raise ValueError("gram matrix must be integral")
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("basis labels must be distinct and match the rank")
        sig = signature(rows)
        if sig != (1, n - 1, 0):
            raise SignatureError(f"signature {sig} is not (1, {n - 1}, 0)")
        object.__setattr__(self, "gram", rows)
        object.__setattr__(self, "basis_labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def divisor(self, coords: Sequence[Rational]) -> "DivisorClass":
        return DivisorClass(self, tuple(coords))

    def basis_divisor(self, index: int) -> "DivisorClass":
        coords = [0] * self.rank
        coords[index] = 1
        return self.divisor(coords)

    def zero(self) -> "DivisorClass":
        return self.divisor([0] * self.rank)

    def gram_row_times(self, coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """gram @ coords, used to cache pairing rows for hot loops."""
        return tuple(
            sum(g * c for g, c in zip(row, coords)) for row in self.gram
        )


@dataclass(frozen=True)
class DivisorClass:
    """An R-divisor numerical class with exact rational coordinates."""

    lattice: IntersectionLattice
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise ValueError(
                f"expected {self.lattice.rank} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)

    def _check_same_lattice(self, other: "DivisorClass") -> None:
        if self.lattice is not other.lattice and self.lattice != other.lattice:
            raise LatticeMismatch("classes live in different lattices")

    def dot(self, other: "DivisorClass") -> Fraction:
        self._check_same_lattice(other)
        gram = self.lattice.gram
        total = Fraction(0)
        for i, xi in enumerate(self.coords):
            if xi == 0:
                continue
            row = gram[i]
            total += xi * sum(g * y for g, y in zip(row, other.coords) if g)
        return total

    @property
    def square(self) -> Fraction:
        return self.dot(self)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_same_lattice(other)
        return DivisorClass(
            self.lattice, tuple(x + y for x, y in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_same_lattice(other)
        return DivisorClass(
            self.lattice, tuple(x - y for x, y in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(-x for x in self.coords))

    def __mul__(self, scalar: Rational) -> "DivisorClass":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return DivisorClass(self.lattice, tuple(scalar * x for x in self.coords))

    __rmul__ = __mul__

    def format(self) -> str:
        """Human-readable form in the lattice basis, e.g. ``L-E1-E2``."""
        parts: list[str] = []
        for coeff, label in zip(self.coords, self.lattice.basis_labels):
            if coeff == 0:
                continue
            mag = abs(coeff)
            body = label if mag == 1 else (
                f"{mag}{label}" if mag.denominator == 1 else f"({mag}){label}"
            )
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if coeff > 0 else f"-{body}")
        return "".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()


def pair(d1: DivisorClass, d2: DivisorClass) -> Fraction:
    """The intersection pairing d1 . d2 (symmetric and bilinear)."""
    return d1.dot(d2)


def gram_matrix(classes: Sequence[DivisorClass]) -> list[list[Fraction]]:
    n = len(classes)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = classes[i].dot(classes[j])
            out[i][j] = value
            out[j][i] = value
    return out


def solve_gram_system(
    curves: Sequence[DivisorClass], rhs: Sequence[Rational]
) -> list[Fraction]:
    """Solve (C_i . C_j) x = rhs for a negative definite curve configuration.

    Raises NotNegativeDefinite when the pairing matrix of the given curves
    fails the definiteness test, which signals that the input set cannot
    support the negative part of any decomposition.
    """
    if len(curves) != len(rhs):
        raise ValueError("rhs length must match the number of curves")
    if not curves:
        return []
    gram = gram_matrix(curves)
    if not is_negative_definite(gram):
        raise NotNegativeDefinite(
            "pairing matrix of the curve set is not negative definite"
        )
    return solve_symmetric(gram, [Fraction(x) for x in rhs])
