"""Surface models: a lattice, an ample witness and a finite negative-curve list.

The model assumption throughout the library is that the listed curves are
*all* irreducible curves of negative self-intersection on the surface, so a
class D is nef exactly when D**2 >= 0, D.A >= 0 and D.C >= 0 for every listed
curve C.  Del Pezzo models (constructed here), K3 models with a known curve
list and abelian-surface models (empty curve list) all satisfy this.
Surfaces carrying infinitely many negative curves are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import NamedTuple, Optional

from .errors import (
    AmpleWitnessError,
    CurvePairingError,
    LatticeMismatch,
    MissingCanonical,
    OutOfRange,
    UnsupportedLattice,
)
from .lattice import DivisorClass, IntersectionLattice


@dataclass(frozen=True)
class NegativeCurve:
    """An irreducible curve class with negative self-intersection."""

    label: str
    cls: DivisorClass

    def __post_init__(self) -> None:
        if self.cls.square >= 0:
            raise CurvePairingError(
                f"curve {self.label} has non-negative self-intersection"
            )


@dataclass(frozen=True)
class SurfaceModel:
    """Computational stand-in for a smooth projective surface.

    Invariants checked at construction: the ample witness has positive square
    and pairs strictly positively with every curve; curve classes are
    pairwise distinct and pair non-negatively with each other (distinct
    irreducible curves meet non-negatively).
    """

    lattice: IntersectionLattice
    ample: DivisorClass
    curves: tuple[NegativeCurve, ...]
    canonical: Optional[DivisorClass] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "curves", tuple(self.curves))
        if self.ample.lattice != self.lattice:
            raise LatticeMismatch("ample witness lives in a different lattice")
        if self.ample.square <= 0:
            raise AmpleWitnessError("ample witness must have positive square")
        if self.canonical is not None and self.canonical.lattice != self.lattice:
            raise LatticeMismatch("canonical class lives in a different lattice")
        labels = [c.label for c in self.curves]
        if len(set(labels)) != len(labels):
            raise CurvePairingError("curve labels must be distinct")
        seen: set[tuple[Fraction, ...]] = set()
        for curve in self.curves:
            if curve.cls.lattice != self.lattice:
                raise LatticeMismatch(f"curve {curve.label} in a different lattice")
            if curve.cls.coords in seen:
                raise CurvePairingError(f"curve class {curve.label} is duplicated")
            seen.add(curve.cls.coords)
            if self.ample.dot(curve.cls) <= 0:
                raise AmpleWitnessError(
                    f"ample witness pairs non-positively with {curve.label}"
                )
        for i, ci in enumerate(self.curves):
            for cj in self.curves[i + 1 :]:
                if ci.cls.dot(cj.cls) < 0:
                    raise CurvePairingError(
                        f"distinct curves {ci.label}, {cj.label} pair negatively"
                    )

    @cached_property
    def _curve_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        # gram @ C for each curve, so pairings against curves cost O(rank)
        return tuple(
            self.lattice.gram_row_times(c.cls.coords) for c in self.curves
        )

    def curve_pairings(self, divisor: DivisorClass) -> list[Fraction]:
        """[D . C for C in curves], computed from cached gram rows."""
        coords = divisor.coords
        return [
            sum(x * y for x, y in zip(coords, row) if y)
            for row in self._curve_rows
        ]

    def curve_by_label(self, label: str) -> NegativeCurve:
        for curve in self.curves:
            if curve.label == label:
                return curve
        raise KeyError(f"no curve labelled {label!r}")

    def is_nef(self, divisor: DivisorClass) -> bool:
        return is_nef(self, divisor)


def is_nef(model: SurfaceModel, divisor: DivisorClass) -> bool:
    """Nefness test under the model assumption (complete curve list)."""
    if divisor.lattice != model.lattice:
        raise LatticeMismatch("class lives in a different lattice")
    if divisor.square < 0 or divisor.dot(model.ample) < 0:
        return False
    return all(p >= 0 for p in model.curve_pairings(divisor))


# ---------------------------------------------------------------------------
# del Pezzo models
# ---------------------------------------------------------------------------


def _del_pezzo_lattice(r: int) -> IntersectionLattice:
    gram = [[0] * (r + 1) for _ in range(r + 1)]
    gram[0][0] = 1
    for i in range(1, r + 1):
        gram[i][i] = -1
    labels = ["L"] + [f"E{i}" for i in range(1, r + 1)]
    return IntersectionLattice(gram, labels)


def _is_standard_del_pezzo(lattice: IntersectionLattice) -> bool:
    n = lattice.rank
    if n < 2:
        return False
    for i in range(n):
        for j in range(n):
            expected = 1 if i == j == 0 else (-1 if i == j else 0)
            if lattice.gram[i][j] != expected:
                return False
    return True


def _vectors_with_sum_and_square(length: int, total: int, square: int) -> list[tuple[int, ...]]:
    """All integer vectors with the given coordinate sum and sum of squares.

    Depth-first search over coordinates; a branch is cut as soon as the
    Cauchy-Schwarz bound (remaining sum)^2 <= (slots left) * (remaining
    square) fails, which keeps the search tiny at the ranks used here.
    """
    out: list[tuple[int, ...]] = []
    current: list[int] = []

    def descend(slots: int, total_left: int, square_left: int) -> None:
        if slots == 0:
            if total_left == 0 and square_left == 0:
                out.append(tuple(current))
            return
        if square_left < 0 or total_left * total_left > slots * square_left:
            return
        bound = isqrt(square_left)
        for value in range(-bound, bound + 1):
            current.append(value)
            descend(slots - 1, total_left - value, square_left - value * value)
            current.pop()

    descend(length, total, square)
    return out


def _classes_by_degree_constraints(
    lattice: IntersectionLattice, k_degree: int, self_intersection: int
) -> list[DivisorClass]:
    """Integral classes dL - sum(m_i E_i) with the given square and K-degree.

    With K = -3L + sum(E_i) such a class has square d^2 - sum(m_i^2) and
    K-pairing -3d + sum(m_i), so the search runs over sum(m_i) = 3d + k_degree
    and sum(m_i^2) = d^2 - self_intersection for each feasible d.
    """
    r = lattice.rank - 1
    found: list[DivisorClass] = []
    for d in range(-4, 9):
        m_sum = 3 * d + k_degree  # K . class = -3d + sum(m_i) = k_degree
        m_square = d * d - self_intersection
        if m_square < 0:
            continue
        if m_sum * m_sum > r * m_square:
            continue
        for m in _vectors_with_sum_and_square(r, m_sum, m_square):
            coords = (d,) + tuple(-mi for mi in m)
            found.append(lattice.divisor(coords))
    found.sort(key=lambda cls: (cls.coords[0], tuple(-c for c in cls.coords[1:])))
    return found


def exceptional_classes(lattice: IntersectionLattice) -> list[DivisorClass]:
    """All classes E with E**2 = -1 and E.K = -1 on a standard del Pezzo lattice."""
    if not _is_standard_del_pezzo(lattice):
        raise UnsupportedLattice("exceptional-class enumeration needs the standard basis")
    return _classes_by_degree_constraints(lattice, k_degree=-1, self_intersection=-1)


def del_pezzo(r: int) -> SurfaceModel:
    """Blow-up of the plane in r general points, modelled lattice-theoretically.

    The curve list is the full set of exceptional classes (E**2 = -1,
    E.K = -1), the canonical class is -3L + sum(E_i) and the ample witness is
    its negative.
    """
    if not 1 <= r <= 8:
        raise OutOfRange("del Pezzo models need 1 <= r <= 8")
    lattice = _del_pezzo_lattice(r)
    canonical = lattice.divisor([-3] + [1] * r)
    ample = -canonical
    curves = tuple(
        NegativeCurve(cls.format(), cls) for cls in exceptional_classes(lattice)
    )
    return SurfaceModel(lattice=lattice, ample=ample, curves=curves, canonical=canonical)


class RootSystem(NamedTuple):
    roots: tuple[DivisorClass, ...]
    simple: tuple[DivisorClass, ...]


def enumerate_roots(model: SurfaceModel) -> RootSystem:
    """All roots (square -2, orthogonal to K) together with the simple ones.

    Both alpha and -alpha appear in ``roots``.  The simple roots are
    L-E1-E2-E3 (when r >= 3) and E_{i+1}-E_i for i = 1..r-1; for r >= 3 they
    generate the whole reflection group.
    """
    if model.canonical is None:
        raise MissingCanonical("root enumeration needs a canonical class")
    lattice = model.lattice
    if not _is_standard_del_pezzo(lattice):
        raise UnsupportedLattice("root enumeration needs the standard basis")
    roots = tuple(
        _classes_by_degree_constraints(lattice, k_degree=0, self_intersection=-2)
    )
    r = lattice.rank - 1
    simple: list[DivisorClass] = []
    if r >= 3:
        simple.append(lattice.divisor([1, -1, -1, -1] + [0] * (r - 3)))
    for i in range(2, r + 1):
        coords = [0] * (r + 1)
        coords[i] = 1
        coords[i - 1] = -1
        simple.append(lattice.divisor(coords))
    return RootSystem(roots=roots, simple=tuple(simple))


def simple_roots(model: SurfaceModel) -> tuple[DivisorClass, ...]:
    return enumerate_roots(model).simple
