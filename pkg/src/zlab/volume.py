"""Exact volumes of big classes and per-chamber quadratic volume forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .chambers import construct_nef_with_null
from .errors import (
    LatticeMismatch,
    NegativeDimension,
    NotNegativeDefinite,
    NotPseudoEffective,
    NullMismatch,
    UnrealizableSupport,
)
from .lattice import DivisorClass, gram_matrix, invert_matrix
from .surface import SurfaceModel
from .zariski import ChamberDescriptor, zariski_decompose


def vol(model: SurfaceModel, divisor: DivisorClass) -> Fraction:
    """The volume of a class: square of its positive part, 0 off the big cone.

    Returning 0 instead of raising keeps the function total on the whole
    space, matching the volume's definition as a continuous function that
    vanishes outside the big cone.
    """
    if divisor.lattice != model.lattice:
        raise LatticeMismatch("class lives in a different lattice")
    try:
        decomposition = zariski_decompose(model, divisor)
    except (NotPseudoEffective, NotNegativeDefinite):
        return Fraction(0)
    square = decomposition.positive.square
    return square if square > 0 else Fraction(0)


@dataclass(frozen=True)
class QuadraticVolumePolynomial:
    """The homogeneous quadratic form giving the volume on one chamber.

    ``matrix`` is symmetric with exact rational entries, expressed in the
    model basis with no normalization, so printed coefficients can be
    compared directly against hand computations.
    """

    chamber: ChamberDescriptor
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.matrix)
        for i in range(n):
            for j in range(i + 1, n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError("volume form matrix must be symmetric")

    def evaluate_coords(self, coords: Iterable[Fraction]) -> Fraction:
        xs = tuple(Fraction(c) for c in coords)
        total = Fraction(0)
        for xi, row in zip(xs, self.matrix):
            if xi == 0:
                continue
            total += xi * sum(q * xj for q, xj in zip(row, xs) if q)
        return total

    def evaluate(self, divisor: DivisorClass) -> Fraction:
        return self.evaluate_coords(divisor.coords)


def volume_polynomial(
    model: SurfaceModel, chamber: "ChamberDescriptor | Iterable[str]"
) -> QuadraticVolumePolynomial:
    """Exact quadratic form Q with vol(D) = D^T Q D on the given chamber.

    Inside a chamber the negative part depends linearly on D (its
    coefficients solve the fixed support's pairing system with right-hand
    side (D . C_i)), so D |-> D - N(D) is linear and the volume is the
    pullback of the intersection form along it.
    """
    if not isinstance(chamber, ChamberDescriptor):
        chamber = ChamberDescriptor.from_labels(chamber)
    try:
        construct_nef_with_null(model, chamber)
    except (NotNegativeDefinite, NullMismatch, KeyError) as exc:
        raise UnrealizableSupport(str(exc)) from exc
    rank = model.lattice.rank
    gram = model.lattice.gram
    if not chamber.support:
        matrix = tuple(tuple(Fraction(g) for g in row) for row in gram)
        return QuadraticVolumePolynomial(chamber, matrix)

    classes = [model.curve_by_label(lbl).cls for lbl in chamber.support]
    support_gram = gram_matrix(classes)
    inverse = invert_matrix(support_gram)
    rows = [model.lattice.gram_row_times(cls.coords) for cls in classes]
    k = len(classes)
    # substitution matrix M with M @ D = D - N(D)
    weighted = [
        [sum(inverse[i][t] * rows[t][j] for t in range(k)) for j in range(rank)]
        for i in range(k)
    ]
    substitution = [
        [
            Fraction(int(i == j))
            - sum(classes[t].coords[i] * weighted[t][j] for t in range(k))
            for j in range(rank)
        ]
        for i in range(rank)
    ]
    gm = [
        [sum(Fraction(gram[i][t]) * substitution[t][j] for t in range(rank)) for j in range(rank)]
        for i in range(rank)
    ]
    quadratic = tuple(
        tuple(
            sum(substitution[t][i] * gm[t][j] for t in range(rank))
            for j in range(rank)
        )
        for i in range(rank)
    )
    return QuadraticVolumePolynomial(chamber, quadratic)


def kunneth_volume(volume_1, dimension_1: int, volume_2, dimension_2: int):
    """Volume of a product: binomial(n1+n2, n1) * vol_1 * vol_2.

    Works with any scalar type closed under multiplication by integers
    (Fraction, float, QuadraticIrrational).
    """
    if dimension_1 < 0 or dimension_2 < 0:
        raise NegativeDimension("dimensions must be non-negative")
    return comb(dimension_1 + dimension_2, dimension_1) * volume_1 * volume_2
