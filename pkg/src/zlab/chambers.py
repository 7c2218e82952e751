"""Chamber enumeration and face geometry for finite-curve models."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import NotNef, NotNegativeDefinite, NullMismatch
from .lattice import DivisorClass, is_negative_definite, solve_gram_system
from .surface import NegativeCurve, SurfaceModel, is_nef
from .zariski import ChamberDescriptor, null_set

MAX_ENUMERABLE_CURVES = 63


def _resolve_curves(
    model: SurfaceModel, support: "ChamberDescriptor | Iterable[str] | Iterable[NegativeCurve]"
) -> list[NegativeCurve]:
    if isinstance(support, ChamberDescriptor):
        labels: Iterable = support.support
    else:
        labels = support
    curves: list[NegativeCurve] = []
    for item in labels:
        if isinstance(item, NegativeCurve):
            curves.append(model.curve_by_label(item.label))
        else:
            curves.append(model.curve_by_label(item))
    return curves


def construct_nef_with_null(
    model: SurfaceModel,
    support: "ChamberDescriptor | Iterable[str] | Iterable[NegativeCurve]",
) -> DivisorClass:
    """A nef class whose null set is exactly the given curve set.

    Built as A + sum(t_i * C_i) where the t_i solve the orthogonality
    conditions against the support; ampleness of A forces every t_i to be
    strictly positive.  The resulting class is verified to be nef and to
    vanish against no curve outside the support (NullMismatch otherwise).
    """
    curves = _resolve_curves(model, support)
    if not curves:
        return model.ample
    classes = [c.cls for c in curves]
    coefficients = solve_gram_system(
        classes, [-model.ample.dot(cls) for cls in classes]
    )
    if any(t <= 0 for t in coefficients):
        raise NotNegativeDefinite(
            "orthogonality system produced a non-positive coefficient"
        )
    result = model.ample
    for cls, t in zip(classes, coefficients):
        result = result + t * cls
    if not is_nef(model, result):
        raise NullMismatch("constructed class is not nef")
    if null_set(model, result) != frozenset(c.label for c in curves):
        raise NullMismatch("constructed class has extra null curves")
    return result


class Face(NamedTuple):
    """A face of the nef cone: its null set and a basis of the orthogonal span."""

    null_labels: frozenset[str]
    orthogonal_basis: tuple[DivisorClass, ...]


def _orthogonal_complement_basis(
    model: SurfaceModel, classes: Sequence[DivisorClass]
) -> tuple[DivisorClass, ...]:
    """Exact basis of {v : v . C = 0 for all C} inside the lattice."""
    rank = model.lattice.rank
    rows = [list(model.lattice.gram_row_times(cls.coords)) for cls in classes]
    pivots: list[int] = []
    row_index = 0
    for col in range(rank):
        pivot = next(
            (r for r in range(row_index, len(rows)) if rows[r][col] != 0), None
        )
        if pivot is None:
            continue
        rows[row_index], rows[pivot] = rows[pivot], rows[row_index]
        lead = rows[row_index][col]
        rows[row_index] = [x / lead for x in rows[row_index]]
        for r in range(len(rows)):
            if r != row_index and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[row_index])]
        pivots.append(col)
        row_index += 1
    basis: list[DivisorClass] = []
    free_columns = [c for c in range(rank) if c not in pivots]
    for free in free_columns:
        coords = [Fraction(0)] * rank
        coords[free] = Fraction(1)
        for row_pos, col in enumerate(pivots):
            coords[col] = -rows[row_pos][free]
        basis.append(model.lattice.divisor(coords))
    return tuple(basis)


def face_of(model: SurfaceModel, nef_class: DivisorClass) -> Face:
    """Null set of a nef class and an exact basis of its orthogonal complement."""
    if not is_nef(model, nef_class):
        raise NotNef("face is only defined for nef classes")
    labels = null_set(model, nef_class)
    classes = [model.curve_by_label(lbl).cls for lbl in sorted(labels)]
    return Face(labels, _orthogonal_complement_basis(model, classes))


def enumerate_chambers(model: SurfaceModel) -> list[ChamberDescriptor]:
    """Every chamber of the big cone, as a sorted list of support descriptors.

    Walks the subset lattice of the curve list depth-first, extending only
    supports whose pairing matrix stays negative definite (any principal
    submatrix of a negative definite matrix is negative definite, so pruning
    is safe).  Each surviving support is verified to be realizable as an
    exact null set; the empty support (the nef chamber) is always included.
    """
    curves = model.curves
    if len(curves) > MAX_ENUMERABLE_CURVES:
        raise ValueError(
            f"chamber enumeration supports at most {MAX_ENUMERABLE_CURVES} curves"
        )
    max_size = model.lattice.rank - 1
    pair_table = [
        [ci.cls.dot(cj.cls) for cj in curves] for ci in curves
    ]
    found: list[ChamberDescriptor] = [ChamberDescriptor(())]
    stack: list[int] = []

    def descend(next_start: int) -> None:
        if len(stack) >= max_size:
            return
        for idx in range(next_start, len(curves)):
            candidate = stack + [idx]
            gram = [[pair_table[i][j] for j in candidate] for i in candidate]
            if not is_negative_definite(gram):
                continue
            try:
                construct_nef_with_null(model, [curves[i].label for i in candidate])
            except (NotNegativeDefinite, NullMismatch):
                continue
            found.append(
                ChamberDescriptor(tuple(curves[i].label for i in candidate))
            )
            stack.append(idx)
            descend(idx + 1)
            stack.pop()

    descend(0)
    found.sort(key=lambda chamber: (len(chamber.support), chamber.support))
    return found
