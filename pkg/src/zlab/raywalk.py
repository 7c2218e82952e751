"""Chamber walk along the segment L - t*A: destabilizing values and stability.

Within a chamber of support S the negative-part coefficients solve the fixed
pairing system with right-hand side ((L - t*A) . C_i), so they are affine in
t, and so is the candidate positive part P(t).  The walk advances t from 0:
the next destabilizing value is the least root of P(t) . C over listed curves
C outside S (an affine function with rational data, hence a rational root);
curves whose walls tie at the same t enter together.  The walk ends at the
least root of the quadratic P(t)**2, where the class stops being big; that
endpoint is the only possibly irrational value and is always reported as a
QuadraticIrrational (rational values embed with radicand 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    InstableDivisor,
    LatticeMismatch,
    NotAmple,
    NotNegativeDefinite,
)
from .lattice import DivisorClass, QuadraticIrrational, solve_gram_system, sqrt_fraction
from .surface import NegativeCurve, SurfaceModel
from .zariski import (
    ChamberDescriptor,
    _decompose_big,
    null_set,
    on_chamber_boundary,
)

Endpoint = Union[Fraction, QuadraticIrrational]


@dataclass(frozen=True)
class RaySegment:
    """One chamber stretch of the walk; the support holds on the open interval."""

    lambda_start: Fraction
    lambda_end: Endpoint
    support: ChamberDescriptor


@dataclass(frozen=True)
class RayWalkResult:
    segments: tuple[RaySegment, ...]
    breakpoints: tuple[Fraction, ...]
    bigness_threshold: QuadraticIrrational

    def __post_init__(self) -> None:
        segments = tuple(self.segments)
        object.__setattr__(self, "segments", segments)
        object.__setattr__(self, "breakpoints", tuple(self.breakpoints))
        if not segments:
            raise ValueError("a walk has at least one segment")
        for left, right in zip(segments, segments[1:]):
            if Fraction(0) + left.lambda_end != right.lambda_start:
                raise ValueError("segments are not contiguous")
            if not left.support.label_set < right.support.label_set:
                raise ValueError("supports must strictly increase along the walk")
        expected_breaks = tuple(seg.lambda_start for seg in segments[1:])
        if self.breakpoints != expected_breaks:
            raise ValueError("breakpoints must match the interior segment bounds")
        if any(not isinstance(b, Fraction) for b in self.breakpoints):
            raise ValueError("breakpoints must be rational")
        threshold = self.bigness_threshold
        if not isinstance(threshold, QuadraticIrrational):
            raise ValueError("the bigness threshold must be a QuadraticIrrational")
        if any(not (0 < b and threshold > b) for b in self.breakpoints):
            raise ValueError("breakpoints must lie strictly between 0 and the threshold")
        last = segments[-1].lambda_end
        if QuadraticIrrational(0) + last != threshold:
            raise ValueError("the final segment must end at the bigness threshold")


def is_ample(model: SurfaceModel, divisor: DivisorClass) -> bool:
    """Strict positivity against the square, the witness and every curve."""
    if divisor.lattice != model.lattice:
        raise LatticeMismatch("class lives in a different lattice")
    if divisor.square <= 0 or divisor.dot(model.ample) <= 0:
        return False
    return all(p > 0 for p in model.curve_pairings(divisor))


def _affine_segment(
    model: SurfaceModel,
    support: list[NegativeCurve],
    bundle: DivisorClass,
    ample: DivisorClass,
):
    """Affine data on a fixed support: coefficients x(t) = x0 + t*x1 and
    candidate positive part P(t) = p0 + t*p1."""
    classes = [c.cls for c in support]
    x0 = solve_gram_system(classes, [bundle.dot(cls) for cls in classes])
    x1 = solve_gram_system(classes, [-ample.dot(cls) for cls in classes])
    p0 = bundle
    p1 = -ample
    for cls, u, v in zip(classes, x0, x1):
        p0 = p0 - u * cls
        p1 = p1 - v * cls
    return x0, x1, p0, p1


def _absorb_walls(
    model: SurfaceModel,
    support: list[NegativeCurve],
    bundle: DivisorClass,
    ample: DivisorClass,
    lam: Fraction,
):
    """Add every curve whose wall passes through lam with decreasing pairing."""
    support = list(support)
    while True:
        x0, x1, p0, p1 = _affine_segment(model, support, bundle, ample)
        f0 = model.curve_pairings(p0)
        f1 = model.curve_pairings(p1)
        in_support = {c.label for c in support}
        entrants = [
            c
            for c, a, b in zip(model.curves, f0, f1)
            if c.label not in in_support and b < 0 and a + lam * b == 0
        ]
        if not entrants:
            return support, x0, x1, p0, p1, f0, f1
        support.extend(entrants)


def _least_quadratic_root_above(
    c2: Fraction, c1: Fraction, c0: Fraction, lam: Fraction
) -> Optional[QuadraticIrrational]:
    if c2 == 0:
        if c1 == 0:
            return None
        root = QuadraticIrrational(-c0 / c1)
        return root if root > lam else None
    discriminant = c1 * c1 - 4 * c2 * c0
    if discriminant < 0:
        return None
    sq = sqrt_fraction(discriminant)
    roots = [
        (QuadraticIrrational(-c1) - sq) / (2 * c2),
        (QuadraticIrrational(-c1) + sq) / (2 * c2),
    ]
    admissible = [r for r in roots if r > lam]
    if not admissible:
        return None
    return min(admissible)


def destabilizing_numbers(
    model: SurfaceModel, bundle: DivisorClass, ample: DivisorClass
) -> RayWalkResult:
    """Walk L - t*A through its chambers and report every support jump.

    All interior breakpoints are exact rationals by construction; the final
    bigness threshold is a quadratic irrational.  When the bundle is ample,
    the first breakpoint is the nef threshold sup{t : L - t*A nef}.  Support
    pruning (a coefficient vanishing inside a segment) closes the segment
    without recording a breakpoint; it cannot occur for an ample direction,
    where supports only grow.
    """
    if not is_ample(model, ample):
        raise NotAmple("the direction class must be ample in the model")
    initial = _decompose_big(model, bundle)

    support = list(initial.support)
    lam = Fraction(0)
    seg_start = Fraction(0)
    segments: list[RaySegment] = []
    breakpoints: list[Fraction] = []
    threshold: Optional[QuadraticIrrational] = None

    for _ in range(2 * len(model.curves) + 8):
        try:
            support, x0, x1, p0, p1, f0, f1 = _absorb_walls(
                model, support, bundle, ample, lam
            )
        except NotNegativeDefinite:
            # entering curves broke definiteness: the class cannot stay big,
            # so the wall just reached is the endpoint, not a breakpoint
            threshold = QuadraticIrrational(lam)
            if lam > seg_start:
                segments.append(
                    RaySegment(seg_start, threshold, _descriptor(support))
                )
            elif breakpoints and breakpoints[-1] == lam:
                breakpoints.pop()
                last = segments[-1]
                segments[-1] = RaySegment(
                    last.lambda_start, threshold, last.support
                )
            break
        descriptor = _descriptor(support)
        in_support = {c.label for c in support}

        wall: Optional[Fraction] = None
        for c, a, b in zip(model.curves, f0, f1):
            if c.label in in_support or b >= 0:
                continue
            assert a + lam * b >= 0, "segment invariant broken"
            root = -a / b
            if root > lam and (wall is None or root < wall):
                wall = root
        exit_root: Optional[Fraction] = None
        for u, v in zip(x0, x1):
            if v >= 0:
                continue
            root = -u / v
            if root > lam and (exit_root is None or root < exit_root):
                exit_root = root
        big_root = _least_quadratic_root_above(
            p1.square, 2 * p0.dot(p1), p0.square, lam
        )

        if (
            big_root is not None
            and (wall is None or big_root <= wall)
            and (exit_root is None or big_root <= exit_root)
        ):
            threshold = big_root
            segments.append(RaySegment(seg_start, threshold, descriptor))
            break
        if wall is not None and (exit_root is None or wall <= exit_root):
            segments.append(RaySegment(seg_start, wall, descriptor))
            breakpoints.append(wall)
            lam = seg_start = wall
            continue
        if exit_root is not None:
            segments.append(RaySegment(seg_start, exit_root, descriptor))
            support = [
                c
                for c, u, v in zip(support, x0, x1)
                if not (v < 0 and u + exit_root * v == 0)
            ]
            lam = seg_start = exit_root
            continue
        raise RuntimeError("ray walk found no terminating event")
    else:
        raise RuntimeError("ray walk did not terminate")

    assert threshold is not None
    return RayWalkResult(
        segments=tuple(segments),
        breakpoints=tuple(breakpoints),
        bigness_threshold=threshold,
    )


def _descriptor(support: list[NegativeCurve]) -> ChamberDescriptor:
    return ChamberDescriptor.from_labels(c.label for c in support)


def is_stable(model: SurfaceModel, divisor: DivisorClass) -> bool:
    """True iff small ample perturbations do not change the stable base locus.

    Equivalent to lying in a chamber interior: the negative-part support
    equals the null set of the positive part.
    """
    return not on_chamber_boundary(model, divisor)


def stable_base_locus(model: SurfaceModel, divisor: DivisorClass) -> frozenset[str]:
    """Curve labels of the stable base locus of a stable big class.

    For stable classes the stable base locus is carried exactly by the
    negative part of the decomposition.  On chamber boundaries the model
    cannot see the finer base-locus behaviour, so InstableDivisor is raised.
    """
    decomposition = _decompose_big(model, divisor)
    if decomposition.support_labels != null_set(model, decomposition.positive):
        raise InstableDivisor("the class lies on a chamber boundary")
    return decomposition.support_labels
