"""Reflections in (-2)-classes, orbits, group orders and volume comparisons.

Reflection in a class alpha with alpha**2 = -2 sends D to D + (D.alpha)*alpha;
it is an involution preserving the intersection form.  On del Pezzo models
the group generated by the simple-root reflections permutes the exceptional
classes, so decomposing commutes with it and volumes are preserved.  On K3
models a reflection in an actual (-2)-curve moves nef classes out of the nef
cone and the volume changes: for nef P and a (-2)-curve E with t = P.E, the
reflected class has volume P**2 + t**2/2 (which only coincides with
P**2 + t**2 - t/2 at t = 1).
"""

from __future__ import annotations

import os
from collections import deque
from fractions import Fraction
from .errors import (
    NotMinusTwoClass,
    NotNef,
    OrbitTooLarge,
    OutOfRange,
    RankTooLargeForEnumeration,
)
from .lattice import DivisorClass
from .surface import NegativeCurve, SurfaceModel, enumerate_roots, is_nef, simple_roots
from .volume import vol

DEFAULT_ORBIT_CAP = 10_000_000
GROUP_ENUMERATION_MAX_R = 6


def reflect(divisor: DivisorClass, alpha: DivisorClass) -> DivisorClass:
    """Reflection of a class in a (-2)-class: D + (D.alpha)*alpha."""
    if alpha.square != -2:
        raise NotMinusTwoClass(f"{alpha} has square {alpha.square}, not -2")
    return divisor + divisor.dot(alpha) * alpha


def _orbit_cap(explicit: "int | None") -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("ZLAB_ORBIT_CAP")
    if not env:
        return DEFAULT_ORBIT_CAP
    try:
        return int(env)
    except ValueError as exc:
        raise OutOfRange(f"ZLAB_ORBIT_CAP must be an integer, got {env!r}") from exc


def weyl_orbit(
    model: SurfaceModel, start: DivisorClass, cap: "int | None" = None
) -> set[DivisorClass]:
    """Closure of a class under the simple-root reflections, by breadth-first search.

    Deduplication keys on the exact coordinate tuples, so distinct classes
    never collide.  Exceeding the size cap raises OrbitTooLarge.
    """
    cap = _orbit_cap(cap)
    generators = simple_roots(model)
    seen: dict[tuple[Fraction, ...], DivisorClass] = {start.coords: start}
    frontier = deque([start])
    while frontier:
        current = frontier.popleft()
        for alpha in generators:
            image = reflect(current, alpha)
            if image.coords not in seen:
                if len(seen) >= cap:
                    raise OrbitTooLarge(f"orbit exceeded the cap of {cap}")
                seen[image.coords] = image
                frontier.append(image)
    return set(seen.values())


def weyl_group_order(model: SurfaceModel, max_r: int = GROUP_ENUMERATION_MAX_R) -> int:
    """Order of the group generated by the simple-root reflections.

    Every group element fixes the canonical class and the roots span its
    orthogonal complement, so the action on the (finite) root set is
    faithful; elements are enumerated as root permutations, which keeps the
    breadth-first closure cheap even at 51840 elements.
    """
    r = model.lattice.rank - 1
    if r > max_r:
        raise RankTooLargeForEnumeration(
            f"full group enumeration is capped at r = {max_r}"
        )
    system = enumerate_roots(model)
    roots = system.roots
    if not system.simple or not roots:
        return 1
    index = {root.coords: i for i, root in enumerate(roots)}
    n = len(roots)
    generators = []
    for alpha in system.simple:
        images = bytes(index[reflect(root, alpha).coords] for root in roots)
        generators.append(images)
    identity = bytes(range(n))
    seen = {identity}
    frontier = deque([identity])
    while frontier:
        current = frontier.popleft()
        for gen in generators:
            composed = bytes(map(gen.__getitem__, current))
            if composed not in seen:
                seen.add(composed)
                frontier.append(composed)
    return len(seen)


def k3_reflection_volume(
    model: SurfaceModel, nef_class: DivisorClass, curve: "NegativeCurve | str"
) -> Fraction:
    """Volume of the reflection of a nef class in a listed (-2)-curve.

    Computed honestly through the Zariski decomposition of the reflected
    class; for t = P.E the value equals P**2 + t**2/2.
    """
    if isinstance(curve, str):
        curve = model.curve_by_label(curve)
    else:
        curve = model.curve_by_label(curve.label)
    if curve.cls.square != -2:
        raise NotMinusTwoClass(f"{curve.label} has square {curve.cls.square}, not -2")
    if not is_nef(model, nef_class):
        raise NotNef("reflection volume expects a nef class")
    return vol(model, reflect(nef_class, curve.cls))
