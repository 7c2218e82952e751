"""Shared fixtures and sampling helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from zlab import (
    DivisorClass,
    IntersectionLattice,
    NegativeCurve,
    SurfaceModel,
    del_pezzo,
    is_big,
)

_DP_CACHE: dict[int, SurfaceModel] = {}


def dp_model(r: int) -> SurfaceModel:
    if r not in _DP_CACHE:
        _DP_CACHE[r] = del_pezzo(r)
    return _DP_CACHE[r]


@pytest.fixture(scope="session")
def dp2() -> SurfaceModel:
    return dp_model(2)


@pytest.fixture(scope="session")
def dp3() -> SurfaceModel:
    return dp_model(3)


def k3_model(diag: int) -> SurfaceModel:
    """Rank-2 model with gram [[4, diag], [diag, -2]] and one (-2)-curve."""
    lattice = IntersectionLattice([[4, diag], [diag, -2]], ["H", "E"])
    curve = NegativeCurve("E", lattice.divisor([0, 1]))
    return SurfaceModel(lattice=lattice, ample=lattice.divisor([1, 0]), curves=(curve,))


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 4) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_class(
    model: SurfaceModel,
    rng: random.Random,
    lo: int = -6,
    hi: int = 8,
    max_den: int = 4,
) -> DivisorClass:
    return model.lattice.divisor(
        [random_rational(rng, lo, hi, max_den) for _ in range(model.lattice.rank)]
    )


def random_big_class(
    model: SurfaceModel,
    rng: random.Random,
    lo: int = -4,
    hi: int = 6,
    max_den: int = 4,
) -> DivisorClass:
    """Rejection-sample a big class; the leading coordinate is kept positive
    to hit the big cone often."""
    while True:
        coords = [random_rational(rng, 1, 3 * hi, max_den)] + [
            random_rational(rng, lo, hi, max_den)
            for _ in range(model.lattice.rank - 1)
        ]
        candidate = model.lattice.divisor(coords)
        if is_big(model, candidate):
            return candidate


def random_ample_class(model: SurfaceModel, rng: random.Random) -> DivisorClass:
    """A strictly positive combination of the witness and a nef basis tweak."""
    from zlab.raywalk import is_ample

    while True:
        scale = rng.randint(1, 4)
        candidate = scale * model.ample + rng.randint(0, 3) * model.lattice.basis_divisor(0)
        if is_ample(model, candidate):
            return candidate
