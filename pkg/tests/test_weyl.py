"""Reflections, orbits, group orders and volume behaviour under the action."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import dp_model, k3_model, random_big_class
from zlab import (
    enumerate_roots,
    is_nef,
    k3_reflection_volume,
    neg_set,
    reflect,
    simple_roots,
    vol,
    weyl_group_order,
    weyl_orbit,
    zariski_decompose,
)
from zlab.errors import (
    NotMinusTwoClass,
    NotNef,
    OrbitTooLarge,
    RankTooLargeForEnumeration,
)


def test_reflect_worked_values(dp2):
    lat = dp2.lattice
    E1, E2 = lat.basis_divisor(1), lat.basis_divisor(2)
    assert reflect(E1, E2 - E1) == E2
    K = dp2.canonical
    for root in enumerate_roots(dp2).roots:
        assert reflect(K, root) == K
    k3 = k3_model(2)
    P, E = k3.lattice.divisor([1, 0]), k3.lattice.divisor([0, 1])
    assert reflect(P, E).coords == (1, 2)


def test_reflect_requires_minus_two(dp2):
    with pytest.raises(NotMinusTwoClass):
        reflect(dp2.ample, dp2.lattice.basis_divisor(1))  # square -1


def test_reflection_is_an_involutive_isometry():
    rng = random.Random(47)
    model = dp_model(4)
    roots = enumerate_roots(model).roots
    for _ in range(40):
        alpha = rng.choice(roots)
        u = random_big_class(model, rng)
        v = random_big_class(model, rng)
        assert reflect(reflect(u, alpha), alpha) == u
        assert reflect(u, alpha).dot(reflect(v, alpha)) == u.dot(v)


def test_orbit_worked_values():
    dp3 = dp_model(3)
    assert weyl_orbit(dp3, dp3.canonical) == {dp3.canonical}
    dp8 = dp_model(8)
    assert len(weyl_orbit(dp8, dp8.lattice.basis_divisor(1))) == 240


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_orbit_of_one_curve_is_the_whole_curve_set(r):
    model = dp_model(r)
    orbit = weyl_orbit(model, model.lattice.basis_divisor(1))
    assert {d.coords for d in orbit} == {c.cls.coords for c in model.curves}


def test_orbits_available_above_the_group_cap():
    """Full group enumeration stops at rank 7, but orbits stay cheap."""
    dp7 = dp_model(7)
    assert len(weyl_orbit(dp7, dp7.lattice.basis_divisor(1))) == 56
    roots7 = enumerate_roots(dp7).roots
    assert len(weyl_orbit(dp7, roots7[0])) == 126


def test_orbit_cap(dp3):
    with pytest.raises(OrbitTooLarge):
        weyl_orbit(dp3, dp3.lattice.basis_divisor(1), cap=3)


def test_orbit_cap_env_override(dp3, monkeypatch):
    monkeypatch.setenv("ZLAB_ORBIT_CAP", "2")
    with pytest.raises(OrbitTooLarge):
        weyl_orbit(dp3, dp3.lattice.basis_divisor(1))


def test_rank_two_orbits_document_the_small_cases(dp2):
    """At rank 3 the only simple root is E2-E1: its orbit covers both roots
    (so the action on roots is transitive there), while the curve orbit of E1
    stops at {E1, E2} and misses L-E1-E2."""
    lat = dp2.lattice
    root = lat.divisor([0, -1, 1])
    assert weyl_orbit(dp2, root) == {root, -1 * root}
    assert {d.format() for d in weyl_orbit(dp2, lat.basis_divisor(1))} == {"E1", "E2"}


def test_group_orders():
    assert weyl_group_order(dp_model(1)) == 1
    assert weyl_group_order(dp_model(2)) == 2
    assert weyl_group_order(dp_model(3)) == 12
    assert weyl_group_order(dp_model(4)) == 120
    assert weyl_group_order(dp_model(5)) == 1920


def test_group_order_rank_cap():
    with pytest.raises(RankTooLargeForEnumeration):
        weyl_group_order(dp_model(7))


def test_simple_reflections_permute_the_curves():
    for r in (3, 4, 5):
        model = dp_model(r)
        curve_coords = {c.cls.coords for c in model.curves}
        for alpha in simple_roots(model):
            assert {reflect(c.cls, alpha).coords for c in model.curves} == curve_coords


def test_volume_invariance_on_del_pezzo():
    rng = random.Random(53)
    for r in (3, 4):
        model = dp_model(r)
        label_to_class = {c.label: c.cls for c in model.curves}
        coords_to_label = {c.cls.coords: c.label for c in model.curves}
        for _ in range(25):
            divisor = random_big_class(model, rng)
            dec = zariski_decompose(model, divisor)
            for alpha in simple_roots(model):
                image = reflect(divisor, alpha)
                assert vol(model, image) == dec.positive.square
                assert vol(model, image) == vol(model, divisor)
                expected_support = {
                    coords_to_label[reflect(label_to_class[lbl], alpha).coords]
                    for lbl in dec.support_labels
                }
                assert neg_set(model, image) == expected_support


def test_k3_reflection_volume_worked_values():
    k3 = k3_model(2)
    P = k3.lattice.divisor([1, 0])
    assert k3_reflection_volume(k3, P, "E") == 6  # P^2 + (P.E)^2/2 = 4 + 2
    k3b = k3_model(1)
    Pb = k3b.lattice.divisor([1, 0])
    assert k3_reflection_volume(k3b, Pb, "E") == Fraction(9, 2)


def test_k3_reflection_formula_and_noninvariance():
    for diag in (1, 2, 3):
        k3 = k3_model(diag)
        for coords in ([1, 0], [2, 0], [3, 1] if diag >= 1 else [1, 0]):
            P = k3.lattice.divisor(coords)
            if not is_nef(k3, P):
                continue
            t = P.dot(k3.lattice.divisor([0, 1]))
            value = k3_reflection_volume(k3, P, "E")
            assert value == P.square + Fraction(t * t, 2)
            if t != 0:
                assert value != vol(k3, P)


def test_k3_reflection_fixes_orthogonal_classes():
    k3 = k3_model(2)
    # H + E pairs to zero with E
    P = k3.lattice.divisor([1, 1])
    assert is_nef(k3, P)
    assert P.dot(k3.lattice.divisor([0, 1])) == 0
    assert k3_reflection_volume(k3, P, "E") == vol(k3, P) == P.square


def test_k3_printed_term_agreement_only_at_pairing_one():
    """P^2 + t^2/2 versus P^2 + t^2 - t/2: equal exactly when t = 1."""
    k3 = k3_model(1)
    P = k3.lattice.divisor([1, 0])
    t = P.dot(k3.lattice.divisor([0, 1]))
    assert t == 1
    value = k3_reflection_volume(k3, P, "E")
    assert value == P.square + Fraction(t * t, 2)
    assert value == P.square + t * t - Fraction(t, 2)
    k3b = k3_model(2)
    Pb = k3b.lattice.divisor([1, 0])
    tb = Pb.dot(k3b.lattice.divisor([0, 1]))
    assert tb == 2
    vb = k3_reflection_volume(k3b, Pb, "E")
    assert vb == Pb.square + Fraction(tb * tb, 2)
    assert vb != Pb.square + tb * tb - Fraction(tb, 2)


def test_k3_reflection_requires_nef_input():
    k3 = k3_model(2)
    with pytest.raises(NotNef):
        k3_reflection_volume(k3, k3.lattice.divisor([0, 1]), "E")
