import math

import numpy as np
import pytest

from sedenion import (
    CDElement,
    HyperSolution,
    I0,
    SliceUnit,
    basis,
    cd_mul,
    cker_curve_point,
    cker_membership,
    find_companion,
    from_polar,
    hyper_solution,
    iota_frame,
    is_hyper_solution,
    is_slice_unit,
    kernel_zeta,
    parse_element,
    polar,
    psi,
    random_hyper_pair,
    random_slice_unit,
    same_unit,
    wpoint,
    wpoint_from,
)

from util import imag_octonion_unit, orthonormal_frame


# --- slice unit detection -----------------------------------------------------


def test_basis_imaginaries_are_slice_units():
    for k in range(1, 16):
        assert is_slice_unit(basis(k, 4))


def test_zero_divisor_direction_is_not_a_slice_unit():
    s = parse_element("e1+e10").promote(4) / math.sqrt(2)
    # squares to -1 as an element, yet its left multiplication is singular
    assert cd_mul(s, s).isclose(-basis(0, 4))
    assert not is_slice_unit(s)


def test_non_units_rejected():
    assert not is_slice_unit(parse_element("2e1").promote(4))
    assert not is_slice_unit(parse_element("1+e1").promote(4))


def test_slice_unit_constructor_validates():
    with pytest.raises(ValueError):
        SliceUnit("e1+e10")
    with pytest.raises(ValueError):
        SliceUnit("0.5e1")


# --- polar coordinates ----------------------------------------------------------


def test_polar_fixtures():
    a, t, j = polar(SliceUnit("e1"))
    assert (a, t) == (math.pi / 2, 0.0) and j == basis(1, 3)
    a, t, j = polar(SliceUnit("e10"))
    assert (a, t) == (math.pi / 2, math.pi / 2) and j == basis(2, 3)
    s = SliceUnit(parse_element("e1+e9").promote(4) / math.sqrt(2))
    assert s.alpha == pytest.approx(math.pi / 2)
    assert s.theta == pytest.approx(math.pi / 4)
    assert s.jmath == basis(1, 3)


def test_polar_convention_at_the_poles():
    north = SliceUnit("e8")
    south = SliceUnit("-e8")
    assert (north.alpha, north.theta) == (0.0, 0.0)
    assert (south.alpha, south.theta) == (math.pi, 0.0)
    assert north.jmath == basis(1, 3)
    assert south.jmath == basis(1, 3)


def test_from_polar_reconstructs_random_units(rng):
    for _ in range(200):
        s = random_slice_unit(rng)
        back = from_polar(s.alpha, s.theta, s.jmath)
        assert np.abs(back.s.coeffs - s.s.coeffs).max() < 1e-9


def test_from_polar_range_checks():
    with pytest.raises(ValueError):
        from_polar(-0.1, 0.0, basis(1, 3))
    with pytest.raises(ValueError):
        from_polar(1.0, math.pi, basis(1, 3))
    with pytest.raises(ValueError):
        from_polar(1.0, 0.0, parse_element("1+e1"))


def test_psi_validates_its_frame():
    e1, e2 = basis(1, 3), basis(2, 3)
    got = psi(math.pi / 2, 0.0, (e1, e2))
    # cos(pi/2) in floats is 6.1e-17, so compare up to that dust
    assert np.abs(got.s.coeffs - basis(1, 4).coeffs).max() < 1e-15
    with pytest.raises(ValueError):
        psi(1.0, 0.5, (e1, e1))
    with pytest.raises(ValueError):
        psi(1.0, 0.5, (e1, 2.0 * e2))


def test_left_mult_squares_to_minus_identity(rng):
    eye = np.eye(16)
    for _ in range(100):
        s = random_slice_unit(rng)
        assert np.abs(s.matrix @ s.matrix + eye).max() < 1e-12


def test_slice_unit_negation_and_equality():
    s = SliceUnit("e10")
    assert (-s).s == -s.s
    assert same_unit(s, s)
    assert not same_unit(s, -s)


# --- hyper pairs -----------------------------------------------------------------


def test_e1_e10_is_a_hyper_pair():
    assert is_hyper_solution(SliceUnit("e1"), SliceUnit("e10"))


def test_octonion_pairs_are_never_hyper():
    assert not is_hyper_solution(SliceUnit("e1"), SliceUnit("e2"))
    assert not is_hyper_solution(SliceUnit("e1"), SliceUnit("-e1"))


def test_hyper_test_rejects_equal_units():
    with pytest.raises(ValueError):
        is_hyper_solution(SliceUnit("e1"), SliceUnit("e1"))


def test_random_hyper_pairs_are_hyper(rng):
    for _ in range(100):
        j1, j2 = random_hyper_pair(rng)
        assert is_hyper_solution(j1, j2)
        assert abs(j1.alpha - j2.alpha) < 1e-9


def test_random_generic_pairs_are_not_hyper(rng):
    for _ in range(100):
        j1 = random_slice_unit(rng)
        j2 = random_slice_unit(rng)
        if np.abs(j1.s.coeffs - j2.s.coeffs).max() < 1e-12:
            continue
        assert not is_hyper_solution(j1, j2)


def test_hyper_solution_constructor_validates(rng):
    j1, j2 = random_hyper_pair(rng)
    h = hyper_solution(j1, j2)
    assert isinstance(h, HyperSolution)
    assert h.alpha == pytest.approx(j1.alpha)
    with pytest.raises(ValueError):
        hyper_solution(SliceUnit("e1"), SliceUnit("e2"))


def test_iota_frame_of_the_flagship_pair_is_exact():
    i1, i2, alpha = iota_frame(SliceUnit("e1"), SliceUnit("e10"))
    assert i1 == basis(1, 3)
    assert i2 == basis(2, 3)
    assert alpha == math.pi / 2


def test_iota_frame_reconstructs_both_units(rng):
    for _ in range(200):
        j1, j2 = random_hyper_pair(rng)
        i1, i2, alpha = iota_frame(j1, j2)
        r1 = psi(alpha, j1.theta, (i1, i2))
        r2 = psi(alpha, j2.theta, (i1, i2))
        assert np.abs(r1.s.coeffs - j1.s.coeffs).max() < 1e-9
        assert np.abs(r2.s.coeffs - j2.s.coeffs).max() < 1e-9


def test_kernel_zeta_solves_both_equations(rng):
    j1, j2 = SliceUnit("e1"), SliceUnit("e10")
    pairs = kernel_zeta(j1, j2)
    assert len(pairs) == 4
    for b, c in pairs:
        assert (b + j1.s * c).norm() < 1e-9
        assert (b + j2.s * c).norm() < 1e-9
    g1, g2 = random_slice_unit(rng), random_slice_unit(rng)
    assert kernel_zeta(g1, g2) == []


# --- the kernel curve --------------------------------------------------------------


def test_cker_membership_flagship_cases():
    j1, j2 = SliceUnit("e1"), SliceUnit("e10")
    assert cker_membership(j1, j1, j2)
    assert cker_membership(j2, j1, j2)
    mid = cker_curve_point(j1, j2, math.pi / 4)
    assert cker_membership(mid, j1, j2)
    # orientation matters, and octonion units are off the curve
    assert not cker_membership(-j2, j1, j2)
    assert not cker_membership(SliceUnit("e9"), j1, j2)
    assert not cker_membership(SliceUnit("e3"), j1, j2)


def test_cker_curve_points_share_the_kernel(rng):
    j1, j2 = random_hyper_pair(rng)
    for theta in rng.uniform(0.0, math.pi, size=25):
        k = cker_curve_point(j1, j2, float(theta))
        assert cker_membership(k, j1, j2)
        if np.abs(k.s.coeffs - j1.s.coeffs).max() > 1e-9:
            assert is_hyper_solution(j1, k)


def test_cker_curve_point_range():
    j1, j2 = SliceUnit("e1"), SliceUnit("e10")
    with pytest.raises(ValueError):
        cker_curve_point(j1, j2, math.pi)
    with pytest.raises(ValueError):
        cker_curve_point(j1, j2, -0.01)


# --- companion search ----------------------------------------------------------------


def test_find_companion_flagship_is_exact():
    k = find_companion(SliceUnit("e1"), parse_element("e4+e15").promote(4))
    assert k is not None
    assert np.array_equal(k.s.coeffs, basis(10, 4).coeffs)


def test_find_companion_gates():
    I = SliceUnit("e1")
    # halves with unequal norms
    assert find_companion(I, basis(4, 4)) is None
    # kappa collinear with the center axis
    assert find_companion(I, parse_element("e1+e9").promote(4)) is None
    # poles never get a companion
    assert find_companion(SliceUnit("e8"), parse_element("e4+e15")) is None
    with pytest.raises(ValueError):
        find_companion(I, CDElement(np.zeros(16)))


def test_find_companion_recovers_curve_from_kernel_vectors(rng):
    from sedenion import kernel_of_left_mult
    for _ in range(100):
        j1, j2 = random_hyper_pair(rng)
        ker = kernel_of_left_mult(j1.s - j2.s)
        mix = ker.basis.T @ rng.normal(size=ker.dim)
        k = find_companion(j1, CDElement(mix))
        assert k is not None
        assert cker_membership(k, j1, j2)


# --- points of the slice cone ----------------------------------------------------------


def test_wpoint_parsing_and_fields():
    q = wpoint("1.5e1")
    assert not q.is_real
    assert q.re == 0.0 and q.im == 1.5
    assert q.z == 1.5j
    assert same_unit(q.axis, SliceUnit("e1"))

    r = wpoint("3")
    assert r.is_real and r.z == 3.0 + 0.0j
    assert same_unit(r.axis, I0)

    s = wpoint("2-3e1")
    assert s.re == 2.0 and s.im == 3.0
    assert same_unit(s.axis, -SliceUnit("e1"))


def test_wpoint_rejects_points_off_the_cone():
    with pytest.raises(ValueError):
        wpoint("1+e1+e10")


def test_wpoint_from_flips_negative_imaginary_parts():
    q = wpoint_from(0.5, -2.0, SliceUnit("e10"))
    assert q.im == 2.0
    assert same_unit(q.axis, -SliceUnit("e10"))
    assert q.value == wpoint("0.5-2e10").value


def test_wpoint_keys_hash_consistently():
    a, b = wpoint("1+2e1"), wpoint("1+2e1")
    assert a.key == b.key and a == b and hash(a) == hash(b)


def test_random_slice_unit_is_valid(rng):
    for _ in range(300):
        assert is_slice_unit(random_slice_unit(rng).s)
