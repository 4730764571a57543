"""Shared random generators for the test suite."""

import numpy as np

from sedenion import CDElement, one

SEED = 20210


def imag_octonion_unit(rng, perp_to=()):
    """Random unit imaginary octonion, Gram-Schmidt'd against given rows."""
    while True:
        v = np.zeros(8)
        v[1:8] = rng.normal(size=7)
        for row in perp_to:
            v = v - (row @ v) / (row @ row) * row
        n = np.linalg.norm(v)
        if n > 1e-6:
            return CDElement(v / n)


def orthonormal_frame(rng):
    i1 = imag_octonion_unit(rng)
    i2 = imag_octonion_unit(rng, [i1.coeffs])
    return i1, i2


def special_triple(rng):
    """Unit imaginary octonions (i1, i2, i3) with i3 outside the quaternion
    algebra spanned by the first two; such triples anti-associate."""
    i1, i2 = orthonormal_frame(rng)
    quat = [one(3).coeffs, i1.coeffs, i2.coeffs, (i1 * i2).coeffs]
    i3 = imag_octonion_unit(rng, quat)
    return i1, i2, i3


def random_element(rng, dim=16, scale=1.0):
    return CDElement(scale * rng.normal(size=dim))


def random_zero_divisor(rng):
    """i1 + i2 e8 for an orthonormal imaginary octonion pair."""
    i1, i2 = orthonormal_frame(rng)
    v = np.concatenate([i1.coeffs, i2.coeffs])
    return CDElement(v)
