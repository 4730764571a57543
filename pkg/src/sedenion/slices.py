"""Slice units, polar coordinates, hyper-solutions, and kernel curves.

A slice unit is a sedenion I with L_I^2 = -id (left multiplication squares to
minus the identity); these are exactly the imaginary units a + b*e8 whose
octonion parts commute, and each spans a complex plane C_I = R + R*I inside
the sedenions.  Every slice unit has unique polar coordinates

    I = sin(alpha)cos(theta)*j + [cos(alpha) + sin(alpha)sin(theta)*j]*e8

with alpha in [0, pi], theta in [0, pi), and j a unit imaginary octonion
(convention (theta, j) = (0, e1) at I = +-e8).  The psi map builds slice
units from an orthonormal imaginary frame (i1, i2):

    psi(alpha, theta, (i1, i2)) uses j = kappa(theta) = cos(theta)i1 + sin(theta)i2,

and for fixed (alpha, frame) the image over theta in [0, pi) is a closed
curve of slice units whose pairwise differences are zero divisors sharing one
common kernel: the kernel curve.  A pair (J1, J2) of distinct slice units
with J1 - J2 a zero divisor is a hyper-solution pair; such pairs are exactly
the pairs lying on a common kernel curve.

Points of the upper half-space W are wrapped as WPoint: q = re + im*I_q with
im >= 0 and I_q a slice unit (real points carry the fixed base slice I0 = e1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .algebra import (
    CDElement,
    DIM,
    MAX_LEVEL,
    basis,
    cd_mul,
    left_mult_matrix,
    parse_any,
)
from .zerodiv import Subspace, is_zero_divisor, kernel_of_left_mult

__all__ = [
    "SliceUnit",
    "WPoint",
    "HyperSolution",
    "I0",
    "is_slice_unit",
    "polar",
    "psi",
    "from_polar",
    "iota_frame",
    "is_hyper_solution",
    "hyper_solution",
    "cker_membership",
    "cker_curve_point",
    "kernel_zeta",
    "find_companion",
    "random_slice_unit",
    "random_hyper_pair",
    "wpoint",
    "wpoint_from",
    "same_unit",
]

_DEGENERATE = 1e-12
_EQ_TOL = 1e-9


def _unit_matrix_residual(m: NDArray[np.float64]) -> float:
    return float(np.max(np.abs(m @ m + np.eye(DIM))))


def is_slice_unit(x: CDElement, tol: float = _EQ_TOL) -> bool:
    """True iff left multiplication by x squares to minus the identity."""
    x = x.promote(MAX_LEVEL)
    if abs(x.norm() - 1.0) > tol:
        return False
    return _unit_matrix_residual(left_mult_matrix(x)) <= tol


class SliceUnit:
    """A slice unit with its polar coordinates and multiplication matrix.

    The cosines/sines of alpha and theta are extracted directly from the
    coefficient data (not recomputed from the rounded angles), so canonical
    inputs like e1 or e10 carry exact values such as cos_theta = 0.0; the
    frame recovery in `iota_frame` relies on this to be exact on them.
    """

    __slots__ = ("s", "alpha", "theta", "jmath",
                 "cos_alpha", "sin_alpha", "cos_theta", "sin_theta", "matrix")

    def __init__(self, s: CDElement | str):
        if isinstance(s, str):
            s = parse_any(s)
        s = s.promote(MAX_LEVEL)
        m = left_mult_matrix(s)
        if abs(s.norm() - 1.0) > _EQ_TOL or _unit_matrix_residual(m) > _EQ_TOL:
            raise ValueError(f"not a slice unit: {s}")
        v = s.coeffs
        u = v[1:8]
        w = v[9:16]
        nu = float(np.linalg.norm(u))
        nw = float(np.linalg.norm(w))
        cos_a = float(v[8])
        sin_a = math.hypot(nu, nw)
        alpha = math.atan2(sin_a, cos_a)
        if sin_a < _DEGENERATE:
            # +-e8: theta and jmath are conventions, not coordinates.
            j8 = np.eye(8)[1]
            cos_t, sin_t = 1.0, 0.0
        elif nw > _DEGENERATE * sin_a:
            j8 = np.concatenate([[0.0], w / nw])
            sin_t = nw / sin_a
            cos_t = float(np.dot(u, j8[1:])) / sin_a
        else:
            j8 = np.concatenate([[0.0], u / nu])
            sin_t = 0.0
            cos_t = nu / sin_a
        cos_t = min(1.0, max(-1.0, cos_t))
        sin_t = min(1.0, max(0.0, sin_t))
        theta = math.atan2(sin_t, cos_t)
        for name, val in (("s", s), ("alpha", alpha), ("theta", theta),
                          ("jmath", CDElement(j8)),
                          ("cos_alpha", cos_a), ("sin_alpha", sin_a),
                          ("cos_theta", cos_t), ("sin_theta", sin_t),
                          ("matrix", m)):
            object.__setattr__(self, name, val)
        self.matrix.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("SliceUnit is immutable")

    @property
    def key(self) -> tuple[float, ...]:
        return self.s.key

    def __neg__(self) -> "SliceUnit":
        return SliceUnit(-self.s)

    def __eq__(self, other):
        if not isinstance(other, SliceUnit):
            return NotImplemented
        return self.s == other.s

    def __hash__(self):
        return hash(self.s)

    def __repr__(self):
        return (f"SliceUnit({str(self.s)!r}, alpha={self.alpha:.6g}, "
                f"theta={self.theta:.6g}, jmath={str(self.jmath)!r})")


I0 = SliceUnit(basis(1, level=MAX_LEVEL))

_E8 = basis(8, level=MAX_LEVEL)


def same_unit(a: SliceUnit, b: SliceUnit, tol: float = _EQ_TOL) -> bool:
    """Equality of slice units as points of the unit sphere, within tol."""
    return bool(np.max(np.abs(a.s.coeffs - b.s.coeffs)) <= tol)


def polar(i: CDElement | SliceUnit) -> tuple[float, float, CDElement]:
    """Polar coordinates (alpha, theta, jmath) of a slice unit.

    Raises ValueError when the argument is not a slice unit.  At +-e8 the
    convention (alpha, 0, e1) is returned.
    """
    unit = i if isinstance(i, SliceUnit) else SliceUnit(i)
    return unit.alpha, unit.theta, unit.jmath


def _octonion_unit(x: CDElement, what: str, tol: float = _EQ_TOL) -> NDArray[np.float64]:
    if x.level > 3:
        raise ValueError(f"{what} must be an octonion (level <= 3)")
    v = x.promote(3).coeffs
    if abs(np.linalg.norm(v) - 1.0) > tol or abs(v[0]) > tol:
        raise ValueError(f"{what} must be a unit imaginary octonion")
    return v


def _check_frame(i1: CDElement, i2: CDElement) -> tuple[NDArray, NDArray]:
    v1 = _octonion_unit(i1, "frame element i1")
    v2 = _octonion_unit(i2, "frame element i2")
    if abs(float(np.dot(v1, v2))) > _EQ_TOL:
        raise ValueError("frame elements must be orthogonal")
    return v1, v2


def _assemble(cos_a: float, sin_a: float, sin_t: float,
              a_coeff: float, j8: NDArray[np.float64]) -> CDElement:
    """Slice unit a_coeff*j + (cos_a + sin_a*sin_t*j)*e8 from raw parts."""
    out = np.zeros(DIM)
    out[1:8] = a_coeff * j8[1:]
    out[8] = cos_a
    out[9:16] = (sin_a * sin_t) * j8[1:]
    return CDElement(out)


def from_polar(alpha: float, theta: float, jmath: CDElement) -> SliceUnit:
    """Rebuild the slice unit with the given polar coordinates.

    Inverse of `polar` away from +-e8 (there every (theta, jmath) collapses
    to the same point).  Angles must be canonical: alpha in [0, pi], theta
    in [0, pi).
    """
    if not 0.0 <= alpha <= math.pi + 1e-15:
        raise ValueError(f"alpha out of [0, pi]: {alpha}")
    if not 0.0 <= theta < math.pi:
        raise ValueError(f"theta out of [0, pi): {theta}")
    j8 = _octonion_unit(jmath, "jmath")
    cos_a, sin_a = math.cos(alpha), math.sin(alpha)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    return SliceUnit(_assemble(cos_a, sin_a, sin_t, sin_a * cos_t, j8))


def psi(alpha: float, theta: float, frame: tuple[CDElement, CDElement]) -> SliceUnit:
    """The slice unit psi(alpha, theta, (i1, i2)) with j = cos(theta)i1 + sin(theta)i2.

    The frame must be a pair of orthogonal unit imaginary octonions; alpha is
    clamped to [0, pi] by contract (values outside raise).  psi(0, theta, f)
    is e8 for every theta and frame.
    """
    if not 0.0 <= alpha <= math.pi + 1e-15:
        raise ValueError(f"alpha out of [0, pi]: {alpha}")
    v1, v2 = _check_frame(*frame)
    cos_a, sin_a = math.cos(alpha), math.sin(alpha)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    return _psi_parts(cos_a, sin_a, cos_t, sin_t, v1, v2)


def _psi_parts(cos_a: float, sin_a: float, cos_t: float, sin_t: float,
               v1: NDArray[np.float64], v2: NDArray[np.float64]) -> SliceUnit:
    kappa = cos_t * v1 + sin_t * v2
    return SliceUnit(_assemble(cos_a, sin_a, sin_t, sin_a * cos_t, kappa))


# ---------------------------------------------------------------------------
# hyper-solutions
# ---------------------------------------------------------------------------


def is_hyper_solution(j1: SliceUnit, j2: SliceUnit) -> bool:
    """True iff the distinct pair (J1, J2) has J1 - J2 a zero divisor.

    Raises ValueError when J1 = J2 (the dichotomy needs distinct units).
    """
    if same_unit(j1, j2):
        raise ValueError("hyper-solution test requires distinct slice units")
    return is_zero_divisor(j1.s - j2.s)


def iota_frame(j1: SliceUnit, j2: SliceUnit) -> tuple[CDElement, CDElement, float]:
    """Shared frame (i1, i2) and alpha of a hyper-solution pair.

    Solves the 2x2 system expressing (jmath_1, jmath_2) through the frame at
    angles (theta_1, theta_2); the solve is written out in closed form so
    exact stored cosines (for example on (e1, e10)) stay exact.  Raises for
    J1 = J2 or a slice-solution pair (difference not a zero divisor).
    """
    if not is_hyper_solution(j1, j2):
        raise ValueError("pair is a slice-solution; no shared frame exists")
    det = j1.cos_theta * j2.sin_theta - j2.cos_theta * j1.sin_theta
    if abs(det) < 1e-12:
        raise ValueError("theta coordinates coincide; frame is not determined")
    b1 = j1.jmath.promote(3).coeffs
    b2 = j2.jmath.promote(3).coeffs
    v1 = (j2.sin_theta * b1 - j1.sin_theta * b2) / det
    v2 = (-j2.cos_theta * b1 + j1.cos_theta * b2) / det
    alpha = 0.5 * (j1.alpha + j2.alpha)
    return CDElement(v1), CDElement(v2), alpha


@dataclass(frozen=True)
class HyperSolution:
    """A hyper-solution pair with its shared invariants (alpha, frame)."""

    j1: SliceUnit
    j2: SliceUnit
    alpha: float
    frame: tuple[CDElement, CDElement]


def hyper_solution(j1: SliceUnit, j2: SliceUnit) -> HyperSolution:
    """Validating constructor: pair must be a hyper-solution."""
    i1, i2, alpha = iota_frame(j1, j2)
    return HyperSolution(j1=j1, j2=j2, alpha=alpha, frame=(i1, i2))


def cker_membership(k: SliceUnit, j1: SliceUnit, j2: SliceUnit,
                    tol: float = 1e-8) -> bool:
    """True iff K lies on the kernel curve of the hyper-solution (J1, J2).

    Decided by annihilation: K is on the curve iff (J1 - K)c = 0 for every c
    in ker(J1 - J2).  Raises when (J1, J2) is not a hyper-solution.
    """
    if not is_hyper_solution(j1, j2):
        raise ValueError("kernel curve is defined for hyper-solutions only")
    ker = kernel_of_left_mult(j1.s - j2.s)
    diff = left_mult_matrix(j1.s - k.s)
    resid = diff @ ker.basis.T
    return float(np.max(np.abs(resid))) <= tol


def cker_curve_point(j1: SliceUnit, j2: SliceUnit, theta: float) -> SliceUnit:
    """Point psi(alpha, theta, frame) of the kernel curve through J1, J2.

    theta ranges over [0, pi); the curve closes up (theta -> pi approaches
    the theta = 0 point).
    """
    if not 0.0 <= theta < math.pi:
        raise ValueError(f"theta out of [0, pi): {theta}")
    i1, i2, alpha = iota_frame(j1, j2)
    cos_a = 0.5 * (j1.cos_alpha + j2.cos_alpha)
    sin_a = 0.5 * (j1.sin_alpha + j2.sin_alpha)
    return _psi_parts(cos_a, sin_a, math.cos(theta), math.sin(theta),
                      i1.promote(3).coeffs, i2.promote(3).coeffs)


def kernel_zeta(j1: SliceUnit, j2: SliceUnit) -> list[tuple[CDElement, CDElement]]:
    """Basis pairs (-J1*c, c) of the joint annihilator of the pair map.

    c runs over an orthonormal basis of ker(J1 - J2), so the list is empty
    exactly when a distinct pair is not a hyper-solution.  (For the
    degenerate call J1 = J2 the kernel is the whole space.)
    """
    ker = kernel_of_left_mult(j1.s - j2.s)
    pairs = []
    for row in ker.basis:
        c = CDElement(row)
        pairs.append((-cd_mul(j1.s, c), c))
    return pairs


def find_companion(i: SliceUnit, c: CDElement) -> SliceUnit | None:
    """A slice unit K != I on a common kernel curve with I and c in ker(I - K).

    Writes c = d1 + d2*e8 and rebuilds the curve data from it: kernel
    elements of (I - K) have d2 = (i1 i2) d1, which pins kappa =
    -jmath*(d2*d1^(-1)) and with it the frame and the companion K at
    theta + pi/2.  All structural checks (equal nonzero imaginary halves,
    kappa a unit orthogonal to jmath) return None on failure, as does the
    final acceptance test |(I - K)c| < 1e-8|c|.

    Raises ValueError on c = 0; returns None for I = +-e8 (no curve there).
    """
    nc = c.norm()
    if nc == 0.0:
        raise ValueError("companion search needs a nonzero candidate vector")
    if i.sin_alpha < _DEGENERATE:
        return None
    v = c.promote(MAX_LEVEL).coeffs
    d1 = CDElement(v[:8])
    d2 = CDElement(v[8:])
    n1, n2 = d1.norm(), d2.norm()
    if n1 <= 1e-12 * nc or n2 <= 1e-12 * nc:
        return None
    if abs(n1 - n2) > 1e-8 * max(n1, n2):
        return None
    if abs(d1.real) > 1e-8 * n1 or abs(d2.real) > 1e-8 * n2:
        return None
    d1_inv = d1.conjugate() / (n1 * n1)
    kappa = -cd_mul(i.jmath.promote(3), cd_mul(d2, d1_inv))
    kv = kappa.coeffs
    if abs(np.linalg.norm(kv) - 1.0) > 1e-8 or abs(kv[0]) > 1e-8:
        return None
    jv = i.jmath.promote(3).coeffs
    if abs(float(np.dot(kv, jv))) > 1e-8:
        return None
    # frame with kappa(theta_I) = jmath, then rotate a quarter turn (mod pi).
    v1 = i.cos_theta * jv - i.sin_theta * kv
    v2 = i.sin_theta * jv + i.cos_theta * kv
    if i.theta + math.pi / 2 < math.pi:
        cos_k, sin_k = -i.sin_theta, i.cos_theta
    else:
        cos_k, sin_k = i.sin_theta, -i.cos_theta
    try:
        k = _psi_parts(i.cos_alpha, i.sin_alpha, cos_k, sin_k, v1, v2)
    except ValueError:
        return None
    resid = np.linalg.norm(left_mult_matrix(i.s - k.s) @ v)
    if resid >= 1e-8 * nc:
        return None
    return k


# ---------------------------------------------------------------------------
# random sampling
# ---------------------------------------------------------------------------


def _random_frame(rng: np.random.Generator) -> tuple[NDArray, NDArray]:
    while True:
        a = rng.normal(size=7)
        b = rng.normal(size=7)
        na = np.linalg.norm(a)
        if na < 1e-6:
            continue
        a = a / na
        b = b - np.dot(a, b) * a
        nb = np.linalg.norm(b)
        if nb < 1e-6:
            continue
        b = b / nb
        return np.concatenate([[0.0], a]), np.concatenate([[0.0], b])


def random_slice_unit(rng) -> SliceUnit:
    """Uniform-angle random slice unit: alpha in [0,pi], theta in [0,pi)."""
    rng = np.random.default_rng(rng)
    alpha = rng.uniform(0.0, math.pi)
    theta = rng.uniform(0.0, math.pi)
    v1, v2 = _random_frame(rng)
    return _psi_parts(math.cos(alpha), math.sin(alpha),
                      math.cos(theta), math.sin(theta), v1, v2)


def random_hyper_pair(rng) -> tuple[SliceUnit, SliceUnit]:
    """Random hyper-solution pair: shared (alpha, frame), distinct thetas.

    Degenerate draws (sin(alpha) or sin(theta1 - theta2) below 1e-3) are
    resampled so the pair is numerically workable for frame recovery.
    """
    rng = np.random.default_rng(rng)
    while True:
        alpha = rng.uniform(0.0, math.pi)
        if math.sin(alpha) >= 1e-3:
            break
    v1, v2 = _random_frame(rng)
    t1 = rng.uniform(0.0, math.pi)
    while True:
        t2 = rng.uniform(0.0, math.pi)
        if abs(math.sin(t1 - t2)) >= 1e-3:
            break
    cos_a, sin_a = math.cos(alpha), math.sin(alpha)
    j1 = _psi_parts(cos_a, sin_a, math.cos(t1), math.sin(t1), v1, v2)
    j2 = _psi_parts(cos_a, sin_a, math.cos(t2), math.sin(t2), v1, v2)
    return j1, j2


# ---------------------------------------------------------------------------
# points of the upper half-space W
# ---------------------------------------------------------------------------


class WPoint:
    """A point q = re + im*axis with im >= 0; real points sit on the base slice I0."""

    __slots__ = ("value", "re", "im", "axis", "is_real")

    def __init__(self, value: CDElement, re: float, im: float,
                 axis: SliceUnit, is_real: bool):
        for name, val in (("value", value), ("re", re), ("im", im),
                          ("axis", axis), ("is_real", is_real)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("WPoint is immutable")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @property
    def key(self) -> tuple:
        return (self.re, self.im, self.axis.key)

    def __eq__(self, other):
        if not isinstance(other, WPoint):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"WPoint({str(self.value)!r}, z={self.z})"


def wpoint(value: CDElement | str, tol: float = _EQ_TOL) -> WPoint:
    """Wrap a sedenion as a point of W; raises when it lies on no slice.

    The imaginary part must be a positive multiple of a slice unit (or zero,
    giving a real point on the base slice I0).
    """
    value = parse_any(value).promote(MAX_LEVEL)
    v = value.coeffs
    re = float(v[0])
    imvec = v.copy()
    imvec[0] = 0.0
    im = float(np.linalg.norm(imvec))
    if im <= tol * max(1.0, abs(re)):
        return WPoint(value=value, re=re, im=0.0, axis=I0, is_real=True)
    axis = SliceUnit(CDElement(imvec / im))
    return WPoint(value=value, re=re, im=im, axis=axis, is_real=False)


def wpoint_from(re: float, im: float, axis: SliceUnit) -> WPoint:
    """Point re + im*axis; a negative im flips the axis to keep im >= 0."""
    if im < 0.0:
        return wpoint_from(re, -im, -axis)
    if im == 0.0:
        value = CDElement(re * np.eye(DIM)[0])
        return WPoint(value=value, re=re, im=0.0, axis=I0, is_real=True)
    value = CDElement(re * np.eye(DIM)[0] + im * axis.s.coeffs)
    return WPoint(value=value, re=re, im=im, axis=axis, is_real=False)
