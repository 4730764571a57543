"""Zero-divisor structure of the sedenions.

Sedenions are the first Cayley-Dickson level with zero divisors.  Writing a
sedenion as p = u + v*e8 with octonion halves u, v, the nonzero left zero
divisors are exactly the p with u, v imaginary, |u| = |v| != 0 and u _|_ v
(up to scale), and (u + v*e8)(c + d*e8) = 0 holds iff u, v, c are nonzero,
|u| = |v|, d = u(vc)/(|u||v|), and the normalized {u, v, c} form a special
triple: unit octonions with (u v) c = -u (v c).

This module detects zero divisors, computes null spaces of left
multiplication, and provides the orthogonal decompositions built on them:

    S = O_p  (+)  ker p  (+)  ker p^c8        (dims 8 + 4 + 4)

where p^c8 := u - v*e8 and O_p = H_p + H_p*e8 with H_p the quaternion algebra
spanned by 1, u, v, uv, plus the slice-pair projections d_eq / d_perp /
d_neg_eq / d_pm used by the series module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from .algebra import (
    CDElement,
    DIM,
    MAX_LEVEL,
    cd_mul,
    left_mult_matrix,
)

if TYPE_CHECKING:
    from .slices import WPoint

__all__ = [
    "Subspace",
    "OrthoDecomposition",
    "PQProjection",
    "ZeroProductCertificate",
    "kernel_of_left_mult",
    "is_zero_divisor",
    "is_special_triple",
    "zero_product_characterization",
    "c8_conjugate",
    "o_left",
    "o_right",
    "ortho_decompose",
    "pq_project",
    "principal_angles",
]

_KERNEL_SV_CUTOFF = 1e-9


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of the 16-dimensional coefficient space.

    `basis` is a (dim, 16) array with orthonormal rows; `dim` may be zero.
    """

    basis: NDArray[np.float64]

    def __post_init__(self):
        b = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if b.size == 0:
            b = np.zeros((0, DIM))
        if b.shape[1] != DIM:
            raise ValueError(f"basis vectors must have length {DIM}")
        gram = b @ b.T
        if gram.size and np.max(np.abs(gram - np.eye(b.shape[0]))) > 1e-10:
            raise ValueError("basis is not orthonormal within 1e-10")
        b.flags.writeable = False
        object.__setattr__(self, "basis", b)

    @classmethod
    def from_span(cls, vectors: Iterable, tol: float = 1e-12) -> "Subspace":
        """Orthonormalize a spanning set (rows, CDElements, or mixtures)."""
        rows = []
        for v in vectors:
            if isinstance(v, CDElement):
                v = v.promote(MAX_LEVEL).coeffs
            rows.append(np.asarray(v, dtype=float))
        if not rows:
            return cls(np.zeros((0, DIM)))
        m = np.vstack(rows)
        u, s, vh = np.linalg.svd(m, full_matrices=False)
        rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
        return cls(vh[:rank])

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def projector(self) -> NDArray[np.float64]:
        return self.basis.T @ self.basis

    def project(self, x) -> CDElement:
        v = x.promote(MAX_LEVEL).coeffs if isinstance(x, CDElement) else np.asarray(x, float)
        if self.dim == 0:
            return CDElement(np.zeros(DIM))
        return CDElement(self.basis.T @ (self.basis @ v))

    def distance(self, x) -> float:
        v = x.promote(MAX_LEVEL).coeffs if isinstance(x, CDElement) else np.asarray(x, float)
        return float(np.linalg.norm(v - self.project(v).coeffs))

    def contains(self, x, tol: float = 1e-9) -> bool:
        v = x.promote(MAX_LEVEL).coeffs if isinstance(x, CDElement) else np.asarray(x, float)
        return self.distance(v) <= tol * max(1.0, float(np.linalg.norm(v)))

    def complement(self) -> "Subspace":
        if self.dim == 0:
            return Subspace(np.eye(DIM))
        u, s, vh = np.linalg.svd(self.basis, full_matrices=True)
        return Subspace(vh[self.dim:])

    def vectors(self) -> list[CDElement]:
        return [CDElement(row) for row in self.basis]

    def to_json(self) -> list[list[float]]:
        return [[float(v) for v in row] for row in self.basis]


def principal_angles(a: Subspace, b: Subspace) -> NDArray[np.float64]:
    """Principal angles between two subspaces, in radians, ascending.

    Computed from sines (singular values of the smaller basis projected off
    the larger space), which stays accurate near zero where the cosine route
    loses half the digits.  Dimension mismatch contributes pi/2 angles.
    """
    small, large = (a, b) if a.dim <= b.dim else (b, a)
    if small.dim == 0:
        return np.zeros(0)
    resid = small.basis - (small.basis @ large.basis.T) @ large.basis
    sines = np.clip(np.linalg.svd(resid, compute_uv=False), 0.0, 1.0)
    angles = np.sort(np.arcsin(sines))
    extra = abs(a.dim - b.dim)
    if extra:
        angles = np.concatenate([angles, np.full(extra, np.pi / 2)])
    return angles


# ---------------------------------------------------------------------------
# kernels and zero divisors
# ---------------------------------------------------------------------------


def kernel_of_left_mult(s: CDElement) -> Subspace:
    """Orthonormal basis of {x : s*x = 0}.

    Uses an SVD with relative cutoff 1e-9 on the singular values; s = 0
    returns the full 16-dimensional space.
    """
    m = left_mult_matrix(s)
    u, sv, vh = np.linalg.svd(m)
    if sv[0] == 0.0:
        return Subspace(np.eye(DIM))
    null_rows = vh[sv <= _KERNEL_SV_CUTOFF * sv[0]]
    return Subspace(null_rows)


def is_zero_divisor(s: CDElement) -> bool:
    """True iff s is nonzero and annihilates some nonzero element on the left."""
    if s.is_zero():
        return False
    return kernel_of_left_mult(s).dim > 0


def is_special_triple(i: CDElement, j: CDElement, k: CDElement,
                      tol: float = 1e-9) -> bool:
    """True iff i, j, k are unit octonions with (ij)k = -i(jk) within tol."""
    for x in (i, j, k):
        if x.level > 3:
            raise ValueError("special triples live in the octonions (level <= 3)")
        if abs(x.norm() - 1.0) > tol:
            return False
    i, j, k = (x.promote(3) for x in (i, j, k))
    assoc = cd_mul(cd_mul(i, j), k) + cd_mul(i, cd_mul(j, k))
    return assoc.norm() <= tol


# ---------------------------------------------------------------------------
# zero-product characterization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroProductCertificate:
    """Evidence trail for a (u + v*e8)(c + d*e8) = 0 query.

    `d_formula` is u(vc)/(|u||v|), the only candidate that can close a zero
    product (None when some of u, v, c vanish and the formula is undefined).
    `product_norm` is |direct product| with the d actually tested.
    """

    product_is_zero: bool
    norms_match: bool
    triple_special: bool
    d_matches_formula: bool
    d_formula: CDElement | None
    product_norm: float


def _halves(p: CDElement) -> tuple[CDElement, CDElement]:
    c = p.promote(MAX_LEVEL).coeffs
    return CDElement(c[:8]), CDElement(c[8:])


def _join(u: CDElement, v: CDElement) -> CDElement:
    return CDElement(np.concatenate([u.promote(3).coeffs, v.promote(3).coeffs]))


def zero_product_characterization(
    a: CDElement,
    b: CDElement,
    c: CDElement,
    d: CDElement | None = None,
    tol: float = 1e-9,
) -> tuple[bool, ZeroProductCertificate]:
    """Decide whether (a + b*e8)(c + d*e8) = 0, with a checkable certificate.

    With d omitted, the unique candidate d = a(bc)/(|a||b|) is built from the
    characterization and tested.  The characterization verdict (norms match,
    normalized {a, b, c} special, d on formula) is always cross-checked
    against the direct product; a disagreement raises instead of picking a
    side silently.

    Raises ValueError when a + b*e8 = 0 or c + d*e8 = 0 (with d as tested).
    """
    a, b, c = (x.promote(3) for x in (a, b, c))
    if d is not None:
        d = d.promote(3)
    na, nb, nc = a.norm(), b.norm(), c.norm()
    if na == 0.0 and nb == 0.0:
        raise ValueError("left factor a+b*e8 is zero")

    scale = max(na, nb, nc, d.norm() if d is not None else 0.0, 1.0)

    d_formula: CDElement | None = None
    if min(na, nb, nc) > 0.0:
        d_formula = cd_mul(a, cd_mul(b, c)) / (na * nb)

    norms_match = abs(na - nb) <= tol * scale and min(na, nb, nc) > tol * scale
    triple_special = False
    if norms_match:
        triple_special = is_special_triple(a / na, b / nb, c / nc, tol=tol)

    if d is None:
        d_test = d_formula if d_formula is not None else CDElement(np.zeros(8))
        d_matches = d_formula is not None
    else:
        d_test = d
        d_matches = d_formula is not None and (d - d_formula).norm() <= tol * scale

    if c.norm() == 0.0 and d_test.norm() == 0.0:
        raise ValueError("right factor c+d*e8 is zero")

    product = cd_mul(_join(a, b), _join(c, d_test))
    product_is_zero = product.norm() <= tol * scale

    predicted = norms_match and triple_special and d_matches
    if predicted != product_is_zero:
        raise ArithmeticError(
            "zero-product characterization disagrees with the direct product "
            f"(predicted {predicted}, product norm {product.norm():.3e})")

    cert = ZeroProductCertificate(
        product_is_zero=product_is_zero,
        norms_match=norms_match,
        triple_special=triple_special,
        d_matches_formula=d_matches,
        d_formula=d_formula,
        product_norm=product.norm(),
    )
    return product_is_zero, cert


# ---------------------------------------------------------------------------
# conjugation fixing the octonion part, and the 8+4+4 decomposition
# ---------------------------------------------------------------------------


def o_left(p: CDElement) -> CDElement:
    """Octonion half u of p = u + v*e8."""
    return _halves(p)[0]


def o_right(p: CDElement) -> CDElement:
    """Octonion half v of p = u + v*e8."""
    return _halves(p)[1]


def c8_conjugate(p: CDElement) -> CDElement:
    """u + v*e8 -> u - v*e8 (fixes the octonion block, negates its complement)."""
    c = p.promote(MAX_LEVEL).coeffs.copy()
    c[8:] = -c[8:]
    return CDElement(c)


@dataclass(frozen=True)
class OrthoDecomposition:
    """x = o_part + ker_part + kerc_part, pairwise orthogonal."""

    o_part: CDElement
    ker_part: CDElement
    kerc_part: CDElement

    @property
    def parts(self) -> tuple[CDElement, CDElement, CDElement]:
        return (self.o_part, self.ker_part, self.kerc_part)


def quaternion_algebra_of(p: CDElement) -> Subspace:
    """H_p = span(1, u, v, uv) for a zero divisor p = u + v*e8."""
    u, v = _halves(p)
    return Subspace.from_span([
        CDElement(np.eye(8)[0]),
        u,
        v,
        cd_mul(u.promote(3), v.promote(3)),
    ])


def ortho_decompose(x: CDElement, p: CDElement) -> OrthoDecomposition:
    """Split x along S = O_p (+) ker p (+) ker p^c8 for a zero divisor p.

    O_p = H_p + H_p*e8 where H_p = span(1, u, v, uv).  Raises ValueError when
    p is not a nonzero zero divisor (the sum is orthogonal only then).
    """
    if not is_zero_divisor(p):
        raise ValueError("decomposition requires a nonzero zero divisor")
    h = quaternion_algebra_of(p)
    # H_p basis rows live in the first octonion block; shift copies into the
    # second block to span O_p = H_p + H_p*e8.
    o_rows = list(h.basis) + [np.concatenate([np.zeros(8), row[:8]]) for row in h.basis]
    o_space = Subspace.from_span(o_rows)
    ker = kernel_of_left_mult(p)
    kerc = kernel_of_left_mult(c8_conjugate(p))
    return OrthoDecomposition(
        o_part=o_space.project(x),
        ker_part=ker.project(x),
        kerc_part=kerc.project(x),
    )


# ---------------------------------------------------------------------------
# slice-pair projections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PQProjection:
    """Components of d relative to a pair of points p, q.

    eq_part lies in ker(I_p - I_q) (terms a power series keeps when moving
    from the p-slice to the q-slice), perp_part is its orthocomplement part,
    neg_eq_part lies in ker(I_p + I_q), and pm_part is the remainder
    d - eq_part - neg_eq_part.
    """

    eq_part: CDElement
    perp_part: CDElement
    neg_eq_part: CDElement
    pm_part: CDElement


def pq_project(d: CDElement, p: "WPoint", q: "WPoint") -> PQProjection:
    """Project d onto the kernel decomposition attached to the points p, q.

    With p or q real there is no slice mismatch: eq_part = neg_eq_part = 0
    and perp_part = pm_part = d.  Otherwise eq_part / neg_eq_part are the
    orthogonal projections onto ker(I_p - I_q) / ker(I_p + I_q).
    """
    d16 = d.promote(MAX_LEVEL)
    if p.is_real or q.is_real:
        z = CDElement(np.zeros(DIM))
        return PQProjection(eq_part=z, perp_part=d16, neg_eq_part=z, pm_part=d16)
    ip = p.axis.s
    iq = q.axis.s
    eq = kernel_of_left_mult(ip - iq).project(d16)
    neg = kernel_of_left_mult(ip + iq).project(d16)
    return PQProjection(
        eq_part=eq,
        perp_part=d16 - eq,
        neg_eq_part=neg,
        pm_part=d16 - eq - neg,
    )
