"""Star-power series around a point p of W: radii, domains, evaluation.

A series sum_l (q - p)^{*l} a_l with sedenion coefficients a_l has two
convergence radii.  The slice radius

    R_a = 1 / limsup |a_l|^(1/l)

governs convergence on the center slice, and for every slice unit J the
directional radius

    R_a^{p,J} = 1 / limsup dist(a_l, ker(I_p - J))^(1/l)   (R_a if p real or J = I_p)

governs the reflected disk on the J slice; the supremum R_a^p over companion
slice units K takes at most two values {R_a, R_a^p}, realized (when larger
than R_a) on one kernel curve through I_p.  The convergence domain is

    p real:          the Euclidean ball B*(p, R_a)
    R_a^p = R_a:     the sigma-ball of radius R_a^p
    otherwise:       hyper-sigma-ball(p, R_a, (I_p, K))  intersect  sigma-ball(p, R_a^p)

which on each slice C_J (upper half-plane, Im >= 0 orientation) is the
intersection of the disk |z_q - z_p| < R_a with the reflected disk
|z_q - conj(z_p)| < R_a^{p,J}.  Membership, evaluation, and a grid scan
pairing predicted membership with empirical convergence all live here.

Coefficient sequences are structured (geometric sums, lacunary series, or
finite tables) so the limsup radii are exact for the first two families;
table radii are windowed estimates and explicitly flagged approximate.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from .algebra import (
    CDElement,
    DIM,
    MAX_LEVEL,
    cd_mul,
    complex_embed,
    format_element,
    parse_any,
)
from .zerodiv import Subspace, kernel_of_left_mult
from .slices import (
    I0,
    SliceUnit,
    WPoint,
    find_companion,
    HyperSolution,
    cker_membership,
    same_unit,
    wpoint_from,
)

__all__ = [
    "GeometricSum",
    "Lacunary",
    "TableSeq",
    "SeqSpec",
    "Polynomial",
    "Membership",
    "Verdict",
    "DomainCase",
    "DomainReport",
    "EvalReport",
    "ScanRow",
    "ScanResult",
    "star_mul",
    "star_pow_center",
    "eval_poly",
    "radius_Ra",
    "radius_RapJ",
    "radius_Rap",
    "radius_Rap_with_candidates",
    "domain_report",
    "sigma_contains",
    "hyper_sigma_contains",
    "domain_contains",
    "evaluate_series",
    "convergence_scan",
    "seq_from_json",
    "seq_to_json",
    "demo_sequence",
]

_ZERO16 = tuple([0.0] * DIM)


def _coeff_key(c) -> tuple[float, ...]:
    return parse_any(c).key


# ---------------------------------------------------------------------------
# coefficient sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeometricSum:
    """a_l = sum_i c_i * r_i^(-l) for terms (c_i, r_i) with r_i > 0."""

    terms: tuple[tuple[tuple[float, ...], float], ...]

    def __post_init__(self):
        for _, ratio in self.terms:
            if not ratio > 0.0:
                raise ValueError("geometric ratios must be strictly positive")

    @classmethod
    def of(cls, pairs: Iterable[tuple[object, float]]) -> "GeometricSum":
        return cls(tuple((_coeff_key(c), float(r)) for c, r in pairs))

    def term(self, ell: int) -> NDArray[np.float64]:
        out = np.zeros(DIM)
        for coeff, ratio in self.terms:
            out += np.asarray(coeff) * ratio ** (-ell)
        return out


@dataclass(frozen=True)
class Lacunary:
    """a_l = c * r^(-l) when l is a power of two (1, 2, 4, ...), else 0."""

    coeff: tuple[float, ...]
    ratio: float

    def __post_init__(self):
        if not self.ratio > 0.0:
            raise ValueError("lacunary ratio must be strictly positive")

    @classmethod
    def of(cls, coeff, ratio: float) -> "Lacunary":
        return cls(_coeff_key(coeff), float(ratio))

    def term(self, ell: int) -> NDArray[np.float64]:
        if ell >= 1 and (ell & (ell - 1)) == 0:
            return np.asarray(self.coeff) * self.ratio ** (-ell)
        return np.zeros(DIM)


@dataclass(frozen=True)
class TableSeq:
    """Finitely many explicit coefficients a_0..a_{n-1}; zero beyond.

    Radii for tables are windowed limsup estimates, flagged approximate in
    every report built from them.
    """

    values: tuple[tuple[float, ...], ...]

    @classmethod
    def of(cls, values: Iterable) -> "TableSeq":
        return cls(tuple(_coeff_key(v) for v in values))

    def term(self, ell: int) -> NDArray[np.float64]:
        if 0 <= ell < len(self.values):
            return np.asarray(self.values[ell])
        return np.zeros(DIM)


SeqSpec = GeometricSum | Lacunary | TableSeq


def is_approximate(a: SeqSpec) -> bool:
    return isinstance(a, TableSeq)


def demo_sequence() -> GeometricSum:
    """The bundled two-ratio example: a_l = 1/3^l + (e4+e15)/2^l."""
    return GeometricSum.of([("1", 3.0), ("e4+e15", 2.0)])


def seq_from_json(data) -> SeqSpec:
    """Parse `{"kind": "geometric"|"lacunary"|"table", ...}` (dict or JSON text)."""
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    if kind == "geometric":
        return GeometricSum.of((t["coeff"], t["ratio"]) for t in data["terms"])
    if kind == "lacunary":
        return Lacunary.of(data["coeff"], data["ratio"])
    if kind == "table":
        return TableSeq.of(data["values"])
    raise ValueError(f"unknown sequence kind: {kind!r}")


def seq_to_json(a: SeqSpec) -> dict:
    if isinstance(a, GeometricSum):
        return {"kind": "geometric",
                "terms": [{"coeff": list(c), "ratio": r} for c, r in a.terms]}
    if isinstance(a, Lacunary):
        return {"kind": "lacunary", "coeff": list(a.coeff), "ratio": a.ratio}
    if isinstance(a, TableSeq):
        return {"kind": "table", "values": [list(v) for v in a.values]}
    raise TypeError(f"not a sequence spec: {type(a).__name__}")


def _ratio_groups(a: GeometricSum | Lacunary) -> list[tuple[float, NDArray[np.float64]]]:
    """Distinct ratios with their exactly-summed coefficients, zero sums dropped.

    Terms sharing a ratio cancel as one coefficient; a pair (c, r), (-c, r)
    contributes nothing to any a_l and must not shrink a radius.
    """
    if isinstance(a, Lacunary):
        pairs = [(a.ratio, np.asarray(a.coeff))]
    else:
        sums: dict[float, NDArray[np.float64]] = {}
        for coeff, ratio in a.terms:
            cur = sums.setdefault(ratio, np.zeros(DIM))
            cur += np.asarray(coeff)
        pairs = sorted(sums.items())
    return [(r, c) for r, c in pairs if np.any(c != 0.0)]


# ---------------------------------------------------------------------------
# star polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in q with sedenion coefficients on the right of the powers.

    Trailing zero coefficients are trimmed at construction; the zero
    polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple[CDElement, ...]

    def __post_init__(self):
        cs = [c.promote(MAX_LEVEL) for c in self.coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, coeffs: Iterable) -> "Polynomial":
        return cls(tuple(parse_any(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " | ".join(f"q^{i}: {format_element(c)}"
                          for i, c in enumerate(self.coeffs))


def star_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Cauchy product: coefficient n is sum_k p_k * q_{n-k} (sedenion products)."""
    if not p.coeffs or not q.coeffs:
        return Polynomial(())
    out = [CDElement(np.zeros(DIM)) for _ in range(len(p.coeffs) + len(q.coeffs) - 1)]
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            out[i + j] = out[i + j] + cd_mul(a, b)
    return Polynomial(tuple(out))


def _center_power(p: WPoint, j: int) -> CDElement:
    """(-p)^j taken inside the commutative plane through p."""
    zj = (-p.z) ** j
    return complex_embed(zj, p.axis.s if not p.is_real else I0.s)


def star_pow_center(p: WPoint, ell: int) -> Polynomial:
    """(q - p)^{*ell} expanded in powers of q.

    Uses the binomial expansion with exact integer binomials; once a binomial
    would leave the exact 64-bit range (ell >= 67) it falls back to repeated
    star multiplication by the linear factor.
    """
    if ell < 0:
        raise ValueError("star power wants a nonnegative exponent")
    if ell >= 67:
        linear = Polynomial.of([-p.value, "1"])
        acc = Polynomial.of(["1"])
        for _ in range(ell):
            acc = star_mul(acc, linear)
        return acc
    coeffs = []
    for m in range(ell + 1):
        j = ell - m
        coeffs.append(float(math.comb(ell, j)) * _center_power(p, j))
    return Polynomial(tuple(coeffs))


def eval_poly(poly: Polynomial, q: WPoint) -> CDElement:
    """sum_i q^i * c_i with q^i computed in the commutative plane through q."""
    axis = q.axis.s if not q.is_real else I0.s
    acc = CDElement(np.zeros(DIM))
    w = 1.0 + 0.0j
    for c in poly.coeffs:
        acc = acc + cd_mul(complex_embed(w, axis), c)
        w *= q.z
    return acc


# ---------------------------------------------------------------------------
# radii
# ---------------------------------------------------------------------------

_PERP_THRESHOLD = 1e-10


def radius_Ra(a: SeqSpec) -> float:
    """Slice radius 1 / limsup |a_l|^(1/l); +inf for the zero sequence."""
    if isinstance(a, (GeometricSum, Lacunary)):
        groups = _ratio_groups(a)
        return min((r for r, _ in groups), default=math.inf)
    return _table_radius(a, lambda v: float(np.linalg.norm(v)))


def _table_radius(a: TableSeq, size) -> float:
    n = len(a.values)
    if n <= 1:
        return math.inf
    window = range(max(1, n - max(1, n // 2)), n)
    est = 0.0
    for ell in window:
        mag = size(np.asarray(a.values[ell]))
        if mag > 0.0:
            est = max(est, mag ** (1.0 / ell))
    return math.inf if est == 0.0 else 1.0 / est


def _perp_size(vec: NDArray[np.float64], ker: Subspace) -> float:
    return float(np.linalg.norm(vec - ker.project(vec).coeffs))


def radius_RapJ(a: SeqSpec, p: WPoint, j: SliceUnit) -> float:
    """Directional radius 1 / limsup dist(a_l, ker(I_p - J))^(1/l).

    Equals R_a when p is real or J is the center axis; otherwise only the
    coefficient components perpendicular to ker(I_p - J) count, so it can
    only be larger (+inf when every coefficient sits inside the kernel).
    """
    if p.is_real or same_unit(j, p.axis):
        return radius_Ra(a)
    ker = kernel_of_left_mult(p.axis.s - j.s)
    if isinstance(a, (GeometricSum, Lacunary)):
        best = math.inf
        for ratio, coeff in _ratio_groups(a):
            if _perp_size(coeff, ker) > _PERP_THRESHOLD * np.linalg.norm(coeff):
                best = min(best, ratio)
        return best
    return _table_radius(a, lambda v: _perp_size(v, ker))


_rapj_cache: dict[tuple, float] = {}


def _radius_RapJ_cached(a: SeqSpec, p: WPoint, j: SliceUnit) -> float:
    key = (a, p.key, j.key)
    hit = _rapj_cache.get(key)
    if hit is None:
        hit = _rapj_cache[key] = radius_RapJ(a, p, j)
    return hit


def radius_Rap(a: SeqSpec, p: WPoint) -> tuple[float, SliceUnit | None]:
    """The supremum radius R_a^p over companion slice units, with a witness.

    The value set {R_a^{p,K}} has at most two elements {R_a, R_a^p}, and a
    strictly larger value requires the slowest-decaying coefficient to lie in
    ker(I_p - K); that kernel determines K up to curve membership, so one
    find_companion call on that coefficient realizes the supremum.  The
    witness is returned only when it beats R_a.  Table sequences scan
    companion candidates derived from every tabulated coefficient (callers
    may add candidates via `extra_candidates`) and stay estimates.
    """
    return _radius_Rap_impl(a, p, ())


def radius_Rap_with_candidates(a: SeqSpec, p: WPoint,
                               extra_candidates: Sequence[SliceUnit]) -> tuple[float, SliceUnit | None]:
    return _radius_Rap_impl(a, p, tuple(extra_candidates))


def _radius_Rap_impl(a: SeqSpec, p: WPoint,
                     extra: tuple[SliceUnit, ...]) -> tuple[float, SliceUnit | None]:
    ra = radius_Ra(a)
    if p.is_real:
        return ra, None
    candidates: list[SliceUnit] = list(extra)
    if isinstance(a, (GeometricSum, Lacunary)):
        groups = _ratio_groups(a)
        if not groups:
            return ra, None
        c1 = CDElement(groups[0][1])
        k = find_companion(p.axis, c1)
        if k is not None:
            candidates.append(k)
    else:
        for v in a.values:
            vec = np.asarray(v)
            if np.any(vec != 0.0):
                k = find_companion(p.axis, CDElement(vec))
                if k is not None:
                    candidates.append(k)
    best, witness = ra, None
    for k in candidates:
        val = radius_RapJ(a, p, k)
        if val > best:
            best, witness = val, k
    return best, witness


# ---------------------------------------------------------------------------
# domain reports and membership
# ---------------------------------------------------------------------------


class DomainCase(Enum):
    REAL_CENTER = "RealCenter"
    SIGMA_BALL_ONLY = "SigmaBallOnly"
    HYPER_INTERSECTION = "HyperIntersection"


class Membership(Enum):
    INTERIOR = "Interior"
    EXTERIOR = "Exterior"
    BOUNDARY = "Boundary"


class Verdict(Enum):
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class DomainReport:
    """Radii and shape of the convergence domain around p.

    `witness` is a slice unit realizing r_ap on its kernel curve; present
    exactly when the domain is a proper hyper-intersection (r_ap > r_a with
    a non-real center).  `approximate` marks table-sequence estimates.
    """

    r_a: float
    r_ap: float
    witness: SliceUnit | None
    case: DomainCase
    approximate: bool = False


_report_cache: dict[tuple, DomainReport] = {}


def domain_report(p: WPoint, a: SeqSpec) -> DomainReport:
    key = (a, p.key)
    hit = _report_cache.get(key)
    if hit is not None:
        return hit
    ra = radius_Ra(a)
    rap, witness = radius_Rap(a, p)
    if p.is_real:
        case = DomainCase.REAL_CENTER
        witness = None
    elif witness is None or rap <= ra:
        case = DomainCase.SIGMA_BALL_ONLY
        witness = None
        rap = max(rap, ra)
    else:
        case = DomainCase.HYPER_INTERSECTION
    report = DomainReport(r_a=ra, r_ap=rap, witness=witness, case=case,
                          approximate=is_approximate(a))
    _report_cache[key] = report
    return report


def _disk_state(dist: float, radius: float, band: float) -> int:
    """-1 inside with margin, +1 outside with margin, 0 within the band.

    A zero distance is a center hit and counts as inside for every radius
    (punctured-ball convention: the center always belongs).
    """
    if dist == 0.0:
        return -1
    if dist > radius + band:
        return 1
    if dist < radius - band:
        return -1
    return 0


def _classify(states: Iterable[int]) -> Membership:
    states = list(states)
    if any(s > 0 for s in states):
        return Membership.EXTERIOR
    if all(s < 0 for s in states):
        return Membership.INTERIOR
    return Membership.BOUNDARY


def sigma_contains(q: WPoint, p: WPoint, r: float) -> bool:
    """Membership of q in the sigma-ball of radius r around p.

    Slice-wise: on the center slice (same oriented axis, or a real q or p)
    the single disk |z_q - z_p| < r decides; any other slice needs both the
    direct and the reflected disk.  Centers always belong (r = 0 included).
    """
    band = 0.0
    zq, zp = q.z, p.z
    if q.is_real or p.is_real or same_unit(q.axis, p.axis):
        return _disk_state(abs(zq - zp), r, band) < 0
    s1 = _disk_state(abs(zq - zp), r, band)
    s2 = _disk_state(abs(zq - zp.conjugate()), r, band)
    return s1 < 0 and s2 < 0


def hyper_sigma_contains(q: WPoint, p: WPoint, r: float, j: HyperSolution) -> bool:
    """Membership of q in the hyper-sigma-ball of radius r for the pair J.

    The center must sit on the slice of J.j1.  On slices whose (oriented)
    axis lies on the kernel curve of J the reflected disk is waived; all
    other slices behave as in the plain sigma-ball.
    """
    if not p.is_real and not same_unit(p.axis, j.j1):
        raise ValueError("hyper-sigma-ball center must lie on the slice of j1")
    if p.is_real and not same_unit(I0, j.j1):
        raise ValueError("hyper-sigma-ball center must lie on the slice of j1")
    zq, zp = q.z, p.z
    if q.is_real or p.is_real or same_unit(q.axis, p.axis):
        return _disk_state(abs(zq - zp), r, 0.0) < 0
    if cker_membership(q.axis, j.j1, j.j2):
        return _disk_state(abs(zq - zp), r, 0.0) < 0
    s1 = _disk_state(abs(zq - zp), r, 0.0)
    s2 = _disk_state(abs(zq - zp.conjugate()), r, 0.0)
    return s1 < 0 and s2 < 0


def domain_contains(q: WPoint, p: WPoint, a: SeqSpec,
                    band: float = 1e-9) -> Membership:
    """Classify q against the convergence domain of the series around p.

    Interior / Exterior are strict calls with margin `band`; anything within
    the band of a radius equality is Boundary (the series behavior there is
    not decided by the radii).  On the center plane (either half) only the
    R_a disk applies; elsewhere the R_a disk and the reflected disk of the
    directional radius R_a^{p,I_q} must both pass.
    """
    rep = domain_report(p, a)
    if q.key == p.key:
        return Membership.INTERIOR if rep.r_a > 0.0 else Membership.BOUNDARY
    on_center_plane = (
        q.is_real or p.is_real or same_unit(q.axis, p.axis)
        or float(np.max(np.abs(q.axis.s.coeffs + p.axis.s.coeffs))) <= 1e-9)
    if on_center_plane:
        dist = float(np.linalg.norm(q.value.coeffs - p.value.coeffs))
        return _classify([_disk_state(dist, rep.r_a, band)])
    zq, zp = q.z, p.z
    s1 = _disk_state(abs(zq - zp), rep.r_a, band)
    rj = _radius_RapJ_cached(a, p, q.axis)
    s2 = _disk_state(abs(zq - zp.conjugate()), rj, band)
    return _classify([s1, s2])


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvalReport:
    """Partial sum with a convergence verdict.

    `tail_norm` is the largest term norm inside the final 50-term window
    (0.0 when fewer terms were computed), the quantity the Converged
    criterion compares against tol.
    """

    partial_sum: CDElement
    terms_used: int
    verdict: Verdict
    tail_norm: float


_WINDOW = 50
_BLOWUP = 1e6


def _effective_axes(q: WPoint, p: WPoint) -> tuple[SliceUnit, SliceUnit]:
    if p.is_real and q.is_real:
        return I0, I0
    if p.is_real:
        return q.axis, q.axis
    if q.is_real:
        return p.axis, p.axis
    return q.axis, p.axis


def _channel_images(op, v0, v1):
    """Images of two coefficient directions under one channel operator.

    None marks a dead direction.  A matrix image below 1e-13 of its input
    is a formal annihilation seen through rounding, not a real component.
    """
    out = []
    for v in (v0, v1):
        if op is None:
            out.append(None)
        elif isinstance(op, str):
            out.append(v if np.any(v) else None)
        else:
            image = op @ v
            small = np.linalg.norm(image) <= 1e-13 * np.linalg.norm(v)
            out.append(None if small else image)
    return out


def _geometric_terms(groups, mp, c_plus, c_minus, step_p, step_m):
    comps = []
    for ratio, coeff in groups:
        v0 = np.asarray(coeff, dtype=float)
        v1 = mp @ v0
        images = (_channel_images(c_plus, v0, v1)
                  + _channel_images(c_minus, v0, v1))
        comps.append((step_p / ratio, step_m / ratio, images))
    zetas = [[1.0 + 0.0j, 1.0 + 0.0j] for _ in comps]
    while True:
        term = np.zeros(DIM)
        for (sp, sm, images), zs in zip(comps, zetas):
            for zeta, re_img, im_img in ((zs[0], images[0], images[1]),
                                         (zs[1], images[2], images[3])):
                if re_img is not None:
                    term += zeta.real * re_img
                if im_img is not None:
                    term += zeta.imag * im_img
            zs[0] *= sp
            zs[1] *= sm
        yield term


def _generic_terms(a, mp, c_plus, c_minus, step_p, step_m):
    zeta_p = 1.0 + 0.0j
    zeta_m = 1.0 + 0.0j
    ell = 0
    while True:
        avec = a.term(ell)
        term = np.zeros(DIM)
        for op, zeta in ((c_plus, zeta_p), (c_minus, zeta_m)):
            if op is None:
                continue
            chan = zeta.real * avec + zeta.imag * (mp @ avec)
            term += chan if isinstance(op, str) else op @ chan
        zeta_p *= step_p
        zeta_m *= step_m
        ell += 1
        yield term


def evaluate_series(q: WPoint, p: WPoint, a: SeqSpec,
                    max_terms: int = 200, tol: float = 1e-8) -> EvalReport:
    """Partial sums of sum_l (q - p)^{*l} a_l with a convergence verdict.

    Each monomial is evaluated through the two-channel operator form

        (q - p)^{*l} a = C_plus (w - z)^l a + C_minus (conj(w) - z)^l a

    with w = z_q, z = z_p, complex powers acting through the center axis,
    and C_pm = (id -+ M_q M_p)/2 built from left-multiplication matrices.
    When the axes are (anti)aligned the operators are snapped to exact
    identity/zero: the dead channel is only zero up to rounding, and a
    1e-16-sized operator times a geometrically growing power would otherwise
    poison the sum.

    Geometric sums get a structured path: each ratio group has a constant
    coefficient direction, so the four channel images (C_pm of the
    coefficient and of its I_p rotation) are computed once per group, and an
    image below 1e-13 of its input is a formally-dead direction seen through
    rounding (every kernel-curve slice produces these) and is dropped, so
    the dust cannot ride a growing complex power.  Other sequences go
    through a generic term loop without that filter.

    Verdicts: Converged once 50 nonzero term norms in a row stay below tol
    (summation stops there; exactly-zero terms neither reset nor advance the
    count, so gap sequences cannot fake a quiet stretch); Diverged when a
    term norm passes 1e6, or when the final window sits above 1 without
    decreasing; else Undetermined.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    a0 = a.term(0)
    if q.key == p.key:
        return EvalReport(partial_sum=CDElement(a0), terms_used=1,
                          verdict=Verdict.CONVERGED, tail_norm=0.0)

    axis_q, axis_p = _effective_axes(q, p)
    mp = axis_p.matrix
    if same_unit(axis_q, axis_p):
        c_plus, c_minus = "id", None
    elif float(np.max(np.abs(axis_q.s.coeffs + axis_p.s.coeffs))) <= 1e-9:
        c_plus, c_minus = None, "id"
    else:
        mq = axis_q.matrix
        prod = mq @ mp
        c_plus = (np.eye(DIM) - prod) / 2.0
        c_minus = (np.eye(DIM) + prod) / 2.0

    w, z = q.z, p.z
    step_p = w - z
    step_m = w.conjugate() - z
    if isinstance(a, GeometricSum):
        terms_iter = _geometric_terms(_ratio_groups(a), mp, c_plus, c_minus,
                                      step_p, step_m)
    else:
        terms_iter = _generic_terms(a, mp, c_plus, c_minus, step_p, step_m)

    total = np.zeros(DIM)
    window: list[float] = []
    verdict = Verdict.UNDETERMINED
    terms = 0
    quiet = 0
    for ell in range(max_terms):
        term = next(terms_iter)
        total += term
        terms = ell + 1
        tn = float(np.linalg.norm(term))
        window.append(tn)
        if len(window) > _WINDOW:
            window.pop(0)
        if not math.isfinite(tn) or tn > _BLOWUP:
            verdict = Verdict.DIVERGED
            break
        if tn >= tol:
            quiet = 0
        elif tn > 0.0:
            quiet += 1
        if quiet >= _WINDOW:
            verdict = Verdict.CONVERGED
            break
    else:
        if window and max(window) < tol:
            verdict = Verdict.CONVERGED
        elif (len(window) == _WINDOW and min(window) > 1.0
              and window[-1] >= window[0]):
            verdict = Verdict.DIVERGED

    return EvalReport(partial_sum=CDElement(total), terms_used=terms,
                      verdict=verdict, tail_norm=max(window) if window else 0.0)


# ---------------------------------------------------------------------------
# convergence scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    theta: float
    re: float
    im: float
    predicted: Membership
    empirical: Verdict
    terms_used: int
    tail_norm: float


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ScanRow, ...]
    scored: int
    agreed: int

    @property
    def agreement(self) -> float:
        return 1.0 if self.scored == 0 else self.agreed / self.scored

    def to_csv(self) -> str:
        lines = ["theta,re,im,predicted,empirical,terms_used,tail_norm"]
        for r in self.rows:
            lines.append(
                f"{r.theta:.12g},{r.re:.12g},{r.im:.12g},{r.predicted.value},"
                f"{r.empirical.value},{r.terms_used},{r.tail_norm:.12g}")
        return "\n".join(lines) + "\n"


def convergence_scan(p: WPoint, a: SeqSpec, slice_unit: SliceUnit,
                     radial_grid: Sequence[float], angular_grid: Sequence[float],
                     max_terms: int = 400, tol: float = 1e-8,
                     band: float = 0.05) -> ScanResult:
    """Empirical-vs-predicted sweep over z = r*exp(i*theta) on one slice.

    Every membership within `band` of a radius equality classifies Boundary
    and is excluded from the agreement count; Interior must pair with
    Converged and Exterior with Diverged to score as agreement.
    """
    if not radial_grid or not angular_grid:
        raise ValueError("scan grids must be nonempty")
    rows = []
    scored = agreed = 0
    for theta in angular_grid:
        for r in radial_grid:
            zz = r * cmath.exp(1j * theta)
            im = abs(zz.imag) if abs(zz.imag) < 1e-15 else zz.imag
            qq = wpoint_from(zz.real, im, slice_unit)
            predicted = domain_contains(qq, p, a, band=band)
            report = evaluate_series(qq, p, a, max_terms=max_terms, tol=tol)
            rows.append(ScanRow(theta=theta, re=zz.real, im=qq.im,
                                predicted=predicted, empirical=report.verdict,
                                terms_used=report.terms_used,
                                tail_norm=report.tail_norm))
            if predicted is Membership.BOUNDARY:
                continue
            scored += 1
            if predicted is Membership.INTERIOR and report.verdict is Verdict.CONVERGED:
                agreed += 1
            elif predicted is Membership.EXTERIOR and report.verdict is Verdict.DIVERGED:
                agreed += 1
    return ScanResult(rows=tuple(rows), scored=scored, agreed=agreed)
