"""Cayley-Dickson arithmetic up to the sedenions.

Levels 0..4 of the Cayley-Dickson ladder over the reals: R, C, quaternions,
octonions, sedenions.  An element of level n is a vector of 2**n real
coefficients over the basis e0 (the unit), e1, ..., and the product is defined
by the doubling recursion

    (a + b*e) * (c + d*e) = (a*c - conj(d)*b) + (d*a + b*conj(c)) * e

where an element of level n is split into two level n-1 halves (a, b) and e is
the unit adjoined at level n, together with conj(a + b*e) = conj(a) - b*e.
The recursion fixes the basis labelling: e_{m + 2**n} = e_m * e_{2**n}.

The recursion is the ground truth.  For speed, module import builds the
16x16x16 structure tensor (and its restrictions to lower levels) by running
the recursion on integer basis vectors; `cd_mul` then evaluates products with
one einsum.  Running the recursion on Python ints keeps basis products, the
multiplication table, and the small worked examples exact.

Level 3 (octonions) is the last normed division algebra; level 4 (sedenions)
has zero divisors and is where the rest of this package lives.
"""

from __future__ import annotations

import json
import math
import re
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

MAX_LEVEL = 4
DIM = 1 << MAX_LEVEL

__all__ = [
    "MAX_LEVEL",
    "DIM",
    "CDElement",
    "basis",
    "zero",
    "one",
    "cd_mul",
    "cd_mul_recursive",
    "conjugate",
    "inner",
    "norm",
    "multiplication_table",
    "table_csv",
    "verify_table",
    "left_mult_matrix",
    "right_mult_matrix",
    "complex_embed",
    "complex_coords",
    "parse_element",
    "format_element",
    "format_real",
    "mul_batch",
]


# ---------------------------------------------------------------------------
# doubling recursion (exact on ints, works on floats too)
# ---------------------------------------------------------------------------


def _conj_list(a: list) -> list:
    return [a[0]] + [-t for t in a[1:]]


def _mul_list(a: list, b: list) -> list:
    """Doubling product on plain coefficient lists of equal power-of-two length."""
    n = len(a)
    if n == 1:
        return [a[0] * b[0]]
    # Basis products leave most halves zero; skipping them makes exact table
    # generation roughly linear instead of 4**level recursive calls.
    if not any(a):
        return [0 * b[0]] * n
    if not any(b):
        return [0 * a[0]] * n
    h = n // 2
    a1, a2 = a[:h], a[h:]
    b1, b2 = b[:h], b[h:]
    left = _mul_list(a1, b1)
    right = _mul_list(_conj_list(b2), a2)
    out1 = [x - y for x, y in zip(left, right)]
    left = _mul_list(b2, a1)
    right = _mul_list(a2, _conj_list(b1))
    out2 = [x + y for x, y in zip(left, right)]
    return out1 + out2


def _basis_product(m: int, n: int) -> tuple[int, int]:
    """Exact product e_m * e_n at level 4, as (sign, index)."""
    a = [0] * DIM
    b = [0] * DIM
    a[m] = 1
    b[n] = 1
    prod = _mul_list(a, b)
    nonzero = [(k, v) for k, v in enumerate(prod) if v != 0]
    if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
        raise AssertionError(f"basis product e{m}*e{n} is not +-e_k: {prod}")
    k, v = nonzero[0]
    return (1 if v > 0 else -1, k)


def _build_tensor() -> tuple[NDArray[np.float64], list[list[tuple[int, int]]]]:
    """Structure tensor T[m, k, n] with (e_m * e_n)_k = T[m, k, n], plus the
    exact signed-index table it came from."""
    table = [[_basis_product(m, n) for n in range(DIM)] for m in range(DIM)]
    tensor = np.zeros((DIM, DIM, DIM))
    for m in range(DIM):
        for n in range(DIM):
            sign, k = table[m][n]
            tensor[m, k, n] = sign
    return tensor, table

_TENSOR, _TABLE = _build_tensor()


# ---------------------------------------------------------------------------
# element type
# ---------------------------------------------------------------------------


class CDElement:
    """Immutable Cayley-Dickson element: a level and a 2**level coefficient vector.

    Equality is exact coefficient equality at equal level; use `isclose` for
    tolerant comparison.  Arithmetic operators promote mixed levels by
    zero-padding; the module-level `cd_mul` / `inner` are strict about levels,
    matching their contracts.
    """

    __slots__ = ("level", "coeffs")

    def __init__(self, coeffs: Iterable[float], level: int | None = None):
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                         dtype=float)
        if arr.ndim != 1:
            raise ValueError("coefficients must be a flat sequence")
        n = arr.size
        if n == 0 or n & (n - 1):
            raise ValueError(f"coefficient count must be a power of two, got {n}")
        lv = n.bit_length() - 1
        if level is not None:
            if level < lv:
                raise ValueError(f"level {level} too small for {n} coefficients")
            if level > MAX_LEVEL:
                raise ValueError(f"level {level} unsupported (max {MAX_LEVEL})")
            arr = np.concatenate([arr, np.zeros((1 << level) - n)])
            lv = level
        if lv > MAX_LEVEL:
            raise ValueError(f"level {lv} unsupported (max {MAX_LEVEL})")
        arr.flags.writeable = False
        object.__setattr__(self, "level", lv)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("CDElement is immutable")

    # -- construction helpers ------------------------------------------------

    def promote(self, level: int) -> "CDElement":
        if level < self.level:
            raise ValueError("cannot demote without truncation")
        if level == self.level:
            return self
        return CDElement(self.coeffs, level=level)

    @property
    def dim(self) -> int:
        return 1 << self.level

    @property
    def key(self) -> tuple[float, ...]:
        """Hashable coefficient tuple (always padded to the sedenion level)."""
        return tuple(self.promote(MAX_LEVEL).coeffs)

    # -- arithmetic ----------------------------------------------------------

    def _pair(self, other: "CDElement") -> tuple["CDElement", "CDElement"]:
        lv = max(self.level, other.level)
        return self.promote(lv), other.promote(lv)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = CDElement([other]).promote(self.level)
        if not isinstance(other, CDElement):
            return NotImplemented
        a, b = self._pair(other)
        return CDElement(a.coeffs + b.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = CDElement([other]).promote(self.level)
        if not isinstance(other, CDElement):
            return NotImplemented
        a, b = self._pair(other)
        return CDElement(a.coeffs - b.coeffs)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CDElement(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return CDElement(self.coeffs * float(other))
        if not isinstance(other, CDElement):
            return NotImplemented
        a, b = self._pair(other)
        return cd_mul(a, b)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return CDElement(self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return CDElement(self.coeffs / float(other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, CDElement):
            return NotImplemented
        return self.level == other.level and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.level, self.key))

    def isclose(self, other: "CDElement", tol: float = 1e-12) -> bool:
        a, b = self._pair(other)
        return bool(np.max(np.abs(a.coeffs - b.coeffs)) <= tol)

    # -- queries -------------------------------------------------------------

    def conjugate(self) -> "CDElement":
        out = self.coeffs.copy()
        out[1:] = -out[1:]
        return CDElement(out)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    @property
    def real(self) -> float:
        return float(self.coeffs[0])

    def imag_part(self) -> "CDElement":
        out = self.coeffs.copy()
        out[0] = 0.0
        return CDElement(out)

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.coeffs)) <= tol)

    def __repr__(self):
        return f"CDElement({format_element(self)!r}, level={self.level})"

    def __str__(self):
        return format_element(self)


def basis(k: int, level: int | None = None) -> CDElement:
    """Basis element e_k, at the smallest level containing it by default."""
    if k < 0 or k >= DIM:
        raise ValueError(f"basis index out of range: {k}")
    lv = max(1, k.bit_length()) if k else 0
    lv = lv if level is None else level
    if level is not None and k >= (1 << level):
        raise ValueError(f"e{k} does not fit in level {level}")
    out = np.zeros(1 << lv)
    out[k] = 1.0
    return CDElement(out)


def zero(level: int = MAX_LEVEL) -> CDElement:
    return CDElement(np.zeros(1 << level))


def one(level: int = MAX_LEVEL) -> CDElement:
    out = np.zeros(1 << level)
    out[0] = 1.0
    return CDElement(out)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


def cd_mul(a: CDElement, b: CDElement) -> CDElement:
    """Cayley-Dickson product of two elements of the same level.

    Mixed levels are an argument error; callers promote with
    `CDElement.promote` (the `*` operator does this for you).
    """
    if not isinstance(a, CDElement) or not isinstance(b, CDElement):
        raise TypeError("cd_mul expects CDElement operands")
    if a.level != b.level:
        raise ValueError(
            f"level mismatch: {a.level} vs {b.level}; promote the lower one first")
    n = a.dim
    t = _TENSOR[:n, :n, :n]
    return CDElement(np.einsum("m,mkn,n->k", a.coeffs, t, b.coeffs))


def cd_mul_recursive(a: CDElement, b: CDElement) -> CDElement:
    """Product evaluated directly by the doubling recursion (reference path)."""
    if a.level != b.level:
        raise ValueError("level mismatch")
    return CDElement(_mul_list(list(a.coeffs), list(b.coeffs)))


def mul_batch(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Row-wise products of two (N, 2**level) coefficient arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2:
        raise ValueError("expected matching (N, dim) arrays")
    n = a.shape[1]
    if n & (n - 1) or n > DIM:
        raise ValueError(f"bad dimension {n}")
    t = _TENSOR[:n, :n, :n]
    return np.einsum("im,mkn,in->ik", a, t, b, optimize=True)


def conjugate(a: CDElement) -> CDElement:
    return a.conjugate()


def inner(a: CDElement, b: CDElement) -> float:
    """Euclidean inner product of coefficient vectors (equal levels)."""
    if a.level != b.level:
        raise ValueError("level mismatch")
    return float(np.dot(a.coeffs, b.coeffs))


def norm(a: CDElement) -> float:
    return a.norm()


# ---------------------------------------------------------------------------
# multiplication table
# ---------------------------------------------------------------------------


def multiplication_table(level: int = MAX_LEVEL) -> list[list[tuple[int, int]]]:
    """Exact basis products at the given level as (sign, index) pairs.

    `table[m][n]` describes e_m * e_n = sign * e_index.  Levels above 4 are
    unsupported.
    """
    if not 0 <= level <= MAX_LEVEL:
        raise ValueError(f"unsupported level {level} (0..{MAX_LEVEL})")
    n = 1 << level
    return [row[:n] for row in _TABLE[:n]]


def _entry_str(sign: int, k: int) -> str:
    name = "1" if k == 0 else f"e{k}"
    return f"-{name}" if sign < 0 else name


def table_csv(level: int = MAX_LEVEL) -> str:
    """Multiplication table as CSV with entries like `e3` / `-e11`."""
    table = multiplication_table(level)
    n = len(table)
    header = "," + ",".join(_entry_str(1, k) for k in range(n))
    lines = [header]
    for m in range(n):
        cells = ",".join(_entry_str(s, k) for s, k in table[m])
        lines.append(f"{_entry_str(1, m)},{cells}")
    return "\n".join(lines) + "\n"


def verify_table(reference: Sequence[Sequence[tuple[int, int]]] | None = None,
                 level: int = MAX_LEVEL) -> tuple[int, int]:
    """Compare the generated table against a reference; returns (matches, total).

    With no reference, the recursion output is compared against the bundled
    fixture table (level 4 only).
    """
    if reference is None:
        from ._reference_table import REFERENCE_TABLE
        if level != MAX_LEVEL:
            raise ValueError("bundled reference covers level 4 only")
        reference = REFERENCE_TABLE
    table = multiplication_table(level)
    total = len(table) ** 2
    matches = sum(
        1
        for m, row in enumerate(table)
        for n, entry in enumerate(row)
        if tuple(entry) == tuple(reference[m][n])
    )
    return matches, total


# ---------------------------------------------------------------------------
# multiplication operators and complex embeddings
# ---------------------------------------------------------------------------


def left_mult_matrix(s: CDElement) -> NDArray[np.float64]:
    """Matrix of x -> s*x on the level-4 coefficient space (16x16)."""
    v = s.promote(MAX_LEVEL).coeffs
    return np.tensordot(v, _TENSOR, axes=(0, 0))


def right_mult_matrix(s: CDElement) -> NDArray[np.float64]:
    """Matrix of x -> x*s on the level-4 coefficient space (16x16)."""
    v = s.promote(MAX_LEVEL).coeffs
    return np.einsum("mkn,n->km", _TENSOR, v)


def _axis_vector(axis) -> NDArray[np.float64]:
    """Accept a CDElement or anything exposing one via `.s` (slice units)."""
    if isinstance(axis, CDElement):
        return axis.promote(MAX_LEVEL).coeffs
    s = getattr(axis, "s", None)
    if isinstance(s, CDElement):
        return s.promote(MAX_LEVEL).coeffs
    raise TypeError("axis must be a CDElement or a slice unit")


def complex_embed(z: complex, axis) -> CDElement:
    """Embed x + i*y as x + y*I on the slice spanned by 1 and the unit I."""
    v = _axis_vector(axis)
    out = z.real * np.eye(DIM)[0] + z.imag * v
    return CDElement(out)


def complex_coords(x: CDElement, axis, tol: float = 1e-9) -> complex:
    """Coordinates of x in the plane spanned by 1 and the unit I.

    Raises if x does not lie on that plane within `tol * max(1, |x|)`.
    """
    v = _axis_vector(axis)
    c = x.promote(MAX_LEVEL).coeffs
    re = c[0]
    im = float(np.dot(c[1:], v[1:]))
    residual = np.linalg.norm(c - re * np.eye(DIM)[0] - im * v)
    if residual > tol * max(1.0, float(np.linalg.norm(c))):
        raise ValueError("element does not lie on the requested complex slice")
    return complex(re, im)


# ---------------------------------------------------------------------------
# text and JSON formats
# ---------------------------------------------------------------------------

# One additive term: optional sign, then a number, a basis token, or both.
# `e<digits>` is always a basis token, so scientific notation is not part of
# the text grammar (use JSON coefficient arrays for arbitrary floats).
_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:"
    r"(?P<num>\d+\.?\d*|\.\d+)\s*(?:\*?\s*e(?P<idx1>\d+))?"
    r"|e(?P<idx2>\d+)"
    r")\s*"
)


def parse_element(text: str) -> CDElement:
    """Parse sedenion text like `e1-e10`, `0.5+2e4`, or `-3`.

    The result uses the smallest level containing every mentioned basis
    element.  Raises ValueError on malformed input.
    """
    if isinstance(text, CDElement):
        return text
    s = text.strip()
    if not s:
        raise ValueError("empty element text")
    coeffs = np.zeros(DIM)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element text at: {s[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing +/- between terms in {text!r}")
        sign = -1.0 if m.group("sign") == "-" else 1.0
        num = m.group("num")
        idx = m.group("idx1") or m.group("idx2")
        value = sign * (float(num) if num is not None else 1.0)
        k = int(idx) if idx is not None else 0
        if k >= DIM:
            raise ValueError(f"basis index out of range in {text!r}: e{k}")
        coeffs[k] += value
        pos = m.end()
        first = False
    top = int(np.max(np.nonzero(coeffs)[0])) if np.any(coeffs) else 0
    lv = max(1, top.bit_length()) if top else 0
    return CDElement(coeffs[: 1 << lv])


def format_real(x: float) -> str:
    """Scalar formatting used across text output: 12 significant digits.

    Positional notation only, never a scientific exponent: inside element
    text `e4` is a basis token, so a coefficient printed as `1e-13` would
    change meaning.  Integers collapse to their plain spelling.
    """
    if not math.isfinite(x):
        return str(x)
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return np.format_float_positional(x, precision=12, unique=False,
                                      fractional=False, trim="-")


def format_element(a: CDElement) -> str:
    """Inverse of `parse_element`; returns `0` for the zero element."""
    parts: list[str] = []
    for k, v in enumerate(a.coeffs):
        if v == 0.0:
            continue
        mag = format_real(abs(v))
        if k == 0:
            body = mag
        else:
            body = f"e{k}" if mag == "1" else f"{mag}e{k}"
        if not parts:
            parts.append(body if v > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if v > 0 else f"-{body}")
    return "".join(parts) if parts else "0"


def element_to_json(a: CDElement) -> list[float]:
    return [float(v) for v in a.promote(MAX_LEVEL).coeffs]


def element_from_json(data) -> CDElement:
    """Accept sedenion text or a coefficient array (length a power of two <= 16)."""
    if isinstance(data, str):
        return parse_element(data)
    if isinstance(data, (list, tuple)):
        return CDElement([float(v) for v in data])
    raise ValueError(f"cannot build an element from {type(data).__name__}")


def parse_any(data) -> CDElement:
    """Parse text, JSON-style list, or pass through a CDElement."""
    if isinstance(data, CDElement):
        return data
    if isinstance(data, str):
        stripped = data.strip()
        if stripped.startswith("["):
            return element_from_json(json.loads(stripped))
        return parse_element(stripped)
    return element_from_json(data)
