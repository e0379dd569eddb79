"""Interval scalars, interval vectors/matrices, and vertex machinery.

Conventions used throughout the package:

* intervals are closed and finite; endpoint formulas are evaluated in plain
  floating point (no directed rounding), and numerical slack is handled by
  tolerances at the call sites;
* an entry with ``lo == hi`` is *degenerate* and never contributes a branch
  to vertex enumeration;
* the alternating sign vector ``s = (1, -1, 1, ...)`` uses 1-based parity,
  i.e. ``s[i] = (-1)**i`` for 0-based index ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded

DEFAULT_VERTEX_CAP = 24


def _validate_bounds(lo: np.ndarray, hi: np.ndarray, ndim: int, what: str) -> None:
    if lo.ndim != ndim or hi.ndim != ndim:
        raise ValueError(f"{what} bounds must be {ndim}-dimensional")
    if lo.shape != hi.shape:
        raise ValueError(f"{what} bounds differ in shape: {lo.shape} vs {hi.shape}")
    if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
        raise ValueError(f"{what} bounds must be finite")
    if np.any(lo > hi):
        where = np.argwhere(lo > hi)[0]
        raise ValueError(f"{what} has lo > hi at index {tuple(where)}")


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with finite endpoints."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"interval has lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(float(x), float(x))

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def rad(self) -> float:
        return 0.5 * (self.hi - self.lo)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def mignitude(self) -> float:
        """Smallest absolute value attained on the interval."""
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def magnitude(self) -> float:
        """Largest absolute value attained on the interval."""
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def contains_interval(self, other: "Interval", tol: float = 0.0) -> bool:
        return self.lo - tol <= other.lo and other.hi <= self.hi + tol

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: "Interval | float") -> "Interval":
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __radd__(self, other: float) -> "Interval":
        return self.__add__(other)

    def __sub__(self, other: "Interval | float") -> "Interval":
        other = _as_interval(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other: float) -> "Interval":
        return _as_interval(other).__sub__(self)

    def __mul__(self, other: "Interval | float") -> "Interval":
        other = _as_interval(other)
        lo, hi = imul(self.lo, self.hi, other.lo, other.hi)
        return Interval(float(lo), float(hi))

    def __rmul__(self, other: float) -> "Interval":
        return self.__mul__(other)

    def __truediv__(self, other: "Interval | float") -> "Interval":
        other = _as_interval(other)
        lo, hi = idiv(self.lo, self.hi, other.lo, other.hi)
        return Interval(float(lo), float(hi))

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(float(x))


# Elementwise interval arithmetic on (lo, hi) pairs; works for scalars and
# same-shaped ndarrays alike.

def iadd(alo, ahi, blo, bhi):
    return alo + blo, ahi + bhi


def isub(alo, ahi, blo, bhi):
    return alo - bhi, ahi - blo


def imul(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    return (np.minimum(np.minimum(p1, p2), np.minimum(p3, p4)),
            np.maximum(np.maximum(p1, p2), np.maximum(p3, p4)))


def idiv(alo, ahi, blo, bhi):
    """Interval division; the divisor must not contain zero."""
    if np.any((np.asarray(blo) <= 0.0) & (np.asarray(bhi) >= 0.0)):
        raise ZeroDivisionError("interval divisor contains zero")
    return imul(alo, ahi, 1.0 / bhi, 1.0 / blo)


def mignitude(lo, hi):
    """Elementwise smallest absolute value over [lo, hi]."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    return np.where((lo <= 0.0) & (hi >= 0.0), 0.0,
                    np.minimum(np.abs(lo), np.abs(hi)))


def magnitude(lo, hi):
    """Elementwise largest absolute value over [lo, hi]."""
    return np.maximum(np.abs(lo), np.abs(hi))


class IntervalVector:
    """Interval vector stored as paired lower/upper bound arrays."""

    __slots__ = ("_lo", "_hi")

    def __init__(self, lo, hi):
        lo = np.atleast_1d(np.asarray(lo, dtype=float)).copy()
        hi = np.atleast_1d(np.asarray(hi, dtype=float)).copy()
        _validate_bounds(lo, hi, 1, "interval vector")
        lo.flags.writeable = False
        hi.flags.writeable = False
        self._lo = lo
        self._hi = hi

    @classmethod
    def point(cls, v) -> "IntervalVector":
        v = np.asarray(v, dtype=float)
        return cls(v, v)

    @classmethod
    def from_midrad(cls, mid, rad) -> "IntervalVector":
        mid = np.asarray(mid, dtype=float)
        rad = np.asarray(rad, dtype=float)
        if np.any(rad < 0):
            raise ValueError("radius must be nonnegative")
        return cls(mid - rad, mid + rad)

    @property
    def lo(self) -> np.ndarray:
        return self._lo

    @property
    def hi(self) -> np.ndarray:
        return self._hi

    @property
    def mid(self) -> np.ndarray:
        return 0.5 * (self._lo + self._hi)

    @property
    def rad(self) -> np.ndarray:
        return 0.5 * (self._hi - self._lo)

    @property
    def n(self) -> int:
        return self._lo.shape[0]

    def __len__(self) -> int:
        return self.n

    def entry(self, i: int) -> Interval:
        return Interval(float(self._lo[i]), float(self._hi[i]))

    def contains_point(self, v, tol: float = 0.0) -> bool:
        v = np.asarray(v, dtype=float)
        return bool(np.all(self._lo - tol <= v) and np.all(v <= self._hi + tol))

    def contains_vector(self, other: "IntervalVector", tol: float = 0.0) -> bool:
        return bool(np.all(self._lo - tol <= other.lo)
                    and np.all(other.hi <= self._hi + tol))

    def __repr__(self) -> str:
        parts = ", ".join(f"[{float(l)!r}, {float(h)!r}]"
                          for l, h in zip(self._lo, self._hi))
        return f"IntervalVector({parts})"


class IntervalMatrix:
    """Rectangular interval matrix stored as paired lower/upper bound arrays."""

    __slots__ = ("_lo", "_hi")

    def __init__(self, lo, hi):
        lo = np.asarray(lo, dtype=float).copy()
        hi = np.asarray(hi, dtype=float).copy()
        _validate_bounds(lo, hi, 2, "interval matrix")
        lo.flags.writeable = False
        hi.flags.writeable = False
        self._lo = lo
        self._hi = hi

    @classmethod
    def point(cls, a) -> "IntervalMatrix":
        a = np.asarray(a, dtype=float)
        return cls(a, a)

    @classmethod
    def from_midrad(cls, mid, rad) -> "IntervalMatrix":
        mid = np.asarray(mid, dtype=float)
        rad = np.asarray(rad, dtype=float)
        if np.any(rad < 0):
            raise ValueError("radius must be nonnegative")
        return cls(mid - rad, mid + rad)

    @property
    def lo(self) -> np.ndarray:
        return self._lo

    @property
    def hi(self) -> np.ndarray:
        return self._hi

    @property
    def mid(self) -> np.ndarray:
        return 0.5 * (self._lo + self._hi)

    @property
    def rad(self) -> np.ndarray:
        return 0.5 * (self._hi - self._lo)

    @property
    def shape(self) -> tuple[int, int]:
        return self._lo.shape

    @property
    def rows(self) -> int:
        return self._lo.shape[0]

    @property
    def cols(self) -> int:
        return self._lo.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> Interval:
        return Interval(float(self._lo[i, j]), float(self._hi[i, j]))

    def contains_point(self, a, tol: float = 0.0) -> bool:
        a = np.asarray(a, dtype=float)
        return bool(np.all(self._lo - tol <= a) and np.all(a <= self._hi + tol))

    def contains_matrix(self, other: "IntervalMatrix", tol: float = 0.0) -> bool:
        return bool(np.all(self._lo - tol <= other.lo)
                    and np.all(other.hi <= self._hi + tol))

    def transpose(self) -> "IntervalMatrix":
        return IntervalMatrix(self._lo.T, self._hi.T)

    def __repr__(self) -> str:
        return f"IntervalMatrix(lo={self._lo!r}, hi={self._hi!r})"


class SymmetricIntervalMatrix:
    """View of a square interval matrix restricted to its symmetric members.

    Requires both the midpoint and the radius to be symmetric so the set
    of symmetric members is nonempty and spans all entries.
    """

    __slots__ = ("_base",)

    def __init__(self, base: IntervalMatrix, tol: float = 1e-12):
        if not base.is_square:
            raise ValueError("symmetric interval matrix must be square")
        scale = max(1.0, float(np.max(np.abs(base.mid))), float(np.max(base.rad)))
        if np.max(np.abs(base.mid - base.mid.T)) > tol * scale:
            raise ValueError("midpoint is not symmetric")
        if np.max(np.abs(base.rad - base.rad.T)) > tol * scale:
            raise ValueError("radius is not symmetric")
        self._base = base

    @property
    def base(self) -> IntervalMatrix:
        return self._base

    @property
    def lo(self) -> np.ndarray:
        return self._base.lo

    @property
    def hi(self) -> np.ndarray:
        return self._base.hi

    @property
    def mid(self) -> np.ndarray:
        return self._base.mid

    @property
    def rad(self) -> np.ndarray:
        return self._base.rad

    @property
    def n(self) -> int:
        return self._base.rows

    def contains_point(self, a, tol: float = 0.0) -> bool:
        a = np.asarray(a, dtype=float)
        if np.max(np.abs(a - a.T)) > tol + 1e-12 * max(1.0, np.max(np.abs(a))):
            return False
        return self._base.contains_point(a, tol)

    def __repr__(self) -> str:
        return f"SymmetricIntervalMatrix({self._base!r})"


def as_symmetric(A) -> SymmetricIntervalMatrix:
    if isinstance(A, SymmetricIntervalMatrix):
        return A
    return SymmetricIntervalMatrix(A)


def comparison_matrix(A: IntervalMatrix) -> np.ndarray:
    """Real matrix with mignitudes on the diagonal and negated magnitudes off it."""
    if not A.is_square:
        raise ValueError("comparison matrix requires a square matrix")
    C = -magnitude(A.lo, A.hi)
    diag = mignitude(np.diag(A.lo), np.diag(A.hi))
    np.fill_diagonal(C, diag)
    return C


def alternating_signs(n: int) -> np.ndarray:
    """The vector (1, -1, 1, -1, ...) of length n."""
    s = np.ones(n)
    s[1::2] = -1.0
    return s


def sign_flip_at(n: int, i: int) -> np.ndarray:
    """All-ones vector with a single -1 at position i."""
    z = np.ones(n)
    z[i] = -1.0
    return z


def sign_vectors(n: int):
    """Yield all 2**n vectors over {+1, -1}, first coordinate varying slowest."""
    for mask in range(1 << n):
        z = np.ones(n)
        for i in range(n):
            if (mask >> (n - 1 - i)) & 1:
                z[i] = -1.0
        yield z


def sign_similarity(A: IntervalMatrix, s: np.ndarray) -> IntervalMatrix:
    """Interval matrix of diag(s) @ A @ diag(s) taken memberwise."""
    pattern = np.outer(s, s)
    lo = np.where(pattern > 0, A.lo, -A.hi)
    hi = np.where(pattern > 0, A.hi, -A.lo)
    return IntervalMatrix(lo, hi)


def checkerboard_vertices(A: IntervalMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Members mid -/+ diag(s) rad diag(s) for the alternating sign vector s.

    Entry (i, j) of the first matrix is lo when i+j is even (0-based) and hi
    otherwise; the second matrix takes the opposite choice.
    """
    if not A.is_square:
        raise ValueError("checkerboard vertices require a square matrix")
    s = alternating_signs(A.rows)
    signed = np.outer(s, s) * A.rad
    return A.mid - signed, A.mid + signed


def checkerboard_rhs(b: IntervalVector) -> tuple[np.ndarray, np.ndarray]:
    """Vectors mid -/+ diag(s) rad for the alternating sign vector s."""
    s = alternating_signs(b.n)
    return b.mid - s * b.rad, b.mid + s * b.rad


def checkerboard_leq(u: np.ndarray, v: np.ndarray, tol: float = 0.0) -> bool:
    """Checkerboard order test: diag(s) u <= diag(s) v componentwise."""
    s = alternating_signs(len(u))
    return bool(np.all(s * u <= s * v + tol))


def checkerboard_box(v1, v2, tol: float = 0.0) -> IntervalVector:
    """Interval vector spanned by v1 <= v2 in the checkerboard order.

    Component i is [v1[i], v2[i]] for even 0-based i and [v2[i], v1[i]]
    for odd i. Rejects inputs not ordered by the checkerboard order.
    """
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    if not checkerboard_leq(v1, v2, tol):
        raise ValueError("v1 is not <= v2 in the checkerboard order")
    s = alternating_signs(len(v1))
    lo = np.where(s > 0, v1, v2)
    hi = np.where(s > 0, v2, v1)
    # Guard against tol-sized inversions on near-degenerate components.
    both_lo = np.minimum(lo, hi)
    both_hi = np.maximum(lo, hi)
    return IntervalVector(both_lo, both_hi)


def branching_positions(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Indices (row-major order) of non-degenerate entries."""
    return np.argwhere(hi > lo)


def vertex_count(A: IntervalMatrix) -> int:
    """Number of distinct vertex matrices, 2**(non-degenerate entries)."""
    return 1 << len(branching_positions(A.lo, A.hi))


def vertex_iter(A: IntervalMatrix, cap: int = DEFAULT_VERTEX_CAP):
    """Yield every vertex matrix exactly once.

    Degenerate entries contribute no branching. Raises CapExceeded when the
    number of branching entries exceeds ``cap``.
    """
    positions = branching_positions(A.lo, A.hi)
    k = len(positions)
    if k > cap:
        raise CapExceeded(f"{k} branching entries exceed the cap of {cap}")
    for mask in range(1 << k):
        V = A.lo.copy()
        for bit, (i, j) in enumerate(positions):
            if (mask >> bit) & 1:
                V[i, j] = A.hi[i, j]
        yield V


def symmetric_vertex_iter(A: SymmetricIntervalMatrix, cap: int = DEFAULT_VERTEX_CAP):
    """Yield vertex matrices of the symmetric member family.

    Branches only on entries with i <= j and mirrors the choice, so every
    yielded matrix is symmetric.
    """
    lo, hi = A.lo, A.hi
    positions = [tuple(p) for p in branching_positions(lo, hi) if p[0] <= p[1]]
    k = len(positions)
    if k > cap:
        raise CapExceeded(f"{k} branching entries exceed the cap of {cap}")
    for mask in range(1 << k):
        V = lo.copy()
        for bit, (i, j) in enumerate(positions):
            if (mask >> bit) & 1:
                V[i, j] = hi[i, j]
                V[j, i] = hi[i, j]
            else:
                V[j, i] = lo[i, j]
        yield V


def imatmul(A: IntervalMatrix, B: IntervalMatrix) -> IntervalMatrix:
    """Interval matrix product in standard interval arithmetic."""
    if A.cols != B.rows:
        raise ValueError("dimension mismatch in interval matrix product")
    lo = np.zeros((A.rows, B.cols))
    hi = np.zeros((A.rows, B.cols))
    for i in range(A.rows):
        for j in range(B.cols):
            acc_lo, acc_hi = 0.0, 0.0
            for k in range(A.cols):
                plo, phi = imul(A.lo[i, k], A.hi[i, k], B.lo[k, j], B.hi[k, j])
                acc_lo += plo
                acc_hi += phi
            lo[i, j] = acc_lo
            hi[i, j] = acc_hi
    return IntervalMatrix(lo, hi)
