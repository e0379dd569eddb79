"""Exact ranges of matrix characteristics over interval matrices.

Each operation verifies the structural class it needs (delegating to
``classify``), computes the range from the matching endpoint formula, and
records the strategy plus the member matrices attaining each endpoint.
When no supported class matches, the error says so and the caller may fall
back to the brute-force oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import classify, kernel, oracle
from .errors import (
    CapExceeded,
    EigenvectorSignAmbiguity,
    NoApplicableTheorem,
    PreconditionViolated,
)
from .intervals import (
    Interval,
    IntervalMatrix,
    SymmetricIntervalMatrix,
    as_symmetric,
    checkerboard_vertices,
    sign_flip_at,
)


@dataclass
class RangeResult:
    value: Interval | IntervalMatrix
    strategy: str
    attainers: dict = field(default_factory=dict)


@dataclass
class UpperBound:
    """One-sided result: only the maximum of the characteristic is claimed."""

    value: float
    strategy: str
    attainer: np.ndarray


def _ordered_range(values_and_attainers) -> tuple[Interval, dict]:
    pairs = sorted(values_and_attainers, key=lambda p: p[0])
    lo_val, lo_att = pairs[0]
    hi_val, hi_att = pairs[-1]
    return Interval(lo_val, hi_val), {"min": lo_att, "max": hi_att}


def _sign_stable_pattern(A: IntervalMatrix, cap_evals: int):
    """Constant sign pattern of member inverses, or None.

    Certifies over all vertex matrices when the enumeration fits the cap;
    otherwise falls back to the midpoint inverse alone and says so.
    """
    tiny = 1e-10
    try:
        pattern = None
        for block in oracle._flat_vertex_chunks(A.lo, A.hi, cap_evals):
            dets = np.linalg.det(block)
            if np.any(np.abs(dets) <= 1e-12 * max(1.0, float(np.max(np.abs(dets))))):
                return None, None
            invs = np.linalg.inv(block)
            scale = max(1.0, float(np.max(np.abs(invs))))
            if np.any(np.abs(invs) <= tiny * scale):
                return None, None
            signs = np.sign(invs)
            if pattern is None:
                pattern = signs[0]
            if np.any(signs != pattern):
                return None, None
        return pattern, "vertex-certified"
    except CapExceeded:
        try:
            inv_mid = kernel.inverse(A.mid)
        except Exception:
            return None, None
        scale = max(1.0, float(np.max(np.abs(inv_mid))))
        if np.any(np.abs(inv_mid) <= tiny * scale):
            return None, None
        return np.sign(inv_mid), "midpoint-certified"


def det_range(A: IntervalMatrix, cap_evals: int = 1 << 20) -> RangeResult:
    """Exact determinant range for the supported classes.

    Dispatch order: interval M-matrix, totally positive, inverse
    nonnegative, inverse-M, diagonally interval with a positive
    semidefinite lower endpoint, sign-stable. The first verified class
    wins; the formulas agree wherever two classes overlap.
    """
    if not A.is_square:
        raise ValueError("determinant range requires a square matrix")

    if classify.is_m_matrix_interval(A).is_yes:
        value, att = _ordered_range([(kernel.det(A.lo), A.lo.copy()),
                                     (kernel.det(A.hi), A.hi.copy())])
        return RangeResult(value, "m-matrix-endpoints", att)

    if classify.is_totally_positive_interval(A).is_yes:
        down, up = checkerboard_vertices(A)
        value, att = _ordered_range([(kernel.det(down), down),
                                     (kernel.det(up), up)])
        return RangeResult(value, "totally-positive-checkerboard", att)

    if classify.is_inverse_nonnegative_interval(A).is_yes:
        value, att = _ordered_range([(kernel.det(A.lo), A.lo.copy()),
                                     (kernel.det(A.hi), A.hi.copy())])
        return RangeResult(value, "inverse-nonnegative-endpoints", att)

    try:
        inverse_m = classify.is_inverse_m_interval(A, cap_evals=cap_evals)
    except CapExceeded:
        inverse_m = None
    if inverse_m is not None and inverse_m.is_yes:
        low_diag = A.hi.copy()
        np.fill_diagonal(low_diag, np.diag(A.lo))
        high_diag = A.lo.copy()
        np.fill_diagonal(high_diag, np.diag(A.hi))
        value, att = _ordered_range([(kernel.det(low_diag), low_diag),
                                     (kernel.det(high_diag), high_diag)])
        return RangeResult(value, "inverse-m-diagonal-extremes", att)

    if (classify.is_diagonally_interval(A)
            and classify.has_symmetric_midpoint(A)):
        lo_eigs = kernel.sym_eigenvalues(A.lo)
        if lo_eigs[-1] >= -classify._tol(A.lo):
            value, att = _ordered_range([(kernel.det(A.lo), A.lo.copy()),
                                         (kernel.det(A.hi), A.hi.copy())])
            return RangeResult(value, "diagonally-interval-psd-endpoints", att)

    pattern, mode = _sign_stable_pattern(A, cap_evals)
    if pattern is not None:
        det_sign = np.sign(kernel.det(A.mid))
        cofactor_signs = det_sign * pattern.T
        att_min = np.where(cofactor_signs > 0, A.lo, A.hi)
        att_max = np.where(cofactor_signs > 0, A.hi, A.lo)
        value, att = _ordered_range([(kernel.det(att_min), att_min),
                                     (kernel.det(att_max), att_max)])
        return RangeResult(value, f"sign-stable-{mode}", att)

    raise NoApplicableTheorem(
        "no supported class matched for the determinant range; "
        "fall back to the vertex-enumeration oracle if the size permits")


def _require_diag_interval_symmetric(A) -> SymmetricIntervalMatrix:
    try:
        S = as_symmetric(A)
    except ValueError as exc:
        raise PreconditionViolated(str(exc)) from exc
    if not classify.is_diagonally_interval(S.base):
        raise PreconditionViolated("radius is not diagonal")
    return S


def eig_ranges_diag_interval(A) -> list[RangeResult]:
    """All eigenvalue ranges of a diagonally interval symmetric family.

    The i-th range is [lambda_i at the lower endpoint, lambda_i at the
    upper endpoint]; both endpoints are attained simultaneously.
    """
    S = _require_diag_interval_symmetric(A)
    lo_vals = kernel.sym_eigenvalues(S.lo)
    hi_vals = kernel.sym_eigenvalues(S.hi)
    results = []
    for i in range(S.n):
        results.append(RangeResult(
            Interval(float(lo_vals[i]), float(hi_vals[i])),
            f"diagonally-interval-endpoints-lambda{i + 1}",
            {"min": S.lo.copy(), "max": S.hi.copy()}))
    return results


def spectral_radius_max_diag_interval(A) -> UpperBound:
    """Exact maximum of the spectral radius over a diagonally interval
    symmetric family: max of lambda_1 at the upper endpoint and
    -lambda_n at the lower endpoint."""
    S = _require_diag_interval_symmetric(A)
    hi_top = float(kernel.sym_eigenvalues(S.hi)[0])
    lo_bottom = float(kernel.sym_eigenvalues(S.lo)[-1])
    if hi_top >= -lo_bottom:
        return UpperBound(hi_top, "diagonally-interval-spectral-radius", S.hi.copy())
    return UpperBound(-lo_bottom, "diagonally-interval-spectral-radius", S.lo.copy())


def lambda_min_range_inverse_nonneg(A) -> RangeResult:
    """Smallest-eigenvalue range of a symmetric inverse nonnegative family."""
    try:
        S = as_symmetric(A)
    except ValueError as exc:
        raise PreconditionViolated(str(exc)) from exc
    if not classify.is_inverse_nonnegative_interval(S.base).is_yes:
        raise PreconditionViolated("matrix is not inverse nonnegative")
    lo_val = float(kernel.sym_eigenvalues(S.lo)[-1])
    hi_val = float(kernel.sym_eigenvalues(S.hi)[-1])
    return RangeResult(Interval(lo_val, hi_val),
                       "inverse-nonnegative-endpoints-lambda-min",
                       {"min": S.lo.copy(), "max": S.hi.copy()})


def eig_ranges_totally_positive(A: IntervalMatrix,
                                entry_tol: float = 1e-10) -> list[RangeResult]:
    """All eigenvalue ranges of a totally positive interval matrix.

    The extreme indices come from the endpoint/checkerboard matrices; a
    middle index i uses the midpoint left and right eigenvectors, whose
    entry signs are constant across members, to build the two attainers.
    Raises EigenvectorSignAmbiguity instead of guessing when an eigenvector
    entry is numerically zero.
    """
    if not classify.is_totally_positive_interval(A).is_yes:
        raise PreconditionViolated("matrix is not totally positive")
    n = A.rows
    down, up = checkerboard_vertices(A)
    results: list[RangeResult | None] = [None] * n

    lo_vals = kernel.real_eigenvalues_sorted(A.lo)
    hi_vals = kernel.real_eigenvalues_sorted(A.hi)
    results[0] = RangeResult(Interval(float(lo_vals[0]), float(hi_vals[0])),
                             "totally-positive-endpoints-lambda1",
                             {"min": A.lo.copy(), "max": A.hi.copy()})
    if n > 1:
        down_vals = kernel.real_eigenvalues_sorted(down)
        up_vals = kernel.real_eigenvalues_sorted(up)
        results[n - 1] = RangeResult(
            Interval(float(down_vals[-1]), float(up_vals[-1])),
            f"totally-positive-checkerboard-lambda{n}",
            {"min": down, "max": up})

    if n > 2:
        mid = A.mid
        right_vals, right_vecs = np.linalg.eig(mid)
        left_vals, left_vecs = np.linalg.eig(mid.T)
        right_order = np.argsort(right_vals.real)[::-1]
        left_order = np.argsort(left_vals.real)[::-1]
        for i in range(1, n - 1):
            x = right_vecs[:, right_order[i]].real
            y = left_vecs[:, left_order[i]].real
            scale_x = float(np.max(np.abs(x)))
            scale_y = float(np.max(np.abs(y)))
            if (np.min(np.abs(x)) < entry_tol * scale_x
                    or np.min(np.abs(y)) < entry_tol * scale_y):
                raise EigenvectorSignAmbiguity(
                    f"midpoint eigenvector for index {i + 1} has an entry "
                    "too close to zero to sign")
            if float(x @ y) < 0:
                y = -y
            # d lambda / d a_ij = y_i x_j: rows signed by the left
            # eigenvector, columns by the right one
            signed = np.outer(np.sign(y), np.sign(x)) * A.rad
            low_att = mid - signed
            high_att = mid + signed
            lo_val = float(kernel.real_eigenvalues_sorted(low_att)[i])
            hi_val = float(kernel.real_eigenvalues_sorted(high_att)[i])
            value, att = _ordered_range([(lo_val, low_att), (hi_val, high_att)])
            results[i] = RangeResult(value,
                                     f"totally-positive-eigenvector-signs-lambda{i + 1}",
                                     att)
    return results  # type: ignore[return-value]


def eig_ranges(A) -> list[RangeResult]:
    """Eigenvalue ranges via whichever theorem applies."""
    base = A.base if isinstance(A, SymmetricIntervalMatrix) else A
    if classify.is_diagonally_interval(base) and classify.is_symmetric_family(base):
        return eig_ranges_diag_interval(base)
    if classify.is_totally_positive_interval(base).is_yes:
        return eig_ranges_totally_positive(base)
    raise NoApplicableTheorem(
        "eigenvalue ranges need a diagonally interval symmetric family "
        "or a totally positive matrix")


def nonneg_ranges(A: IntervalMatrix) -> dict[str, RangeResult | UpperBound]:
    """Spectral radius, largest eigenvalue, and largest singular value.

    Full ranges (endpoints attained at the two endpoint matrices) when the
    matrix is nonnegative; upper bounds alone when only the midpoint is
    nonnegative. The largest-eigenvalue entry is reported only for
    symmetric families.
    """
    if not A.is_square:
        raise ValueError("nonnegative ranges require a square matrix")
    symmetric = classify.is_symmetric_family(A)
    out: dict[str, RangeResult | UpperBound] = {}
    if classify.is_nonnegative(A):
        lo, hi = A.lo, A.hi
        out["rho"] = RangeResult(
            Interval(kernel.spectral_radius(lo), kernel.spectral_radius(hi)),
            "nonnegative-endpoints-rho", {"min": lo.copy(), "max": hi.copy()})
        out["sigma_max"] = RangeResult(
            Interval(float(kernel.singular_values(lo)[0]),
                     float(kernel.singular_values(hi)[0])),
            "nonnegative-endpoints-sigma-max", {"min": lo.copy(), "max": hi.copy()})
        if symmetric:
            out["lambda_max"] = RangeResult(
                Interval(float(kernel.sym_eigenvalues(lo)[0]),
                         float(kernel.sym_eigenvalues(hi)[0])),
                "nonnegative-endpoints-lambda-max",
                {"min": lo.copy(), "max": hi.copy()})
        return out
    if classify.is_midpoint_nonnegative(A):
        hi = A.hi
        out["rho"] = UpperBound(kernel.spectral_radius(hi),
                                "midpoint-nonnegative-upper-rho", hi.copy())
        out["sigma_max"] = UpperBound(float(kernel.singular_values(hi)[0]),
                                      "midpoint-nonnegative-upper-sigma-max",
                                      hi.copy())
        if symmetric:
            out["lambda_max"] = UpperBound(float(kernel.sym_eigenvalues(hi)[0]),
                                           "midpoint-nonnegative-upper-lambda-max",
                                           hi.copy())
        return out
    raise PreconditionViolated(
        "neither the lower endpoint nor the midpoint is nonnegative")


def sigma_min_range(A: IntervalMatrix) -> RangeResult:
    """Smallest-singular-value range for inverse nonnegative or totally
    positive interval matrices."""
    if classify.is_inverse_nonnegative_interval(A).is_yes:
        return RangeResult(
            Interval(float(kernel.singular_values(A.lo)[-1]),
                     float(kernel.singular_values(A.hi)[-1])),
            "inverse-nonnegative-endpoints-sigma-min",
            {"min": A.lo.copy(), "max": A.hi.copy()})
    if classify.is_totally_positive_interval(A).is_yes:
        down, up = checkerboard_vertices(A)
        return RangeResult(
            Interval(float(kernel.singular_values(down)[-1]),
                     float(kernel.singular_values(up)[-1])),
            "totally-positive-checkerboard-sigma-min",
            {"min": down, "max": up})
    raise PreconditionViolated(
        "sigma-min range needs an inverse nonnegative or totally positive matrix")


def norm_range(A: IntervalMatrix, which: str = "inf",
               cap: int = kernel.SIGN_ENUM_CAP) -> RangeResult | UpperBound:
    """Range of a monotone matrix norm over a (midpoint-)nonnegative matrix."""
    if classify.is_nonnegative(A):
        return RangeResult(
            Interval(kernel.matrix_norm(A.lo, which, cap=cap),
                     kernel.matrix_norm(A.hi, which, cap=cap)),
            f"nonnegative-endpoints-norm-{which}",
            {"min": A.lo.copy(), "max": A.hi.copy()})
    if classify.is_midpoint_nonnegative(A):
        return UpperBound(kernel.matrix_norm(A.hi, which, cap=cap),
                          f"midpoint-nonnegative-upper-norm-{which}", A.hi.copy())
    raise PreconditionViolated(
        "norm range needs a nonnegative matrix (or nonnegative midpoint "
        "for the upper bound)")


def rr_range(A: IntervalMatrix, cap: int = kernel.SIGN_ENUM_CAP) -> RangeResult:
    """Regularity-radius range for inverse nonnegative or totally positive
    interval matrices."""
    if classify.is_inverse_nonnegative_interval(A).is_yes:
        return RangeResult(
            Interval(kernel.regularity_radius(A.lo, cap=cap),
                     kernel.regularity_radius(A.hi, cap=cap)),
            "inverse-nonnegative-endpoints-rr",
            {"min": A.lo.copy(), "max": A.hi.copy()})
    if classify.is_totally_positive_interval(A).is_yes:
        down, up = checkerboard_vertices(A)
        return RangeResult(
            Interval(kernel.regularity_radius(down, cap=cap),
                     kernel.regularity_radius(up, cap=cap)),
            "totally-positive-checkerboard-rr",
            {"min": down, "max": up})
    raise PreconditionViolated(
        "regularity-radius range needs an inverse nonnegative or totally "
        "positive matrix")


def inverse_bounds(A: IntervalMatrix, cap_evals: int = 1 << 20) -> RangeResult:
    """Componentwise hull of member inverses.

    Inverse nonnegative: the hull is [upper endpoint inverse, lower
    endpoint inverse]. Inverse-M: componentwise extrema over the 2 n^2
    matrices mid +/- diag(z^i) rad diag(z^j) with single sign flips.
    """
    if classify.is_inverse_nonnegative_interval(A).is_yes:
        inv_hi = kernel.inverse(A.hi)
        inv_lo = kernel.inverse(A.lo)
        hull = IntervalMatrix(np.minimum(inv_hi, inv_lo), np.maximum(inv_hi, inv_lo))
        return RangeResult(hull, "inverse-nonnegative-endpoint-inverses",
                           {"min": A.hi.copy(), "max": A.lo.copy()})
    try:
        inverse_m = classify.is_inverse_m_interval(A, cap_evals=cap_evals)
    except CapExceeded as exc:
        raise CapExceeded(str(exc)) from exc
    if inverse_m.is_yes:
        n = A.rows
        mid, rad = A.mid, A.rad
        plus, minus = [], []
        for i in range(n):
            zi = sign_flip_at(n, i)
            for j in range(n):
                zj = sign_flip_at(n, j)
                signed = np.outer(zi, zj) * rad
                plus.append(mid + signed)
                minus.append(mid - signed)
        inv_plus = np.linalg.inv(np.array(plus))
        inv_minus = np.linalg.inv(np.array(minus))
        hull = IntervalMatrix(inv_plus.min(axis=0), inv_minus.max(axis=0))
        return RangeResult(hull, "inverse-m-sign-flip-family", {
            "min_family": np.array(plus),
            "max_family": np.array(minus),
        })
    raise PreconditionViolated(
        "inverse bounds need an inverse nonnegative or inverse-M matrix")


def power_hull(A: IntervalMatrix, k: int) -> IntervalMatrix:
    """Hull of k-th powers of a nonnegative interval matrix.

    Equals [lower endpoint ^ k, upper endpoint ^ k]; not every matrix in
    between is attained as a power, but the hull is exact.
    """
    if not A.is_square:
        raise ValueError("power hull requires a square matrix")
    if k < 1 or int(k) != k:
        raise ValueError("power must be a positive integer")
    if not classify.is_nonnegative(A):
        raise PreconditionViolated("power hull needs a nonnegative matrix")
    return IntervalMatrix(np.linalg.matrix_power(A.lo, int(k)),
                          np.linalg.matrix_power(A.hi, int(k)))


def _cube_entry(base: np.ndarray, diag_vals: np.ndarray, i: int, j: int) -> float:
    M = base.copy()
    np.fill_diagonal(M, diag_vals)
    return float(np.linalg.matrix_power(M, 3)[i, j])


def _quadratic_candidates(q20, q02, q11, q10, q01, ubox, vbox):
    """Stationary candidates of a bivariate quadratic on a rectangle."""
    cands = []
    tiny = 1e-13 * max(1.0, abs(q20), abs(q02), abs(q11), abs(q10), abs(q01))
    # interior stationary point
    det_h = 4.0 * q20 * q02 - q11 * q11
    if abs(det_h) > tiny:
        u = (-2.0 * q02 * q10 + q11 * q01) / det_h
        v = (-2.0 * q20 * q01 + q11 * q10) / det_h
        if ubox[0] <= u <= ubox[1] and vbox[0] <= v <= vbox[1]:
            cands.append((u, v))
    # edge critical points: fix one variable at an endpoint
    for u_fix in ubox:
        if abs(q02) > tiny:
            v = -(q01 + q11 * u_fix) / (2.0 * q02)
            if vbox[0] <= v <= vbox[1]:
                cands.append((u_fix, v))
    for v_fix in vbox:
        if abs(q20) > tiny:
            u = -(q10 + q11 * v_fix) / (2.0 * q20)
            if ubox[0] <= u <= ubox[1]:
                cands.append((u, v_fix))
    for u_fix in ubox:
        for v_fix in vbox:
            cands.append((u_fix, v_fix))
    return cands


def cube_hull_diag_interval(A: IntervalMatrix) -> IntervalMatrix:
    """Entrywise exact hull of third powers of a diagonally interval matrix.

    Each entry of the cube is linear in every diagonal variable except the
    two indexing it, so those are fixed at the endpoint given by their
    coefficient sign; the residual bivariate quadratic (univariate cubic on
    the diagonal) is optimized over its rectangle through closed-form
    stationary candidates, no iteration.
    """
    if not classify.is_diagonally_interval(A):
        raise PreconditionViolated("radius is not diagonal")
    n = A.rows
    base = A.mid
    diag_lo = np.diag(A.lo).copy()
    diag_hi = np.diag(A.hi).copy()
    diag_mid = 0.5 * (diag_lo + diag_hi)
    out_lo = np.empty((n, n))
    out_hi = np.empty((n, n))

    for i in range(n):
        for j in range(n):
            others = [m for m in range(n) if m != i and m != j]
            gamma = np.array([base[i, m] * base[m, j] for m in others])
            for mode in ("min", "max"):
                diag_fixed = diag_mid.copy()
                for g, m in zip(gamma, others):
                    if mode == "max":
                        diag_fixed[m] = diag_hi[m] if g > 0 else diag_lo[m]
                    else:
                        diag_fixed[m] = diag_lo[m] if g > 0 else diag_hi[m]
                if i == j:
                    val = _cube_diag_extreme(base, diag_fixed, diag_lo, diag_hi,
                                             i, mode)
                    if mode == "min":
                        out_lo[i, j] = val
                    else:
                        out_hi[i, j] = val
                else:
                    val = _cube_offdiag_extreme(base, diag_fixed, diag_lo,
                                                diag_hi, i, j, mode)
                    if mode == "min":
                        out_lo[i, j] = val
                    else:
                        out_hi[i, j] = val
    return IntervalMatrix(out_lo, out_hi)


def _cube_diag_extreme(base, diag_fixed, diag_lo, diag_hi, i, mode) -> float:
    """Extreme of the (i, i) cube entry: a univariate cubic in the i-th
    diagonal variable, optimized via its derivative roots."""
    c = 0.5 * (diag_lo[i] + diag_hi[i])
    h = max(diag_hi[i] - diag_lo[i], 1.0)

    def f(u: float) -> float:
        d = diag_fixed.copy()
        d[i] = c + h * u
        return _cube_entry(base, d, i, i)

    f0, f1, fm1, f2 = f(0.0), f(1.0), f(-1.0), f(2.0)
    # cubic a u^3 + b u^2 + cc u + d0 through the four samples
    d0 = f0
    b = 0.5 * (f1 + fm1) - d0
    a = (f2 - 4.0 * b - d0 - (f1 - fm1)) / 6.0
    cc = 0.5 * (f1 - fm1) - a

    u_lo = (diag_lo[i] - c) / h
    u_hi = (diag_hi[i] - c) / h
    cands = [u_lo, u_hi]
    tiny = 1e-13 * max(1.0, abs(a), abs(b), abs(cc))
    if abs(a) > tiny:
        disc = 4.0 * b * b - 12.0 * a * cc
        if disc >= 0:
            root = np.sqrt(disc)
            for u in ((-2.0 * b + root) / (6.0 * a), (-2.0 * b - root) / (6.0 * a)):
                if u_lo <= u <= u_hi:
                    cands.append(float(u))
    elif abs(b) > tiny:
        u = -cc / (2.0 * b)
        if u_lo <= u <= u_hi:
            cands.append(float(u))
    vals = [f(u) for u in cands]
    return min(vals) if mode == "min" else max(vals)


def _cube_offdiag_extreme(base, diag_fixed, diag_lo, diag_hi, i, j, mode) -> float:
    """Extreme of the (i, j) cube entry, i != j: a bivariate quadratic in the
    two indexing diagonal variables, optimized on its rectangle."""
    ci = 0.5 * (diag_lo[i] + diag_hi[i])
    cj = 0.5 * (diag_lo[j] + diag_hi[j])
    hi_step = max(diag_hi[i] - diag_lo[i], 1.0)
    hj_step = max(diag_hi[j] - diag_lo[j], 1.0)

    def f(u: float, v: float) -> float:
        d = diag_fixed.copy()
        d[i] = ci + hi_step * u
        d[j] = cj + hj_step * v
        return _cube_entry(base, d, i, j)

    f00 = f(0.0, 0.0)
    fp0, fm0 = f(1.0, 0.0), f(-1.0, 0.0)
    f0p, f0m = f(0.0, 1.0), f(0.0, -1.0)
    fpp = f(1.0, 1.0)
    q10 = 0.5 * (fp0 - fm0)
    q20 = 0.5 * (fp0 + fm0) - f00
    q01 = 0.5 * (f0p - f0m)
    q02 = 0.5 * (f0p + f0m) - f00
    q11 = fpp - f00 - q10 - q01 - q20 - q02

    ubox = ((diag_lo[i] - ci) / hi_step, (diag_hi[i] - ci) / hi_step)
    vbox = ((diag_lo[j] - cj) / hj_step, (diag_hi[j] - cj) / hj_step)
    cands = _quadratic_candidates(q20, q02, q11, q10, q01, ubox, vbox)
    vals = [f(u, v) for u, v in cands]
    return min(vals) if mode == "min" else max(vals)
