"""Recognition tests for special classes of interval matrices.

Every test returns a ClassReport whose verdict is backed by a re-checkable
certificate (a positive vector, the endpoint matrices inspected, a violated
inequality) or, for "no", a witness realization violating the defining
property. Verdicts are never guessed: tests whose exponential fallback
exceeds the evaluation cap answer "unknown".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernel, oracle
from .errors import CapExceeded, PreconditionViolated, SingularMatrix
from .intervals import (
    IntervalMatrix,
    as_symmetric,
    checkerboard_vertices,
    comparison_matrix,
    sign_flip_at,
)

STRICT_RTOL = 1e-10

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass
class ClassReport:
    matrix_class: str
    verdict: str  # "yes" | "no" | "unknown"
    certificate: dict = field(default_factory=dict)
    cost_note: str = "polynomial"

    @property
    def is_yes(self) -> bool:
        return self.verdict == YES

    @property
    def is_no(self) -> bool:
        return self.verdict == NO


def _tol(*arrays) -> float:
    scale = 1.0
    for a in arrays:
        a = np.asarray(a, dtype=float)
        if a.size:
            scale = max(scale, float(np.max(np.abs(a))))
    return STRICT_RTOL * scale


def _mig_attainer(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Member value of smallest absolute value, entrywise."""
    return np.where(lo > 0, lo, np.where(hi < 0, hi, 0.0))


def _mag_attainer(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Member value of largest absolute value, entrywise."""
    return np.where(np.abs(lo) >= np.abs(hi), lo, hi)


def is_m_matrix_real(a) -> ClassReport:
    """M-matrix test for a real matrix: Z-pattern plus v > 0 with A v > 0.

    The certificate vector is the solution of A v = e; for a Z-matrix,
    A is an M-matrix exactly when that solve succeeds with v > 0.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    tol = _tol(a)
    off = a - np.diag(np.diag(a))
    if np.any(off > tol):
        i, j = np.argwhere(off > tol)[0]
        return ClassReport("M", NO, {
            "reason": "positive off-diagonal entry",
            "entry": (int(i), int(j)),
            "value": float(a[i, j]),
        })
    try:
        v = kernel.solve(a, np.ones(n))
    except SingularMatrix:
        return ClassReport("M", NO, {"reason": "singular Z-matrix"})
    if np.all(v > _tol(v)):
        return ClassReport("M", YES, {"v": v})
    return ClassReport("M", NO, {
        "reason": "solution of A v = e has a nonpositive component",
        "v": v,
    })


def is_m_matrix_interval(A: IntervalMatrix) -> ClassReport:
    """Interval M-matrix test: lower endpoint is M and upper off-diagonal <= 0."""
    if not A.is_square:
        raise ValueError("M-matrix test requires a square matrix")
    tol = _tol(A.lo, A.hi)
    off_hi = A.hi - np.diag(np.diag(A.hi))
    if np.any(off_hi > tol):
        i, j = np.argwhere(off_hi > tol)[0]
        witness = A.mid.copy()
        witness[i, j] = A.hi[i, j]
        return ClassReport("M", NO, {
            "reason": "member with positive off-diagonal entry",
            "entry": (int(i), int(j)),
            "witness": witness,
        })
    lower = is_m_matrix_real(A.lo)
    if lower.is_yes:
        return ClassReport("M", YES, {"v": lower.certificate["v"]})
    return ClassReport("M", NO, {
        "reason": "lower endpoint is not an M-matrix",
        "witness": A.lo.copy(),
        "endpoint_report": lower.certificate,
    })


def is_h_matrix_interval(A: IntervalMatrix) -> ClassReport:
    """Interval H-matrix test: the comparison matrix is an M-matrix."""
    C = comparison_matrix(A)
    inner = is_m_matrix_real(C)
    if inner.is_yes:
        return ClassReport("H", YES, {
            "v": inner.certificate["v"],
            "comparison_matrix": C,
        })
    witness = _mag_attainer(A.lo, A.hi)
    np.fill_diagonal(witness, np.diag(_mig_attainer(A.lo, A.hi)))
    return ClassReport("H", NO, {
        "reason": "comparison matrix is not an M-matrix",
        "comparison_matrix": C,
        "witness": witness,
        "inner_report": inner.certificate,
    })


def is_inverse_nonnegative_interval(A: IntervalMatrix) -> ClassReport:
    """Inverse nonnegativity test via the two endpoint matrices."""
    if not A.is_square:
        raise ValueError("inverse nonnegativity test requires a square matrix")
    endpoints = {"lower": A.lo, "upper": A.hi}
    inverses = {}
    for name, endpoint in endpoints.items():
        try:
            inv = kernel.inverse(endpoint)
        except SingularMatrix:
            return ClassReport("InverseNonnegative", NO, {
                "reason": f"{name} endpoint is singular",
                "witness": endpoint.copy(),
            })
        if np.any(inv < -_tol(inv)):
            i, j = np.argwhere(inv < -_tol(inv))[0]
            return ClassReport("InverseNonnegative", NO, {
                "reason": f"{name} endpoint inverse has a negative entry",
                "entry": (int(i), int(j)),
                "witness": endpoint.copy(),
                "inverse_entry": float(inv[i, j]),
            })
        inverses[name] = inv
    return ClassReport("InverseNonnegative", YES, {
        "inverse_lower_endpoint": inverses["lower"],
        "inverse_upper_endpoint": inverses["upper"],
    })


def is_totally_positive_real(a) -> ClassReport:
    """Total positivity of a real matrix via contiguous-window minors.

    All minors on consecutive row and consecutive column index windows must
    be positive; positivity of every other minor then follows.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    tol = _tol(a)
    for k in range(1, n + 1):
        for i0 in range(n - k + 1):
            for j0 in range(n - k + 1):
                minor = float(np.linalg.det(a[i0:i0 + k, j0:j0 + k]))
                if minor <= tol:
                    return ClassReport("TotallyPositive", NO, {
                        "reason": "nonpositive contiguous minor",
                        "rows": (i0, i0 + k),
                        "cols": (j0, j0 + k),
                        "minor": minor,
                    })
    return ClassReport("TotallyPositive", YES, {"windows_checked": True})


def is_totally_positive_interval(A: IntervalMatrix) -> ClassReport:
    """Interval total positivity via the two checkerboard vertex matrices."""
    if not A.is_square:
        raise ValueError("total positivity test requires a square matrix")
    down, up = checkerboard_vertices(A)
    for name, vertex in (("lower checkerboard vertex", down),
                         ("upper checkerboard vertex", up)):
        rep = is_totally_positive_real(vertex)
        if rep.is_no:
            return ClassReport("TotallyPositive", NO, {
                "reason": f"{name} is not totally positive",
                "witness": vertex,
                "vertex_report": rep.certificate,
            })
    return ClassReport("TotallyPositive", YES, {
        "checkerboard_lower": down,
        "checkerboard_upper": up,
    })


def is_b_matrix_interval(A: IntervalMatrix) -> ClassReport:
    """Interval B-matrix test via endpoint inequalities.

    Requires sum_j lo[i,j] > 0 for all i and
    sum_{j != k} lo[i,j] > (n-1) hi[i,k] for all i and k != i.
    """
    if not A.is_square:
        raise ValueError("B-matrix test requires a square matrix")
    n = A.rows
    tol = _tol(A.lo, A.hi)
    row_lo_sums = A.lo.sum(axis=1)
    for i in range(n):
        if row_lo_sums[i] <= tol:
            witness = A.mid.copy()
            witness[i, :] = A.lo[i, :]
            return ClassReport("BMatrix", NO, {
                "reason": "nonpositive lower row sum",
                "row": i,
                "witness": witness,
            })
        for k in range(n):
            if k == i:
                continue
            lhs = row_lo_sums[i] - A.lo[i, k]
            rhs = (n - 1) * A.hi[i, k]
            if lhs <= rhs + tol:
                witness = A.mid.copy()
                witness[i, :] = A.lo[i, :]
                witness[i, k] = A.hi[i, k]
                return ClassReport("BMatrix", NO, {
                    "reason": "row-mean dominance fails",
                    "row": i,
                    "column": k,
                    "witness": witness,
                })
    return ClassReport("BMatrix", YES, {"row_lower_sums": row_lo_sums})


def is_nonnegative(A: IntervalMatrix) -> bool:
    return bool(np.all(A.lo >= -_tol(A.lo, A.hi)))


def is_midpoint_nonnegative(A: IntervalMatrix) -> bool:
    return bool(np.all(A.mid >= -_tol(A.lo, A.hi)))


def is_diagonally_interval(A: IntervalMatrix) -> bool:
    if not A.is_square:
        return False
    offdiag_rad = A.rad - np.diag(np.diag(A.rad))
    return bool(np.max(offdiag_rad, initial=0.0) <= 0.0)


def has_symmetric_midpoint(A: IntervalMatrix) -> bool:
    if not A.is_square:
        return False
    mid = A.mid
    return bool(np.max(np.abs(mid - mid.T), initial=0.0) <= _tol(mid))


def is_symmetric_family(A: IntervalMatrix) -> bool:
    """Midpoint and radius both symmetric, so symmetric members span the box."""
    if not A.is_square:
        return False
    rad = A.rad
    return has_symmetric_midpoint(A) and bool(
        np.max(np.abs(rad - rad.T), initial=0.0) <= _tol(rad))


def classify_structure(A: IntervalMatrix) -> set[str]:
    """Cheap structural flags used for range dispatch."""
    flags = set()
    if is_nonnegative(A):
        flags.add("Nonnegative")
    if is_midpoint_nonnegative(A):
        flags.add("MidpointNonnegative")
    if is_diagonally_interval(A):
        flags.add("DiagonallyInterval")
    if has_symmetric_midpoint(A):
        flags.add("SymmetricMidpoint")
    return flags


def _real_inverse_m_check(block: np.ndarray, tol: float) -> np.ndarray:
    """Vectorized inverse-M test over stacked matrices.

    A nonsingular V is an inverse M-matrix iff V^{-1} has nonpositive
    off-diagonal and V e > 0 (then v = V e certifies V^{-1} as an M-matrix).
    Returns a boolean mask; singular entries come out False.
    """
    n = block.shape[-1]
    dets = np.linalg.det(block)
    ok = np.abs(dets) > 1e-12 * np.maximum(1.0, np.abs(dets).max(initial=1.0))
    result = np.zeros(len(block), dtype=bool)
    if not ok.any():
        return result
    invs = np.linalg.inv(block[ok])
    offmask = ~np.eye(n, dtype=bool)
    z_pattern = np.all(invs[:, offmask] <= tol, axis=1)
    row_sums_pos = np.all(block[ok].sum(axis=2) > tol, axis=1)
    result[ok] = z_pattern & row_sums_pos
    return result


def is_inverse_m_interval(A: IntervalMatrix,
                          cap_evals: int = 1 << 24) -> ClassReport:
    """Inverse M-matrix test by exhaustive vertex enumeration.

    The interval matrix is inverse-M exactly when every vertex matrix is;
    no polynomial reduction is known, so the cost is exponential and the
    test refuses (CapExceeded) beyond the evaluation cap.
    """
    if not A.is_square:
        raise ValueError("inverse-M test requires a square matrix")
    tol = _tol(A.lo, A.hi)
    if np.any(A.lo < -tol):
        i, j = np.argwhere(A.lo < -tol)[0]
        witness = A.mid.copy()
        witness[i, j] = A.lo[i, j]
        return ClassReport("InverseM", NO, {
            "reason": "member with a negative entry (inverse M-matrices are nonnegative)",
            "entry": (int(i), int(j)),
            "witness": witness,
        })
    checked = 0
    for block in oracle._flat_vertex_chunks(A.lo, A.hi, cap_evals):
        good = _real_inverse_m_check(block, tol)
        if not good.all():
            bad = int(np.flatnonzero(~good)[0])
            return ClassReport("InverseM", NO, {
                "reason": "vertex matrix is not an inverse M-matrix",
                "witness": block[bad].copy(),
            }, cost_note="exponential (vertex enumeration)")
        checked += len(block)
    return ClassReport("InverseM", YES, {"vertices_checked": checked},
                       cost_note="exponential (vertex enumeration)")


@dataclass
class ConjectureProbe:
    consistent: bool
    reduced_verdict: str
    exhaustive_verdict: str
    counterexample: dict | None = None


def conjecture_check_inverse_m(A: IntervalMatrix,
                               cap_evals: int = 1 << 24) -> ConjectureProbe:
    """Probe the 2 n^2 sign-flip reduction for the inverse-M class.

    Evaluates the reduced criterion (inverse-M at mid +/- diag(z^i) rad
    diag(z^j) for all i, j) and the exhaustive vertex criterion, reporting a
    counterexample when the verdicts differ. Experimental; not a decision
    procedure.
    """
    if not A.is_square:
        raise ValueError("conjecture probe requires a square matrix")
    n = A.rows
    tol = _tol(A.lo, A.hi)
    mid, rad = A.mid, A.rad
    candidates = []
    for i in range(n):
        zi = sign_flip_at(n, i)
        for j in range(n):
            zj = sign_flip_at(n, j)
            signed = np.outer(zi, zj) * rad
            candidates.append(mid + signed)
            candidates.append(mid - signed)
    block = np.array(candidates)
    reduced_ok = bool(np.all(_real_inverse_m_check(block, tol)))
    exhaustive = is_inverse_m_interval(A, cap_evals=cap_evals)
    reduced_verdict = YES if reduced_ok else NO
    consistent = reduced_verdict == exhaustive.verdict
    counterexample = None
    if not consistent:
        counterexample = {
            "lo": A.lo.copy(),
            "hi": A.hi.copy(),
            "reduced_verdict": reduced_verdict,
            "exhaustive_verdict": exhaustive.verdict,
            "exhaustive_certificate": exhaustive.certificate,
        }
    return ConjectureProbe(consistent, reduced_verdict, exhaustive.verdict,
                           counterexample)


def _real_p_test(a: np.ndarray, tol: float) -> tuple[bool, tuple | None]:
    """All principal minors positive, by enumeration of index subsets."""
    import itertools

    n = a.shape[0]
    for k in range(1, n + 1):
        for rows in itertools.combinations(range(n), k):
            minor = float(np.linalg.det(a[np.ix_(rows, rows)]))
            if minor <= tol:
                return False, rows
    return True, None


def is_p_matrix_special(A: IntervalMatrix, cap_evals: int = 1 << 24) -> ClassReport:
    """Interval P-matrix test on its polynomially decidable special cases.

    Dispatch: if the midpoint is an M-matrix, P-ness coincides with the
    H-matrix property; if the midpoint or the radius is diagonal, it reduces
    to a P-test of the lower endpoint; otherwise falls back to the
    exponential sign-vertex criterion, capped. Beyond the cap the verdict
    is unknown, never a guess.
    """
    if not A.is_square:
        raise ValueError("P-matrix test requires a square matrix")
    n = A.rows
    tol = _tol(A.lo, A.hi)
    mid, rad = A.mid, A.rad

    if is_m_matrix_real(mid).is_yes:
        h = is_h_matrix_interval(A)
        if h.is_yes:
            return ClassReport("PMatrixSpecialCase", YES, {
                "path": "H-matrix reduction (midpoint is an M-matrix)",
                "v": h.certificate["v"],
            })
        witness = oracle.find_singular_member(A)
        return ClassReport("PMatrixSpecialCase", NO, {
            "path": "H-matrix reduction (midpoint is an M-matrix)",
            "reason": "not an H-matrix, hence not regular, hence not P",
            "witness": witness,
        })

    def _is_diag(m):
        return bool(np.max(np.abs(m - np.diag(np.diag(m))), initial=0.0) <= tol)

    if _is_diag(mid) or _is_diag(rad):
        if (1 << n) > cap_evals:
            return ClassReport("PMatrixSpecialCase", UNKNOWN, {
                "reason": "principal-minor enumeration exceeds the cap",
            }, cost_note="exponential (capped)")
        ok, subset = _real_p_test(A.lo, tol)
        path = "lower-endpoint reduction (diagonal midpoint or radius)"
        if ok:
            return ClassReport("PMatrixSpecialCase", YES, {"path": path},
                               cost_note="exponential in n (principal minors)")
        return ClassReport("PMatrixSpecialCase", NO, {
            "path": path,
            "reason": "lower endpoint has a nonpositive principal minor",
            "witness": A.lo.copy(),
            "principal_subset": subset,
        }, cost_note="exponential in n (principal minors)")

    evals = (1 << max(n - 1, 0)) * ((1 << n) - 1)
    if evals > cap_evals:
        return ClassReport("PMatrixSpecialCase", UNKNOWN, {
            "reason": "sign-vertex P-checks exceed the cap",
        }, cost_note="exponential (capped)")
    for mask in range(1 << max(n - 1, 0)):
        z = np.ones(n)
        for i in range(1, n):
            if (mask >> (i - 1)) & 1:
                z[i] = -1.0
        vertex = mid - np.outer(z, z) * rad
        ok, subset = _real_p_test(vertex, tol)
        if not ok:
            return ClassReport("PMatrixSpecialCase", NO, {
                "path": "sign-vertex enumeration",
                "reason": "sign-vertex matrix has a nonpositive principal minor",
                "witness": vertex,
                "sign_vector": z,
                "principal_subset": subset,
            }, cost_note="exponential (sign-vertex P-checks)")
    return ClassReport("PMatrixSpecialCase", YES, {
        "path": "sign-vertex enumeration",
    }, cost_note="exponential (sign-vertex P-checks)")


def is_positive_definite_sufficient(A) -> ClassReport:
    """Positive definiteness of the symmetric member family, where decidable.

    Yes when the matrix is an H-matrix with positive definite midpoint;
    definitive no when the midpoint is a positive definite M-matrix and the
    H-test fails (the family is then not regular); unknown otherwise.
    """
    try:
        S = as_symmetric(A)
    except ValueError as exc:
        raise PreconditionViolated(str(exc)) from exc
    base = S.base
    mid = S.mid
    mid_eigs = kernel.sym_eigenvalues(mid)
    mid_pd = bool(mid_eigs[-1] > _tol(mid))
    h = is_h_matrix_interval(base)
    if h.is_yes and mid_pd:
        return ClassReport("PositiveDefiniteSufficient", YES, {
            "v": h.certificate["v"],
            "midpoint_eigenvalues": mid_eigs,
        })
    if mid_pd and is_m_matrix_real(mid).is_yes and h.is_no:
        witness = None
        lam = None
        n = S.n
        for mask in range(1 << max(n - 1, 0)):
            z = np.ones(n)
            for i in range(1, n):
                if (mask >> (i - 1)) & 1:
                    z[i] = -1.0
            member = mid - np.outer(z, z) * S.rad
            val = float(kernel.sym_eigenvalues(member)[-1])
            if lam is None or val < lam:
                lam, witness = val, member
        return ClassReport("PositiveDefiniteSufficient", NO, {
            "reason": "midpoint is a positive definite M-matrix but the "
                      "family is not an H-matrix (hence not regular)",
            "witness": witness,
            "witness_lambda_min": lam,
        })
    return ClassReport("PositiveDefiniteSufficient", UNKNOWN, {
        "h_verdict": h.verdict,
        "midpoint_positive_definite": mid_pd,
    })


def is_regular_via_h(A: IntervalMatrix) -> ClassReport:
    """Regularity through the H-matrix property.

    Exact (iff) when the midpoint is an M-matrix; otherwise the H-property
    is still sufficient, and a failed H-test leaves regularity unknown.
    """
    if not A.is_square:
        raise ValueError("regularity test requires a square matrix")
    h = is_h_matrix_interval(A)
    mid_is_m = is_m_matrix_real(A.mid).is_yes
    if h.is_yes:
        return ClassReport("Regular", YES, {
            "v": h.certificate["v"],
            "path": "H-matrix (sufficient for regularity)",
        })
    if mid_is_m:
        witness = oracle.find_singular_member(A)
        return ClassReport("Regular", NO, {
            "path": "regularity iff H (midpoint is an M-matrix)",
            "witness": witness,
        })
    return ClassReport("Regular", UNKNOWN, {
        "reason": "midpoint is not an M-matrix and the H-test failed; "
                  "regularity is undecided by this test",
    })


def classify_all(A: IntervalMatrix, cap_evals: int = 1 << 20) -> list[ClassReport]:
    """Run every applicable recognition test; used by the CLI."""
    reports = [
        is_m_matrix_interval(A),
        is_h_matrix_interval(A),
        is_inverse_nonnegative_interval(A),
        is_totally_positive_interval(A),
        is_b_matrix_interval(A),
        is_p_matrix_special(A, cap_evals=cap_evals),
        is_regular_via_h(A),
    ]
    try:
        reports.append(is_inverse_m_interval(A, cap_evals=cap_evals))
    except CapExceeded:
        reports.append(ClassReport("InverseM", UNKNOWN, {
            "reason": "vertex enumeration exceeds the cap",
        }, cost_note="exponential (capped)"))
    if is_symmetric_family(A):
        reports.append(is_positive_definite_sufficient(A))
    structure = classify_structure(A)
    for flag in ("Nonnegative", "MidpointNonnegative", "DiagonallyInterval",
                 "SymmetricMidpoint"):
        reports.append(ClassReport(flag, YES if flag in structure else NO, {}))
    return reports
