"""Dense real linear algebra primitives used by every theorem-backed routine.

Factorizations are LAPACK-backed (via numpy/scipy); this module adds the
package-wide notion of numerical singularity (pivot magnitude relative to
the matrix inf-norm), the exponential max-of-sign-vectors norm, and a thin
LP wrapper with explicit optimal/infeasible/unbounded statuses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.optimize import linprog

from .errors import CapExceeded, CycleLimit, NonConvergence, NotSymmetric, SingularMatrix

PIVOT_RTOL = 1e-12
SIGN_ENUM_CAP = 24


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def inf_norm(a: np.ndarray) -> float:
    """Induced inf-norm (maximum absolute row sum)."""
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a).sum(axis=1)))


def _lu_factor(a: np.ndarray):
    """Pivoted LU with the package's singularity test applied to the pivots."""
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    tol = PIVOT_RTOL * inf_norm(a)
    if np.min(np.abs(np.diag(lu))) <= tol:
        raise SingularMatrix(
            f"pivot magnitude {np.min(np.abs(np.diag(lu))):.3e} at or below "
            f"tolerance {tol:.3e}")
    return lu, piv


def det(a) -> float:
    """Determinant via pivoted LU; returns ~0 for singular input."""
    a = _as_square(a)
    return float(np.linalg.det(a))


def inverse(a) -> np.ndarray:
    """Matrix inverse; raises SingularMatrix on pivot-tolerance failure."""
    a = _as_square(a)
    lu, piv = _lu_factor(a)
    return scipy.linalg.lu_solve((lu, piv), np.eye(a.shape[0]))


def solve(a, b) -> np.ndarray:
    """Solve a x = b; raises SingularMatrix on pivot-tolerance failure."""
    a = _as_square(a)
    lu, piv = _lu_factor(a)
    return scipy.linalg.lu_solve((lu, piv), np.asarray(b, dtype=float))


def _check_symmetric(a: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    a = _as_square(a)
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    if np.max(np.abs(a - a.T)) > tol * scale:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    return a


def sym_eigh(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching orthonormal eigenvectors."""
    a = _check_symmetric(a)
    vals, vecs = np.linalg.eigh(a)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def sym_eigenvalues(a) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, sorted descending."""
    return sym_eigh(a)[0]


def singular_values(a) -> np.ndarray:
    """Singular values sorted descending."""
    a = np.asarray(a, dtype=float)
    return np.linalg.svd(a, compute_uv=False)


def eigenvalues_general(a) -> np.ndarray:
    """All eigenvalues of a general square matrix (complex, unsorted)."""
    a = _as_square(a)
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc


def real_eigenvalues_sorted(a, imag_tol: float = 1e-8) -> np.ndarray:
    """Eigenvalues of a matrix known to have a real spectrum, descending.

    Raises NonConvergence if an imaginary part exceeds ``imag_tol`` relative
    to the matrix scale.
    """
    vals = eigenvalues_general(a)
    scale = max(1.0, inf_norm(a))
    if np.max(np.abs(vals.imag)) > imag_tol * scale:
        raise NonConvergence("matrix does not have a (numerically) real spectrum")
    return np.sort(vals.real)[::-1].copy()


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus."""
    return float(np.max(np.abs(eigenvalues_general(a))))


def sign_vector_norm(a, cap: int = SIGN_ENUM_CAP) -> float:
    """max over z in {+-1}^n of the 1-norm of A z, by exact enumeration.

    This is the norm induced by the vector inf- and 1-norms. The enumeration
    exploits z / -z symmetry and runs in chunks; n above ``cap`` raises
    CapExceeded (no polynomial general algorithm is attempted).
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    n = a.shape[1]
    if n > cap:
        raise CapExceeded(f"sign-vector enumeration needs 2^{n} > 2^{cap} terms")
    if n == 0:
        return 0.0
    total = 1 << (n - 1)
    chunk = 1 << 16
    best = 0.0
    for start in range(0, total, chunk):
        count = min(chunk, total - start)
        masks = np.arange(start, start + count, dtype=np.uint64)
        Z = np.ones((count, n))
        for i in range(1, n):
            bit = (masks >> np.uint64(n - 1 - i)) & np.uint64(1)
            Z[:, i] = 1.0 - 2.0 * bit.astype(float)
        vals = np.abs(Z @ a.T).sum(axis=1)
        best = max(best, float(vals.max()))
    return best


_NORMS = ("inf", "one", "frobenius", "chebyshev", "inf1")


def matrix_norm(a, which: str = "inf", cap: int = SIGN_ENUM_CAP) -> float:
    """Matrix norm: inf, one, frobenius, chebyshev, or inf1 (enumeration)."""
    a = np.asarray(a, dtype=float)
    if which == "inf":
        return inf_norm(a)
    if which == "one":
        return float(np.max(np.abs(a).sum(axis=0)))
    if which == "frobenius":
        return float(np.sqrt(np.sum(a * a)))
    if which == "chebyshev":
        return float(np.max(np.abs(a)))
    if which == "inf1":
        return sign_vector_norm(a, cap=cap)
    raise ValueError(f"unknown norm {which!r}; expected one of {_NORMS}")


def regularity_radius(a, cap: int = SIGN_ENUM_CAP) -> float:
    """Chebyshev distance to the nearest singular matrix: 1 / inf1-norm of the inverse."""
    return 1.0 / sign_vector_norm(inverse(a), cap=cap)


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective: float | None = None
    x: np.ndarray | None = None


def lp_solve(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, bounds=None,
             maximize: bool = False) -> LpResult:
    """Solve a dense LP; variables are free unless bounds are given.

    Returns an LpResult with status "optimal" (objective and argument set),
    "infeasible", or "unbounded". Solver iteration/numerical failures raise
    CycleLimit.
    """
    c = np.asarray(c, dtype=float)
    if bounds is None:
        bounds = [(None, None)] * len(c)
    obj = -c if maximize else c
    res = linprog(obj, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                  bounds=bounds, method="highs")
    if res.status == 0:
        value = float(res.fun)
        if maximize:
            value = -value
        return LpResult("optimal", value, np.asarray(res.x, dtype=float))
    if res.status == 2:
        return LpResult("infeasible")
    if res.status == 3:
        return LpResult("unbounded")
    raise CycleLimit(f"LP solver failed: {res.message}")
