"""Shared seeded generators for random class instances (n = 2 or 3).

Each generator returns an IntervalMatrix verified to belong to its class;
construction margins keep the instances comfortably away from boundary
cases so strictness tolerances never decide a verdict.
"""

from __future__ import annotations

import numpy as np
import pytest

from ivmat import classify, kernel
from ivmat.intervals import IntervalMatrix, IntervalVector, alternating_signs


def make_m_instance(rng: np.random.Generator, n: int) -> IntervalMatrix:
    """Interval M-matrix: diagonally dominant Z lower endpoint, Z upper."""
    off_hi = -rng.uniform(0.05, 0.5, (n, n))
    off_width = rng.uniform(0.0, 0.5, (n, n))
    off_lo = off_hi - off_width
    np.fill_diagonal(off_hi, 0.0)
    np.fill_diagonal(off_lo, 0.0)
    diag_lo = np.abs(off_lo).sum(axis=1) + rng.uniform(0.2, 1.0, n)
    diag_hi = diag_lo + rng.uniform(0.0, 1.0, n)
    lo = off_lo.copy()
    hi = off_hi.copy()
    lo[np.diag_indices(n)] = diag_lo
    hi[np.diag_indices(n)] = diag_hi
    A = IntervalMatrix(lo, hi)
    assert classify.is_m_matrix_interval(A).is_yes
    return A


def make_inverse_nonneg_instance(rng: np.random.Generator, n: int) -> IntervalMatrix:
    """Inverse nonnegative family: M-matrix lower endpoint, upper endpoint
    pushed up until just before its inverse loses nonnegativity."""
    base = make_m_instance(rng, n)
    lo = base.lo
    direction = rng.uniform(0.0, 1.0, (n, n))
    t = 1.0
    for _ in range(60):
        hi = lo + t * direction
        if classify.is_inverse_nonnegative_interval(IntervalMatrix(lo, hi)).is_yes:
            return IntervalMatrix(lo, hi)
        t *= 0.5
    return IntervalMatrix(lo, lo)  # degenerate fallback; still inverse nonneg


def make_tp_instance(rng: np.random.Generator, n: int) -> IntervalMatrix:
    """Totally positive family built around a Gaussian-kernel base matrix."""
    s = alternating_signs(n)
    pattern = np.outer(s, s)
    for _ in range(100):
        x = np.sort(rng.uniform(0.0, 1.0, n)) + np.arange(n) * rng.uniform(0.4, 0.8)
        y = np.sort(rng.uniform(0.0, 1.0, n)) + np.arange(n) * rng.uniform(0.4, 0.8)
        c = rng.uniform(0.5, 1.5)
        down = np.exp(-c * (x[:, None] - y[None, :]) ** 2)
        if not classify.is_totally_positive_real(down).is_yes:
            continue
        delta = rng.uniform(0.0, 0.05, (n, n))
        t = 1.0
        for _ in range(40):
            up = down + 2.0 * t * pattern * delta
            A = IntervalMatrix(np.minimum(down, up), np.maximum(down, up))
            if classify.is_totally_positive_interval(A).is_yes:
                return A
            t *= 0.5
    raise AssertionError("failed to generate a totally positive instance")


def make_inverse_m_instance(rng: np.random.Generator, n: int) -> IntervalMatrix:
    """Inverse-M family centered at the inverse of a strict M-matrix."""
    base = make_m_instance(rng, n)
    mid = kernel.inverse(base.lo)
    delta = rng.uniform(0.2, 1.0, (n, n)) * float(np.min(np.abs(mid))) * 0.5
    t = 1.0
    for _ in range(60):
        A = IntervalMatrix(mid - t * delta, mid + t * delta)
        if np.all(A.lo > 0) and classify.is_inverse_m_interval(A).is_yes:
            return A
        t *= 0.5
    return IntervalMatrix(mid, mid)


def make_diag_psd_instance(rng: np.random.Generator, n: int) -> IntervalMatrix:
    """Diagonally interval family with symmetric PSD lower endpoint."""
    G = rng.normal(size=(n, n))
    margin = rng.uniform(0.3, 1.0)
    mid = G @ G.T + margin * np.eye(n)
    delta = rng.uniform(0.0, 0.9 * margin, n)
    lo = mid - np.diag(delta)
    hi = mid + np.diag(delta)
    A = IntervalMatrix(lo, hi)
    assert kernel.sym_eigenvalues(lo)[-1] >= 0
    return A


def make_h_instance(rng: np.random.Generator, n: int,
                    mixed_diag_signs: bool = True) -> IntervalMatrix:
    """Interval H-matrix with mixed-sign off-diagonal intervals."""
    off_mid = rng.uniform(-0.5, 0.5, (n, n))
    off_rad = rng.uniform(0.0, 0.3, (n, n))
    np.fill_diagonal(off_mid, 0.0)
    np.fill_diagonal(off_rad, 0.0)
    mag_off = np.abs(off_mid) + off_rad
    diag_mig = mag_off.sum(axis=1) + rng.uniform(0.2, 1.0, n)
    diag_rad = rng.uniform(0.0, 0.5, n)
    signs = rng.choice([-1.0, 1.0], n) if mixed_diag_signs else np.ones(n)
    diag_mid = signs * (diag_mig + diag_rad)
    mid = off_mid.copy()
    rad = off_rad.copy()
    mid[np.diag_indices(n)] = diag_mid
    rad[np.diag_indices(n)] = diag_rad
    A = IntervalMatrix.from_midrad(mid, rad)
    assert classify.is_h_matrix_interval(A).is_yes
    return A


def make_sign_stable_instance(rng: np.random.Generator, n: int) -> IntervalMatrix:
    """Family whose member inverses share one strict sign pattern."""
    from ivmat.ranges import _sign_stable_pattern

    for _ in range(200):
        mid = rng.uniform(-2.0, 2.0, (n, n))
        try:
            inv = kernel.inverse(mid)
        except Exception:
            continue
        if np.min(np.abs(inv)) < 0.15:
            continue
        rad = rng.uniform(0.0, 0.08, (n, n))
        A = IntervalMatrix.from_midrad(mid, rad)
        pattern, mode = _sign_stable_pattern(A, 1 << 16)
        if pattern is not None and mode == "vertex-certified":
            return A
    raise AssertionError("failed to generate a sign-stable instance")


def make_b_instance(rng: np.random.Generator, n: int) -> IntervalMatrix:
    """Interval B-matrix: large positive diagonal, small off-diagonal."""
    diag_lo = rng.uniform(2.0, 3.0, n)
    diag_hi = diag_lo + rng.uniform(0.0, 0.5, n)
    off_lo = rng.uniform(0.0, 0.1, (n, n))
    off_hi = off_lo + rng.uniform(0.0, 0.1, (n, n))
    lo = off_lo.copy()
    hi = off_hi.copy()
    lo[np.diag_indices(n)] = diag_lo
    hi[np.diag_indices(n)] = diag_hi
    A = IntervalMatrix(lo, hi)
    assert classify.is_b_matrix_interval(A).is_yes
    return A


def make_nonneg_instance(rng: np.random.Generator, n: int,
                         symmetric: bool = False) -> IntervalMatrix:
    lo = rng.uniform(0.0, 1.0, (n, n))
    hi = lo + rng.uniform(0.0, 1.0, (n, n))
    if symmetric:
        lo = 0.5 * (lo + lo.T)
        hi = 0.5 * (hi + hi.T)
    return IntervalMatrix(lo, hi)


def make_rhs(rng: np.random.Generator, n: int, case: str) -> IntervalVector:
    """Interval rhs in one of the sign cases: nonneg, nonpos, zero,
    cb_nonneg / cb_nonpos (checkerboard), or mixed."""
    if case == "nonneg":
        lo = rng.uniform(0.0, 1.0, n)
        return IntervalVector(lo, lo + rng.uniform(0.0, 2.0, n))
    if case == "nonpos":
        hi = -rng.uniform(0.0, 1.0, n)
        return IntervalVector(hi - rng.uniform(0.0, 2.0, n), hi)
    if case == "zero":
        return IntervalVector(-rng.uniform(0.0, 1.5, n), rng.uniform(0.0, 1.5, n))
    if case in ("cb_nonneg", "cb_nonpos"):
        s = alternating_signs(n)
        lo = rng.uniform(0.1, 1.0, n)
        hi = lo + rng.uniform(0.0, 2.0, n)
        flip = s if case == "cb_nonneg" else -s
        out_lo = np.where(flip > 0, lo, -hi)
        out_hi = np.where(flip > 0, hi, -lo)
        return IntervalVector(out_lo, out_hi)
    if case == "mixed":
        mid = rng.uniform(-1.0, 1.0, n)
        mid[0] = abs(mid[0]) + 0.5
        mid[-1] = -abs(mid[-1]) - 0.5
        rad = rng.uniform(0.0, 0.2, n)
        return IntervalVector(mid - rad, mid + rad)
    raise ValueError(case)


@pytest.fixture(scope="session")
def class_pools():
    """Criterion-1 instance pool: 100 instances per class, n in {2, 3}."""
    rng = np.random.default_rng(20240601)
    pools = {}
    makers = {
        "m": make_m_instance,
        "tp": make_tp_instance,
        "invnonneg": make_inverse_nonneg_instance,
        "inversem": make_inverse_m_instance,
        "diagpsd": make_diag_psd_instance,
    }
    for name, makefn in makers.items():
        pool = []
        for i in range(100):
            n = 2 if i % 2 == 0 else 3
            pool.append(makefn(rng, n))
        pools[name] = pool
    return pools
