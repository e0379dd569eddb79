"""Brute-force ground truth: vertex enumeration and seeded member sampling.

Vertex enumeration is exact where a multilinearity/monotonicity argument
applies (determinant ranges; solution hulls of regular systems, whose
componentwise extrema occur at vertex matrices and vertex right-hand
sides). Everything else is an inner approximation used for containment
and endpoint-attainment checks, never for equality claims.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, SingularInside
from .intervals import Interval, IntervalMatrix, IntervalVector, SymmetricIntervalMatrix

_CHUNK = 1 << 14


@dataclass
class OracleConfig:
    vertex_cap: int = 1 << 24  # max enumerated realizations per call
    samples: int = 500
    grid_step: float = 1e-2
    seed: int = 0


DEFAULT_CONFIG = OracleConfig()


def _flat_vertex_chunks(lo: np.ndarray, hi: np.ndarray, max_evals: int):
    """Yield stacked vertex realizations of the flat box [lo, hi] in chunks."""
    flat_lo = lo.ravel()
    flat_hi = hi.ravel()
    pos = np.flatnonzero(flat_hi > flat_lo)
    k = len(pos)
    if k >= 63 or (1 << k) > max_evals:
        raise CapExceeded(f"2^{k} vertex realizations exceed the cap of {max_evals}")
    total = 1 << k
    for start in range(0, total, _CHUNK):
        count = min(_CHUNK, total - start)
        masks = np.arange(start, start + count, dtype=np.uint64)
        block = np.broadcast_to(flat_lo, (count, flat_lo.size)).copy()
        for bit, p in enumerate(pos):
            chosen = ((masks >> np.uint64(bit)) & np.uint64(1)).astype(bool)
            block[chosen, p] = flat_hi[p]
        yield block.reshape((count,) + lo.shape)


def sample_members(A: IntervalMatrix | IntervalVector, count: int,
                   rng: np.random.Generator) -> np.ndarray:
    """Uniform per-entry samples from the box; shape (count, *A.shape)."""
    lo, hi = A.lo, A.hi
    u = rng.random((count,) + lo.shape)
    return lo + (hi - lo) * u


def sample_symmetric_members(A: SymmetricIntervalMatrix, count: int,
                             rng: np.random.Generator) -> np.ndarray:
    """Uniform samples from the symmetric member family."""
    lo, hi = A.lo, A.hi
    n = A.n
    u = rng.random((count, n, n))
    iu = np.triu_indices(n)
    full = np.empty((count, n, n))
    vals = lo[iu] + (hi[iu] - lo[iu]) * u[:, iu[0], iu[1]]
    full[:, iu[0], iu[1]] = vals
    full[:, iu[1], iu[0]] = vals
    return full


def det_range(A: IntervalMatrix, cfg: OracleConfig = DEFAULT_CONFIG) -> Interval:
    """Exact determinant range by vertex enumeration.

    Exact because the determinant is affine in each entry, so its extrema
    over the box occur at vertex matrices.
    """
    if not A.is_square:
        raise ValueError("determinant range requires a square matrix")
    best_lo = np.inf
    best_hi = -np.inf
    for block in _flat_vertex_chunks(A.lo, A.hi, cfg.vertex_cap):
        dets = np.linalg.det(block)
        best_lo = min(best_lo, float(dets.min()))
        best_hi = max(best_hi, float(dets.max()))
    return Interval(best_lo, best_hi)


def _regularity_check(A: IntervalMatrix, cfg: OracleConfig) -> None:
    rng = det_range(A, cfg)
    tol = 1e-12 * max(1.0, abs(rng.lo), abs(rng.hi))
    if rng.lo <= tol and rng.hi >= -tol:
        raise SingularInside(
            f"vertex determinant range [{rng.lo:.3e}, {rng.hi:.3e}] contains zero")


def solution_hull(A: IntervalMatrix, b: IntervalVector,
                  cfg: OracleConfig = DEFAULT_CONFIG) -> IntervalVector:
    """Exact hull of {x : Mx = r, M in A, r in b} for regular A.

    Enumerates all vertex (matrix, rhs) pairs; exact because componentwise
    extrema of the solution set are attained there.
    """
    if not A.is_square or A.rows != b.n:
        raise ValueError("system dimensions do not agree")
    _regularity_check(A, cfg)
    n = A.rows
    joint_lo = np.concatenate([A.lo.ravel(), b.lo])
    joint_hi = np.concatenate([A.hi.ravel(), b.hi])
    hull_lo = np.full(n, np.inf)
    hull_hi = np.full(n, -np.inf)
    for block in _flat_vertex_chunks(joint_lo, joint_hi, cfg.vertex_cap):
        mats = block[:, :n * n].reshape(-1, n, n)
        rhs = block[:, n * n:]
        xs = np.linalg.solve(mats, rhs[..., None])[..., 0]
        hull_lo = np.minimum(hull_lo, xs.min(axis=0))
        hull_hi = np.maximum(hull_hi, xs.max(axis=0))
    return IntervalVector(hull_lo, hull_hi)


def range_sampling(f, A: IntervalMatrix | SymmetricIntervalMatrix,
                   cfg: OracleConfig = DEFAULT_CONFIG) -> Interval:
    """Inner approximation of the range of f: vertices plus sampled members.

    For a SymmetricIntervalMatrix the enumeration and sampling stay inside
    the symmetric member family.
    """
    rng = np.random.default_rng(cfg.seed)
    if isinstance(A, SymmetricIntervalMatrix):
        iu = np.triu_indices(A.n)
        box_lo, box_hi = A.lo[iu], A.hi[iu]

        def expand(flat):
            full = np.empty((A.n, A.n))
            full[iu] = flat
            full[(iu[1], iu[0])] = flat
            return full

        members = [expand(v) for chunk in
                   _flat_vertex_chunks(box_lo, box_hi, cfg.vertex_cap)
                   for v in chunk]
        samples = sample_symmetric_members(A, cfg.samples, rng)
    else:
        members = [v for chunk in _flat_vertex_chunks(A.lo, A.hi, cfg.vertex_cap)
                   for v in chunk]
        samples = sample_members(A, cfg.samples, rng)
    vals = [float(f(m)) for m in members]
    vals.extend(float(f(m)) for m in samples)
    return Interval(min(vals), max(vals))


def minors_positive(a: np.ndarray, tol: float = 0.0) -> tuple[bool, bool]:
    """Exhaustive minor checks: (all minors > tol, all principal minors > tol).

    Limited to n <= 6; the number of square submatrices grows as 4^n.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("expected a square matrix")
    if n > 6:
        raise CapExceeded("exhaustive minor enumeration is limited to n <= 6")
    all_pos = True
    principal_pos = True
    idx = range(n)
    for k in range(1, n + 1):
        for rows in itertools.combinations(idx, k):
            for cols in itertools.combinations(idx, k):
                minor = float(np.linalg.det(a[np.ix_(rows, cols)]))
                if minor <= tol:
                    all_pos = False
                    if rows == cols:
                        principal_pos = False
        if not all_pos and not principal_pos:
            break
    return all_pos, principal_pos


def cube_range(A: IntervalMatrix, cfg: OracleConfig = DEFAULT_CONFIG) -> IntervalMatrix:
    """Entrywise range of the third power over a diagonally interval matrix.

    Dense grid (including endpoints) over the non-degenerate diagonal
    entries, at most three of them.
    """
    if not A.is_square:
        raise ValueError("cube range requires a square matrix")
    offdiag_rad = A.rad - np.diag(np.diag(A.rad))
    if np.max(offdiag_rad) > 0:
        raise ValueError("matrix is not diagonally interval")
    n = A.rows
    diag_lo = np.diag(A.lo)
    diag_hi = np.diag(A.hi)
    varying = np.flatnonzero(diag_hi > diag_lo)
    if len(varying) > 3:
        raise CapExceeded("grid oracle supports at most 3 varying diagonal entries")
    axes = []
    for i in varying:
        width = diag_hi[i] - diag_lo[i]
        npts = max(2, int(round(width / cfg.grid_step)) + 1)
        axes.append(np.linspace(diag_lo[i], diag_hi[i], npts))
    total = int(np.prod([len(ax) for ax in axes])) if axes else 1
    if total > cfg.vertex_cap:
        raise CapExceeded(f"{total} grid points exceed the cap of {cfg.vertex_cap}")
    base = A.mid
    if len(varying) == 0:
        cube = np.linalg.matrix_power(base, 3)
        return IntervalMatrix(cube, cube)
    grids = np.meshgrid(*axes, indexing="ij")
    flat = [g.ravel() for g in grids]
    mats = np.broadcast_to(base, (total, n, n)).copy()
    for pos, i in enumerate(varying):
        mats[:, i, i] = flat[pos]
    cubes = np.matmul(np.matmul(mats, mats), mats)
    return IntervalMatrix(cubes.min(axis=0), cubes.max(axis=0))


def find_singular_member(A: IntervalMatrix | SymmetricIntervalMatrix,
                         cfg: OracleConfig = DEFAULT_CONFIG) -> np.ndarray | None:
    """A singular member matrix, or None when every vertex determinant has one sign.

    Looks for a near-zero vertex determinant first, then bisects the segment
    between two opposite-sign vertices (every convex combination of members
    is a member). For a SymmetricIntervalMatrix the search stays symmetric.
    """
    if isinstance(A, SymmetricIntervalMatrix):
        iu = np.triu_indices(A.n)
        box_lo, box_hi = A.lo[iu], A.hi[iu]

        def expand(flat):
            full = np.empty((A.n, A.n))
            full[iu] = flat
            full[(iu[1], iu[0])] = flat
            return full

        chunks = ([expand(v) for v in chunk] for chunk in
                  _flat_vertex_chunks(box_lo, box_hi, cfg.vertex_cap))
        vertices = [v for chunk in chunks for v in chunk]
    else:
        vertices = [v for chunk in _flat_vertex_chunks(A.lo, A.hi, cfg.vertex_cap)
                    for v in chunk]
    dets = np.array([np.linalg.det(v) for v in vertices])
    scale = max(1.0, float(np.max(np.abs(dets))))
    tol = 1e-12 * scale
    near = np.flatnonzero(np.abs(dets) <= tol)
    if len(near):
        return vertices[int(near[0])]
    pos = np.flatnonzero(dets > 0)
    neg = np.flatnonzero(dets < 0)
    if not len(pos) or not len(neg):
        return None
    v_pos = vertices[int(pos[0])]
    v_neg = vertices[int(neg[0])]
    t_lo, t_hi = 0.0, 1.0  # det at t_lo positive, at t_hi negative
    for _ in range(200):
        t = 0.5 * (t_lo + t_hi)
        d = float(np.linalg.det((1 - t) * v_pos + t * v_neg))
        if abs(d) <= tol:
            break
        if d > 0:
            t_lo = t
        else:
            t_hi = t
    t = 0.5 * (t_lo + t_hi)
    return (1 - t) * v_pos + t * v_neg
