import numpy as np
import pytest

from ivmat import kernel, oracle
from ivmat.errors import CapExceeded, SingularInside
from ivmat.intervals import IntervalMatrix, IntervalVector, SymmetricIntervalMatrix


class TestDetRange:
    def test_m_matrix_example(self):
        A = IntervalMatrix([[2, -1], [-1, 2]], [[3, 0], [0, 3]])
        rng = oracle.det_range(A)
        assert rng.lo == pytest.approx(3.0)
        assert rng.hi == pytest.approx(9.0)

    def test_point_matrix(self):
        P = IntervalMatrix.point([[1.0, 2.0], [3.0, 4.0]])
        rng = oracle.det_range(P)
        assert rng.lo == rng.hi == pytest.approx(-2.0)

    def test_singular_member_detected(self):
        A = IntervalMatrix([[1, -1], [-1, 1]], [[3, 0], [0, 3]])
        rng = oracle.det_range(A)
        assert rng.lo <= 0.0 <= rng.hi

    def test_cap(self):
        A = IntervalMatrix.from_midrad(np.zeros((3, 3)), np.ones((3, 3)))
        with pytest.raises(CapExceeded):
            oracle.det_range(A, oracle.OracleConfig(vertex_cap=16))

    def test_sampling_never_exceeds_vertex_range(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            lo = rng.normal(size=(3, 3))
            A = IntervalMatrix(lo, lo + rng.uniform(0, 1, (3, 3)))
            vertex_range = oracle.det_range(A)
            sampled = oracle.range_sampling(kernel.det, A,
                                            oracle.OracleConfig(samples=100))
            assert vertex_range.lo <= sampled.lo + 1e-12
            assert sampled.hi <= vertex_range.hi + 1e-12


class TestSolutionHull:
    def test_inverse_nonneg_example(self):
        A = IntervalMatrix([[2, -1], [-1, 2]], [[3, 0], [0, 3]])
        b = IntervalVector([3, 0], [6, 3])
        hull = oracle.solution_hull(A, b)
        assert np.allclose(hull.lo, [1, 0])
        assert np.allclose(hull.hi, [5, 4])

    def test_point_system(self):
        A = IntervalMatrix.point([[2.0, 0.0], [0.0, 4.0]])
        b = IntervalVector.point([2.0, 8.0])
        hull = oracle.solution_hull(A, b)
        assert np.allclose(hull.lo, [1.0, 2.0]) and np.allclose(hull.hi, [1.0, 2.0])

    def test_singular_inside_raises(self):
        A = IntervalMatrix([[1, -1], [-1, 1]], [[3, 0], [0, 3]])
        with pytest.raises(SingularInside):
            oracle.solution_hull(A, IntervalVector.point([1.0, 1.0]))

    def test_contains_sampled_solutions(self):
        rng = np.random.default_rng(32)
        A = IntervalMatrix.from_midrad(np.array([[4.0, 1.0], [-1.0, 5.0]]),
                                       np.full((2, 2), 0.3))
        b = IntervalVector([-1.0, 0.0], [1.0, 2.0])
        hull = oracle.solution_hull(A, b)
        for m, r in zip(oracle.sample_members(A, 200, rng),
                        oracle.sample_members(b, 200, rng)):
            x = np.linalg.solve(m, r)
            assert hull.contains_point(x, tol=1e-9)


class TestRangeSampling:
    def test_deterministic_with_seed(self):
        A = IntervalMatrix.from_midrad(np.array([[2.0, 1.0], [1.0, 2.0]]),
                                       np.full((2, 2), 0.2))
        cfg = oracle.OracleConfig(seed=7)
        r1 = oracle.range_sampling(kernel.spectral_radius, A, cfg)
        r2 = oracle.range_sampling(kernel.spectral_radius, A, cfg)
        assert r1 == r2

    def test_widens_with_sample_count(self):
        A = IntervalMatrix.from_midrad(np.array([[2.0, 1.0], [1.0, 2.0]]),
                                       np.full((2, 2), 0.2))
        small = oracle.range_sampling(kernel.spectral_radius, A,
                                      oracle.OracleConfig(samples=20, seed=3))
        big = oracle.range_sampling(kernel.spectral_radius, A,
                                    oracle.OracleConfig(samples=400, seed=3))
        assert big.lo <= small.lo and small.hi <= big.hi

    def test_rho_endpoints_on_nonneg_example(self):
        A = IntervalMatrix([[0, 1], [1, 0]], [[1, 2], [2, 1]])
        sampled = oracle.range_sampling(kernel.spectral_radius, A,
                                        oracle.OracleConfig(samples=200))
        assert sampled.lo == pytest.approx(1.0)  # attained at the lower endpoint
        assert sampled.hi == pytest.approx(3.0)  # attained at the upper endpoint

    def test_symmetric_family_sampling(self):
        A = SymmetricIntervalMatrix(IntervalMatrix.from_midrad(
            np.array([[2.0, 1.0], [1.0, 2.0]]), np.full((2, 2), 0.5)))
        r = oracle.range_sampling(lambda m: kernel.sym_eigenvalues(m)[-1], A,
                                  oracle.OracleConfig(samples=100))
        assert r.lo >= 0.0  # members stay diagonally dominant-ish here
        assert r.hi <= 2.5 + 1e-12


class TestMinors:
    def test_spec_examples(self):
        assert oracle.minors_positive([[1.0, 0.2], [0.2, 1.0]]) == (True, True)
        assert oracle.minors_positive(np.eye(2)) == (False, True)
        assert oracle.minors_positive([[0.0, 1.0], [1.0, 0.0]]) == (False, False)

    def test_size_cap(self):
        with pytest.raises(CapExceeded):
            oracle.minors_positive(np.eye(7))


class TestCubeRange:
    def test_running_example(self):
        A = IntervalMatrix([[-1, 1], [1, 0]], [[1, 1], [1, 0]])
        hull = oracle.cube_range(A, oracle.OracleConfig(grid_step=1e-3))
        assert np.allclose(hull.lo, [[-3, 1], [1, -1]], atol=1e-4)
        assert np.allclose(hull.hi, [[3, 2], [2, 1]], atol=1e-4)

    def test_point_matrix_exact_cube(self):
        P = IntervalMatrix.point([[1.0, 2.0], [0.5, -1.0]])
        hull = oracle.cube_range(P)
        expected = np.linalg.matrix_power(P.mid, 3)
        assert np.allclose(hull.lo, expected) and np.allclose(hull.hi, expected)

    def test_rejects_nondiagonal_radius(self):
        A = IntervalMatrix.from_midrad(np.zeros((2, 2)), np.full((2, 2), 0.1))
        with pytest.raises(ValueError):
            oracle.cube_range(A)

    def test_two_parameter_grid(self):
        mid = np.array([[0.5, 1.0], [-1.0, 0.2]])
        A = IntervalMatrix.from_midrad(mid, np.diag([0.5, 0.7]))
        hull = oracle.cube_range(A, oracle.OracleConfig(grid_step=5e-3))
        rng = np.random.default_rng(33)
        for m in oracle.sample_members(A, 300, rng):
            cube = np.linalg.matrix_power(m, 3)
            assert np.all(cube >= hull.lo - 5e-3)
            assert np.all(cube <= hull.hi + 5e-3)


def test_find_singular_member():
    A = IntervalMatrix([[1, -1], [-1, 1]], [[3, 0], [0, 3]])
    member = oracle.find_singular_member(A)
    assert member is not None
    assert A.contains_point(member, tol=1e-9)
    assert abs(kernel.det(member)) < 1e-9

    regular = IntervalMatrix([[2, -1], [-1, 2]], [[3, 0], [0, 3]])
    assert oracle.find_singular_member(regular) is None


def test_symmetric_singular_member_search():
    base = IntervalMatrix([[1, -1], [-1, 1]], [[3, 0], [0, 3]])
    member = oracle.find_singular_member(SymmetricIntervalMatrix(base))
    assert member is not None
    assert np.allclose(member, member.T)
    assert abs(kernel.det(member)) < 1e-9
