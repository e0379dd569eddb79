import numpy as np
import pytest

from ivmat import kernel
from ivmat.errors import CapExceeded, NotSymmetric, SingularMatrix


class TestDet:
    def test_examples(self):
        assert kernel.det(np.eye(3)) == pytest.approx(1.0)
        assert kernel.det([[2.0, -1.0], [-1.0, 2.0]]) == pytest.approx(3.0)
        assert kernel.det([[1.0, -1.0], [-1.0, 1.0]]) == pytest.approx(0.0, abs=1e-14)

    def test_multiplicative_on_random_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            a = rng.normal(size=(4, 4))
            b = rng.normal(size=(4, 4))
            lhs = kernel.det(a @ b)
            rhs = kernel.det(a) * kernel.det(b)
            assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-10)


class TestInverse:
    def test_examples(self):
        assert np.allclose(kernel.inverse(np.diag([3.0, 3.0])), np.diag([1 / 3, 1 / 3]))
        inv = kernel.inverse([[2.0, -1.0], [-1.0, 2.0]])
        assert np.allclose(inv, np.array([[2.0, 1.0], [1.0, 2.0]]) / 3.0)
        with pytest.raises(SingularMatrix):
            kernel.inverse([[1.0, -1.0], [-1.0, 1.0]])

    def test_identity_residual(self):
        rng = np.random.default_rng(9)
        a = rng.normal(size=(5, 5)) + 5 * np.eye(5)
        assert np.allclose(a @ kernel.inverse(a), np.eye(5), atol=1e-10)

    def test_near_singular_pivot_tolerance(self):
        a = np.array([[1.0, 1.0], [1.0, 1.0 + 1e-15]])
        with pytest.raises(SingularMatrix):
            kernel.inverse(a)


class TestSymmetricEigen:
    def test_examples(self):
        assert np.allclose(kernel.sym_eigenvalues(np.diag([3.0, 1.0])), [3.0, 1.0])
        assert np.allclose(kernel.sym_eigenvalues([[2.0, 1.0], [1.0, 2.0]]), [3.0, 1.0])
        assert np.allclose(kernel.sym_eigenvalues([[1.0, 0.2], [0.2, 1.0]]), [1.2, 0.8])

    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetric):
            kernel.sym_eigenvalues([[1.0, 2.0], [0.0, 1.0]])

    def test_residual_bound(self):
        rng = np.random.default_rng(2)
        a = rng.normal(size=(6, 6))
        a = a + a.T
        vals, vecs = kernel.sym_eigh(a)
        scale = kernel.inf_norm(a)
        for i in range(6):
            residual = np.linalg.norm(a @ vecs[:, i] - vals[i] * vecs[:, i])
            assert residual <= 1e-9 * scale


class TestSingularValues:
    def test_examples(self):
        assert np.allclose(kernel.singular_values(np.diag([3.0, 1.0])), [3.0, 1.0])
        assert np.allclose(kernel.singular_values([[2.0, -1.0], [-1.0, 2.0]]), [3.0, 1.0])
        assert np.allclose(kernel.singular_values(np.zeros((2, 2))), [0.0, 0.0])

    def test_matches_gram_eigenvalues(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=(4, 4))
        svals = kernel.singular_values(a)
        gram = np.sqrt(np.maximum(kernel.sym_eigenvalues(a.T @ a), 0.0))
        assert np.allclose(svals, gram, atol=1e-8)


class TestSpectralRadius:
    @pytest.mark.parametrize("a,expected", [
        ([[0.0, 1.0], [1.0, 0.0]], 1.0),
        ([[1.0, 2.0], [2.0, 1.0]], 3.0),
        (np.diag([-5.0, 2.0]), 5.0),
    ])
    def test_examples(self, a, expected):
        assert kernel.spectral_radius(a) == pytest.approx(expected)


class TestNorms:
    def test_examples(self):
        assert kernel.matrix_norm(np.array([[2.0, 1.0], [1.0, 2.0]]) / 3.0,
                                  "inf1") == pytest.approx(2.0)
        assert kernel.matrix_norm([[1.0, 0.0], [0.0, 2.0]],
                                  "frobenius") == pytest.approx(np.sqrt(5.0))
        assert kernel.matrix_norm([[-3.0, 1.0], [0.0, 2.0]],
                                  "chebyshev") == pytest.approx(3.0)
        assert kernel.matrix_norm([[-3.0, 1.0], [0.0, 2.0]],
                                  "inf") == pytest.approx(4.0)
        assert kernel.matrix_norm([[-3.0, 1.0], [0.0, 2.0]],
                                  "one") == pytest.approx(3.0)

    def test_inf1_matches_direct_enumeration(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            a = rng.normal(size=(4, 4))
            best = max(np.abs(a @ z).sum()
                       for z in np.array(np.meshgrid(*[[-1, 1]] * 4)).T.reshape(-1, 4))
            assert kernel.matrix_norm(a, "inf1") == pytest.approx(best)

    def test_inf1_monotone(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            a = rng.normal(size=(3, 3))
            b = np.abs(a) + rng.uniform(0, 1, (3, 3))
            assert (kernel.matrix_norm(a, "inf1")
                    <= kernel.matrix_norm(b, "inf1") + 1e-12)

    def test_inf1_cap(self):
        with pytest.raises(CapExceeded):
            kernel.matrix_norm(np.eye(30), "inf1")

    def test_unknown_norm(self):
        with pytest.raises(ValueError):
            kernel.matrix_norm(np.eye(2), "two")


class TestRegularityRadius:
    def test_examples(self):
        assert kernel.regularity_radius([[2.0, -1.0], [-1.0, 2.0]]) == pytest.approx(0.5)
        assert kernel.regularity_radius(np.diag([3.0, 3.0])) == pytest.approx(1.5)
        assert kernel.regularity_radius(np.eye(2)) == pytest.approx(0.5)

    def test_distance_interpretation(self):
        # a rank-one perturbation of Chebyshev size rr reaches a singular matrix
        rng = np.random.default_rng(13)
        for _ in range(10):
            a = rng.normal(size=(3, 3)) + 3 * np.eye(3)
            inv = kernel.inverse(a)
            r = kernel.regularity_radius(a)
            best = max(((np.abs(inv @ z).sum(), z) for z in
                        np.array(np.meshgrid(*[[-1.0, 1.0]] * 3)).T.reshape(-1, 3)),
                       key=lambda p: p[0])
            z = best[1]
            y = np.sign(inv @ z)
            singular = a - np.outer(z, y) / (y @ inv @ z)
            assert np.max(np.abs(singular - a)) == pytest.approx(r, rel=1e-9)
            assert abs(kernel.det(singular)) < 1e-9 * abs(kernel.det(a))


class TestDerivativeIdentities:
    def test_det_gradient(self):
        rng = np.random.default_rng(10)
        a = rng.normal(size=(3, 3)) + 3 * np.eye(3)
        grad = kernel.det(a) * kernel.inverse(a).T
        h = 1e-6
        for i in range(3):
            for j in range(3):
                ap, am = a.copy(), a.copy()
                ap[i, j] += h
                am[i, j] -= h
                fd = (kernel.det(ap) - kernel.det(am)) / (2 * h)
                assert fd == pytest.approx(grad[i, j], rel=1e-5, abs=1e-7)

    def test_inverse_derivative(self):
        rng = np.random.default_rng(11)
        a = rng.normal(size=(3, 3)) + 3 * np.eye(3)
        inv = kernel.inverse(a)
        h = 1e-6
        for k in range(3):
            for l in range(3):
                ap, am = a.copy(), a.copy()
                ap[k, l] += h
                am[k, l] -= h
                fd = (kernel.inverse(ap) - kernel.inverse(am)) / (2 * h)
                formula = -np.outer(inv[:, k], inv[l, :])
                assert np.allclose(fd, formula, atol=1e-5)

    def test_simple_eigenvalue_derivative(self):
        rng = np.random.default_rng(12)
        a = rng.normal(size=(3, 3))
        a = a + a.T + np.diag([9.0, 4.0, 0.0])
        vals, vecs = kernel.sym_eigh(a)
        h = 1e-6
        for i in range(3):
            x = vecs[:, i]
            for j in range(3):
                for k in range(3):
                    ap, am = a.copy(), a.copy()
                    ap[j, k] += h
                    am[j, k] -= h
                    lp = np.sort(np.linalg.eigvals(ap).real)[::-1][i]
                    lm = np.sort(np.linalg.eigvals(am).real)[::-1][i]
                    fd = (lp - lm) / (2 * h)
                    assert fd == pytest.approx(x[j] * x[k], abs=1e-5)


class TestLp:
    def test_bounded_maximum(self):
        res = kernel.lp_solve([1.0], a_ub=[[1.0]], b_ub=[3.0], maximize=True)
        assert res.status == "optimal"
        assert res.objective == pytest.approx(3.0)
        assert res.x[0] == pytest.approx(3.0)

    def test_simplex_face(self):
        res = kernel.lp_solve([1.0, 1.0], a_ub=[[1.0, 1.0]], b_ub=[1.0],
                              bounds=[(0, None)] * 2, maximize=True)
        assert res.status == "optimal"
        assert res.objective == pytest.approx(1.0)

    def test_unbounded(self):
        res = kernel.lp_solve([1.0], a_ub=[[-1.0]], b_ub=[0.0], maximize=True)
        assert res.status == "unbounded"

    def test_infeasible(self):
        res = kernel.lp_solve([1.0], a_ub=[[1.0], [-1.0]], b_ub=[-1.0, -1.0])
        assert res.status == "infeasible"
