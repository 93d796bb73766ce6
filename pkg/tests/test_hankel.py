import numpy as np
import pytest

from hankelfft import core, fourier
from hankelfft.hankel import AntiCirculantTensor, HankelTensor, times_matrices


def rand_vec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def relerr(a, b):
    return np.linalg.norm(np.asarray(a) - np.asarray(b)) / (np.linalg.norm(b) + 1.0)


class TestSpectrum:
    def test_impulse(self):
        C = AntiCirculantTensor(3, 5, np.eye(5)[0])
        np.testing.assert_allclose(C.spectrum, np.full(5, 0.2), atol=1e-14)

    def test_constant(self):
        C = AntiCirculantTensor(2, 4, np.ones(4))
        np.testing.assert_allclose(C.spectrum, [1, 0, 0, 0], atol=1e-14)

    def test_diagonalization_reconstructs_dense(self):
        # D F^m with diag(D) = ifft(c) must reproduce the dense tensor.
        rng = np.random.default_rng(0)
        for n, m in [(3, 3), (5, 3), (4, 4), (8, 2)]:
            c = rand_vec(rng, n)
            C = AntiCirculantTensor(m, n, c)
            D = np.zeros((n,) * m, dtype=complex)
            D[tuple(np.arange(n) for _ in range(m))] = C.spectrum
            F = fourier.fourier_matrix(n)
            recon = D
            for p in range(m):
                recon = core.mode_product(recon, p, F)
            dense = C.to_dense()
            assert np.linalg.norm(recon - dense) <= 1e-12 * np.linalg.norm(dense)


class TestSpecialEigenpairs:
    def test_ones_eigenpair_small_case(self):
        C = AntiCirculantTensor(3, 3, [1, 2, 3])
        (lam, v), = C.special_eigenpairs()
        assert lam == pytest.approx(18.0)
        dense = C.to_dense()
        np.testing.assert_allclose(core.tvp_partial(dense, [v, v]), lam * v, atol=1e-12)

    def test_matrix_case_both_pairs(self):
        a, b = 2.0 + 1j, -0.5
        C = AntiCirculantTensor(2, 2, [a, b])
        pairs = C.special_eigenpairs()
        assert len(pairs) == 2
        assert pairs[0][0] == pytest.approx(a + b)
        assert pairs[1][0] == pytest.approx(a - b)
        np.testing.assert_allclose(pairs[1][1], [1, -1])

    def test_zero_tensor(self):
        C = AntiCirculantTensor(3, 4, np.zeros(4))
        for lam, _ in C.special_eigenpairs():
            assert lam == 0

    def test_product_identity_random(self):
        rng = np.random.default_rng(1)
        for n, m in [(3, 3), (4, 3), (6, 4)]:
            C = AntiCirculantTensor(m, n, rand_vec(rng, n))
            for lam, v in C.special_eigenpairs():
                y = C.tvp_partial([v] * (m - 1))
                assert np.max(np.abs(y - lam * v)) <= 1e-10 * (1 + abs(lam))


class TestAntiCirculantProducts:
    def test_zero_vector_kills_product(self):
        rng = np.random.default_rng(2)
        C = AntiCirculantTensor(3, 5, rand_vec(rng, 5))
        y = C.tvp_partial([np.zeros(5), rand_vec(rng, 5)])
        np.testing.assert_allclose(y, 0, atol=1e-14)

    def test_all_ones_full_product(self):
        C = AntiCirculantTensor(3, 3, [1, 2, 3])
        assert C.tvp_full([np.ones(3)] * 3) == pytest.approx(54.0)

    def test_fast_vs_dense_oracle(self):
        rng = np.random.default_rng(3)
        for n, m in [(3, 2), (5, 3), (8, 4), (7, 3)]:
            C = AntiCirculantTensor(m, n, rand_vec(rng, n))
            dense = C.to_dense()
            xs = [rand_vec(rng, n) for _ in range(m)]
            assert relerr(C.tvp_partial(xs[1:]), core.tvp_partial(dense, xs[1:])) <= 1e-11
            assert relerr(C.tvp_full(xs), core.tvp_full(dense, xs)) <= 1e-11

    def test_length_mismatch(self):
        C = AntiCirculantTensor(3, 4, np.zeros(4))
        with pytest.raises(ValueError):
            C.tvp_partial([np.zeros(3), np.zeros(4)])


class TestEmbedding:
    def test_embedded_dimension(self):
        assert HankelTensor((3, 3, 3), np.zeros(7)).embed().dim == 7
        assert HankelTensor((2, 3, 4), np.zeros(7)).embed().dim == 7

    def test_hankel_sits_in_corner(self):
        rng = np.random.default_rng(4)
        for shape in [(3, 3, 3), (2, 3, 4), (4, 2)]:
            dof = sum(shape) - len(shape) + 1
            H = HankelTensor(shape, rand_vec(rng, dof))
            corner = H.embed().to_dense()[tuple(slice(0, n) for n in shape)]
            np.testing.assert_array_equal(H.to_dense(), corner)

    def test_full_product_matches_embedded_padded(self):
        rng = np.random.default_rng(5)
        shape = (3, 4, 2)
        H = HankelTensor(shape, rand_vec(rng, 7))
        xs = [rand_vec(rng, n) for n in shape]
        padded = []
        for x in xs:
            xp = np.zeros(7, dtype=complex)
            xp[: len(x)] = x
            padded.append(xp)
        a = H.tvp_full(xs)
        b = H.embed().tvp_full(padded)
        assert abs(a - b) <= 1e-13 * (1 + abs(b))


class TestHankelProducts:
    def test_zero_generator(self):
        H = HankelTensor((3, 3, 3), np.zeros(7))
        np.testing.assert_allclose(H.tvp_partial([np.ones(3)] * 2), 0, atol=1e-14)

    def test_counting_example(self):
        H = HankelTensor((3, 3, 3), np.arange(7))
        y = H.tvp_partial([np.ones(3), np.ones(3)])
        np.testing.assert_allclose(y, [18, 27, 36], atol=1e-11)

    def test_fast_vs_dense_oracle(self):
        rng = np.random.default_rng(6)
        shapes = [(5, 6, 7), (4, 4), (3, 5, 2, 4), (6, 6, 6)]
        for shape in shapes:
            dof = sum(shape) - len(shape) + 1
            H = HankelTensor(shape, rand_vec(rng, dof))
            dense = H.to_dense()
            xs = [rand_vec(rng, n) for n in shape]
            assert relerr(H.tvp_partial(xs[1:]), core.tvp_partial(dense, xs[1:])) <= 1e-11
            assert relerr(H.tvp_full(xs), core.tvp_full(dense, xs)) <= 1e-11

    def test_length_mismatch(self):
        H = HankelTensor((3, 3, 3), np.zeros(7))
        with pytest.raises(ValueError):
            H.tvp_partial([np.zeros(3), np.zeros(4)])


class TestTimesMatrices:
    def test_single_columns_reduce_to_partial_product(self):
        rng = np.random.default_rng(7)
        H = HankelTensor((4, 4, 4), rand_vec(rng, 10))
        xs = [rand_vec(rng, 4) for _ in range(2)]
        T = H.times_matrices([x[:, None] for x in xs])
        np.testing.assert_allclose(T[:, 0, 0], H.tvp_partial(xs), atol=1e-12)

    def test_identity_matrices_give_dense(self):
        rng = np.random.default_rng(8)
        H = HankelTensor((3, 4, 3), rand_vec(rng, 8))
        T = H.times_matrices([np.eye(4), np.eye(3)])
        np.testing.assert_allclose(T, H.to_dense(), atol=1e-12)

    def test_matches_dense_mode_products(self):
        rng = np.random.default_rng(9)
        H = HankelTensor((4, 4, 4), rand_vec(rng, 10))
        U2 = rand_vec(rng, 8).reshape(4, 2)
        U3 = rand_vec(rng, 8).reshape(4, 2)
        fast = H.times_matrices([U2, U3])
        dense = core.mode_product(core.mode_product(H.to_dense(), 1, U2), 2, U3)
        assert relerr(fast, dense) <= 1e-11


class TestReducedUnfold:
    def test_counting_example(self):
        H = HankelTensor((3, 3, 3), np.arange(7))
        expected = [[0, 1, 2, 3, 4], [1, 2, 3, 4, 5], [2, 3, 4, 5, 6]]
        np.testing.assert_array_equal(H.reduced_unfold(0).real, expected)

    def test_impulse(self):
        H = HankelTensor((3, 3, 3), np.eye(7)[0])
        M = H.reduced_unfold(0)
        assert M[0, 0] == 1
        assert np.count_nonzero(M) == 1

    def test_same_column_space_as_full_unfold(self):
        rng = np.random.default_rng(10)
        H = HankelTensor((3, 4, 3), rand_vec(rng, 8))
        reduced = H.reduced_unfold(1)
        full = core.unfold(H.to_dense(), 1)
        # Compare orthonormal bases via principal angles.
        k = np.linalg.matrix_rank(full)
        Qr = np.linalg.qr(reduced)[0][:, :k]
        Qf = np.linalg.qr(full)[0][:, :k]
        s = np.linalg.svd(Qr.conj().T @ Qf, compute_uv=False)
        assert np.all(np.abs(s - 1) <= 1e-8)
