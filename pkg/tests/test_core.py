import numpy as np
import pytest

from hankelfft import core


def rand_tensor(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_matrix(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


class TestModeProduct:
    def test_identity_leaves_tensor_unchanged(self):
        rng = np.random.default_rng(0)
        A = rand_tensor(rng, (2, 3, 4))
        for p in range(3):
            out = core.mode_product(A, p, np.eye(A.shape[p]))
            np.testing.assert_allclose(out, A, atol=1e-14)

    def test_matrix_case_is_m1t_a_m2(self):
        # For a matrix A, mode-1 then mode-2 products give M1.T @ A @ M2
        # with no conjugation anywhere.
        rng = np.random.default_rng(1)
        A = rand_matrix(rng, 2, 2)
        M1 = rand_matrix(rng, 2, 3)
        M2 = rand_matrix(rng, 2, 4)
        out = core.mode_product(core.mode_product(A, 0, M1), 1, M2)
        np.testing.assert_allclose(out, M1.T @ A @ M2, atol=1e-13)
        # Emphatically not the conjugated variant.
        assert not np.allclose(out, M1.conj().T @ A @ M2)

    def test_commutation_across_modes_vs_unfold_oracle(self):
        rng = np.random.default_rng(2)
        A = rand_tensor(rng, (3, 3, 3))
        M = rand_matrix(rng, 3, 3)
        N = rand_matrix(rng, 3, 2)
        ab = core.mode_product(core.mode_product(A, 0, M), 2, N)
        ba = core.mode_product(core.mode_product(A, 2, N), 0, M)
        np.testing.assert_allclose(ab, ba, atol=1e-13)
        # Independent route: unfold, multiply, fold.
        oracle = core.fold(M.T @ core.unfold(A, 0), 0, (3, 3, 3))
        np.testing.assert_allclose(core.mode_product(A, 0, M), oracle, atol=1e-13)

    def test_same_mode_composition_and_linearity(self):
        rng = np.random.default_rng(3)
        A = rand_tensor(rng, (4, 3, 5, 2))
        B = rand_tensor(rng, (4, 3, 5, 2))
        M1 = rand_matrix(rng, 3, 4)
        M2 = rand_matrix(rng, 4, 2)
        lhs = core.mode_product(core.mode_product(A, 1, M1), 1, M2)
        rhs = core.mode_product(A, 1, M1 @ M2)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)
        lhs = core.mode_product(A, 1, M1) + core.mode_product(A, 1, M1)
        np.testing.assert_allclose(lhs, core.mode_product(A, 1, 2 * M1), atol=1e-12)
        lhs = core.mode_product(A, 1, M1) + core.mode_product(B, 1, M1)
        np.testing.assert_allclose(lhs, core.mode_product(A + B, 1, M1), atol=1e-12)

    def test_shape_mismatch_raises(self):
        A = np.zeros((2, 3))
        with pytest.raises(ValueError):
            core.mode_product(A, 0, np.zeros((3, 2)))
        with pytest.raises(ValueError):
            core.mode_product(A, 2, np.zeros((2, 2)))


class TestContraction:
    def test_zero_tensor(self):
        A = np.zeros((3, 3, 3))
        y = core.tvp_partial(A, [np.ones(3), np.ones(3)])
        np.testing.assert_array_equal(y, np.zeros(3))

    def test_anticirculant_impulse_picks_corner(self):
        A = core.dense_anticirculant([1, 2, 3], 3, 3)
        e0 = np.array([1, 0, 0])
        assert core.tvp_full(A, [e0, e0, e0]) == pytest.approx(1.0)

    def test_hankel_ones_example(self):
        A = core.dense_hankel(np.arange(7), (3, 3, 3))
        y = core.tvp_partial(A, [np.ones(3), np.ones(3)])
        np.testing.assert_allclose(y, [18, 27, 36], atol=1e-12)

    def test_matches_mode_product_chain_with_columns(self):
        rng = np.random.default_rng(4)
        A = rand_tensor(rng, (3, 4, 5))
        xs = [rand_matrix(rng, n, 1) for n in (4, 5)]
        chain = core.mode_product(core.mode_product(A, 1, xs[0]), 2, xs[1])
        y = core.tvp_partial(A, [x[:, 0] for x in xs])
        np.testing.assert_allclose(chain[:, 0, 0], y, atol=1e-12)

    def test_length_mismatch(self):
        A = np.zeros((2, 3))
        with pytest.raises(ValueError):
            core.tvp_partial(A, [np.zeros(4)])


class TestUnfold:
    def test_anticirculant_3x3x3_printed_block_matrix(self):
        c0, c1, c2 = 5.0, 7.0, 11.0
        A = core.dense_anticirculant([c0, c1, c2], 3, 3)
        expected = np.hstack(
            [
                [[c0, c1, c2], [c1, c2, c0], [c2, c0, c1]],
                [[c1, c2, c0], [c2, c0, c1], [c0, c1, c2]],
                [[c2, c0, c1], [c0, c1, c2], [c1, c2, c0]],
            ]
        )
        np.testing.assert_array_equal(core.unfold(A, 0), expected)

    def test_roundtrip_exact(self):
        rng = np.random.default_rng(5)
        A = rand_tensor(rng, (2, 3, 4, 2))
        for p in range(4):
            back = core.fold(core.unfold(A, p), p, A.shape)
            np.testing.assert_array_equal(back, A)

    def test_unfold_shape(self):
        A = np.zeros((2, 3, 4))
        assert core.unfold(A, 1).shape == (3, 8)


class TestDenseBuilders:
    def test_hankel_impulse(self):
        T = core.dense_hankel(np.eye(7)[0], (3, 3, 3))
        expected = np.zeros((3, 3, 3))
        expected[0, 0, 0] = 1
        np.testing.assert_array_equal(T.real, expected)

    def test_anticirculant_entry_rule(self):
        c = np.array([1.0, 2.0, 3.0])
        T = core.dense_anticirculant(c, 3, 3)
        for idx in np.ndindex(*T.shape):
            assert T[idx] == c[sum(idx) % 3]

    def test_bhhb_with_unit_blocks_is_plain_hankel(self):
        rng = np.random.default_rng(6)
        outer = (3, 3, 3)
        H = rand_matrix(rng, 1, 7)
        T = core.dense_bhhb(H, (1, 1, 1), outer)
        np.testing.assert_array_equal(T, core.dense_hankel(H[0], outer))

    def test_bhhb_entry_rule(self):
        rng = np.random.default_rng(7)
        H = rand_matrix(rng, 5, 4)
        block, outer = (2, 2, 3), (2, 2, 2)
        T = core.dense_bhhb(H, block, outer)
        for idx in np.ndindex(*T.shape):
            inner = [i % n for i, n in zip(idx, block)]
            blk = [i // n for i, n in zip(idx, block)]
            assert T[idx] == H[sum(inner), sum(blk)]

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            core.dense_hankel(np.zeros(5), (3, 3, 3))

    def test_dense_cap_enforced(self):
        with pytest.raises(ValueError, match="cap"):
            core.dense_hankel(np.zeros(3 * 500 - 2), (500, 500, 500))
        core.dense_hankel(np.zeros(3 * 20 - 2), (20, 20, 20), cap=8000)
        with pytest.raises(ValueError, match="cap"):
            core.dense_hankel(np.zeros(3 * 20 - 2), (20, 20, 20), cap=7999)
