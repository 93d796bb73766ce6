"""Block anti-circulant / block Hankel tensors and their fast products.

A block anti-circulant tensor with anti-circulant blocks (BAAB) is
diagonalized by F_N kron F_n with spectrum vec(ifft2(C)), so its products
reduce to 2D FFTs of the unstacked vectors.  A block Hankel tensor with
Hankel blocks (BHHB) is embedded twice, blocks into anti-circulant blocks
and the block structure into a BAAB tensor whose compressed generating
matrix is the BHHB generating matrix.  The level-k generalization swaps the
2D transforms for k-dimensional ones.

vec / vec^{-1} are column-stacking throughout (Fortran order).
"""

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np

from . import core
from .fourier import fft2, ifft2, fftn, ifftn
from .hankel import times_matrices


def vec(M) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(M).ravel(order="F")


def unvec(v, rows: int, cols: int) -> np.ndarray:
    v = core.as_complex(v)
    if v.shape != (rows * cols,):
        raise ValueError(f"vector must have length {rows * cols}, got {v.shape}")
    return v.reshape((rows, cols), order="F")


@dataclass
class BaabTensor:
    order: int
    C: np.ndarray

    def __post_init__(self):
        self.C = core.as_complex(self.C)
        if self.order < 2:
            raise ValueError("order must be at least 2")
        if self.C.ndim != 2:
            raise ValueError("compressed generating matrix must be 2D")

    @property
    def inner_dim(self) -> int:
        return self.C.shape[0]

    @property
    def outer_dim(self) -> int:
        return self.C.shape[1]

    @property
    def dim(self) -> int:
        return self.inner_dim * self.outer_dim

    @property
    def mode_sizes(self) -> tuple:
        return (self.dim,) * self.order

    @cached_property
    def spectrum(self) -> np.ndarray:
        """ifft2(C); its column-stacking is the diagonal of D in
        D (F_N kron F_n)^m."""
        return ifft2(self.C)

    def _spectral_product(self, xs, expected):
        xs = list(xs)
        if len(xs) != expected:
            raise ValueError(f"expected {expected} vectors, got {len(xs)}")
        buf = self.spectrum.copy()
        for x in xs:
            buf *= fft2(unvec(x, self.inner_dim, self.outer_dim))
        return buf

    def tvp_partial(self, xs) -> np.ndarray:
        Y = fft2(self._spectral_product(xs, self.order - 1))
        return vec(Y)

    def tvp_full(self, xs) -> complex:
        # Unconjugated inner product <A, B> = sum_{jk} A_jk B_jk.
        return complex(np.sum(self._spectral_product(xs, self.order)))

    def to_dense(self, cap: int = core.DENSE_CAP) -> np.ndarray:
        return core.dense_baab(self.C, self.order, cap)


@dataclass
class BhhbTensor:
    order: int
    block_shape: tuple
    outer_shape: tuple
    H: np.ndarray

    def __post_init__(self):
        self.block_shape = tuple(int(n) for n in self.block_shape)
        self.outer_shape = tuple(int(n) for n in self.outer_shape)
        self.H = core.as_complex(self.H)
        m = self.order
        if len(self.block_shape) != m or len(self.outer_shape) != m:
            raise ValueError("block and outer shapes must list one size per mode")
        d_in = sum(self.block_shape) - m + 1
        d_out = sum(self.outer_shape) - m + 1
        if self.H.shape != (d_in, d_out):
            raise ValueError(
                f"generating matrix must be {d_in}x{d_out}, got {self.H.shape}"
            )

    @property
    def mode_sizes(self) -> tuple:
        return tuple(n * N for n, N in zip(self.block_shape, self.outer_shape))

    @property
    def is_square(self) -> bool:
        return len(set(self.block_shape)) == 1 and len(set(self.outer_shape)) == 1

    def embed(self) -> BaabTensor:
        """The BAAB tensor whose compressed generating matrix is H."""
        return BaabTensor(self.order, self.H)

    @cached_property
    def spectrum(self) -> np.ndarray:
        return ifft2(self.H)

    def _padded(self, x, mode):
        n, N = self.block_shape[mode], self.outer_shape[mode]
        X = unvec(x, n, N)
        out = np.zeros(self.H.shape, dtype=np.complex128)
        out[:n, :N] = X
        return out

    def tvp_partial(self, xs, as_matrix: bool = False):
        xs = list(xs)
        if len(xs) != self.order - 1:
            raise ValueError(f"expected {self.order - 1} vectors, got {len(xs)}")
        buf = self.spectrum.copy()
        for p, x in enumerate(xs):
            buf *= fft2(self._padded(x, p + 1))
        Y = fft2(buf)[: self.block_shape[0], : self.outer_shape[0]]
        return Y if as_matrix else vec(Y)

    def tvp_full(self, xs) -> complex:
        xs = list(xs)
        if len(xs) != self.order:
            raise ValueError(f"expected {self.order} vectors, got {len(xs)}")
        buf = self.spectrum.copy()
        for p, x in enumerate(xs):
            buf *= fft2(self._padded(x, p))
        return complex(np.sum(buf))

    def times_matrices(self, mats) -> np.ndarray:
        return times_matrices(self, mats)

    def reduced_unfold_1(self) -> np.ndarray:
        """Mode-1 unfolding with redundant columns removed.

        Rows enumerate (inner i_1, outer j_1) with the inner index fastest;
        the distinct columns are indexed by the remaining inner and outer
        index sums, giving entries H[i_1 + s_i, j_1 + s_j].
        """
        n1, N1 = self.block_shape[0], self.outer_shape[0]
        d_in, d_out = self.H.shape
        r = np.arange(n1 * N1)
        i1, j1 = r % n1, r // n1
        ci, cj = d_in - n1 + 1, d_out - N1 + 1
        c = np.arange(ci * cj)
        si, sj = c % ci, c // ci
        return self.H[np.add.outer(i1, si), np.add.outer(j1, sj)]

    def to_dense(self, cap: int = core.DENSE_CAP) -> np.ndarray:
        return core.dense_bhhb(self.H, self.block_shape, self.outer_shape, cap)


@dataclass
class LevelKHankelTensor:
    """Level-k block Hankel tensor with an order-k generating tensor.

    level_shapes[l][p] is the level-(l+1) factor of the mode-p size, level 1
    innermost.  Level 1 reduces to HankelTensor, level 2 to BhhbTensor.
    """

    order: int
    level_shapes: tuple
    G: np.ndarray

    def __post_init__(self):
        self.level_shapes = tuple(
            tuple(int(n) for n in lv) for lv in self.level_shapes
        )
        self.G = core.as_complex(self.G)
        m = self.order
        if any(len(lv) != m for lv in self.level_shapes):
            raise ValueError("every level must list one size per mode")
        expected = tuple(sum(lv) - m + 1 for lv in self.level_shapes)
        if self.G.shape != expected:
            raise ValueError(
                f"generating tensor must have shape {expected}, got {self.G.shape}"
            )

    @property
    def level(self) -> int:
        return len(self.level_shapes)

    @property
    def mode_sizes(self) -> tuple:
        return tuple(
            math.prod(lv[p] for lv in self.level_shapes) for p in range(self.order)
        )

    @cached_property
    def spectrum(self) -> np.ndarray:
        return ifftn(self.G)

    def _padded(self, x, mode):
        shape = tuple(lv[mode] for lv in self.level_shapes)
        x = core.as_complex(x)
        if x.shape != (math.prod(shape),):
            raise ValueError(
                f"mode-{mode} vector must have length {math.prod(shape)}"
            )
        X = x.reshape(shape, order="F")
        out = np.zeros(self.G.shape, dtype=np.complex128)
        out[tuple(slice(0, s) for s in shape)] = X
        return out

    def tvp_partial(self, xs) -> np.ndarray:
        xs = list(xs)
        if len(xs) != self.order - 1:
            raise ValueError(f"expected {self.order - 1} vectors, got {len(xs)}")
        buf = self.spectrum.copy()
        for p, x in enumerate(xs):
            buf *= fftn(self._padded(x, p + 1))
        corner = tuple(slice(0, lv[0]) for lv in self.level_shapes)
        return fftn(buf)[corner].ravel(order="F")

    def tvp_full(self, xs) -> complex:
        xs = list(xs)
        if len(xs) != self.order:
            raise ValueError(f"expected {self.order} vectors, got {len(xs)}")
        buf = self.spectrum.copy()
        for p, x in enumerate(xs):
            buf *= fftn(self._padded(x, p))
        return complex(np.sum(buf))

    def to_dense(self, cap: int = core.DENSE_CAP) -> np.ndarray:
        return core.dense_level_k(self.G, self.level_shapes, cap)
