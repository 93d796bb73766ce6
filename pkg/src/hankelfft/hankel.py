"""Anti-circulant and Hankel tensors with FFT-based fast products.

An anti-circulant tensor is diagonalized by the Fourier matrix: writing it
as D F^m with diag(D) = ifft(c) turns every tensor-vector product into a
handful of FFTs.  A general Hankel tensor is handled by embedding it into
the anti-circulant tensor of dimension d = n_1 + ... + n_m - m + 1 whose
compressed generating vector is the Hankel generating vector; the Hankel
tensor sits in the upper-left corner, so products follow from zero-padding
and truncation.  The dense tensor is never formed.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iter_product

import numpy as np

from . import core
from .fourier import fft1, ifft1


@dataclass
class AntiCirculantTensor:
    order: int
    dim: int
    c: np.ndarray

    def __post_init__(self):
        self.c = core.as_complex(self.c)
        if self.order < 2:
            raise ValueError("order must be at least 2")
        if self.c.shape != (self.dim,):
            raise ValueError(
                f"compressed generating vector must have length {self.dim}"
            )

    @cached_property
    def spectrum(self) -> np.ndarray:
        """Diagonal of D in the factorization D F^m, i.e. ifft(c)."""
        return ifft1(self.c)

    def tvp_partial(self, xs) -> np.ndarray:
        """y = C x_2 ... x_m via fft(ifft(c) .* fft(x_2) .* ... .* fft(x_m))."""
        buf = self._spectral_product(xs, expected=self.order - 1)
        return fft1(buf)

    def tvp_full(self, xs) -> complex:
        """alpha = ifft(c)^T (fft(x_1) .* ... .* fft(x_m)); no conjugation."""
        c_hat = self.spectrum
        buf = np.ones(self.dim, dtype=np.complex128)
        xs = list(xs)
        if len(xs) != self.order:
            raise ValueError(f"expected {self.order} vectors, got {len(xs)}")
        for x in xs:
            x = core.as_complex(x)
            if x.shape != (self.dim,):
                raise ValueError("vector length must equal the tensor dimension")
            buf *= fft1(x)
        return complex(np.dot(c_hat, buf))

    def _spectral_product(self, xs, expected):
        xs = list(xs)
        if len(xs) != expected:
            raise ValueError(f"expected {expected} vectors, got {len(xs)}")
        buf = self.spectrum.copy()
        for x in xs:
            x = core.as_complex(x)
            if x.shape != (self.dim,):
                raise ValueError("vector length must equal the tensor dimension")
            buf *= fft1(x)
        return buf

    def special_eigenpairs(self):
        """Closed-form eigenpairs: (n^{m-2} 1^T c, 1) always, and for even n
        the alternating pair (n^{m-2} sum_k (-1)^k c_k, [1,-1,...])."""
        n, m = self.dim, self.order
        scale = n ** (m - 2)
        ones = np.ones(n, dtype=np.complex128)
        pairs = [(complex(scale * self.c.sum()), ones)]
        if n % 2 == 0:
            alt = np.where(np.arange(n) % 2 == 0, 1.0, -1.0).astype(np.complex128)
            pairs.append((complex(scale * np.dot(alt, self.c)), alt))
        return pairs

    def to_dense(self, cap: int = core.DENSE_CAP) -> np.ndarray:
        return core.dense_anticirculant(self.c, self.order, self.dim, cap)


@dataclass
class HankelTensor:
    shape: tuple
    h: np.ndarray

    def __post_init__(self):
        self.shape = tuple(int(n) for n in self.shape)
        self.h = core.as_complex(self.h)
        if len(self.shape) < 1 or any(n < 1 for n in self.shape):
            raise ValueError("shape entries must be positive")
        if self.h.shape != (self.dof,):
            raise ValueError(
                f"generating vector must have length {self.dof}, got {len(self.h)}"
            )

    @property
    def order(self) -> int:
        return len(self.shape)

    @property
    def dof(self) -> int:
        """Degree of freedom n_1 + ... + n_m - m + 1."""
        return sum(self.shape) - self.order + 1

    @property
    def mode_sizes(self) -> tuple:
        return self.shape

    @property
    def is_square(self) -> bool:
        return len(set(self.shape)) == 1

    def embed(self) -> AntiCirculantTensor:
        """The anti-circulant tensor of dimension d_H holding this Hankel
        tensor in its upper-left corner."""
        return AntiCirculantTensor(self.order, self.dof, self.h)

    @cached_property
    def _embedding(self) -> AntiCirculantTensor:
        return self.embed()

    def _pad(self, x, mode):
        x = core.as_complex(x)
        if x.shape != (self.shape[mode],):
            raise ValueError(
                f"mode-{mode} vector must have length {self.shape[mode]}"
            )
        out = np.zeros(self.dof, dtype=np.complex128)
        out[: x.shape[0]] = x
        return out

    def tvp_partial(self, xs) -> np.ndarray:
        """y = H x_2 ... x_m: zero-pad, anti-circulant product, truncate."""
        xs = list(xs)
        if len(xs) != self.order - 1:
            raise ValueError(f"expected {self.order - 1} vectors, got {len(xs)}")
        padded = [self._pad(x, p + 1) for p, x in enumerate(xs)]
        y = self._embedding.tvp_partial(padded)
        return y[: self.shape[0]]

    def tvp_full(self, xs) -> complex:
        xs = list(xs)
        if len(xs) != self.order:
            raise ValueError(f"expected {self.order} vectors, got {len(xs)}")
        padded = [self._pad(x, p) for p, x in enumerate(xs)]
        return self._embedding.tvp_full(padded)

    def times_matrices(self, mats) -> np.ndarray:
        return times_matrices(self, mats)

    def reduced_unfold(self, axis: int = 0) -> np.ndarray:
        """Mode-`axis` unfolding with redundant columns removed: the
        I_p x (d_H - I_p + 1) Hankel matrix with the same generating vector."""
        n = self.shape[axis]
        rows = np.arange(n)
        cols = np.arange(self.dof - n + 1)
        return self.h[np.add.outer(rows, cols)]

    def reduced_unfold_1(self) -> np.ndarray:
        return self.reduced_unfold(0)

    def to_dense(self, cap: int = core.DENSE_CAP) -> np.ndarray:
        return core.dense_hankel(self.h, self.shape, cap)


def times_matrices(tensor, mats) -> np.ndarray:
    """Structured tensor-matrix product over modes 2..m, column by column.

    mats[p] has tensor.mode_sizes[p+1] rows; the result has shape
    (n_1, R_2, ..., R_m) with slice [:, j_2, ..., j_m] equal to the partial
    product against the selected columns.  Conjugation is the caller's
    responsibility.
    """
    sizes = tensor.mode_sizes
    mats = [core.as_complex(M) for M in mats]
    if len(mats) != len(sizes) - 1:
        raise ValueError(f"expected {len(sizes) - 1} matrices, got {len(mats)}")
    for p, M in enumerate(mats):
        if M.ndim != 2 or M.shape[0] != sizes[p + 1]:
            raise ValueError(f"matrix {p} must have {sizes[p + 1]} rows")
    ranks = tuple(M.shape[1] for M in mats)
    out = np.empty((sizes[0],) + ranks, dtype=np.complex128)
    for combo in iter_product(*(range(r) for r in ranks)):
        cols = [M[:, j] for M, j in zip(mats, combo)]
        out[(slice(None),) + combo] = tensor.tvp_partial(cols)
    return out
