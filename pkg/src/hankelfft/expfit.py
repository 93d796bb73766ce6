"""Exponential data fitting: signal models, Hankel/BHHB pole estimation.

A 1D signal x_n = sum_k c_k z_k^n is folded into a Hankel tensor whose
generating vector is the sample vector; the Vandermonde structure of that
tensor means the mode-1 factor of its best rank-(K,...,K) approximation
spans the same column space as the Vandermonde matrix of the poles, so the
poles fall out of a shift-invariance relation solved by total least
squares.  The 2D case folds the sample matrix into a BHHB tensor whose
factor spans the column-wise Kronecker product of two Vandermonde matrices,
and two selection-operator relations recover both pole families.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.base import BaseEstimator

from . import core
from .block import BhhbTensor
from .decompose import DegenerateSystemError, hooi, hooi_symmetric, tls_solve
from .hankel import HankelTensor


# ---------------------------------------------------------------------------
# signal models


def _complex_noise(shape, sigma, rng):
    rng = np.random.default_rng(rng)
    scale = sigma / np.sqrt(2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


@dataclass
class ExpModel1D:
    """Sum of K exponentially damped complex sinusoids.

    Term k contributes amplitude * exp(i*phase) * exp((-damping + i*pulsation) * n * dt),
    i.e. c_k z_k^n with c_k = amplitude*exp(i*phase) and
    z_k = exp((-damping + i*pulsation) * dt).
    """

    amplitudes: np.ndarray
    phases: np.ndarray
    dampings: np.ndarray
    pulsations: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        self.amplitudes = np.atleast_1d(np.asarray(self.amplitudes, dtype=float))
        self.phases = np.atleast_1d(np.asarray(self.phases, dtype=float))
        self.dampings = np.atleast_1d(np.asarray(self.dampings, dtype=float))
        self.pulsations = np.atleast_1d(np.asarray(self.pulsations, dtype=float))
        k = len(self.amplitudes)
        if not (len(self.phases) == len(self.dampings) == len(self.pulsations) == k):
            raise ValueError("all parameter arrays must have the same length")

    @property
    def n_terms(self) -> int:
        return len(self.amplitudes)

    @property
    def c(self) -> np.ndarray:
        return self.amplitudes * np.exp(1j * self.phases)

    @property
    def z(self) -> np.ndarray:
        return np.exp((-self.dampings + 1j * self.pulsations) * self.dt)

    @classmethod
    def from_poles(cls, c, z, dt: float = 1.0) -> "ExpModel1D":
        c = np.atleast_1d(core.as_complex(c))
        z = np.atleast_1d(core.as_complex(z))
        return cls(
            amplitudes=np.abs(c),
            phases=np.angle(c),
            dampings=-np.log(np.abs(z)) / dt,
            pulsations=np.angle(z) / dt,
            dt=dt,
        )

    def synth(self, n_samples: int, noise: float = 0.0, rng=None) -> np.ndarray:
        if n_samples < 1:
            raise ValueError("need at least one sample")
        x = vandermonde(self.z, n_samples) @ self.c
        if noise > 0:
            x = x + _complex_noise(n_samples, noise, rng)
        return x


@dataclass
class ExpModel2D:
    """2D exponential model x_{n1,n2} = sum_k c_k z1_k^{n1} z2_k^{n2}."""

    amplitudes: np.ndarray
    phases: np.ndarray
    dampings1: np.ndarray
    pulsations1: np.ndarray
    dampings2: np.ndarray
    pulsations2: np.ndarray
    dt1: float = 1.0
    dt2: float = 1.0

    def __post_init__(self):
        arrays = [
            np.atleast_1d(np.asarray(a, dtype=float))
            for a in (
                self.amplitudes,
                self.phases,
                self.dampings1,
                self.pulsations1,
                self.dampings2,
                self.pulsations2,
            )
        ]
        (
            self.amplitudes,
            self.phases,
            self.dampings1,
            self.pulsations1,
            self.dampings2,
            self.pulsations2,
        ) = arrays
        if len({len(a) for a in arrays}) != 1:
            raise ValueError("all parameter arrays must have the same length")

    @property
    def n_terms(self) -> int:
        return len(self.amplitudes)

    @property
    def c(self) -> np.ndarray:
        return self.amplitudes * np.exp(1j * self.phases)

    @property
    def z1(self) -> np.ndarray:
        return np.exp((-self.dampings1 + 1j * self.pulsations1) * self.dt1)

    @property
    def z2(self) -> np.ndarray:
        return np.exp((-self.dampings2 + 1j * self.pulsations2) * self.dt2)

    @classmethod
    def from_poles(cls, c, z1, z2, dt1: float = 1.0, dt2: float = 1.0) -> "ExpModel2D":
        c = np.atleast_1d(core.as_complex(c))
        z1 = np.atleast_1d(core.as_complex(z1))
        z2 = np.atleast_1d(core.as_complex(z2))
        return cls(
            amplitudes=np.abs(c),
            phases=np.angle(c),
            dampings1=-np.log(np.abs(z1)) / dt1,
            pulsations1=np.angle(z1) / dt1,
            dampings2=-np.log(np.abs(z2)) / dt2,
            pulsations2=np.angle(z2) / dt2,
            dt1=dt1,
            dt2=dt2,
        )

    def synth(self, n1: int, n2: int, noise: float = 0.0, rng=None) -> np.ndarray:
        if n1 < 1 or n2 < 1:
            raise ValueError("need at least one sample per dimension")
        X = vandermonde(self.z1, n1) @ np.diag(self.c) @ vandermonde(self.z2, n2).T
        if noise > 0:
            X = X + _complex_noise((n1, n2), noise, rng)
        return X


def two_peak_model() -> ExpModel2D:
    """The 2-peak 2D test signal used throughout the examples and CLI demos."""
    z1 = np.exp([-0.01 + 2j * np.pi * 0.20, -0.02 + 2j * np.pi * 0.22])
    z2 = np.exp([-0.02 + 2j * np.pi * 0.18, -0.01 - 2j * np.pi * 0.20])
    return ExpModel2D.from_poles([1.0, 1.0], z1, z2)


# ---------------------------------------------------------------------------
# Vandermonde structure


def vandermonde(z, rows: int) -> np.ndarray:
    """rows x K matrix with columns (1, z_k, z_k^2, ...)."""
    z = np.atleast_1d(core.as_complex(z))
    return z[np.newaxis, :] ** np.arange(rows)[:, np.newaxis]


def khatri_rao(A, B) -> np.ndarray:
    """Column-wise Kronecker product: column j is kron(A[:, j], B[:, j])."""
    A = core.as_complex(A)
    B = core.as_complex(B)
    if A.shape[1] != B.shape[1]:
        raise ValueError("column counts must match")
    return (A[:, np.newaxis, :] * B[np.newaxis, :, :]).reshape(
        A.shape[0] * B.shape[0], A.shape[1]
    )


def vandermonde_tensor_1d(c, z, shape) -> np.ndarray:
    """Dense diag(c) x_1 Z_1^T ... x_m Z_m^T with Vandermonde factors Z_p."""
    c = np.atleast_1d(core.as_complex(c))
    z = np.atleast_1d(core.as_complex(z))
    k = len(c)
    D = np.zeros((k,) * len(shape), dtype=np.complex128)
    D[tuple(np.arange(k) for _ in shape)] = c
    T = D
    for p, n in enumerate(shape):
        T = core.mode_product(T, p, vandermonde(z, n).T)
    return T


def vandermonde_tensor_2d(c, z1, z2, block_shape, outer_shape) -> np.ndarray:
    """Dense level-2 counterpart with factors Z_{2,p} khatri_rao Z_{1,p}."""
    c = np.atleast_1d(core.as_complex(c))
    k = len(c)
    m = len(block_shape)
    D = np.zeros((k,) * m, dtype=np.complex128)
    D[tuple(np.arange(k) for _ in range(m))] = c
    T = D
    for p in range(m):
        F = khatri_rao(vandermonde(z2, outer_shape[p]), vandermonde(z1, block_shape[p]))
        T = core.mode_product(T, p, F.T)
    return T


def select(A, which: str, inner: int, outer: int) -> np.ndarray:
    """Row-selection operators on an (inner*outer) x K matrix.

    "1up"/"1down" drop the last/first row of each inner block; "2up"/"2down"
    drop the last/first block.  These express the two shift-invariance
    relations of a column-wise Kronecker product of Vandermonde matrices.
    """
    A = core.as_complex(A)
    if A.shape[0] != inner * outer:
        raise ValueError(f"matrix must have {inner * outer} rows")
    if which in ("1up", "1down"):
        if inner < 2:
            raise ValueError("inner dimension must be at least 2 for 1-operators")
        r = np.arange(inner * outer)
        mask = (r % inner) != (inner - 1 if which == "1up" else 0)
        return A[mask]
    if which in ("2up", "2down"):
        if outer < 2:
            raise ValueError("outer dimension must be at least 2 for 2-operators")
        return A[: (outer - 1) * inner] if which == "2up" else A[inner:]
    raise ValueError(f"unknown selection operator {which!r}")


# ---------------------------------------------------------------------------
# pole estimation


@dataclass
class PoleEstimate1D:
    poles: np.ndarray
    amplitudes: np.ndarray

    @property
    def n_terms(self) -> int:
        return len(self.poles)


@dataclass
class PoleEstimate2D:
    poles1: np.ndarray
    poles2: np.ndarray
    amplitudes: np.ndarray
    pairing_ok: bool = True

    @property
    def n_terms(self) -> int:
        return len(self.poles1)


def balanced_shape(n_samples: int, order: int) -> tuple:
    """Mode sizes as close to square as possible with sum n_samples + order - 1."""
    total = n_samples + order - 1
    base, rem = divmod(total, order)
    if base < 1:
        raise ValueError("signal too short for the requested order")
    return tuple(base + 1 for _ in range(rem)) + tuple(base for _ in range(order - rem))


def match_poles(estimated, truth) -> np.ndarray:
    """Per-pole relative errors under the best one-to-one matching."""
    estimated = np.atleast_1d(core.as_complex(estimated))
    truth = np.atleast_1d(core.as_complex(truth))
    cost = np.abs(estimated[:, None] - truth[None, :]) / np.abs(truth[None, :])
    rows, cols = linear_sum_assignment(cost)
    errs = np.empty(len(truth))
    errs[cols] = cost[rows, cols]
    return errs


def _mode1_factor(tensor, k: int, tol: float, max_iter: int):
    """Rank-k mode-1 factor: symmetric fast HOOI when square, dense otherwise."""
    sing = np.linalg.svd(tensor.reduced_unfold_1(), compute_uv=False)
    if sing[0] == 0 or sing[k - 1] < 1e-13 * sing[0]:
        raise DegenerateSystemError(
            f"signal does not support {k} terms (rank-deficient unfolding)"
        )
    if getattr(tensor, "is_square", False):
        return hooi_symmetric(tensor, k, tol=tol, max_iter=max_iter).factor
    dense = tensor.to_dense()
    return hooi(dense, (k,) * len(tensor.mode_sizes), tol=tol, max_iter=max_iter).factors[0]


def estimate_poles_1d(
    x,
    k: int,
    order: int = 3,
    dims=None,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> PoleEstimate1D:
    """Estimate K poles of a 1D signal via Hankel HOOI + shift invariance + TLS."""
    x = core.as_complex(np.atleast_1d(x))
    if dims is None:
        dims = balanced_shape(len(x), order)
    dims = tuple(int(n) for n in dims)
    if sum(dims) - len(dims) + 1 != len(x):
        raise ValueError("mode sizes are inconsistent with the signal length")
    if any(n < k for n in dims):
        raise ValueError("every mode size must be at least the number of terms")
    tensor = HankelTensor(dims, x)
    U = _mode1_factor(tensor, k, tol, max_iter)
    W = tls_solve(U[:-1], U[1:])
    poles = np.linalg.eigvals(W)
    amps = _amplitudes_1d(x, poles)
    return PoleEstimate1D(poles, amps)


def estimate_poles_2d(
    X,
    k: int,
    order: int = 3,
    block_dims=None,
    outer_dims=None,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> PoleEstimate2D:
    """Estimate K pole pairs of a 2D signal via BHHB HOOI + two TLS solves.

    The second-dimension poles are paired with the first through the shared
    eigenvector matrix of W_1: with W_1 = T L1 T^{-1}, the paired z2 values
    are the diagonal of T^{-1} W_2 T.
    """
    X = core.as_complex(np.atleast_2d(X))
    n1, n2 = X.shape
    if block_dims is None:
        block_dims = balanced_shape(n1, order)
    if outer_dims is None:
        outer_dims = balanced_shape(n2, order)
    block_dims = tuple(int(n) for n in block_dims)
    outer_dims = tuple(int(n) for n in outer_dims)
    if any(n < k for n in block_dims) or any(n < k for n in outer_dims):
        raise ValueError("every block and outer size must be at least the number of terms")
    tensor = BhhbTensor(order, block_dims, outer_dims, X)
    U = _mode1_factor(tensor, k, tol, max_iter)
    inner, outer = block_dims[0], outer_dims[0]
    W1 = tls_solve(select(U, "1up", inner, outer), select(U, "1down", inner, outer))
    W2 = tls_solve(select(U, "2up", inner, outer), select(U, "2down", inner, outer))
    lam1, T = np.linalg.eig(W1)
    M = np.linalg.solve(T, W2 @ T)
    z2 = np.diag(M).copy()
    off = np.linalg.norm(M - np.diag(z2))
    pairing_ok = bool(off <= 0.1 * max(np.linalg.norm(z2), np.finfo(float).eps))
    if not pairing_ok:
        warnings.warn(
            "pole pairing is unreliable: W1 has a near-defective eigensystem",
            RuntimeWarning,
            stacklevel=2,
        )
    amps = _amplitudes_2d(X, lam1, z2)
    return PoleEstimate2D(lam1, z2, amps, pairing_ok)


def _amplitudes_1d(x, poles):
    # Convenience extension: least-squares amplitudes against the pole basis.
    V = vandermonde(poles, len(x))
    return np.linalg.lstsq(V, x, rcond=None)[0]


def _amplitudes_2d(X, z1, z2):
    n1, n2 = X.shape
    basis = khatri_rao(vandermonde(z2, n2), vandermonde(z1, n1))
    return np.linalg.lstsq(basis, X.ravel(order="F"), rcond=None)[0]


def mode1_singular_values(
    X,
    order: int = 3,
    block_dims=None,
    outer_dims=None,
    noise_levels=(0.0,),
    seeds=(0,),
) -> np.ndarray:
    """Singular values of the reduced mode-1 BHHB unfolding per noise level.

    Returns an array of shape (len(noise_levels), len(seeds), n_singular).
    """
    X = core.as_complex(np.atleast_2d(X))
    n1, n2 = X.shape
    if block_dims is None:
        block_dims = balanced_shape(n1, order)
    if outer_dims is None:
        outer_dims = balanced_shape(n2, order)
    out = None
    for i, sigma in enumerate(noise_levels):
        for j, seed in enumerate(seeds):
            Xn = X if sigma == 0 else X + _complex_noise(X.shape, sigma, seed)
            M = BhhbTensor(order, block_dims, outer_dims, Xn).reduced_unfold_1()
            s = np.linalg.svd(M, compute_uv=False)
            if out is None:
                out = np.zeros((len(noise_levels), len(seeds), len(s)))
            out[i, j] = s
    return out


# ---------------------------------------------------------------------------
# estimator front ends


class ExponentialFitter1D(BaseEstimator):
    """Estimates the poles and amplitudes of a 1D exponential-sum signal.

    Parameters
    ----------
    n_terms : number of exponential terms K.
    order : order of the Hankel tensor folded from the samples.
    dims : explicit mode sizes; defaults to an as-square-as-possible split.
    """

    def __init__(self, n_terms=1, order=3, dims=None, tol=1e-10, max_iter=100):
        self.n_terms = n_terms
        self.order = order
        self.dims = dims
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, x, y=None):
        est = estimate_poles_1d(
            x,
            self.n_terms,
            order=self.order,
            dims=self.dims,
            tol=self.tol,
            max_iter=self.max_iter,
        )
        self.poles_ = est.poles
        self.amplitudes_ = est.amplitudes
        self.n_samples_ = len(np.atleast_1d(x))
        return self

    def predict(self, n_samples=None) -> np.ndarray:
        """Reconstruct the fitted signal on 0..n_samples-1."""
        if not hasattr(self, "poles_"):
            raise RuntimeError("fit must be called first")
        n = self.n_samples_ if n_samples is None else int(n_samples)
        return vandermonde(self.poles_, n) @ self.amplitudes_


class ExponentialFitter2D(BaseEstimator):
    """Estimates pole pairs and amplitudes of a 2D exponential-sum signal."""

    def __init__(
        self, n_terms=1, order=3, block_dims=None, outer_dims=None, tol=1e-10, max_iter=100
    ):
        self.n_terms = n_terms
        self.order = order
        self.block_dims = block_dims
        self.outer_dims = outer_dims
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        est = estimate_poles_2d(
            X,
            self.n_terms,
            order=self.order,
            block_dims=self.block_dims,
            outer_dims=self.outer_dims,
            tol=self.tol,
            max_iter=self.max_iter,
        )
        self.poles1_ = est.poles1
        self.poles2_ = est.poles2
        self.amplitudes_ = est.amplitudes
        self.pairing_ok_ = est.pairing_ok
        self.sample_shape_ = np.atleast_2d(X).shape
        return self

    def predict(self, shape=None) -> np.ndarray:
        if not hasattr(self, "poles1_"):
            raise RuntimeError("fit must be called first")
        n1, n2 = self.sample_shape_ if shape is None else shape
        return (
            vandermonde(self.poles1_, n1)
            @ np.diag(self.amplitudes_)
            @ vandermonde(self.poles2_, n2).T
        )
