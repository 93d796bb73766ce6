"""Low multilinear-rank approximation (HOOI) and total least squares.

Two HOOI variants live here: a dense reference implementation with HOSVD
initialization and cyclic mode updates, and a symmetric variant for square
structured tensors (Hankel or BHHB) that shares a single factor U across all
modes and computes every tensor-matrix product through the FFT fast paths,
never materializing the tensor.
"""

from dataclasses import dataclass, field

import numpy as np

from . import core
from .hankel import times_matrices


class DegenerateSystemError(Exception):
    """Raised when a solve has no well-conditioned solution (e.g. singular
    trailing block in TLS, or an identically-zero signal)."""


def fix_phase(U: np.ndarray) -> np.ndarray:
    """Scale each column so its largest-magnitude entry is real positive."""
    U = np.array(U, dtype=np.complex128, copy=True)
    for j in range(U.shape[1]):
        col = U[:, j]
        i = int(np.argmax(np.abs(col)))
        a = col[i]
        if np.abs(a) > 0:
            U[:, j] = col * (np.conj(a) / np.abs(a))
    return U


def truncated_left_singular_vectors(M, r: int) -> np.ndarray:
    """Leading r left singular vectors of M, with deterministic phases."""
    M = core.as_complex(M)
    if not 1 <= r <= min(M.shape):
        raise ValueError(f"rank {r} out of range for a {M.shape} matrix")
    U, _, _ = np.linalg.svd(M, full_matrices=False)
    return fix_phase(U[:, :r])


def tls_solve(A, B) -> np.ndarray:
    """Total least squares solution W of A W ~ B via the SVD of [A B].

    With right singular vectors V = [[V11, V12], [V21, V22]] partitioned at
    A's column count, W = -V12 V22^{-1}.
    """
    A = core.as_complex(A)
    B = core.as_complex(B)
    if A.ndim != 2 or B.ndim != 2 or A.shape[0] != B.shape[0]:
        raise ValueError("A and B must be matrices with equal row counts")
    k = A.shape[1]
    _, _, Vh = np.linalg.svd(np.hstack([A, B]), full_matrices=True)
    V = Vh.conj().T
    V12 = V[:k, k:]
    V22 = V[k:, k:]
    s = np.linalg.svd(V22, compute_uv=False)
    if s[0] == 0 or s[-1] < 1e-12 * s[0]:
        raise DegenerateSystemError("trailing right-singular block is singular")
    return -V12 @ np.linalg.inv(V22)


@dataclass
class TuckerResult:
    core: np.ndarray
    factors: list
    converged: bool
    n_iter: int
    fits: list = field(default_factory=list)
    monotone: bool = True

    @property
    def factor(self) -> np.ndarray:
        """The shared factor of a symmetric run (all factors equal)."""
        return self.factors[0]


def tucker_reconstruct(result: TuckerResult) -> np.ndarray:
    """S x_1 U_1^T ... x_m U_m^T (mode products contract the first matrix index)."""
    A = result.core
    for p, U in enumerate(result.factors):
        A = core.mode_product(A, p, U.T)
    return A


def _core_of(A, factors):
    S = A
    for p, U in enumerate(factors):
        S = core.mode_product(S, p, np.conj(U))
    return S


def hooi(A, ranks, tol: float = 1e-10, max_iter: int = 100) -> TuckerResult:
    """Dense HOOI for the best rank-(R_1,...,R_m) approximation.

    Initializes by HOSVD, then cyclically replaces U_p with the leading left
    singular vectors of the mode-p unfolding of A contracted with the
    conjugated remaining factors.  Returns the best iterate by fit; a run
    that hits max_iter is flagged converged=False rather than raising.
    """
    A = core.as_complex(A)
    m = A.ndim
    ranks = tuple(int(r) for r in ranks)
    if len(ranks) != m:
        raise ValueError("one rank per mode required")
    for p, r in enumerate(ranks):
        if not 1 <= r <= A.shape[p]:
            raise ValueError(f"rank {r} invalid for mode {p} of size {A.shape[p]}")

    factors = [
        truncated_left_singular_vectors(core.unfold(A, p), ranks[p])
        for p in range(m)
    ]
    fits = [float(np.linalg.norm(_core_of(A, factors)))]
    best = (fits[0], [U.copy() for U in factors])
    converged = False
    monotone = True
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        for p in range(m):
            B = A
            for q in range(m):
                if q != p:
                    B = core.mode_product(B, q, np.conj(factors[q]))
            factors[p] = truncated_left_singular_vectors(core.unfold(B, p), ranks[p])
        fit = float(np.linalg.norm(_core_of(A, factors)))
        if fit < fits[-1] - 1e-12 * max(fit, 1.0):
            monotone = False
        fits.append(fit)
        if fit >= best[0]:
            best = (fit, [U.copy() for U in factors])
        if abs(fit - fits[-2]) / max(fit, np.finfo(float).eps) < tol:
            converged = True
            break
    factors = best[1]
    S = _core_of(A, factors)
    return TuckerResult(S, factors, converged, n_iter, fits, monotone)


def hooi_symmetric(tensor, rank: int, tol: float = 1e-10, max_iter: int = 100) -> TuckerResult:
    """Symmetric HOOI for square structured tensors: one shared factor U.

    `tensor` must expose mode_sizes, tvp_partial, and reduced_unfold_1; all
    mode sizes must be equal.  U starts from the leading left singular
    vectors of the reduced mode-1 unfolding and is refreshed from the mode-1
    unfolding of the fast product against conj(U) on modes 2..m.  The dense
    tensor is never formed.
    """
    sizes = tensor.mode_sizes
    if len(set(sizes)) != 1:
        raise ValueError("symmetric HOOI requires equal mode sizes")
    m = len(sizes)
    if not 1 <= rank <= sizes[0]:
        raise ValueError(f"rank {rank} out of range for size {sizes[0]}")

    U = truncated_left_singular_vectors(tensor.reduced_unfold_1(), rank)

    def core_with(Umat):
        T = times_matrices(tensor, [np.conj(Umat)] * (m - 1))
        S = np.tensordot(T, np.conj(Umat), axes=([0], [0]))
        return T, np.moveaxis(S, -1, 0)

    T, S = core_with(U)
    fits = [float(np.linalg.norm(S))]
    best = (fits[0], U.copy(), S.copy())
    converged = False
    monotone = True
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        U = truncated_left_singular_vectors(T.reshape(sizes[0], -1), rank)
        T, S = core_with(U)
        fit = float(np.linalg.norm(S))
        if fit < fits[-1] - 1e-12 * max(fit, 1.0):
            monotone = False
        fits.append(fit)
        if fit >= best[0]:
            best = (fit, U.copy(), S.copy())
        if abs(fit - fits[-2]) / max(fit, np.finfo(float).eps) < tol:
            converged = True
            break
    _, U, S = best
    return TuckerResult(S, [U] * m, converged, n_iter, fits, monotone)
