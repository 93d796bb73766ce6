"""Dense complex tensor operations and brute-force builders.

Everything here works on plain numpy ``complex128`` arrays (row-major, last
index fastest).  These routines are the O(n^m) ground truth that the FFT
fast paths are tested against, so they stay deliberately simple.

Mode products follow the convention ``(A x_p M)[..., j, ...] =
sum_i A[..., i, ...] * M[i, j]``: the tensor index is contracted with the
FIRST index of the matrix and nothing is conjugated.
"""

from functools import reduce
import math

import numpy as np

#: Refuse to materialize dense tensors above this many entries.
DENSE_CAP = 10_000_000


def as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=np.complex128)


def check_dense_size(shape, cap: int = DENSE_CAP) -> None:
    size = math.prod(shape)
    if size > cap:
        raise ValueError(
            f"dense tensor of shape {tuple(shape)} has {size} entries, "
            f"exceeding the cap of {cap}"
        )


def mode_product(A, axis: int, M) -> np.ndarray:
    """Contract axis `axis` of A with the first index of matrix M.

    No conjugation, no transposition.  For a matrix A this means
    ``mode_product(mode_product(A, 0, M1), 1, M2) == M1.T @ A @ M2``.
    """
    A = as_complex(A)
    M = as_complex(M)
    if M.ndim != 2:
        raise ValueError("M must be a matrix")
    if not 0 <= axis < A.ndim:
        raise ValueError(f"axis {axis} out of range for order-{A.ndim} tensor")
    if M.shape[0] != A.shape[axis]:
        raise ValueError(
            f"mode-{axis} size {A.shape[axis]} does not match matrix rows {M.shape[0]}"
        )
    out = np.tensordot(A, M, axes=([axis], [0]))
    return np.moveaxis(out, -1, axis)


def tvp_partial(A, xs) -> np.ndarray:
    """Contract modes 1..m-1 of A with the given vectors; returns a vector.

    This is the brute-force product ``A x^{m-1}`` (with possibly distinct
    vectors) used as oracle for all structured fast paths.
    """
    A = as_complex(A)
    xs = [as_complex(x) for x in xs]
    if len(xs) != A.ndim - 1:
        raise ValueError(f"expected {A.ndim - 1} vectors, got {len(xs)}")
    out = A
    for x in reversed(xs):
        if x.ndim != 1 or x.shape[0] != out.shape[-1]:
            raise ValueError("vector length does not match tensor mode size")
        out = out @ x
    return out


def tvp_full(A, xs) -> complex:
    """Contract every mode of A with the given vectors; returns a scalar."""
    A = as_complex(A)
    xs = [as_complex(x) for x in xs]
    if len(xs) != A.ndim:
        raise ValueError(f"expected {A.ndim} vectors, got {len(xs)}")
    y = tvp_partial(A, xs[1:]) if A.ndim > 1 else A
    return complex(np.dot(xs[0], y))


def unfold(A, axis: int) -> np.ndarray:
    """Mode-`axis` unfolding into an (n_axis, prod(rest)) matrix.

    Columns enumerate the remaining indices in their original order with the
    first remaining index slowest (and the last one fastest).
    """
    A = as_complex(A)
    if not 0 <= axis < A.ndim:
        raise ValueError(f"axis {axis} out of range")
    return np.moveaxis(A, axis, 0).reshape(A.shape[axis], -1)


def fold(M, axis: int, shape) -> np.ndarray:
    """Inverse of :func:`unfold` for a tensor of the given shape."""
    M = as_complex(M)
    shape = tuple(shape)
    rest = shape[:axis] + shape[axis + 1:]
    return np.moveaxis(M.reshape((shape[axis],) + rest), 0, axis)


def _index_sum(shape) -> np.ndarray:
    """Tensor of i_1 + ... + i_m over the given index box."""
    return reduce(np.add.outer, (np.arange(n) for n in shape))


def dense_hankel(h, shape, cap: int = DENSE_CAP) -> np.ndarray:
    """Materialize the Hankel tensor with generating vector h."""
    h = as_complex(h)
    shape = tuple(int(n) for n in shape)
    check_dense_size(shape, cap)
    dof = sum(shape) - len(shape) + 1
    if h.shape != (dof,):
        raise ValueError(f"generating vector must have length {dof}, got {h.shape}")
    return h[_index_sum(shape)]


def dense_anticirculant(c, order: int, dim: int, cap: int = DENSE_CAP) -> np.ndarray:
    """Materialize the anti-circulant tensor with compressed generating vector c."""
    c = as_complex(c)
    if c.shape != (dim,):
        raise ValueError(f"compressed generating vector must have length {dim}")
    shape = (dim,) * order
    check_dense_size(shape, cap)
    return c[_index_sum(shape) % dim]


def _split_indices(full_sizes, inner_sizes):
    """Per-axis decomposition i = outer * inner_size + inner (inner fastest)."""
    inner, outer = [], []
    for n_total, n_in in zip(full_sizes, inner_sizes):
        a = np.arange(n_total)
        inner.append(a % n_in)
        outer.append(a // n_in)
    return inner, outer


def dense_bhhb(H, block_shape, outer_shape, cap: int = DENSE_CAP) -> np.ndarray:
    """Materialize a block Hankel tensor with Hankel blocks from its generating matrix."""
    H = as_complex(H)
    block_shape = tuple(int(n) for n in block_shape)
    outer_shape = tuple(int(n) for n in outer_shape)
    m = len(block_shape)
    if len(outer_shape) != m:
        raise ValueError("block and outer shapes must have equal length")
    d_in = sum(block_shape) - m + 1
    d_out = sum(outer_shape) - m + 1
    if H.shape != (d_in, d_out):
        raise ValueError(f"generating matrix must be {d_in}x{d_out}, got {H.shape}")
    full = tuple(n * N for n, N in zip(block_shape, outer_shape))
    check_dense_size(full, cap)
    inner, outer = _split_indices(full, block_shape)
    si = reduce(np.add.outer, inner)
    sj = reduce(np.add.outer, outer)
    return H[si, sj]


def dense_baab(C, order: int, cap: int = DENSE_CAP) -> np.ndarray:
    """Materialize a block anti-circulant tensor with anti-circulant blocks."""
    C = as_complex(C)
    n, N = C.shape
    full = (n * N,) * order
    check_dense_size(full, cap)
    inner, outer = _split_indices(full, (n,) * order)
    si = reduce(np.add.outer, inner) % n
    sj = reduce(np.add.outer, outer) % N
    return C[si, sj]


def dense_level_k(G, level_shapes, cap: int = DENSE_CAP) -> np.ndarray:
    """Materialize a level-k block Hankel tensor from its order-k generating tensor.

    level_shapes[l][p] is the level-(l+1) factor of the mode-p size; level 1
    is the innermost (fastest-varying) level.
    """
    G = as_complex(G)
    level_shapes = [tuple(int(n) for n in lv) for lv in level_shapes]
    k = len(level_shapes)
    m = len(level_shapes[0])
    if any(len(lv) != m for lv in level_shapes):
        raise ValueError("every level must list one size per mode")
    expected = tuple(sum(lv) - m + 1 for lv in level_shapes)
    if G.shape != expected:
        raise ValueError(f"generating tensor must have shape {expected}, got {G.shape}")
    full = tuple(math.prod(level_shapes[l][p] for l in range(k)) for p in range(m))
    check_dense_size(full, cap)
    sums = []
    for l in range(k):
        digits = []
        for p in range(m):
            a = np.arange(full[p])
            stride = math.prod(level_shapes[ll][p] for ll in range(l))
            digits.append((a // stride) % level_shapes[l][p])
        sums.append(reduce(np.add.outer, digits))
    return G[tuple(sums)]
