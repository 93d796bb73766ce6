"""Fast Hankel and block-Hankel tensor-vector products via anti-circulant
embedding and FFT, Hankel-aware HOOI, and 1D/2D exponential data fitting."""

from .block import BaabTensor, BhhbTensor, LevelKHankelTensor
from .core import (
    DENSE_CAP,
    dense_anticirculant,
    dense_baab,
    dense_bhhb,
    dense_hankel,
    dense_level_k,
    fold,
    mode_product,
    tvp_full,
    tvp_partial,
    unfold,
)
from .decompose import (
    DegenerateSystemError,
    TuckerResult,
    hooi,
    hooi_symmetric,
    tls_solve,
    truncated_left_singular_vectors,
    tucker_reconstruct,
)
from .expfit import (
    ExpModel1D,
    ExpModel2D,
    ExponentialFitter1D,
    ExponentialFitter2D,
    balanced_shape,
    estimate_poles_1d,
    estimate_poles_2d,
    khatri_rao,
    match_poles,
    mode1_singular_values,
    two_peak_model,
    select,
    vandermonde,
)
from .fourier import fft1, fft2, fftn, fourier_matrix, ifft1, ifft2, ifftn
from .hankel import AntiCirculantTensor, HankelTensor, times_matrices

__version__ = "0.1.0"

__all__ = [
    "AntiCirculantTensor",
    "BaabTensor",
    "BhhbTensor",
    "DENSE_CAP",
    "DegenerateSystemError",
    "ExpModel1D",
    "ExpModel2D",
    "ExponentialFitter1D",
    "ExponentialFitter2D",
    "HankelTensor",
    "LevelKHankelTensor",
    "TuckerResult",
    "balanced_shape",
    "dense_anticirculant",
    "dense_baab",
    "dense_bhhb",
    "dense_hankel",
    "dense_level_k",
    "estimate_poles_1d",
    "estimate_poles_2d",
    "fft1",
    "fft2",
    "fftn",
    "fold",
    "fourier_matrix",
    "hooi",
    "hooi_symmetric",
    "ifft1",
    "ifft2",
    "ifftn",
    "khatri_rao",
    "match_poles",
    "mode1_singular_values",
    "mode_product",
    "two_peak_model",
    "select",
    "times_matrices",
    "tls_solve",
    "truncated_left_singular_vectors",
    "tucker_reconstruct",
    "tvp_full",
    "tvp_partial",
    "unfold",
    "vandermonde",
]
