"""Discrete Fourier transforms with a pinned normalization convention.

Forward transforms apply the unnormalized kernel exp(-2*pi*i*j*k/n); inverse
transforms apply the conjugate kernel scaled by 1/n per axis.  This matches
``numpy.fft`` exactly, which handles arbitrary (non power-of-two) lengths,
so the wrappers only add input validation and complex promotion.
"""

import numpy as np

from .core import as_complex


def fourier_matrix(n: int) -> np.ndarray:
    """The n-by-n matrix (exp(-2*pi*i*j*k/n))_{j,k}."""
    if n < 1:
        raise ValueError("size must be positive")
    jk = np.outer(np.arange(n), np.arange(n))
    return np.exp(-2j * np.pi * jk / n)


def _check_nonempty(a):
    if a.size == 0:
        raise ValueError("empty input")
    return a


def fft1(v) -> np.ndarray:
    return np.fft.fft(_check_nonempty(as_complex(v)))


def ifft1(v) -> np.ndarray:
    return np.fft.ifft(_check_nonempty(as_complex(v)))


def fft2(M) -> np.ndarray:
    return np.fft.fft2(_check_nonempty(as_complex(M)))


def ifft2(M) -> np.ndarray:
    return np.fft.ifft2(_check_nonempty(as_complex(M)))


def fftn(T) -> np.ndarray:
    return np.fft.fftn(_check_nonempty(as_complex(T)))


def ifftn(T) -> np.ndarray:
    return np.fft.ifftn(_check_nonempty(as_complex(T)))
