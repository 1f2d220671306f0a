"""Spreading-function representation of operators on C^N.

With eta = spreading_from_kernel(K) the operator expands exactly as
K = sum_{b,nu} eta[b, nu] pi(b, nu), and ||K||_HS = sqrt(N) ||eta||_2.
"""
import numpy as np

from .core import as_signal, as_square
from .tfr import stft, twisted_conv


def _lag_rows(K):
    # rows[b, t] = K[t, t - b]
    N = K.shape[0]
    t = np.arange(N)
    return K[t[None, :], (t[None, :] - t[:, None]) % N]


def spreading_from_kernel(K):
    """eta[b, nu] = (1/N) sum_t K[t, t - b] omega^(-nu t)."""
    K = as_square(K, name="kernel")
    N = K.shape[0]
    return np.fft.fft(_lag_rows(K), axis=1) / N


def kernel_from_spreading(eta):
    """K[t, s] = sum_nu eta[t - s, nu] omega^(nu t); inverse of spreading_from_kernel."""
    eta = as_square(eta, name="spreading function")
    N = eta.shape[0]
    rows = N * np.fft.ifft(eta, axis=1)  # rows[b, t] = K[t, t - b]
    t = np.arange(N)
    K = np.empty((N, N), dtype=complex)
    K[t[None, :], (t[None, :] - t[:, None]) % N] = rows
    return K


def apply_tf_domain(eta, f, g):
    """STFT of Hf computed in phase space as eta # V_g f."""
    eta = as_square(eta, name="spreading function")
    f = as_signal(f, eta.shape[0])
    return twisted_conv(eta, stft(f, g))


def compose_spreading(eta2, eta1):
    """Spreading function of K2 @ K1."""
    return twisted_conv(eta2, eta1)


def rank_one_kernel(h, g):
    """Kernel of f -> <f, g> h."""
    return np.outer(as_signal(h), np.conj(as_signal(g)))


def support_box(eta, tol=0.0):
    """Smallest centred box half-widths (t0, xi0) containing the support of eta.

    Indices are read cyclically as integers in (-N/2, N/2].
    """
    eta = np.asarray(eta)
    N = eta.shape[0]
    b, nu = np.nonzero(np.abs(eta) > tol)
    if b.size == 0:
        return 0, 0
    centred = lambda k: np.where(k > N // 2, k - N, k)
    return int(np.abs(centred(b)).max()), int(np.abs(centred(nu)).max())
