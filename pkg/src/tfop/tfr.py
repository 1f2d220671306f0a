"""Discrete time-frequency transforms on Z_N.

Conventions: pi(b, nu) f(t) = omega^(nu t) f(t - b) (modulation after
translation), omega = exp(2 pi i / N).  The composition law is

    pi(b, nu) pi(b', nu') = omega^(-nu' b) pi(b + b', nu + nu').
"""
import numpy as np

from .core import DimensionError, as_signal, as_square, omega


def tf_shift(b, nu, f):
    f = as_signal(f)
    N = f.shape[0]
    return omega(N, nu * np.arange(N)) * np.roll(f, b)


def tf_shift_matrix(N, b, nu):
    """Matrix of pi(b, nu): entry [t, s] = omega^(nu t) [s == t - b]."""
    P = np.zeros((N, N), dtype=complex)
    t = np.arange(N)
    P[t, (t - b) % N] = omega(N, nu * t)
    return P


def stft(f, g):
    """Full STFT F[b, nu] = <f, pi(b, nu) g> on Z_N x Z_N."""
    f = as_signal(f)
    g = as_signal(g, f.shape[0], "window")
    N = f.shape[0]
    # row b holds f(t) conj(g(t - b)); the DFT over t gives omega^(-nu t)
    prods = f[None, :] * np.conj(np.stack([np.roll(g, b) for b in range(N)]))
    return np.fft.fft(prods, axis=1)


def stft_inverse(F, h, g):
    """Invert a full STFT taken with window g, synthesising with h (<h, g> != 0)."""
    F = as_square(F, name="STFT")
    N = F.shape[0]
    h = as_signal(h, N, "window")
    g = as_signal(g, N, "window")
    scale = N * np.vdot(g, h)
    if abs(scale) == 0:
        raise DimensionError("synthesis and analysis windows are orthogonal")
    # sum_nu F[b, nu] omega^(nu t) = N * ifft
    rows = N * np.fft.ifft(F, axis=1)
    out = sum(rows[b] * np.roll(h, b) for b in range(N))
    return out / scale


def gabor_analysis(f, g, lat):
    """Coefficients c[m, n] = <f, pi(m a, n b) g>, shape (M, K)."""
    f = as_signal(f, lat.N)
    g = as_signal(g, lat.N, "window")
    rows = np.stack([f * np.conj(np.roll(g, m * lat.a)) for m in range(lat.M)])
    return np.fft.fft(rows, axis=1)[:, :: lat.b]


def gabor_synthesis(c, h, lat):
    """sum_{m,n} c[m, n] pi(m a, n b) h."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (lat.M, lat.K):
        raise DimensionError(f"coefficients have shape {c.shape}, expected {(lat.M, lat.K)}")
    h = as_signal(h, lat.N, "window")
    # sum_n c[m, n] exp(2 pi i n t / K) is K-periodic in t
    periodic = lat.K * np.fft.ifft(c, axis=1)
    periodic = np.tile(periodic, (1, lat.b))
    out = np.zeros(lat.N, dtype=complex)
    for m in range(lat.M):
        out += periodic[m] * np.roll(h, m * lat.a)
    return out


def symplectic_dft(F):
    """G[t, xi] = (1/N) sum_{b,nu} F[b, nu] omega^(-(b xi - t nu)); self-inverse."""
    F = as_square(F, name="phase-space map")
    N = F.shape[0]
    A = N * np.fft.ifft(F, axis=1)  # A[b, t]
    return np.fft.fft(A, axis=0).T / N


def _twisted_conv_direct(F, G):
    N = F.shape[0]
    nu = np.arange(N)
    out = np.zeros((N, N), dtype=complex)
    for bp in range(N):
        Gb = np.roll(G, bp, axis=0)
        for nup in range(N):
            c = F[bp, nup]
            if c == 0:
                continue
            out += c * np.roll(Gb, nup, axis=1) * omega(N, -bp * (nu - nup))[None, :]
    return out


def _twisted_conv_fft(F, G):
    N = F.shape[0]
    idx = np.arange(N)
    Ghat = np.fft.fft(G, axis=1)
    out = np.zeros((N, N), dtype=complex)
    # for fixed lag b', the doppler sum is a circular convolution of
    # F[b', .] omega^(b' nu') with G[b - b', .], then a phase omega^(-b' nu)
    for bp in range(N):
        row = F[bp]
        if not row.any():
            continue
        U = np.fft.fft(row * omega(N, bp * idx))
        conv = np.fft.ifft(U[None, :] * np.roll(Ghat, bp, axis=0), axis=1)
        out += conv * omega(N, -bp * idx)[None, :]
    return out


def twisted_conv(F, G, method="auto"):
    """Twisted convolution

        (F # G)[b, nu] = sum_{b', nu'} F[b', nu'] G[b - b', nu - nu'] omega^(-b' (nu - nu')).

    ``method`` is ``"direct"`` (O(N^4)), ``"fft"`` (per-lag FFTs) or
    ``"auto"`` (direct for N <= 64).
    """
    F = as_square(F, name="F")
    G = as_square(G, F.shape[0], "G")
    if method == "auto":
        method = "direct" if F.shape[0] <= 64 else "fft"
    if method == "direct":
        return _twisted_conv_direct(F, G)
    if method == "fft":
        return _twisted_conv_fft(F, G)
    raise ValueError(f"unknown method {method!r}")


def delta(N, b=0, nu=0):
    D = np.zeros((N, N), dtype=complex)
    D[b % N, nu % N] = 1.0
    return D
