"""Basic objects on C^N: lattices, windows, frame operators, HS inner products.

Signals are plain complex vectors of length N, operators are N x N kernel
matrices ``K[t, s]`` and phase-space maps are N x N arrays indexed
``F[lag, doppler]``.  All indices are cyclic mod N.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

COND_LIMIT = 1e12


class TFOpError(ValueError):
    """Base class for all errors raised by tfop."""


class DimensionError(TFOpError):
    pass


class LatticeError(TFOpError):
    pass


class FrameError(TFOpError):
    """The Gabor system is not a (numerically) invertible frame."""

    def __init__(self, msg, min_eig=None, cond=None):
        super().__init__(msg)
        self.min_eig = min_eig
        self.cond = cond


@lru_cache(maxsize=64)
def _omega_table(N):
    tab = np.exp(2j * np.pi * np.arange(N) / N)
    tab.setflags(write=False)
    return tab


def omega(N, k):
    """exp(2 pi i k / N) for integer (array) k, reduced mod N before exponentiation."""
    return _omega_table(N)[np.mod(k, N)]


@dataclass(frozen=True)
class TFLattice:
    """Separable lattice a Z_N x b Z_N.

    ``a`` is the time step in samples, ``b`` the frequency step in bins.
    """

    N: int
    a: int
    b: int

    def __post_init__(self):
        N, a, b = self.N, self.a, self.b
        if N < 1 or a < 1 or b < 1:
            raise LatticeError(f"lattice parameters must be positive, got N={N}, a={a}, b={b}")
        if N % a or N % b:
            raise LatticeError(f"a={a} and b={b} must both divide N={N}")

    @property
    def M(self):
        """Number of time positions N/a."""
        return self.N // self.a

    @property
    def K(self):
        """Number of frequency positions N/b."""
        return self.N // self.b

    @property
    def redundancy(self):
        return self.N / (self.a * self.b)

    @property
    def size(self):
        return self.M * self.K

    @property
    def adjoint_steps(self):
        # (time, frequency) steps of the adjoint lattice
        return self.N // self.b, self.N // self.a

    @property
    def quotient_shape(self):
        """Shape (N/b, N/a) of the adjoint-lattice fundamental domain (lag, doppler)."""
        return self.N // self.b, self.N // self.a

    def points(self):
        """All lattice points as an (M*K, 2) integer array, m-major."""
        m, n = np.meshgrid(np.arange(self.M), np.arange(self.K), indexing="ij")
        return np.stack([m.ravel() * self.a, n.ravel() * self.b], axis=1)

    def __str__(self):
        return f"{self.a}x{self.b}"


def as_signal(f, N=None, name="signal"):
    f = np.asarray(f, dtype=complex)
    if f.ndim != 1:
        raise DimensionError(f"{name} must be a vector, got shape {f.shape}")
    if N is not None and f.shape[0] != N:
        raise DimensionError(f"{name} has length {f.shape[0]}, expected {N}")
    if not np.all(np.isfinite(f)):
        raise TFOpError(f"{name} has non-finite entries")
    return f


def as_square(A, N=None, name="array"):
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    if N is not None and A.shape[0] != N:
        raise DimensionError(f"{name} is {A.shape[0]}x{A.shape[0]}, expected {N}x{N}")
    if not np.all(np.isfinite(A)):
        raise TFOpError(f"{name} has non-finite entries")
    return A


def gauss_window(N, width=1.0):
    """Periodized, l2-normalized Gaussian centred at t=0.

    ``width`` is a reciprocal standard deviation: width=1 gives the
    profile exp(-pi t^2 / N), larger values concentrate the window in time.
    """
    if N < 2:
        raise TFOpError(f"N must be at least 2, got {N}")
    if not width > 0:
        raise TFOpError(f"width must be positive, got {width}")
    t = np.arange(N)
    # 5 periods: the k=+-3 terms are below 1e-15 relative for N >= 8
    g = sum(np.exp(-np.pi * width**2 * (t + k * N) ** 2 / N) for k in range(-2, 3))
    g = g.astype(complex)
    return g / np.linalg.norm(g)


def gabor_system(g, lat):
    """Matrix whose columns are pi(m a, n b) g, m-major (column index m*K + n)."""
    g = as_signal(g, lat.N, "window")
    N = lat.N
    t = np.arange(N)
    cols = np.empty((N, lat.M, lat.K), dtype=complex)
    for m in range(lat.M):
        shifted = np.roll(g, m * lat.a)
        for n in range(lat.K):
            cols[:, m, n] = omega(N, n * lat.b * t) * shifted
    return cols.reshape(N, lat.size)


def frame_operator(g, lat):
    G = gabor_system(g, lat)
    return G @ G.conj().T


def frame_bounds(g, lat):
    """Optimal frame bounds (smallest, largest eigenvalue of the frame operator)."""
    ev = np.linalg.eigvalsh(frame_operator(g, lat))
    return float(ev[0]), float(ev[-1])


def dual_window(g, lat, cond_limit=COND_LIMIT):
    """Canonical dual window S_g^{-1} g of the Gabor system (g, lat)."""
    g = as_signal(g, lat.N, "window")
    if lat.a * lat.b > lat.N:
        raise FrameError(
            f"undersampled lattice a*b={lat.a * lat.b} > N={lat.N} cannot carry a frame"
        )
    ev, U = np.linalg.eigh(frame_operator(g, lat))
    lo, hi = ev[0], ev[-1]
    if hi <= 0 or lo <= hi / cond_limit:
        cond = np.inf if lo <= 0 else hi / lo
        raise FrameError(
            f"frame operator not invertible: smallest eigenvalue {lo:.3e}, condition {cond:.3e}",
            min_eig=float(lo),
            cond=float(cond),
        )
    return U @ ((U.conj().T @ g) / ev)


def hs_inner(A, B):
    """Hilbert-Schmidt inner product sum_{t,s} A[t,s] conj(B[t,s])."""
    A = as_square(A, name="A")
    B = as_square(B, A.shape[0], "B")
    return complex(np.vdot(B, A))


def hs_norm(A):
    return float(np.linalg.norm(np.asarray(A)))
