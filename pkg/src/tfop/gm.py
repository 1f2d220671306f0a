"""Gabor multipliers and their best Hilbert-Schmidt approximation.

Quotient-domain quantities (the U function, the transfer function M, the
cosine field E, Gamma_H) live on the adjoint-lattice fundamental domain, an
(N/b) x (N/a) grid indexed [lag, doppler].  A full N x N phase-space array
folds onto it by summing over the b * a cosets

    (lag + k N/b, doppler + l N/a),  k < b, l < a.

The spreading function of the multiplier with mask m is
(1/N) * Mdisc * V_g h, with Mdisc the quotient-periodic symplectic transform
of the mask (see ``mask_to_transfer``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TFOpError, DimensionError, as_signal, as_square, gabor_system
from .spread import spreading_from_kernel
from .tfr import gabor_analysis, gabor_synthesis, stft

RIESZ_TOL = 1e-10


class RieszError(TFOpError):
    """The projection family is not a Riesz sequence at some quotient point."""

    def __init__(self, msg, points=(), values=()):
        super().__init__(msg)
        self.points = [tuple(int(v) for v in p) for p in points]
        self.values = [float(v) for v in values]

    def as_dict(self):
        return {
            "error": "riesz",
            "message": str(self),
            "points": [list(p) for p in self.points],
            "values": self.values,
        }


def _check_mask(m, lat):
    m = np.asarray(m, dtype=complex)
    if m.shape != (lat.M, lat.K):
        raise DimensionError(f"mask has shape {m.shape}, expected {(lat.M, lat.K)}")
    return m


def fold(X, lat):
    """Periodize an N x N phase-space array onto the (N/b) x (N/a) quotient grid."""
    X = np.asarray(X)
    K, M = lat.quotient_shape
    if X.shape[:2] != (lat.N, lat.N):
        raise DimensionError(f"expected leading shape {(lat.N, lat.N)}, got {X.shape}")
    rest = X.shape[2:]
    return X.reshape((lat.b, K, lat.a, M) + rest).sum(axis=(0, 2))


def unfold(Q, lat):
    """Extend a quotient-grid array periodically to N x N."""
    return np.tile(Q, (lat.b, lat.a))


def mask_to_transfer(m, lat):
    """Quotient-periodic symplectic transform

        Mdisc[b', nu'] = sum_{m,n} m[m, n] omega^(n b b' - m a nu').
    """
    m = _check_mask(m, lat)
    # sum over m with exp(-2 pi i m nu'/M), then over n with exp(+2 pi i n b'/K)
    step = np.fft.fft(m, axis=0)  # [nu', n]
    return (lat.K * np.fft.ifft(step, axis=1)).T


def transfer_to_mask(Q, lat):
    """Inverse of ``mask_to_transfer``:

    m[m, n] = 1/(M K) sum_{b', nu'} Q[b', nu'] omega^(-(n b b' - m a nu')).
    """
    Q = np.asarray(Q, dtype=complex)
    if Q.shape != lat.quotient_shape:
        raise DimensionError(f"quotient array has shape {Q.shape}, expected {lat.quotient_shape}")
    step = lat.M * np.fft.ifft(Q, axis=1)  # [b', m]
    return np.fft.fft(step, axis=0).T / (lat.M * lat.K)


def gm_apply(m, g, h, f, lat):
    """Gabor multiplier sum_{m,n} m[m,n] <f, g_mn> h_mn."""
    m = _check_mask(m, lat)
    return gabor_synthesis(m * gabor_analysis(f, g, lat), h, lat)


def gm_matrix(m, g, h, lat):
    """Kernel of the Gabor multiplier; columns are gm_apply on the standard basis."""
    m = _check_mask(m, lat)
    g = as_signal(g, lat.N, "analysis window")
    h = as_signal(h, lat.N, "synthesis window")
    return np.stack([gm_apply(m, g, h, e, lat) for e in np.eye(lat.N)], axis=1)


def gm_spreading(m, g, h, lat):
    """Spreading function (1/N) Mdisc(b, nu) V_g h(b, nu) of the multiplier."""
    M = unfold(mask_to_transfer(m, lat), lat)
    return M * stft(h, g) / lat.N


def u_function(g, h, lat):
    """U[b', nu'] = sum over cosets of |V_g h|^2; real and nonnegative."""
    return fold(np.abs(stft(h, g)) ** 2, lat)


def u_bounds(g, h, lat):
    U = u_function(g, h, lat)
    return float(U.min()), float(U.max())


def _check_u(U, tol, pinv):
    bad = U < tol * U.max()
    if bad.any() and not pinv:
        pts = np.argwhere(bad)
        raise RieszError(
            f"U condition fails at {len(pts)} quotient point(s), first at "
            f"(lag={pts[0][0]}, doppler={pts[0][1]}) with U={U[tuple(pts[0])]:.3e}",
            points=pts,
            values=U[bad],
        )
    return bad


def best_transfer(H, g, h, lat, tol=RIESZ_TOL, pinv=False, eta=None):
    """Transfer function Mdisc on the quotient grid of the best approximating multiplier.

    Mdisc = N * fold(conj(V_g h) eta_H) / U; the factor N undoes the 1/N in
    the spreading normalization.  With ``pinv`` the points violating the U
    condition get zero instead of raising.
    """
    if eta is None:
        eta = spreading_from_kernel(as_square(H, lat.N, "operator"))
    V = stft(h, g)
    U = fold(np.abs(V) ** 2, lat)
    bad = _check_u(U, tol, pinv)
    num = lat.N * fold(np.conj(V) * eta, lat)
    out = np.zeros_like(num)
    good = ~bad
    out[good] = num[good] / U[good]
    return out


def best_gm_mask(H, g, h, lat, tol=RIESZ_TOL, pinv=False):
    """Mask of the Gabor multiplier closest to H in Hilbert-Schmidt norm."""
    return transfer_to_mask(best_transfer(H, g, h, lat, tol, pinv), lat)


@dataclass
class GMError:
    err: float  # ||H - GM||_HS^2
    bound: float  # ||H||_HS^2 * max(1 - E)
    E: np.ndarray
    err_rel: float  # ||H - GM|| / ||H + GM||
    mask: np.ndarray
    fold_err: float  # N * sum over quotient of Gamma_H (1 - E)


def relative_error(H, A):
    den = np.linalg.norm(H + A)
    if den == 0:
        return 0.0
    return float(np.linalg.norm(H - A) / den)


def gm_error_and_bound(H, g, h, lat, tol=RIESZ_TOL, pinv=False):
    H = as_square(H, lat.N, "operator")
    eta = spreading_from_kernel(H)
    V = stft(h, g)
    U = fold(np.abs(V) ** 2, lat)
    _check_u(U, tol, pinv)
    gamma_H = fold(np.abs(eta) ** 2, lat)
    corr = fold(eta * np.conj(V), lat)
    E = np.ones_like(U)
    nz = (gamma_H > 0) & (U > 0)
    E[nz] = np.abs(corr[nz]) ** 2 / (gamma_H[nz] * U[nz])
    # Cauchy-Schwarz gives E <= 1; clip rounding
    E = np.clip(E, 0.0, 1.0)
    mask = best_gm_mask(H, g, h, lat, tol, pinv)
    A = gm_matrix(mask, g, h, lat)
    err = float(np.linalg.norm(H - A) ** 2)
    bound = float(np.linalg.norm(H) ** 2 * np.max(1.0 - E))
    fold_err = float(lat.N * np.sum(gamma_H * (1.0 - E)))
    return GMError(err, bound, E, relative_error(H, A), mask, fold_err)


def projection_gram(g, hs, lat):
    """Gram matrix <P^j_lambda, P^j'_mu>_HS of the rank-one family, index j-major."""
    G = gabor_system(g, lat)
    ops = []
    for h in hs:
        Hs = gabor_system(h, lat)
        ops.append(np.einsum("ti,si->its", Hs, np.conj(G)).reshape(lat.size, -1))
    V = np.concatenate(ops, axis=0)
    return np.conj(V) @ V.T


def underspread_check(eta, t0, xi0, tol=0.0):
    """True iff the spreading support lies in [-t0, t0] x [-xi0, xi0] with t0 * xi0 < N / 4."""
    eta = as_square(eta, name="spreading function")
    N = eta.shape[0]
    k = np.arange(N)
    c = np.where(k > N // 2, k - N, k)
    outside = (np.abs(c)[:, None] > t0) | (np.abs(c)[None, :] > xi0)
    offending = np.argwhere(outside & (np.abs(eta) > tol))
    if offending.size:
        raise SupportError(
            f"spreading function has {len(offending)} entries outside the box "
            f"[-{t0},{t0}]x[-{xi0},{xi0}]",
            offending,
        )
    return t0 * xi0 < N / 4


class SupportError(TFOpError):
    def __init__(self, msg, indices=()):
        super().__init__(msg)
        self.indices = [tuple(int(v) for v in p) for p in indices]


def multiplier_from_spreading(eta, g, h, lat, tol=RIESZ_TOL):
    """Best multiplier mask for the operator with spreading function ``eta``."""
    return transfer_to_mask(best_transfer(None, g, h, lat, tol, eta=eta), lat)

