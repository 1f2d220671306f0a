"""Multiple Gabor multipliers: one analysis window g, J synthesis windows.

Masks are stacked as a (J, M, K) array in the order of the synthesis windows;
the per-point Gram matrices Gamma form a (N/b, N/a, J, J) array.
"""
from __future__ import annotations

import numpy as np

from .core import COND_LIMIT, DimensionError, FrameError, TFOpError, as_signal, as_square, dual_window, gabor_system, omega
from .gm import RieszError, RIESZ_TOL, fold, gm_apply, gm_matrix, gm_spreading, transfer_to_mask
from .spread import spreading_from_kernel
from .tfr import stft, tf_shift


def _as_windows(hs, N):
    hs = np.atleast_2d(np.asarray(hs, dtype=complex))
    if hs.shape[1] != N or hs.shape[0] < 1:
        raise DimensionError(f"synthesis windows have shape {hs.shape}, expected (J, {N})")
    return hs


def _check_masks(ms, J, lat):
    ms = np.asarray(ms, dtype=complex)
    if ms.shape != (J, lat.M, lat.K):
        raise DimensionError(f"mask set has shape {ms.shape}, expected {(J, lat.M, lat.K)}")
    return ms


def shifted_windows(h, shifts):
    """Synthesis windows pi(b_j, nu_j) h for a list of (time, frequency) shifts."""
    return np.stack([tf_shift(b, nu, h) for b, nu in shifts])


def mgm_apply(ms, g, hs, f, lat):
    hs = _as_windows(hs, lat.N)
    ms = _check_masks(ms, len(hs), lat)
    return sum(gm_apply(m, g, h, f, lat) for m, h in zip(ms, hs))


def mgm_matrix(ms, g, hs, lat):
    hs = _as_windows(hs, lat.N)
    ms = _check_masks(ms, len(hs), lat)
    return sum(gm_matrix(m, g, h, lat) for m, h in zip(ms, hs))


def mgm_spreading(ms, g, hs, lat):
    hs = _as_windows(hs, lat.N)
    ms = _check_masks(ms, len(hs), lat)
    return sum(gm_spreading(m, g, h, lat) for m, h in zip(ms, hs))


def gamma_field(g, hs, lat):
    """Gamma[b', nu', j, j'] = sum over cosets of conj(V_g h_j) V_g h_j'."""
    hs = _as_windows(hs, lat.N)
    V = np.stack([stft(h, g) for h in hs], axis=-1)  # (N, N, J)
    return fold(np.conj(V)[..., :, None] * V[..., None, :], lat)


def gamma_summary(Gam):
    """Smallest and largest eigenvalue over the whole field, and where the minimum sits."""
    ev = np.linalg.eigvalsh(Gam)
    lo = np.unravel_index(np.argmin(ev[..., 0]), ev.shape[:2])
    return {
        "min_eig": float(ev[..., 0].min()),
        "max_eig": float(ev[..., -1].max()),
        "argmin": [int(lo[0]), int(lo[1])],
    }


def _solve_field(Gam, B, cond_limit):
    K, M, J, _ = Gam.shape
    out = np.empty((K, M, J), dtype=complex)
    bad_pts, bad_vals = [], []
    for i in range(K):
        for k in range(M):
            ev, U = np.linalg.eigh(Gam[i, k])
            if ev[-1] <= 0 or ev[0] <= ev[-1] / cond_limit:
                bad_pts.append((i, k))
                bad_vals.append(ev[0])
                continue
            out[i, k] = U @ ((U.conj().T @ B[i, k]) / ev)
    if bad_pts:
        raise RieszError(
            f"Gamma singular at {len(bad_pts)} quotient point(s), first at "
            f"(lag={bad_pts[0][0]}, doppler={bad_pts[0][1]}) with smallest eigenvalue {bad_vals[0]:.3e}",
            points=bad_pts,
            values=bad_vals,
        )
    return out


def best_mgm_transfer(H, g, hs, lat, cond_limit=COND_LIMIT, eta=None):
    """Per-point solutions Mdisc = Gamma^{-1} B on the quotient grid, shape (N/b, N/a, J)."""
    hs = _as_windows(hs, lat.N)
    if eta is None:
        eta = spreading_from_kernel(as_square(H, lat.N, "operator"))
    V = np.stack([stft(h, g) for h in hs], axis=-1)
    Gam = fold(np.conj(V)[..., :, None] * V[..., None, :], lat)
    B = lat.N * fold(np.conj(V) * eta[..., None], lat)
    return _solve_field(Gam, B, cond_limit)


def best_mgm(H, g, hs, lat, cond_limit=COND_LIMIT):
    """Mask set of the multiple Gabor multiplier closest to H in HS norm, shape (J, M, K)."""
    Q = best_mgm_transfer(H, g, hs, lat, cond_limit)
    return np.stack([transfer_to_mask(Q[..., j], lat) for j in range(Q.shape[-1])])


# -- synthesis windows on the adjoint lattice --------------------------------


def _check_adjoint(shifts, lat):
    tb, tn = lat.adjoint_steps
    shifts = [(int(b) % lat.N, int(nu) % lat.N) for b, nu in shifts]
    off = [s for s in shifts if s[0] % tb or s[1] % tn]
    if off:
        raise TFOpError(
            f"shifts {off} are not on the adjoint lattice {tb}Z x {tn}Z of lattice {lat}"
        )
    return shifts


def adjoint_lattice_gamma(g, h, lat, shifts):
    """Coefficient fields A_delta for windows pi(mu_j) h, mu_j on the adjoint lattice.

    A_delta[b', nu'] = sum_{c in coset} omega^(-delta_b c_nu) conj(V_g h(c)) V_g h(c - delta)

    for every pairwise difference delta = mu_j' - mu_j.  Then

        Gamma_jj' = omega^(-b_j' (nu_j - nu_j')) A_{mu_j' - mu_j}.

    Returns a dict {delta: (N/b, N/a) array}.
    """
    shifts = _check_adjoint(shifts, lat)
    N = lat.N
    V = stft(h, g)
    nu = np.arange(N)[None, :]
    out = {}
    for bj, nj in shifts:
        for bk, nk in shifts:
            d = ((bk - bj) % N, (nk - nj) % N)
            if d in out:
                continue
            Vd = np.roll(V, d, axis=(0, 1))  # V(c - delta)
            out[d] = fold(omega(N, -d[0] * nu) * np.conj(V) * Vd, lat)
    return out


def gamma_from_adjoint(A, lat, shifts):
    """Assemble the Gamma field from the A_delta coefficients."""
    shifts = _check_adjoint(shifts, lat)
    N = lat.N
    J = len(shifts)
    Gam = np.empty(lat.quotient_shape + (J, J), dtype=complex)
    for j, (bj, nj) in enumerate(shifts):
        for k, (bk, nk) in enumerate(shifts):
            d = ((bk - bj) % N, (nk - nj) % N)
            Gam[..., j, k] = omega(N, -bk * (nj - nk)) * A[d]
    return Gam


def solve_adjoint_twisted(H, g, h, lat, shifts, cond_limit=COND_LIMIT):
    """Best MGM masks by solving the right twisted convolution system M # A~ = B.

    The system at each quotient point is

        sum_{mu'} M(mu') A~(mu - mu') omega^(-b'(nu - nu')) = B(mu),  A~(delta) = A_{-delta},

    over the shift list; it is the same linear system as Gamma M = B written
    in twisted-convolution form.
    """
    shifts = _check_adjoint(shifts, lat)
    N = lat.N
    A = adjoint_lattice_gamma(g, h, lat, shifts)
    J = len(shifts)
    sysmat = np.empty(lat.quotient_shape + (J, J), dtype=complex)
    for i, (b, nu) in enumerate(shifts):
        for k, (bp, nup) in enumerate(shifts):
            d = ((bp - b) % N, (nup - nu) % N)  # -(mu - mu')
            sysmat[..., i, k] = A[d] * omega(N, -bp * (nu - nup))
    hs = shifted_windows(h, shifts)
    eta = spreading_from_kernel(as_square(H, N, "operator"))
    V = np.stack([stft(w, g) for w in hs], axis=-1)
    B = N * fold(np.conj(V) * eta[..., None], lat)
    Q = _solve_field(sysmat, B, cond_limit)
    return np.stack([transfer_to_mask(Q[..., j], lat) for j in range(J)])


# -- tensor projection frames ---------------------------------------------------


def _frame_or_raise(w, lat, name, rel_tol):
    S = gabor_system(w, lat)
    ev = np.linalg.eigvalsh(S @ S.conj().T)
    if ev[-1] <= 0 or ev[0] <= rel_tol * ev[-1]:
        raise FrameError(f"({name}, {lat}) is not a frame: smallest frame eigenvalue {ev[0]:.3e}",
                         min_eig=float(ev[0]))


def projection_frame_expand(H, g, h, lat1, lat2, rel_tol=1e-10):
    """Coefficients c[i, k] with H = sum c[i, k] P_{lambda_i, mu_k}.

    P_{lambda, mu} f = <f, pi(lambda) g> pi(mu) h with lambda in lat1, mu in
    lat2 (m-major point order).  c[i, k] = <H pi(lambda_i) g~, pi(mu_k) h~>
    with canonical duals g~, h~.
    """
    H = as_square(H, lat1.N, "operator")
    _frame_or_raise(g, lat1, "g", rel_tol)
    _frame_or_raise(h, lat2, "h", rel_tol)
    Gd = gabor_system(dual_window(g, lat1), lat1)
    Hd = gabor_system(dual_window(h, lat2), lat2)
    return (H @ Gd).T @ np.conj(Hd)


def projection_frame_synthesis(c, g, h, lat1, lat2):
    """sum_{i,k} c[i, k] P_{lambda_i, mu_k} as a kernel."""
    G = gabor_system(g, lat1)
    Hs = gabor_system(h, lat2)
    # kernel = sum c[i,k] (pi(mu_k) h)(t) conj(pi(lambda_i) g)(s)
    return Hs @ np.asarray(c).T @ G.conj().T


def tensor_frame_bounds(g, h, lat1, lat2):
    """Frame bounds of {P_{lambda, mu}} on the N^2-dimensional operator space.

    Built from the explicit family of vectorized rank-one kernels.
    """
    G = gabor_system(g, lat1)
    Hs = gabor_system(h, lat2)
    vecs = np.einsum("tk,si->kits", Hs, np.conj(G)).reshape(-1, lat1.N**2)
    ev = np.linalg.eigvalsh(vecs.T @ vecs.conj())
    return float(ev[0]), float(ev[-1])
