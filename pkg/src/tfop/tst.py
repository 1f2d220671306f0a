"""Twisted spline type (TST) spreading functions and their Gabor multiplier forms.

A TST spreading function is a twisted convolution alpha # phi of a finite
coefficient comb alpha (atoms at (k b1, l nu1)) with a prototype phi:

    eta(b, nu) = sum_{k,l} alpha_kl phi(b - k b1, nu - l nu1) omega^(-(nu - l nu1) k b1).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import DimensionError, TFOpError, as_square, omega
from .gm import gm_matrix, gm_spreading, multiplier_from_spreading
from .spread import kernel_from_spreading
from .tfr import tf_shift, tf_shift_matrix, twisted_conv

STRUCTURE_TOL = 1e-8


class StructureError(TFOpError):
    """phi is not (close enough to) the spreading function of a Gabor multiplier."""

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


@dataclass
class TSTSpec:
    """alpha maps integer offsets (k, l) to complex coefficients."""

    alpha: dict
    phi: np.ndarray
    b1: int
    nu1: int
    N: int = field(init=False)

    def __post_init__(self):
        self.phi = as_square(self.phi, name="phi")
        self.N = self.phi.shape[0]
        if self.b1 < 1 or self.nu1 < 1 or self.N % self.b1 or self.N % self.nu1:
            raise TFOpError(f"b1={self.b1} and nu1={self.nu1} must be positive divisors of N={self.N}")
        self.alpha = {(int(k), int(l)): complex(v) for (k, l), v in dict(self.alpha).items()}
        if not self.alpha:
            raise TFOpError("alpha needs at least one coefficient")

    def atoms(self):
        """Sorted list of ((time shift, frequency shift), alpha) pairs."""
        return [((k * self.b1, l * self.nu1), v) for (k, l), v in sorted(self.alpha.items())]


def alpha_comb(spec):
    A = np.zeros((spec.N, spec.N), dtype=complex)
    for (b, nu), v in spec.atoms():
        A[b % spec.N, nu % spec.N] += v
    return A


def tst_spreading(spec):
    N = spec.N
    nu = np.arange(N)[None, :]
    eta = np.zeros((N, N), dtype=complex)
    for (sb, sn), v in spec.atoms():
        shifted = np.roll(spec.phi, (sb, sn), axis=(0, 1))
        eta += v * shifted * omega(N, -(nu - sn) * sb)
    return eta


def tst_spreading_twisted(spec):
    """Same function computed as twisted_conv(comb(alpha), phi)."""
    return twisted_conv(alpha_comb(spec), spec.phi)


def tst_operator(spec):
    """sum_{k,l} alpha_kl pi(k b1, l nu1) H_phi as a kernel."""
    Hphi = kernel_from_spreading(spec.phi)
    return sum(v * tf_shift_matrix(spec.N, sb, sn) for (sb, sn), v in spec.atoms()) @ Hphi


def _phi_mask(spec, g, h, lat, strict):
    if lat.N != spec.N:
        raise DimensionError(f"lattice is for N={lat.N}, spec for N={spec.N}")
    mask = multiplier_from_spreading(spec.phi, g, h, lat)
    nrm = np.linalg.norm(spec.phi)
    residual = float(np.linalg.norm(spec.phi - gm_spreading(mask, g, h, lat)) / nrm) if nrm else 0.0
    if residual > STRUCTURE_TOL:
        msg = f"phi is not of multiplier form for lattice {lat}: relative residual {residual:.3e}"
        if strict:
            raise StructureError(msg, residual)
        warnings.warn(msg + "; the reduction is approximate", stacklevel=3)
    return mask, residual


@dataclass
class GMTerm:
    """One Gabor multiplier of a TST reduction.

    The mask is zero off the coset {m = m_res mod m_mod, n = n_res mod n_mod}.
    """

    coset: tuple
    gamma: np.ndarray
    mask: np.ndarray
    residual: float = 0.0


def tst_to_single_gm(spec, g, h, lat, strict=True):
    """Reduce a TST operator with atoms on the adjoint lattice to one Gabor multiplier."""
    tb, tn = lat.adjoint_steps
    if spec.b1 % tb or spec.nu1 % tn:
        raise TFOpError(
            f"(b1, nu1)=({spec.b1}, {spec.nu1}) is not on the adjoint lattice {tb}Z x {tn}Z"
        )
    mask, residual = _phi_mask(spec, g, h, lat, strict)
    gamma = sum(v * tf_shift(sb, sn, h) for (sb, sn), v in spec.atoms())
    return GMTerm((0, 1, 0, 1), gamma, mask, residual)


def tst_windows(spec, h, lat, p, q):
    """Synthesis windows gamma for each (m mod q, n mod p) class.

    Moving pi(k b1, l nu1) past pi(m a, n b) costs the phase
    omega^(l nu1 m a - n b k b1) = exp(2 pi i (l m / q - k n / p)).
    """
    out = {}
    for mr in range(q):
        for nr in range(p):
            out[(mr, nr)] = sum(
                v * np.exp(2j * np.pi * (l * mr / q - k * nr / p)) * tf_shift(k * spec.b1, l * spec.nu1, h)
                for (k, l), v in sorted(spec.alpha.items())
            )
    return out


def tst_to_gm_sum(spec, g, h, lat, p, q, strict=True):
    """Write the TST operator as a sum of at most p*q Gabor multipliers.

    Requires b1 = N/(p b) and nu1 = N/(q a).  The window attached to lattice
    point (m, n) depends on m mod q and n mod p; each returned term carries
    the mask restricted to one such class.
    """
    if p < 1 or q < 1:
        raise TFOpError(f"p and q must be positive, got {p}, {q}")
    if spec.b1 * p * lat.b != lat.N or spec.nu1 * q * lat.a != lat.N:
        raise TFOpError(
            f"need b1 = N/(p b) = {lat.N / (p * lat.b):g} and nu1 = N/(q a) = {lat.N / (q * lat.a):g}, "
            f"got b1={spec.b1}, nu1={spec.nu1}"
        )
    if p == 1 and q == 1:
        return [tst_to_single_gm(spec, g, h, lat, strict)]
    mask, residual = _phi_mask(spec, g, h, lat, strict)
    wins = tst_windows(spec, h, lat, p, q)
    m_idx = np.arange(lat.M)[:, None]
    n_idx = np.arange(lat.K)[None, :]
    terms = []
    for (mr, nr), gamma in wins.items():
        sel = (m_idx % q == mr) & (n_idx % p == nr)
        if not sel.any():
            continue
        terms.append(GMTerm((mr, q, nr, p), gamma, np.where(sel, mask, 0), residual))
    return terms


def gm_sum_matrix(terms, g, lat):
    return sum(gm_matrix(t.mask, g, t.gamma, lat) for t in terms)
