"""
Multiple Gabor multipliers
==========================

A perturbed time-invariant operator with a 12-tap impulse response is too
long in lag for a 4 x 4 lattice.  Adding synthesis windows shifted on the
adjoint lattice (scheme 1: the corners of one adjoint cell) fixes that;
at equal rank 256 it beats the regular 2 x 2 Gabor multiplier.
"""
import numpy as np

from tfop import (
    TFLattice,
    best_gm_mask,
    best_mgm,
    gamma_field,
    gamma_summary,
    gauss_window,
    gm_matrix,
    mgm_matrix,
    relative_error,
    shifted_windows,
)
from tfop.experiments import random_operator, scheme_shifts

N = 32
g = gauss_window(N, 1)
lat, reg = TFLattice(N, 4, 4), TFLattice(N, 2, 2)
shifts = scheme_shifts(lat, 1)
hs = shifted_windows(g, shifts)
print("scheme 1 shifts:", shifts)
print("Gamma eigenvalues over the quotient grid:", gamma_summary(gamma_field(g, hs, lat)))

print("\nseed   GM 4x4   MGM 4x4 (rank 256)   GM 2x2 (rank 256)")
for seed in range(5):
    H = random_operator("perturbed-lti", N, seed, taps=12, noise=0.1)
    e_small = relative_error(H, gm_matrix(best_gm_mask(H, g, g, lat), g, g, lat))
    e_mgm = relative_error(H, mgm_matrix(best_mgm(H, g, hs, lat), g, hs, lat))
    e_reg = relative_error(H, gm_matrix(best_gm_mask(H, g, g, reg), g, g, reg))
    print(f"{seed:4d}   {e_small:.4f}   {e_mgm:.4f}               {e_reg:.4f}")
