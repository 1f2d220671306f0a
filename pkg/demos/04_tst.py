"""
Twisted spline type operators
=============================

Take a Gabor multiplier H_phi and superpose a few time-frequency shifted
copies of it at half the adjoint-lattice spacing.  The result is no longer
a single Gabor multiplier, but it is exactly a sum of four, each living on
one coset of the lattice with its own synthesis window.
"""
import numpy as np

from tfop import TFLattice, TSTSpec, gauss_window, gm_spreading, gm_sum_matrix, tst_operator, tst_to_gm_sum

N = 16
lat = TFLattice(N, 2, 2)
g = gauss_window(N, 1)
rng = np.random.default_rng(2)
phi = gm_spreading(rng.standard_normal((lat.M, lat.K)), g, g, lat)

alpha = {(0, 0): 1.0, (1, 0): 0.5, (-1, 0): 0.5, (0, 1): 0.3j, (0, -1): -0.3j}
spec = TSTSpec(alpha, phi, b1=N // (2 * lat.b), nu1=N // (2 * lat.a))
H = tst_operator(spec)

terms = tst_to_gm_sum(spec, g, g, lat, p=2, q=2)
for t in terms:
    print("coset (m mod %d = %d, n mod %d = %d)" % (t.coset[1], t.coset[0], t.coset[3], t.coset[2]),
          " nonzero mask entries:", np.count_nonzero(t.mask))
A = gm_sum_matrix(terms, g, lat)
print("relative HS error of the four-multiplier sum:", np.linalg.norm(A - H) / np.linalg.norm(H))
