"""
Best Gabor multiplier and lattice adaptation
============================================

A random operator whose spreading function lives in a 2 x 8 box (2 lags,
8 Doppler bins) is approximated by Gabor multipliers on two lattices with
the same number of points.  The lattice whose adjoint cell covers the box
does markedly better, whatever Gaussian width we pick for it.
"""
import numpy as np

from tfop import RieszError, TFLattice, gauss_window, gm_error_and_bound, kernel_from_spreading
from tfop.experiments import rect_spreading

N = 32
widths = [0.5, 0.7, 1, 1.4, 2]
lattices = [TFLattice(N, 2, 8), TFLattice(N, 8, 2)]

for box in [(2, 8), (8, 2)]:
    H = kernel_from_spreading(rect_spreading(N, *box, seed=3))
    print(f"\nspreading box {box[0]} lags x {box[1]} dopplers")
    print("width  " + "  ".join(f"{str(l):>8}" for l in lattices))
    for w in widths:
        g = gauss_window(N, w)
        cells = []
        for lat in lattices:
            try:
                cells.append(f"{gm_error_and_bound(H, g, g, lat).err_rel:8.4f}")
            except RieszError:
                cells.append("   riesz")
        print(f"{w:5.2f}  " + "  ".join(cells))

# The error estimate: exact error and the a priori bound.
H = kernel_from_spreading(rect_spreading(N, 2, 8, seed=3))
res = gm_error_and_bound(H, gauss_window(N, 1), gauss_window(N, 1), lattices[0])
print(f"\n||H - GM||^2 = {res.err:.4f}  <=  bound {res.bound:.4f};  E ranges over "
      f"[{res.E.min():.3f}, {res.E.max():.3f}]")
