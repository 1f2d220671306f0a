"""
Operators in phase space
========================

Every N x N matrix is a superposition of time-frequency shifts.  Its
coefficients form the spreading function, and composition of operators
turns into twisted convolution of spreading functions.
"""
import numpy as np

from tfop import (
    compose_spreading,
    gauss_window,
    kernel_from_spreading,
    spreading_from_kernel,
    stft,
    support_box,
    twisted_conv,
)
from tfop.experiments import perturbed_lti_spreading

N = 32
rng = np.random.default_rng(0)

# A slowly varying channel: a short impulse response with a little Doppler.
eta = perturbed_lti_spreading(N, taps=6, noise=0.2, seed=0)
H = kernel_from_spreading(eta)
print("support box (lag, doppler):", support_box(eta, 1e-12))
print("||H||_HS =", round(np.linalg.norm(H), 6), " sqrt(N)*||eta|| =", round(np.sqrt(N) * np.linalg.norm(eta), 6))

# Applying H to a signal is a twisted convolution on the STFT side.
f = rng.standard_normal(N) + 1j * rng.standard_normal(N)
g = gauss_window(N, 1)
lhs = stft(H @ f, g)
rhs = twisted_conv(eta, stft(f, g))
print("STFT of Hf vs eta # STFT of f:", np.abs(lhs - rhs).max())

# Composition: the product of two channels.
eta2 = perturbed_lti_spreading(N, taps=3, noise=0.0, seed=1)
H2 = kernel_from_spreading(eta2)
gap = np.abs(compose_spreading(eta2, eta) - spreading_from_kernel(H2 @ H)).max()
print("spreading of H2 H vs twisted product:", gap)
