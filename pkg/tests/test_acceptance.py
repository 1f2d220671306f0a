"""Acceptance suite: one PASS/FAIL line per criterion.

Run with pytest (lines appear in the terminal summary) or directly:
``python3 tests/test_acceptance.py``.
"""
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracle  # noqa: E402
from tfop import (  # noqa: E402
    TFLattice,
    TSTSpec,
    best_gm_mask,
    best_mgm,
    dual_window,
    gamma_field,
    gauss_window,
    gm_error_and_bound,
    gm_matrix,
    gm_spreading,
    gm_sum_matrix,
    kernel_from_spreading,
    mgm_matrix,
    relative_error,
    shifted_windows,
    spreading_from_kernel,
    stft,
    tf_shift,
    tf_shift_matrix,
    tst_operator,
    tst_to_gm_sum,
    tst_to_single_gm,
    tst_windows,
    twisted_conv,
    u_function,
)
from tfop.experiments import random_operator, rect_spreading, scheme_shifts  # noqa: E402

RESULTS = []


def record(num, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name} ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


def cn(r, *shape):
    return r.standard_normal(shape) + 1j * r.standard_normal(shape)


def expand(eta):
    """sum_{b,nu} eta[b, nu] pi(b, nu) with an explicit phase matrix (no FFT)."""
    N = eta.shape[0]
    t = np.arange(N)
    W = np.exp(2j * np.pi * np.outer(t, t) / N)  # W[nu, t]
    K = np.zeros((N, N), complex)
    for b in range(N):
        K[t, (t - b) % N] += eta[b] @ W
    return K


def c1():
    r = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst_rt = worst_ex = 0.0
    for N in (4, 8, 16, 64):
        for _ in range(25):
            K = cn(r, N, N)
            eta = spreading_from_kernel(K)
            worst_rt = max(worst_rt, np.abs(kernel_from_spreading(eta) - K).max())
            worst_ex = max(worst_ex, np.abs(expand(eta) - K).max())
    dt = time.perf_counter() - t0
    ok = worst_rt < 1e-12 and worst_ex < 1e-12 and dt < 10
    return record(1, "spreading round trip and expansion", ok,
                  f"round trip {worst_rt:.1e}, expansion {worst_ex:.1e}, {dt:.2f} s")


def c2():
    r = np.random.default_rng(2)
    worst = 0.0
    for i in range(50):
        N = (4, 6, 8, 12, 16, 24, 32)[i % 7]
        K, f, g = cn(r, N, N), cn(r, N), cn(r, N)
        lhs = stft(K @ f, g)
        rhs = twisted_conv(spreading_from_kernel(K), stft(f, g))
        worst = max(worst, np.linalg.norm(lhs - rhs) / np.linalg.norm(lhs))
    return record(2, "twisted representation identity", worst < 1e-10, f"max rel {worst:.1e}")


def c3():
    r = np.random.default_rng(3)
    worst, slowest = 0.0, 0.0
    for i in range(20):
        N = (8, 16)[i % 2]
        a, b = [(2, 2), (2, 4), (4, 2), (1, 4)][i % 4]
        lat = TFLattice(N, a, b)
        g, h, H = cn(r, N), cn(r, N), cn(r, N, N)
        t0 = time.perf_counter()
        A = gm_matrix(best_gm_mask(H, g, h, lat), g, h, lat)
        slowest = max(slowest, time.perf_counter() - t0)
        ref, _ = oracle.lsq_projection(H, g, [h], N, a, b)
        e1, e2 = np.linalg.norm(H - A) ** 2, np.linalg.norm(H - ref) ** 2
        worst = max(worst, abs(e1 - e2) / e2)
    ok = worst < 1e-9 and slowest < 1
    return record(3, "best mask equals normal-equations optimum", ok,
                  f"max rel HS-error gap {worst:.1e}, slowest {slowest * 1e3:.0f} ms")


def c4():
    r = np.random.default_rng(4)
    N = 16
    lat = TFLattice(N, 2, 4)
    g, h = gauss_window(N, 1), gauss_window(N, 1.3)
    # (i) multiplier in, same mask out
    m0 = cn(r, lat.M, lat.K)
    H = gm_matrix(m0, g, h, lat)
    res = gm_error_and_bound(H, g, h, lat)
    e1 = max(np.abs(res.mask - m0).max(), res.err)
    # (ii) TF shift: constant modulus, linear phase
    e2 = 0.0
    V, U = stft(h, g), u_function(g, h, lat)
    mi, ni = np.arange(lat.M)[:, None], np.arange(lat.K)[None, :]
    for b1, nu1 in [(1, 0), (3, 5), (6, 9), (15, 15)]:
        m = best_gm_mask(tf_shift_matrix(N, b1, nu1), g, h, lat)
        amp = lat.a * lat.b / N * np.conj(V[b1, nu1]) / U[b1 % lat.K, nu1 % lat.M]
        ref = amp * np.exp(2j * np.pi * (mi * lat.a * nu1 - ni * lat.b * b1) / N)
        e2 = max(e2, np.abs(m - ref).max())
    # (iii) constant mask with the dual window
    hd = dual_window(g, lat)
    e3 = np.abs(gm_matrix(np.ones((lat.M, lat.K)), g, hd, lat) - np.eye(N)).max()
    ok = max(e1, e2, e3) < 1e-10
    return record(4, "closed-form recoveries", ok, f"(i) {e1:.1e}, (ii) {e2:.1e}, (iii) {e3:.1e}")


def c5():
    r = np.random.default_rng(5)
    ok_bound, e_lo, e_hi, worst = True, 1.0, 0.0, 0.0
    for i in range(100):
        N = (8, 16)[i % 2]
        a, b = [(2, 2), (2, 4), (4, 2)][i % 3]
        lat = TFLattice(N, a, b)
        w = 0.8 + 0.1 * (i % 5)
        g, h = gauss_window(N, w), gauss_window(N, 1.0)
        H = cn(r, N, N)
        res = gm_error_and_bound(H, g, h, lat)
        eta = spreading_from_kernel(H)
        bound = N * np.linalg.norm(eta) ** 2 * np.max(1 - res.E)
        ok_bound &= res.err <= bound * (1 + 1e-9)
        e_lo, e_hi = min(e_lo, res.E.min()), max(e_hi, res.E.max())
        worst = max(worst, abs(res.err - res.fold_err) / res.err)
    ok = bool(ok_bound) and e_lo >= 0 and e_hi <= 1 and worst < 1e-9
    return record(5, "error bound validity", ok,
                  f"bound holds {bool(ok_bound)}, E in [{e_lo:.3f}, {e_hi:.3f}], fold identity {worst:.1e}")


def c6():
    r = np.random.default_rng(6)
    rec = orth = 0.0
    agree = True
    for J in (2, 3):
        for a, b in [(2, 2), (2, 4), (4, 4)]:
            N = 8
            lat = TFLattice(N, a, b)
            g, hs = cn(r, N), cn(r, J, N)
            ms = cn(r, J, lat.M, lat.K)
            rec = max(rec, np.abs(best_mgm(mgm_matrix(ms, g, hs, lat), g, hs, lat) - ms).max())
            H = cn(r, N, N)
            R = H - mgm_matrix(best_mgm(H, g, hs, lat), g, hs, lat)
            P = oracle.projections(g, hs, N, a, b)
            orth = max(orth, np.abs(P.conj().T @ R.ravel()).max() / np.linalg.norm(H))
            for windows in (hs, np.concatenate([hs[:1], hs[:1], hs[2:]])):
                ev = np.linalg.eigvalsh(gamma_field(g, windows, lat))
                Pw = oracle.projections(g, windows, N, a, b)
                gram = np.linalg.eigvalsh(Pw.conj().T @ Pw)
                agree &= (ev.min() > 1e-10 * ev.max()) == (gram.min() > 1e-10 * gram.max())
    ok = rec < 1e-9 and orth < 1e-9 and bool(agree)
    return record(6, "MGM optimality and Gamma test", ok,
                  f"recovery {rec:.1e}, orthogonality {orth:.1e}, Gamma/Gram agree {bool(agree)}")


def c7():
    r = np.random.default_rng(7)
    worst = 0.0
    signs_ok = True
    for N in (16, 32):
        lat = TFLattice(N, 2, 2)
        g, h = gauss_window(N, 1), gauss_window(N, 1.2)
        phi = gm_spreading(cn(r, lat.M, lat.K), g, h, lat)
        tb, tn = lat.adjoint_steps
        # case 1: atoms on the adjoint lattice
        alpha = {(k, l): complex(*r.standard_normal(2)) for k in (-1, 0, 1) for l in (-1, 0, 1)}
        spec = TSTSpec(alpha, phi, tb, tn)
        t = tst_to_single_gm(spec, g, h, lat)
        worst = max(worst, relative_error_hs(gm_matrix(t.mask, g, t.gamma, lat), tst_operator(spec)))
        # case 2 with p = q = 2 on the axis atoms, plus the diagonals
        ak = {k: complex(*r.standard_normal(2)) for k in (-1, 0, 1)}
        al = {l: complex(*r.standard_normal(2)) for l in (-1, 0, 1)}
        axis = {(k, 0): v for k, v in ak.items()}
        for l, v in al.items():
            axis[(0, l)] = axis.get((0, l), 0) + v
        b1, nu1 = N // (2 * lat.b), N // (2 * lat.a)
        spec = TSTSpec(axis, phi, b1, nu1)
        win = tst_windows(spec, h, lat, 2, 2)
        Ks = lambda s: sum(v * s ** k * tf_shift(k * b1, 0, h) for k, v in ak.items())
        Ls = lambda s: sum(v * s ** l * tf_shift(0, l * nu1, h) for l, v in al.items())
        e = np.exp(1j * np.pi)
        expected = {(0, 0): Ks(1) + Ls(1), (0, 1): Ks(e) + Ls(1), (1, 0): Ks(1) + Ls(e), (1, 1): Ks(e) + Ls(1 / e)}
        signs_ok &= all(np.abs(win[key] - expected[key]).max() < 1e-12 for key in expected)
        worst = max(worst, relative_error_hs(gm_sum_matrix(tst_to_gm_sum(spec, g, h, lat, 2, 2), g, lat),
                                             tst_operator(spec)))
        full = dict(alpha)
        spec = TSTSpec(full, phi, b1, nu1)
        worst = max(worst, relative_error_hs(gm_sum_matrix(tst_to_gm_sum(spec, g, h, lat, 2, 2), g, lat),
                                             tst_operator(spec)))
        for p, q in [(2, 1), (1, 2)]:
            spec = TSTSpec(alpha, phi, N // (p * lat.b), N // (q * lat.a))
            worst = max(worst, relative_error_hs(gm_sum_matrix(tst_to_gm_sum(spec, g, h, lat, p, q), g, lat),
                                                 tst_operator(spec)))
    ok = worst < 1e-10 and bool(signs_ok)
    return record(7, "TST reductions", ok, f"max rel HS error {worst:.1e}, axis-atom sign pattern {bool(signs_ok)}")


def relative_error_hs(A, B):
    return float(np.linalg.norm(A - B) / np.linalg.norm(B))


WIDTHS = [0.5, 0.6, 0.7, 0.85, 1, 1.2, 1.4, 1.7, 2]


def _best_err(H, lat):
    out = []
    for w in WIDTHS:
        g = gauss_window(lat.N, w)
        try:
            out.append(gm_error_and_bound(H, g, g, lat).err_rel)
        except Exception:
            pass
    return min(out)


def c8():
    N = 32
    t0 = time.perf_counter()
    l28, l82 = TFLattice(N, 2, 8), TFLattice(N, 8, 2)
    wins_a = 0
    for seed in range(5):
        tall = kernel_from_spreading(rect_spreading(N, 2, 8, seed))
        wide = kernel_from_spreading(rect_spreading(N, 8, 2, seed))
        wins_a += _best_err(tall, l28) < _best_err(tall, l82) and _best_err(wide, l82) < _best_err(wide, l28)
    ta = time.perf_counter() - t0
    t0 = time.perf_counter()
    g = gauss_window(N, 1)
    lat, reg = TFLattice(N, 4, 4), TFLattice(N, 2, 2)
    hs = shifted_windows(g, scheme_shifts(lat, 1))
    wins_b = 0
    gaps = []
    for seed in range(5):
        H = random_operator("perturbed-lti", N, seed, taps=12, noise=0.1)
        e_m = relative_error(H, mgm_matrix(best_mgm(H, g, hs, lat), g, hs, lat))
        e_g = relative_error(H, gm_matrix(best_gm_mask(H, g, g, reg), g, g, reg))
        wins_b += e_m < e_g
        gaps.append(e_g - e_m)
    tb = time.perf_counter() - t0
    ok = wins_a == 5 and wins_b == 5 and ta < 30 and tb < 30
    return record(8, "experiment trends", ok,
                  f"(a) adapted lattice wins {wins_a}/5 in {ta:.1f} s, "
                  f"(b) scheme 1 beats 2x2 GM {wins_b}/5, min gap {min(gaps):.3f}, {tb:.1f} s")


def c9():
    cmds = [
        ["random-op", "--kind", "perturbed-lti", "--seed", "11"],
        ["approx-gm", "--kind", "rect", "--seed", "11", "--lattice", "2x8", "--lattice", "8x2", "--lattice", "4x4",
         "--width", "0.7,1,1.4", "--format", "csv"],
        ["approx-mgm", "--kind", "perturbed-lti", "--seed", "11", "--lattice", "4x4", "--width", "0.8,1"],
    ]
    same = True
    for args in cmds:
        outs = set()
        for threads in ("1", "4", "1", "16"):
            env = dict(os.environ, TFOP_THREADS=threads)
            p = subprocess.run([sys.executable, "-m", "tfop.cli", *args], env=env, capture_output=True, check=True)
            outs.add(p.stdout)
        same &= len(outs) == 1
    return record(9, "CLI determinism", bool(same), f"{len(cmds)} commands x 4 runs, TFOP_THREADS in 1,4,16")


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(crit):
    assert crit()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
