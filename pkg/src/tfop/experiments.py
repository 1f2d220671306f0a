"""Random operator generators and approximation sweeps used by the CLI and the demos."""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import TFLattice, TFOpError, gauss_window
from .gm import RieszError, gm_error_and_bound, relative_error
from .mgm import best_mgm, mgm_matrix, shifted_windows
from .spread import kernel_from_spreading

RNG_NAME = "numpy.random.Generator(PCG64)"

ROW_COLUMNS = ["scheme", "lattice", "width", "rank", "err_rel", "err_hs", "bound", "runtime_ms"]


def rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _centred(n, N):
    # n consecutive cyclic indices around zero: 2 -> [0, 1], 3 -> [-1, 0, 1]
    return np.arange(n) - (n - 1) // 2


def rect_spreading(N, lags, dopplers, seed):
    """Real i.i.d. uniform[-0.5, 0.5] spreading values on a centred lags x dopplers box."""
    if not (1 <= lags <= N and 1 <= dopplers <= N):
        raise TFOpError(f"support box {lags}x{dopplers} does not fit N={N}")
    r = rng(seed)
    eta = np.zeros((N, N), dtype=complex)
    bi = _centred(lags, N) % N
    ni = _centred(dopplers, N) % N
    eta[np.ix_(bi, ni)] = r.uniform(-0.5, 0.5, size=(lags, dopplers))
    return eta


def perturbed_lti_spreading(N, taps, noise, seed, box=(3, 3)):
    """Convolution with ``taps`` random taps at lags 0..taps-1 plus noise on a small box.

    The noise is uniform[-0.5, 0.5] scaled by ``noise`` on a centred box of
    shape ``box``; noise=0 leaves an exactly time-invariant operator.
    """
    if not 1 <= taps <= N:
        raise TFOpError(f"taps={taps} must lie in [1, {N}]")
    if not (1 <= box[0] <= N and 1 <= box[1] <= N):
        raise TFOpError(f"noise box {box} does not fit N={N}")
    r = rng(seed)
    eta = np.zeros((N, N), dtype=complex)
    eta[:taps, 0] = r.uniform(-0.5, 0.5, size=taps)
    pert = r.uniform(-0.5, 0.5, size=box)
    eta[np.ix_(_centred(box[0], N) % N, _centred(box[1], N) % N)] += noise * pert
    return eta


def random_operator(kind, N, seed, **params):
    if kind == "rect":
        eta = rect_spreading(N, params.get("lags", 2), params.get("dopplers", 8), seed)
    elif kind == "perturbed-lti":
        eta = perturbed_lti_spreading(
            N, params.get("taps", 12), params.get("noise", 0.1), seed, tuple(params.get("box", (3, 3)))
        )
    else:
        raise TFOpError(f"unknown operator kind {kind!r}; use 'rect' or 'perturbed-lti'")
    return kernel_from_spreading(eta)


# -- synthesis shift schemes -----------------------------------------------------


def scheme_shifts(lat, scheme):
    """Adjoint-lattice shift lists.

    scheme 1: the four corners {0, N/b} x {0, N/a} of one adjoint cell.
    scheme 2: five shifts, the origin plus its four axis neighbours.
    """
    tb, tn = lat.adjoint_steps
    if scheme == 1:
        return [(0, 0), (0, tn), (tb, 0), (tb, tn)]
    if scheme == 2:
        return [(0, 0), (tb, 0), (-tb % lat.N, 0), (0, tn), (0, -tn % lat.N)]
    raise TFOpError(f"unknown scheme {scheme!r}; use 1 or 2")


def parse_shifts(text):
    """'0:0,8:0' -> [(0, 0), (8, 0)]"""
    out = []
    for item in text.split(","):
        try:
            b, nu = item.split(":")
            out.append((int(b), int(nu)))
        except ValueError as exc:
            raise TFOpError(f"bad shift {item!r}; expected b:nu") from exc
    return out


# -- sweeps -------------------------------------------------------------------------


@dataclass
class SweepPoint:
    scheme: str  # "gm" or "mgm:<shift list>"
    lattice: TFLattice
    width: float
    shifts: list = field(default_factory=list)

    def key(self):
        return (self.scheme, self.lattice.a, self.lattice.b, self.width)


def run_point(H, pt, pinv=False, timing=False):
    N = pt.lattice.N
    g = gauss_window(N, pt.width)
    t0 = time.perf_counter()
    if pt.scheme == "gm":
        res = gm_error_and_bound(H, g, g, pt.lattice, pinv=pinv)
        err_rel, err_hs, bound = res.err_rel, np.sqrt(res.err), np.sqrt(res.bound)
        rank = pt.lattice.size
    else:
        hs = shifted_windows(g, pt.shifts)
        ms = best_mgm(H, g, hs, pt.lattice)
        A = mgm_matrix(ms, g, hs, pt.lattice)
        err_rel = relative_error(H, A)
        err_hs = float(np.linalg.norm(H - A))
        bound = "NA"
        rank = pt.lattice.size * len(pt.shifts)
    ms_elapsed = (time.perf_counter() - t0) * 1e3
    return {
        "scheme": pt.scheme,
        "lattice": str(pt.lattice),
        "width": float(pt.width),
        "rank": int(rank),
        "err_rel": float(err_rel),
        "err_hs": float(err_hs),
        "bound": float(bound) if bound != "NA" else bound,
        "runtime_ms": round(ms_elapsed, 3) if timing else "NA",
    }


def thread_count():
    raw = os.environ.get("TFOP_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def run_sweep(H, points, pinv=False, timing=False, threads=None):
    """Evaluate every sweep point; rows come back sorted so thread count never changes output.

    Riesz failures are collected and re-raised together after all points ran.
    """
    threads = threads or thread_count()
    points = sorted(points, key=SweepPoint.key)

    def one(pt):
        try:
            return run_point(H, pt, pinv, timing), None
        except RieszError as exc:
            d = exc.as_dict()
            d.update(scheme=pt.scheme, lattice=str(pt.lattice), width=pt.width)
            return None, d

    if threads == 1:
        results = [one(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(one, points))
    rows = [r for r, _ in results if r is not None]
    failures = [f for _, f in results if f is not None]
    rows.sort(key=lambda r: (r["scheme"], r["lattice"], r["width"]))
    return rows, failures


def build_points(N, lattices, widths, scheme="gm", shifts=None):
    pts = []
    for a, b in lattices:
        lat = TFLattice(N, a, b)
        for w in widths:
            if scheme == "gm":
                pts.append(SweepPoint("gm", lat, float(w)))
            else:
                sh = shifts if isinstance(shifts, list) else scheme_shifts(lat, int(shifts))
                tag = "mgm:" + ";".join(f"{x}:{y}" for x, y in sh)
                pts.append(SweepPoint(tag, lat, float(w), sh))
    return pts


def spreading_summary(eta, tol=1e-12):
    from .spread import support_box

    t0, xi0 = support_box(eta, tol)
    return {"support": [t0, xi0], "l2": float(np.linalg.norm(eta)), "n": int(eta.shape[0])}
