"""JSON and CSV formats for signals, kernels, phase-space maps, masks and TST specs.

Complex arrays are written as ``{"n": N, "re": [...], "im": [...]}`` with
matrices flattened row-major.  Masks add lattice metadata ``"a"`` and ``"b"``.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .core import TFLattice, TFOpError


class FormatError(TFOpError):
    pass


def _floats(x):
    # +0.0 folds negative zeros so equal arrays always print the same
    return [float(v) + 0.0 for v in np.asarray(x, dtype=float).ravel()]


def array_to_obj(A, **meta):
    A = np.asarray(A, dtype=complex)
    if A.ndim == 1:
        n = A.shape[0]
    elif A.ndim == 2 and A.shape[0] == A.shape[1]:
        n = A.shape[0]
    elif A.ndim == 2:
        n = meta.pop("n")
    else:
        raise FormatError(f"cannot serialize array of shape {A.shape}")
    return {"n": int(n), **meta, "re": _floats(A.real), "im": _floats(A.imag)}


def obj_to_array(obj, shape=None):
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float).ravel()
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float).ravel()
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed array object: {exc}") from exc
    if re.shape != im.shape:
        raise FormatError(f"re has {re.size} entries but im has {im.size}")
    A = re + 1j * im
    if shape is None:
        if A.size == n:
            shape = (n,)
        elif A.size == n * n:
            shape = (n, n)
        else:
            raise FormatError(f"{A.size} entries fit neither a vector nor a matrix with n={n}")
    if A.size != int(np.prod(shape)):
        raise FormatError(f"{A.size} entries do not fit shape {shape}")
    if not np.all(np.isfinite(A)):
        raise FormatError("array contains non-finite values")
    return A.reshape(shape)


def mask_to_obj(m, lat, tag=None):
    obj = array_to_obj(m, n=lat.N, a=lat.a, b=lat.b)
    if tag is not None:
        obj["tag"] = tag
    return obj


def obj_to_mask(obj):
    lat = TFLattice(int(obj["n"]), int(obj["a"]), int(obj["b"]))
    return obj_to_array(obj, (lat.M, lat.K)), lat


def maskset_to_obj(ms, lat, tags):
    return {
        "n": lat.N,
        "a": lat.a,
        "b": lat.b,
        "masks": [{"tag": t, "re": _floats(m.real), "im": _floats(m.imag)} for m, t in zip(ms, tags)],
    }


def obj_to_maskset(obj):
    lat = TFLattice(int(obj["n"]), int(obj["a"]), int(obj["b"]))
    ms = [obj_to_array({"n": lat.N, **m}, (lat.M, lat.K)) for m in obj["masks"]]
    return np.stack(ms), lat, [m.get("tag") for m in obj["masks"]]


def tst_to_obj(spec, phi_ref=None):
    keys = sorted(spec.alpha)
    vals = np.array([spec.alpha[k] for k in keys])
    return {
        "n": spec.N,
        "b1": spec.b1,
        "nu1": spec.nu1,
        "alpha": {"offsets": [list(k) for k in keys], "re": _floats(vals.real), "im": _floats(vals.imag)},
        "phi": phi_ref if phi_ref is not None else array_to_obj(spec.phi),
    }


def obj_to_tst(obj, base=None):
    from .tst import TSTSpec

    phi = obj["phi"]
    if isinstance(phi, str):
        path = Path(phi)
        if base is not None and not path.is_absolute():
            path = Path(base) / path
        phi = load_json(path)
    phi = obj_to_array(phi)
    al = obj["alpha"]
    offsets = [tuple(o) for o in al["offsets"]]
    re = al.get("re")
    im = al.get("im")
    if re is None and "values" in al:
        vals = al["values"]
        re, im = (vals["re"], vals["im"]) if isinstance(vals, dict) else (vals, [0.0] * len(vals))
    if im is None:
        im = [0.0] * len(re)
    if not (len(offsets) == len(re) == len(im)):
        raise FormatError("alpha offsets and values differ in length")
    alpha = {o: complex(r, i) for o, r, i in zip(offsets, re, im)}
    return TSTSpec(alpha, phi, int(obj["b1"]), int(obj["nu1"]))


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=None, separators=(",", ":")) + "\n"


def canonical(obj, digits=10):
    """Round every float so that numerically equal documents compare equal as text."""
    def walk(x):
        if isinstance(x, float):
            return round(x, digits) + 0.0
        if isinstance(x, list):
            return [walk(v) for v in x]
        if isinstance(x, dict):
            return {k: walk(v) for k, v in x.items()}
        return x

    return dumps(walk(obj))


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def array_to_csv(A):
    A = np.asarray(A, dtype=complex)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if A.ndim == 1:
        w.writerow(["re", "im"])
        for v in A:
            w.writerow([repr(float(v.real) + 0.0), repr(float(v.imag) + 0.0)])
    else:
        w.writerow(["row", "col", "re", "im"])
        for (i, j), v in np.ndenumerate(A):
            w.writerow([i, j, repr(float(v.real) + 0.0), repr(float(v.imag) + 0.0)])
    return buf.getvalue()


def csv_to_array(text):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise FormatError("empty CSV")
    head = rows[0]
    body = rows[1:]
    if head == ["re", "im"]:
        return np.array([float(r) + 1j * float(i) for r, i in body])
    if head == ["row", "col", "re", "im"]:
        n = max(int(r[0]) for r in body) + 1
        k = max(int(r[1]) for r in body) + 1
        A = np.zeros((n, k), dtype=complex)
        for i, j, r, im in body:
            A[int(i), int(j)] = float(r) + 1j * float(im)
        return A
    raise FormatError(f"unrecognized CSV header {head}")


def rows_to_csv(rows, columns):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: _fmt(r.get(k, "")) for k in columns})
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return repr(v + 0.0)
    return v
