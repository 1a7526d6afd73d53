"""Dense integer kernels for bigraded series arithmetic.

Coefficient tables are int64 arrays indexed by (weight, degree-offset).
Multiplying in a single generator is a shift-and-add recurrence, so the hot
loops live here with two interchangeable backends:

* ``numba`` (default): the loops below compiled with ``@njit``;
* ``numpy``: row-sliced vectorized equivalents.

Set ``DLCALC_NO_NUMBA=1`` to force the numpy backend (also used when numba
is not importable).  ``benchmarks/bench_series.py`` times one against the
other on a realistic workload.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["BACKEND", "get_backend", "geometric_inplace", "exterior", "convolve"]


# -- loop bodies (plain python, njit-compatible) -----------------------------

def _geometric_loop(c, w0, d0):
    """In place: multiply by 1 + q^(w0,d0) + q^(2w0,2d0) + ...; needs w0 >= 1."""
    nw, nd = c.shape
    d_lo = d0 if d0 > 0 else 0
    d_hi = nd if d0 > 0 else nd + d0
    for w in range(w0, nw):
        for d in range(d_lo, d_hi):
            c[w, d] += c[w - w0, d - d0]


def _exterior_loop(c, w0, d0):
    """Return c * (1 + q^(w0,d0)); needs w0 >= 1."""
    nw, nd = c.shape
    out = c.copy()
    d_lo = d0 if d0 > 0 else 0
    d_hi = nd if d0 > 0 else nd + d0
    for w in range(w0, nw):
        for d in range(d_lo, d_hi):
            out[w, d] += c[w - w0, d - d0]
    return out


def _convolve_loop(a, b):
    """Truncated convolution product of two tables with identical shape."""
    nw, nd = a.shape
    out = np.zeros((nw, nd), dtype=np.int64)
    for w1 in range(nw):
        for d1 in range(nd):
            v = a[w1, d1]
            if v == 0:
                continue
            for w2 in range(nw - w1):
                for d2 in range(nd - d1):
                    out[w1 + w2, d1 + d2] += v * b[w2, d2]
    return out


# -- numpy backend -----------------------------------------------------------

def _geometric_numpy(c, w0, d0):
    nw, nd = c.shape
    if d0 >= 0:
        dst, src = slice(d0, nd), slice(0, nd - d0)
    else:
        dst, src = slice(0, nd + d0), slice(-d0, nd)
    for w in range(w0, nw):
        c[w, dst] += c[w - w0, src]


def _exterior_numpy(c, w0, d0):
    nw, nd = c.shape
    out = c.copy()
    if d0 >= 0:
        dst, src = slice(d0, nd), slice(0, nd - d0)
    else:
        dst, src = slice(0, nd + d0), slice(-d0, nd)
    out[w0:, dst] += c[: nw - w0, src]
    return out


def _convolve_numpy(a, b):
    nw, nd = a.shape
    out = np.zeros((nw, nd), dtype=np.int64)
    for w1, d1 in zip(*np.nonzero(a)):
        out[w1:, d1:] += a[w1, d1] * b[: nw - w1, : nd - d1]
    return out


_NUMPY = {
    "geometric_inplace": _geometric_numpy,
    "exterior": _exterior_numpy,
    "convolve": _convolve_numpy,
}


def _build_numba():
    from numba import njit

    return {
        "geometric_inplace": njit(cache=True)(_geometric_loop),
        "exterior": njit(cache=True)(_exterior_loop),
        "convolve": njit(cache=True)(_convolve_loop),
    }


def get_backend(name: str) -> dict:
    """Kernel table for an explicit backend, independent of the env flag."""
    if name == "numpy":
        return _NUMPY
    if name == "numba":
        return _build_numba()
    raise ValueError(f"unknown backend {name!r}")


def _select() -> tuple[str, dict]:
    if os.environ.get("DLCALC_NO_NUMBA", "") not in ("", "0"):
        return "numpy", _NUMPY
    try:
        return "numba", _build_numba()
    except ImportError:
        return "numpy", _NUMPY


BACKEND, _ACTIVE = _select()

geometric_inplace = _ACTIVE["geometric_inplace"]
exterior = _ACTIVE["exterior"]
convolve = _ACTIVE["convolve"]
