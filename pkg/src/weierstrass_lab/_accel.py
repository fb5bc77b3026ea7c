"""Integer kernels over exponent arrays, JIT-compiled with numba when allowed.

Coefficient arithmetic stays in exact Python rationals; only the monomial
bookkeeping (staircases, divisibility screens) runs here. Set
``WEIERSTRASS_LAB_PURE_NUMPY=1`` to force the numpy path, e.g. to compare
the two in ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np

PURE_NUMPY = os.environ.get("WEIERSTRASS_LAB_PURE_NUMPY", "").strip().lower() not in ("", "0", "false", "no")

try:
    if PURE_NUMPY:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def _staircase_box(lead: np.ndarray) -> np.ndarray | None:
    """Per-variable pure-power bounds, or None when the staircase is unbounded."""
    n = lead.shape[1]
    bounds = np.full(n, -1, dtype=np.int64)
    for row in lead:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            return np.zeros(n, dtype=np.int64)
        if nz.size == 1:
            i = nz[0]
            if bounds[i] < 0 or row[i] < bounds[i]:
                bounds[i] = row[i]
    if np.any(bounds < 0):
        return None
    return bounds


def _count_numpy(lead: np.ndarray, bounds: np.ndarray) -> int:
    if np.any(bounds == 0):
        return 0
    grid = np.indices(tuple(int(b) for b in bounds)).reshape(len(bounds), -1).T
    divisible = np.zeros(grid.shape[0], dtype=bool)
    for row in lead:
        divisible |= np.all(grid >= row, axis=1)
    return int(grid.shape[0] - divisible.sum())


def _divides_numpy(lead: np.ndarray, monos: np.ndarray) -> np.ndarray:
    if lead.shape[0] == 0:
        return np.zeros(monos.shape[0], dtype=bool)
    return np.any(np.all(monos[:, None, :] >= lead[None, :, :], axis=2), axis=1)


if HAVE_NUMBA:

    @njit(cache=True)
    def _count_jit(lead, bounds):
        n = bounds.shape[0]
        total = 1
        for i in range(n):
            total *= bounds[i]
        count = 0
        cur = np.zeros(n, dtype=np.int64)
        for _ in range(total):
            hit = False
            for j in range(lead.shape[0]):
                ok = True
                for i in range(n):
                    if cur[i] < lead[j, i]:
                        ok = False
                        break
                if ok:
                    hit = True
                    break
            if not hit:
                count += 1
            # odometer increment
            for i in range(n):
                cur[i] += 1
                if cur[i] < bounds[i]:
                    break
                cur[i] = 0
        return count

    @njit(cache=True)
    def _divides_jit(lead, monos):
        out = np.zeros(monos.shape[0], dtype=np.bool_)
        n = monos.shape[1]
        for m in range(monos.shape[0]):
            for j in range(lead.shape[0]):
                ok = True
                for i in range(n):
                    if monos[m, i] < lead[j, i]:
                        ok = False
                        break
                if ok:
                    out[m] = True
                    break
        return out


def count_standard_monomials(lead, use_jit: bool | None = None) -> int | None:
    """Number of monomials outside the monomial ideal generated by ``lead``.

    ``lead`` is a (k, n) array of exponent rows. Returns None when the count
    is infinite.
    """
    lead = np.asarray(lead, dtype=np.int64)
    if lead.ndim != 2 or lead.shape[0] == 0:
        return None
    bounds = _staircase_box(lead)
    if bounds is None:
        return None
    jit = HAVE_NUMBA if use_jit is None else (use_jit and HAVE_NUMBA)
    if jit:
        return int(_count_jit(lead, bounds))
    return _count_numpy(lead, bounds)


def divisible_mask(lead, monos, use_jit: bool | None = None) -> np.ndarray:
    """Boolean mask: row ``m`` of ``monos`` is divisible by some row of ``lead``."""
    lead = np.asarray(lead, dtype=np.int64).reshape(-1, np.shape(monos)[1])
    monos = np.asarray(monos, dtype=np.int64)
    jit = HAVE_NUMBA if use_jit is None else (use_jit and HAVE_NUMBA)
    if jit:
        return _divides_jit(lead, monos)
    return _divides_numpy(lead, monos)
