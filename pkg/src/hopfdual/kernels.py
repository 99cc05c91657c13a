"""Brute-force enumeration kernels: numba-compiled, with a pure-numpy fallback.

Set HOPFDUAL_PURE_NUMPY=1 to force the numpy path (also used automatically
when numba is not importable). Both paths return identical arrays.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = ["USE_NUMBA", "enumerate_kernel", "pairing_table", "backend"]

_FORCE_NUMPY = os.environ.get("HOPFDUAL_PURE_NUMPY", "") not in ("", "0")

try:
    if _FORCE_NUMPY:
        raise ImportError
    from numba import njit
except ImportError:  # pragma: no cover - depends on the environment
    njit = None

USE_NUMBA = njit is not None


def backend():
    return "numba" if USE_NUMBA else "numpy"


# -- kernel enumeration --------------------------------------------------------

def _kernel_numpy(M, m):
    rows, n = M.shape
    # split coordinates: the low block is vectorised, the high block loops
    low = min(n, max(1, int(np.log(2 ** 20) / np.log(m))))
    high = n - low
    grid = np.indices((m,) * low).reshape(low, -1)[::-1]  # first coordinate fastest
    low_img = (M[:, :low] @ grid) % m
    found = []
    for h in range(m ** high):
        hv = np.array([(h // m ** i) % m for i in range(high)], dtype=np.int64)
        base = (M[:, low:] @ hv) % m if high else np.zeros(rows, dtype=np.int64)
        img = (low_img + base[:, None]) % m
        ok = np.nonzero(~img.any(axis=0))[0]
        for idx in ok:
            found.append(np.concatenate([grid[:, idx], hv]))
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(found, dtype=np.int64)


if USE_NUMBA:
    @njit(cache=True)
    def _kernel_numba(M, m):
        rows, n = M.shape
        x = np.zeros(n, dtype=np.int64)
        img = np.zeros(rows, dtype=np.int64)
        out = np.zeros((64, n), dtype=np.int64)
        count = 0
        while True:
            zero = True
            for r in range(rows):
                if img[r] % m != 0:
                    zero = False
                    break
            if zero:
                if count == out.shape[0]:
                    bigger = np.zeros((2 * out.shape[0], n), dtype=np.int64)
                    bigger[:count] = out
                    out = bigger
                out[count] = x
                count += 1
            # odometer step, keeping img = M x (mod m) incrementally
            i = 0
            while i < n:
                x[i] += 1
                for r in range(rows):
                    img[r] = (img[r] + M[r, i]) % m
                if x[i] < m:
                    break
                # wrapping m-1 -> 0 changes the image by M[:, i] as well (mod m)
                x[i] = 0
                i += 1
            if i == n:
                break
        return out[:count]


def enumerate_kernel(M, m):
    """All x in (Z/m)^n with M x = 0 mod m, as rows, first coordinate fastest."""
    M = np.asarray(M, dtype=np.int64) % m
    if M.ndim != 2:
        raise ValueError("matrix expected")
    if M.shape[1] == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if USE_NUMBA:
        return _kernel_numba(M, m)
    return _kernel_numpy(M, m)


# -- character pairing -----------------------------------------------------------

def _mixed_radix(invariants):
    """Columns are the group elements in mixed-radix order (x_0 fastest)."""
    inv = [int(d) for d in invariants]
    if not inv:
        return np.zeros((0, 1), dtype=np.int64), 1
    grid = np.indices(tuple(inv[::-1])).reshape(len(inv), -1)[::-1]
    return np.ascontiguousarray(grid, dtype=np.int64), int(np.prod(inv))


def _pairing_numpy(invariants):
    inv = np.asarray(invariants, dtype=np.int64)
    grid, _ = _mixed_radix(invariants)
    e = int(np.lcm.reduce(inv)) if len(inv) else 1
    w = (e // inv).astype(np.int64) if len(inv) else np.zeros(0, np.int64)
    # <c, x> = sum_i c_i x_i (e / d_i) mod e
    weighted = grid * w[:, None]
    return (weighted.T @ grid) % e


if USE_NUMBA:
    @njit(cache=True)
    def _pairing_numba(grid, w, e):
        r, size = grid.shape
        out = np.zeros((size, size), dtype=np.int64)
        for a in range(size):
            for b in range(size):
                s = 0
                for i in range(r):
                    s += grid[i, a] * grid[i, b] * w[i]
                out[a, b] = s % e
        return out


def pairing_table(invariants):
    """T[x, c] = numerator of <c, x> in (1/e)Z/Z, e the exponent of the group.

    Elements are indexed in mixed radix: index = x_0 + d_0 (x_1 + d_1 (...)).
    """
    inv = np.asarray(invariants, dtype=np.int64)
    if USE_NUMBA and len(inv):
        grid, _ = _mixed_radix(invariants)
        e = int(np.lcm.reduce(inv))
        return _pairing_numba(grid, (e // inv).astype(np.int64), e)
    return _pairing_numpy(invariants)


def element_index(x, invariants):
    idx, mul = 0, 1
    for xi, d in zip(x, invariants):
        idx += (int(xi) % d) * mul
        mul *= d
    return idx


def index_element(idx, invariants):
    out = []
    for d in invariants:
        out.append(idx % d)
        idx //= d
    return tuple(out)


__all__ += ["element_index", "index_element"]
