"""Hot numeric kernels: convolution of atom lists, atom merging, stable
log-sum-exp, and quantile/tail scans.

Every kernel exists twice: a pure-numpy version (``*_np``) and, when numba
is active, a compiled version. The module-level names bind to the active
backend (see ``BACKEND``); both backends implement the same grouping and
accumulation rules, so they agree to float rounding.
"""

import numpy as np

from ._accel import NUMBA_ENABLED, njit

BACKEND = "numba" if NUMBA_ENABLED else "numpy"

# Atoms closer than this (absolute) are merged; keeps supports from
# blowing up under repeated convolution.
MERGE_TOL = 1e-9

# Slack applied to quantile thresholds so that cumulative sums within
# 1e-12 of the target count as having reached it.
QUANTILE_SLACK = 1e-12


# ----------------------------------------------------------------------
# pure-numpy implementations
# ----------------------------------------------------------------------

def merge_atoms_np(values, probs, tol=MERGE_TOL):
    """Merge sorted atoms whose adjacent gaps are <= tol.

    Merged atom value is the probability-weighted mean of its group, so
    exact collisions (the common case) keep their value and means are
    preserved to rounding. ``values`` must be ascending.
    """
    if values.size <= 1:
        return values.copy(), probs.copy()
    starts = np.flatnonzero(np.diff(values) > tol)
    if starts.size == 0:
        tot = probs.sum()
        return (np.array([np.dot(values, probs) / tot]), np.array([tot]))
    if starts.size == values.size - 1:
        return values.copy(), probs.copy()
    bounds = np.concatenate(([0], starts + 1))
    out_p = np.add.reduceat(probs, bounds)
    out_v = np.add.reduceat(values * probs, bounds) / out_p
    return out_v, out_p


def convolve_atoms_np(sa, pa, sb, pb, tol=MERGE_TOL):
    """Exact law of the independent sum of two atom lists (ascending in,
    ascending out, merged within tol)."""
    v = np.add.outer(sa, sb).ravel()
    p = np.outer(pa, pb).ravel()
    order = np.argsort(v, kind="mergesort")
    return merge_atoms_np(v[order], p[order], tol)


def logsumexp_weighted_np(x, p):
    """log(sum_i p_i * exp(x_i)) with max-shift; p_i >= 0, sum p_i ~ 1."""
    m = np.max(x)
    return m + np.log(np.dot(p, np.exp(x - m)))


def tail_mean_np(support, probs, level):
    """Average of the worst ``level`` probability mass, splitting the
    boundary atom fractionally. ``support`` ascending."""
    above = np.concatenate(([0.0], np.cumsum(probs[::-1])))[:-1][::-1]
    w = np.clip(level - above, 0.0, probs)
    return float(np.dot(w, support)) / level


def quantile_index_np(probs, q):
    """Smallest index i with cumsum(probs)[i] >= q - slack."""
    c = np.cumsum(probs)
    i = int(np.searchsorted(c, q - QUANTILE_SLACK, side="left"))
    return min(i, probs.size - 1)


# ----------------------------------------------------------------------
# numba implementations (compiled only when the backend is active)
# ----------------------------------------------------------------------

if NUMBA_ENABLED:

    @njit(cache=True)
    def _merge_atoms_jit(values, probs, tol):
        n = values.size
        out_v = np.empty(n, dtype=np.float64)
        out_p = np.empty(n, dtype=np.float64)
        k = 0
        acc_vp = values[0] * probs[0]
        acc_p = probs[0]
        prev = values[0]
        for i in range(1, n):
            if values[i] - prev > tol:
                out_v[k] = acc_vp / acc_p
                out_p[k] = acc_p
                k += 1
                acc_vp = values[i] * probs[i]
                acc_p = probs[i]
            else:
                acc_vp += values[i] * probs[i]
                acc_p += probs[i]
            prev = values[i]
        out_v[k] = acc_vp / acc_p
        out_p[k] = acc_p
        return out_v[: k + 1].copy(), out_p[: k + 1].copy()

    @njit(cache=True)
    def _convolve_atoms_jit(sa, pa, sb, pb, tol):
        na = sa.size
        nb = sb.size
        v = np.empty(na * nb, dtype=np.float64)
        p = np.empty(na * nb, dtype=np.float64)
        for i in range(na):
            base = i * nb
            for j in range(nb):
                v[base + j] = sa[i] + sb[j]
                p[base + j] = pa[i] * pb[j]
        order = np.argsort(v, kind="mergesort")
        return _merge_atoms_jit(v[order], p[order], tol)

    @njit(cache=True)
    def _logsumexp_weighted_jit(x, p):
        m = x[0]
        for i in range(1, x.size):
            if x[i] > m:
                m = x[i]
        s = 0.0
        for i in range(x.size):
            s += p[i] * np.exp(x[i] - m)
        return m + np.log(s)

    @njit(cache=True)
    def _tail_mean_jit(support, probs, level):
        need = level
        acc = 0.0
        i = support.size - 1
        while i >= 0 and need > 0.0:
            w = probs[i] if probs[i] <= need else need
            acc += w * support[i]
            need -= w
            i -= 1
        return acc / level

    @njit(cache=True)
    def _quantile_index_jit(probs, q):
        target = q - QUANTILE_SLACK
        c = 0.0
        for i in range(probs.size):
            c += probs[i]
            if c >= target:
                return i
        return probs.size - 1

    def merge_atoms(values, probs, tol=MERGE_TOL):
        return _merge_atoms_jit(values, probs, tol)

    def convolve_atoms(sa, pa, sb, pb, tol=MERGE_TOL):
        return _convolve_atoms_jit(sa, pa, sb, pb, tol)

    logsumexp_weighted = _logsumexp_weighted_jit
    tail_mean = _tail_mean_jit
    quantile_index = _quantile_index_jit
else:
    merge_atoms = merge_atoms_np
    convolve_atoms = convolve_atoms_np
    logsumexp_weighted = logsumexp_weighted_np
    tail_mean = tail_mean_np
    quantile_index = quantile_index_np


def warmup():
    """Trigger JIT compilation (or no-op on the numpy backend)."""
    v = np.array([0.0, 1.0])
    p = np.array([0.5, 0.5])
    convolve_atoms(v, p, v, p)
    merge_atoms(v, p)
    logsumexp_weighted(v, p)
    tail_mean(v, p, 0.25)
    quantile_index(p, 0.5)
