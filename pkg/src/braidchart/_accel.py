"""Permutation-orbit kernels behind face tracing and component labelling.

Two interchangeable implementations exist for each kernel: a numba ``@njit``
loop and a vectorised numpy version built on pointer doubling.  The public
names dispatch to numba unless ``BRAIDCHART_NO_NUMBA`` is set to a truthy
value or numba cannot be imported.  Both return identical arrays, so the
choice only affects speed.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("BRAIDCHART_NO_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


# --- numpy path -------------------------------------------------------------


def orbit_labels_numpy(perm: np.ndarray) -> np.ndarray:
    """Orbit id of every point, orbits numbered by their smallest element."""
    n = perm.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    lab = np.arange(n, dtype=np.int64)
    jump = perm.astype(np.int64, copy=True)
    span = 1
    # after k rounds lab[h] = min over h, perm(h), ..., perm^(2^k - 1)(h)
    while span < n:
        lab = np.minimum(lab, lab[jump])
        jump = jump[jump]
        span *= 2
    _, inv = np.unique(lab, return_inverse=True)
    return inv.astype(np.int64)


def component_labels_numpy(alpha: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Orbits of the group generated by two permutations."""
    n = alpha.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    inv_sigma = np.empty_like(sigma)
    inv_sigma[sigma] = np.arange(n, dtype=sigma.dtype)
    lab = np.arange(n, dtype=np.int64)
    while True:
        new = np.minimum(np.minimum(lab, lab[alpha]), np.minimum(lab[sigma], lab[inv_sigma]))
        new = new[new]
        if np.array_equal(new, lab):
            break
        lab = new
    _, inv = np.unique(lab, return_inverse=True)
    return inv.astype(np.int64)


# --- numba path -------------------------------------------------------------


def _orbit_labels_loop(perm):
    n = perm.shape[0]
    lab = np.full(n, -1, dtype=np.int64)
    k = 0
    for start in range(n):
        if lab[start] >= 0:
            continue
        h = start
        while lab[h] < 0:
            lab[h] = k
            h = perm[h]
        k += 1
    return lab


def _component_labels_loop(alpha, sigma):
    n = alpha.shape[0]
    lab = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    k = 0
    for start in range(n):
        if lab[start] >= 0:
            continue
        top = 0
        stack[0] = start
        lab[start] = k
        while top >= 0:
            h = stack[top]
            top -= 1
            a = alpha[h]
            if lab[a] < 0:
                lab[a] = k
                top += 1
                stack[top] = a
            s = sigma[h]
            if lab[s] < 0:
                lab[s] = k
                top += 1
                stack[top] = s
        k += 1
    return lab


if HAVE_NUMBA:
    orbit_labels_numba = numba.njit(cache=True)(_orbit_labels_loop)
    component_labels_numba = numba.njit(cache=True)(_component_labels_loop)
else:  # pragma: no cover
    orbit_labels_numba = _orbit_labels_loop
    component_labels_numba = _component_labels_loop


if USE_NUMBA:
    orbit_labels = orbit_labels_numba
    component_labels = component_labels_numba
else:
    orbit_labels = orbit_labels_numpy
    component_labels = component_labels_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
