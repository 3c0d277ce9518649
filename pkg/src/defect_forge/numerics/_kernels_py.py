"""NumPy implementations of the numeric kernels (fallback for the compiled module).

An exp-sum sum_k c_k(z) exp(p_k(z)) is packed as two complex matrices: row k
of ``E`` holds the ascending coefficients of p_k, row k of ``C`` those of c_k.
Values are returned as (w, s) with f(z) = w * exp(s), so huge exponents never
overflow.
"""

from __future__ import annotations

import numpy as np


def _horner(rows: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Evaluate every row polynomial at every point: result shape (nterms, npts)."""
    out = np.zeros((rows.shape[0], z.shape[0]), dtype=np.complex128)
    for j in range(rows.shape[1] - 1, -1, -1):
        out = out * z[None, :] + rows[:, j:j + 1]
    return out


def eval_expsum(z, E, C, D=None):
    """Return (w, wd, s): f = w e^s and, when D is given, f' = wd e^s."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    ex = _horner(E, z)
    s = ex.real.max(axis=0)
    ph = np.exp(ex - s[None, :])
    w = (_horner(C, z) * ph).sum(axis=0)
    if D is None:
        return w, None, s
    wd = (_horner(D, z) * ph).sum(axis=0)
    return w, wd, s


def winding(w):
    """(sum of wrapped argument increments, largest single increment)."""
    w = np.asarray(w, dtype=np.complex128)
    steps = np.angle(w[1:] * np.conj(w[:-1]))
    if steps.size == 0:
        return 0.0, 0.0
    return float(steps.sum()), float(np.abs(steps).max())


def arg_steps(w):
    w = np.asarray(w, dtype=np.complex128)
    return np.angle(w[1:] * np.conj(w[:-1]))


def log_abs(w, s):
    """log|w e^s| with -inf where w vanishes."""
    w = np.asarray(w, dtype=np.complex128)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(w)) + np.asarray(s, dtype=np.float64)
