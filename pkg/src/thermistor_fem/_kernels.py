"""Hot numeric kernels: Thomas elimination and tridiagonal matvec.

Both kernels are written as plain loops over float64 arrays.  When numba is
importable they are compiled with ``@njit``; setting the environment variable
``THERMISTOR_FEM_NUMBA=0`` (also accepted: ``false``, ``off``, ``no``) before
import forces the uncompiled pure-numpy path.  ``benchmarks/bench_kernels.py``
compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

# Relative pivot threshold: a pivot smaller than this times the row's largest
# original coefficient magnitude is treated as structurally singular.
PIVOT_RTOL = 1e-14


def _thomas(sub: np.ndarray, diag: np.ndarray, sup: np.ndarray,
            rhs: np.ndarray) -> tuple[np.ndarray, int]:
    """Solve the tridiagonal system in place-free fashion.

    Returns ``(x, fail_row)`` where ``fail_row`` is -1 on success and the
    index of the row whose pivot broke down otherwise.  Inputs are read only.
    """
    n = diag.shape[0]
    x = np.zeros(n)
    c = np.zeros(n)  # modified superdiagonal from the forward sweep

    scale = abs(diag[0])
    if n > 1 and abs(sup[0]) > scale:
        scale = abs(sup[0])
    piv = diag[0]
    if scale == 0.0 or abs(piv) < PIVOT_RTOL * scale:
        return x, 0
    if n > 1:
        c[0] = sup[0] / piv
    x[0] = rhs[0] / piv

    for i in range(1, n):
        scale = abs(diag[i])
        if abs(sub[i - 1]) > scale:
            scale = abs(sub[i - 1])
        if i < n - 1 and abs(sup[i]) > scale:
            scale = abs(sup[i])
        piv = diag[i] - sub[i - 1] * c[i - 1]
        if scale == 0.0 or abs(piv) < PIVOT_RTOL * scale:
            return x, i
        if i < n - 1:
            c[i] = sup[i] / piv
        x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / piv

    for i in range(n - 2, -1, -1):
        x[i] -= c[i] * x[i + 1]
    return x, -1


def _tridiag_matvec(sub: np.ndarray, diag: np.ndarray, sup: np.ndarray,
                    x: np.ndarray) -> np.ndarray:
    """Multiply the tridiagonal matrix (sub, diag, sup) by ``x``."""
    n = diag.shape[0]
    out = np.empty(n)
    for i in range(n):
        acc = diag[i] * x[i]
        if i > 0:
            acc += sub[i - 1] * x[i - 1]
        if i < n - 1:
            acc += sup[i] * x[i + 1]
        out[i] = acc
    return out


_flag = os.environ.get("THERMISTOR_FEM_NUMBA", "1").strip().lower()
NUMBA_REQUESTED = _flag not in ("0", "false", "off", "no")

_BACKENDS: dict[str, tuple] = {"numpy": (_thomas, _tridiag_matvec)}

if NUMBA_REQUESTED:
    try:
        from numba import njit

        _BACKENDS["numba"] = (
            njit(cache=True)(_thomas),
            njit(cache=True)(_tridiag_matvec),
        )
    except ImportError:
        pass

ACTIVE_BACKEND = "numba" if "numba" in _BACKENDS else "numpy"
thomas_kernel, matvec_kernel = _BACKENDS[ACTIVE_BACKEND]


def backends() -> dict[str, tuple]:
    """Available (thomas, matvec) kernel pairs keyed by backend name."""
    return dict(_BACKENDS)
