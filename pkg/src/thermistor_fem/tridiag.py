"""Tridiagonal system container, Thomas solver, and a dense brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import matvec_kernel, thomas_kernel
from .errors import NumericalFailureError, SingularSystemError


@dataclass(frozen=True)
class TridiagonalSystem:
    """One linear system T x = rhs with T tridiagonal.

    ``sub`` and ``sup`` have length m-1 for a system of size m.  All arrays
    are normalised to float64 and must be finite.
    """

    sub: np.ndarray
    main: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        for name in ("sub", "main", "sup", "rhs"):
            object.__setattr__(self, name,
                               np.ascontiguousarray(getattr(self, name), dtype=float))
        m = self.main.shape[0]
        if m < 1:
            raise ValueError("system size must be >= 1")
        if self.rhs.shape != (m,):
            raise ValueError(f"rhs must have length {m}, got {self.rhs.shape}")
        if self.sub.shape != (m - 1,) or self.sup.shape != (m - 1,):
            raise ValueError(
                f"sub/sup must have length {m - 1}, got {self.sub.shape}/{self.sup.shape}")
        for name in ("sub", "main", "sup", "rhs"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise NumericalFailureError(f"non-finite entries in {name}")

    @property
    def size(self) -> int:
        return self.main.shape[0]

    def dense(self) -> np.ndarray:
        """Dense copy of the matrix, for oracles and inspection."""
        m = self.size
        full = np.zeros((m, m))
        full[np.arange(m), np.arange(m)] = self.main
        if m > 1:
            full[np.arange(1, m), np.arange(m - 1)] = self.sub
            full[np.arange(m - 1), np.arange(1, m)] = self.sup
        return full


def thomas_solve(system: TridiagonalSystem) -> np.ndarray:
    """Direct O(m) elimination.  The input system is never mutated.

    Raises SingularSystemError (carrying the failing row) when a pivot falls
    below 1e-14 of the row's largest original coefficient.
    """
    x, fail = thomas_kernel(system.sub, system.main, system.sup, system.rhs)
    if fail >= 0:
        raise SingularSystemError(
            f"zero or near-zero pivot at row {fail}", row=int(fail))
    return x


def dense_solve_oracle(system: TridiagonalSystem) -> np.ndarray:
    """Solve via dense LU with partial pivoting; test oracle for thomas_solve."""
    try:
        return np.linalg.solve(system.dense(), system.rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"dense solve failed: {exc}") from exc


def residual_norm(system: TridiagonalSystem, x: np.ndarray) -> float:
    """Max-norm of T x - rhs."""
    x = np.asarray(x, dtype=float)
    if x.shape != (system.size,):
        raise ValueError(f"solution length {x.shape} does not match system size {system.size}")
    tx = matvec_kernel(system.sub, system.main, system.sup, x)
    return float(np.max(np.abs(tx - system.rhs)))
