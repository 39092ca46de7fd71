"""Shared test utilities: random system generators and quadrature oracles."""

from __future__ import annotations

import numpy as np

from thermistor_fem import TridiagonalSystem


def random_dominant_system(rng: np.random.Generator, size: int) -> TridiagonalSystem:
    """Strictly diagonally dominant tridiagonal system with random entries."""
    sub = rng.uniform(-1.0, 1.0, size - 1) if size > 1 else np.zeros(0)
    sup = rng.uniform(-1.0, 1.0, size - 1) if size > 1 else np.zeros(0)
    main = np.zeros(size)
    for i in range(size):
        row = abs(sub[i - 1]) if i > 0 else 0.0
        row += abs(sup[i]) if i < size - 1 else 0.0
        main[i] = (row + rng.uniform(0.5, 2.0)) * rng.choice((-1.0, 1.0))
    rhs = rng.uniform(-5.0, 5.0, size)
    return TridiagonalSystem(sub=sub, main=main, sup=sup, rhs=rhs)


def simpson(f, a: float, b: float, panels: int = 64) -> float:
    """Composite Simpson quadrature; exact for cubics on each panel."""
    x = np.linspace(a, b, 2 * panels + 1)
    y = np.array([f(v) for v in x])
    w = np.ones(2 * panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float((b - a) / (6.0 * panels) * np.sum(w * y))
