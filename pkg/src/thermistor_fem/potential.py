"""Electric-potential system assembly and solve at one time level.

Two stiffness variants exist.  ``corrected`` is the standard P1 Galerkin
discretisation of (sigma(u) phi_x)_x = 0 with flux boundary data and a
mu_0 = 0 gauge row; it recovers a linear potential exactly for constant
sigma.  ``paper_literal`` reproduces the original published row formulas of
this scheme family verbatim, including their sign inconsistency in the
interior stencil, and is retained for characterisation only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientModel, eval_sigma
from .errors import SingularSystemError
from .mesh import Mesh
from .tridiag import TridiagonalSystem, residual_norm, thomas_solve

STIFFNESS_CHOICES = ("paper_literal", "corrected")
SOURCE_CHOICES = ("paper_literal", "central")


@dataclass(frozen=True)
class SchemeVariant:
    """Independent toggles for the stiffness discretisation and the Joule
    source quadrature used by the temperature step."""

    stiffness: str = "corrected"
    source_quadrature: str = "central"

    def __post_init__(self):
        if self.stiffness not in STIFFNESS_CHOICES:
            raise ValueError(f"stiffness must be one of {STIFFNESS_CHOICES}")
        if self.source_quadrature not in SOURCE_CHOICES:
            raise ValueError(f"source_quadrature must be one of {SOURCE_CHOICES}")


CORRECTED = SchemeVariant("corrected", "central")
PAPER_LITERAL = SchemeVariant("paper_literal", "paper_literal")


@dataclass(frozen=True)
class PotentialState:
    """Nodal potential coefficients mu_0..mu_N at one time level.

    For the paper_literal variant the unknowns are mu_0..mu_{N-1}; mu_N is
    reconstructed as h*flux_right + mu_{N-1} and kept in ``mu``, with
    ``ghost_right`` recording the reconstruction and ``ghost_left`` the
    eliminated mu_{-1}.  The corrected variant stores the full solved vector
    and leaves both ghosts None.
    """

    mu: np.ndarray
    ghost_left: float | None
    ghost_right: float | None
    scheme: SchemeVariant


def ghost_potential_left(mu0: float, mu1: float, h: float, flux_left: float) -> float:
    """Eliminated left ghost value: mu_{-1} = mu_1 - mu_0 - h*flux_left."""
    if h <= 0.0:
        raise ValueError("h must be positive")
    return mu1 - mu0 - h * flux_left


def ghost_potential_right(mu_last: float, h: float, flux_right: float) -> float:
    """Reconstructed right value: mu_N = h*flux_right + mu_{N-1}."""
    if h <= 0.0:
        raise ValueError("h must be positive")
    return h * flux_right + mu_last


def assemble_potential(alpha: np.ndarray, mesh: Mesh, model: CoefficientModel,
                       variant: SchemeVariant,
                       alpha_ghost_left: float | None = None) -> TridiagonalSystem:
    """Assemble the potential system from the lagged temperature ``alpha``.

    corrected (size N+1, unknowns mu_0..mu_N), rows scaled by 1/h:
        row 0      replaced by the gauge row mu_0 = 0
        row j      -s_{j-1/2} mu_{j-1} + (s_{j-1/2}+s_{j+1/2}) mu_j - s_{j+1/2} mu_{j+1} = 0
        row N      s_{N-1/2} (mu_N - mu_{N-1}) = h * sigma(alpha_N) * flux_right
    with s_{j+1/2} = (sigma(alpha_j) + sigma(alpha_{j+1})) / 2.

    paper_literal (size N, unknowns mu_0..mu_{N-1}), rows kept verbatim:
        row 0      (s0 + 3*s(-1) + 2*s1) mu_0 - (s(-1) + 2*s0 + s1) mu_1
                       = -h*flux_left*(3*s0 + s(-1))
        row j      -(s_j+s_{j-1}) mu_{j-1} + 2(s_{j+1}+s_{j-1}) mu_j
                       + (s_{j+1}+s_j) mu_{j+1} = 0
        row N-1    -(s_{N-1}+s_{N-2}) mu_{N-2} + (2 s_{N-2} + s_N - s_{N-1}) mu_{N-1}
                       = h*flux_right*(s_N + s_{N-1})
    The positive mu_{j+1} coefficient in the interior row is intentional:
    it is the published form, and it is why this variant does not reproduce
    a linear potential (see tests for the characterisation).
    """
    n = mesh.n_elements
    h = mesh.h
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (n + 1,):
        raise ValueError(f"alpha must have length {n + 1}, got {alpha.shape}")
    s = eval_sigma(model, alpha)

    if variant.stiffness == "corrected":
        s_half = 0.5 * (s[:-1] + s[1:])
        sub = np.zeros(n)
        sup = np.zeros(n)
        main = np.zeros(n + 1)
        rhs = np.zeros(n + 1)
        main[1:n] = (s_half[:-1] + s_half[1:]) / h
        sub[:n - 1] = -s_half[:-1] / h
        sup[1:n] = -s_half[1:] / h
        main[n] = s_half[n - 1] / h
        sub[n - 1] = -s_half[n - 1] / h
        rhs[n] = s[n] * model.flux_right
        main[0] = 1.0  # gauge row pins mu_0 = 0
        sup[0] = 0.0
        rhs[0] = 0.0
        return TridiagonalSystem(sub=sub, main=main, sup=sup, rhs=rhs)

    if alpha_ghost_left is None:
        raise ValueError("paper_literal assembly needs the left temperature ghost")
    s_ghost = eval_sigma(model, float(alpha_ghost_left))
    sub = np.zeros(n - 1)
    sup = np.zeros(n - 1)
    main = np.zeros(n)
    rhs = np.zeros(n)
    main[0] = s[0] + 3.0 * s_ghost + 2.0 * s[1]
    sup[0] = -(s_ghost + 2.0 * s[0] + s[1])
    rhs[0] = -h * model.flux_left * (3.0 * s[0] + s_ghost)
    j = np.arange(1, n - 1)
    sub[j - 1] = -(s[j] + s[j - 1])
    main[j] = 2.0 * (s[j + 1] + s[j - 1])
    sup[j] = s[j + 1] + s[j]
    sub[n - 2] = -(s[n - 1] + s[n - 2])
    main[n - 1] = 2.0 * s[n - 2] + s[n] - s[n - 1]
    rhs[n - 1] = h * model.flux_right * (s[n] + s[n - 1])
    return TridiagonalSystem(sub=sub, main=main, sup=sup, rhs=rhs)


def solve_potential(alpha: np.ndarray, mesh: Mesh, model: CoefficientModel,
                    variant: SchemeVariant,
                    alpha_ghost_left: float | None = None,
                    residual_sink: list | None = None) -> PotentialState:
    """Assemble and solve; returns the full nodal potential.

    ``residual_sink``, when given, receives the solve's normalised residual
    max-norm (for run diagnostics).
    """
    system = assemble_potential(alpha, mesh, model, variant,
                                alpha_ghost_left=alpha_ghost_left)
    try:
        x = thomas_solve(system)
    except SingularSystemError as exc:
        raise SingularSystemError(
            f"potential solve failed: {exc}", row=exc.row) from exc
    if residual_sink is not None:
        scale = 1.0 + float(np.max(np.abs(system.rhs)))
        residual_sink.append(residual_norm(system, x) / scale)
    if variant.stiffness == "corrected":
        return PotentialState(mu=x, ghost_left=None, ghost_right=None,
                              scheme=variant)
    mu_n = ghost_potential_right(float(x[-1]), mesh.h, model.flux_right)
    mu = np.append(x, mu_n)
    ghost_left = ghost_potential_left(float(x[0]), float(x[1]), mesh.h,
                                      model.flux_left)
    return PotentialState(mu=mu, ghost_left=ghost_left, ghost_right=mu_n,
                          scheme=variant)


def check_current_compatibility(alpha: np.ndarray, model: CoefficientModel) -> float:
    """Solvability residual of the flux data: sigma(alpha_N)*flux_right - sigma(alpha_0)*flux_left.

    Nonzero values mean the two prescribed boundary currents disagree; the
    driver logs a warning above 1e-9 but does not refuse to run.
    """
    alpha = np.asarray(alpha, dtype=float)
    s0 = eval_sigma(model, float(alpha[0]))
    sn = eval_sigma(model, float(alpha[-1]))
    return float(sn * model.flux_right - s0 * model.flux_left)
