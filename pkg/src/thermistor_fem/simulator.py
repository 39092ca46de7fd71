"""Coupled time loop, steady-state detection, and the reduced benchmark scheme.

Each step first solves the potential from the current (lagged) temperature
and then advances the temperature one backward-Euler level with that
potential, so the potential stored alongside a snapshot was always computed
from that snapshot's predecessor.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import temperature as temp
from .coefficients import CoefficientModel, ModelSpec
from .errors import ConfigurationError, SolverError
from .mesh import Mesh, build_mesh
from .potential import (CORRECTED, PotentialState, SchemeVariant,
                        check_current_compatibility, solve_potential)
from .tridiag import TridiagonalSystem, residual_norm, thomas_solve

COMPATIBILITY_WARN_THRESHOLD = 1e-9


@dataclass(frozen=True)
class SimulationConfig:
    """Run parameters for the coupled solver."""

    n_elements: int
    tau: float
    beta: float
    model: ModelSpec
    flux_left: float
    flux_right: float
    t_max: float
    variant: SchemeVariant = CORRECTED
    steady_tolerance: float = 1e-8
    record_every: int = 1
    freeze_potential_after_first_step: bool = False

    def __post_init__(self):
        if self.tau <= 0.0:
            raise ConfigurationError(f"tau must be positive, got {self.tau}")
        if self.t_max < self.tau:
            raise ConfigurationError(
                f"t_max ({self.t_max}) must be at least one step (tau={self.tau})")
        if self.steady_tolerance <= 0.0:
            raise ConfigurationError("steady_tolerance must be positive")
        if self.record_every < 1:
            raise ConfigurationError("record_every must be >= 1")

    def build_mesh(self) -> Mesh:
        return build_mesh(self.n_elements)

    def build_model(self) -> CoefficientModel:
        return self.model.build(self.beta, self.flux_left, self.flux_right)


class Snapshot(NamedTuple):
    time: float
    temperature: np.ndarray
    potential: np.ndarray


@dataclass
class Diagnostics:
    """Per-step series collected during a run."""

    max_change: list = field(default_factory=list)
    compatibility_residuals: list = field(default_factory=list)
    solver_residuals: list = field(default_factory=list)


@dataclass(frozen=True)
class SimulationResult:
    snapshots: list
    steady_reached: bool
    steady_time: float | None
    final_profile: np.ndarray
    diagnostics: Diagnostics
    nodes: np.ndarray


def step(state: temp.TemperatureState, config: SimulationConfig,
         mesh: Mesh | None = None, model: CoefficientModel | None = None,
         residual_sink: list | None = None
         ) -> tuple[temp.TemperatureState, PotentialState]:
    """One decoupled step: potential from alpha^n, then temperature advance.

    Solver failures are re-raised with the step index attached.
    """
    mesh = mesh or config.build_mesh()
    model = model or config.build_model()
    index = int(round(state.time / config.tau))
    try:
        ghost = None
        if config.variant.stiffness == "paper_literal" \
                or config.variant.source_quadrature == "paper_literal":
            ghost = temp.ghost_alpha_left_of(state, mesh, model, config.beta)
        pot = solve_potential(state.alpha, mesh, model, config.variant,
                              alpha_ghost_left=ghost,
                              residual_sink=residual_sink)
        new_state = temp.solve_temperature(state, pot, mesh, model,
                                           config.tau, config.beta,
                                           config.variant,
                                           residual_sink=residual_sink)
    except SolverError as exc:
        exc.step = index
        raise
    return new_state, pot


def _zero_potential(mesh: Mesh, variant: SchemeVariant) -> PotentialState:
    return PotentialState(mu=np.zeros(mesh.n_nodes), ghost_left=None,
                          ghost_right=None, scheme=variant)


def run(config: SimulationConfig,
        initial_state: temp.TemperatureState | None = None) -> SimulationResult:
    """Iterate until the per-unit-time max-norm change drops below tolerance.

    Snapshots are recorded at t = 0, every ``record_every`` steps, and at the
    final state.  Models with no electrical conduction skip the (singular)
    potential solve; their source is identically zero.
    """
    mesh = config.build_mesh()
    model = config.build_model()
    state = initial_state if initial_state is not None \
        else temp.initial_temperature(mesh)
    if state.alpha.shape != (mesh.n_nodes,):
        raise ConfigurationError("initial state does not match the mesh")

    diag = Diagnostics()
    snapshots = [Snapshot(state.time, state.alpha.copy(), mesh.nodes.copy())]
    steady = False
    steady_time = None
    frozen_potential: PotentialState | None = None
    last_potential_mu = mesh.nodes.copy()
    t0 = state.time
    n = 0
    try:
        while (n + 1) * config.tau + t0 <= config.t_max * (1.0 + 1e-12):
            prev_alpha = state.alpha
            if model.sigma_is_zero:
                pot = _zero_potential(mesh, config.variant)
                state = temp.solve_temperature(
                    state, pot, mesh, model, config.tau, config.beta,
                    config.variant, residual_sink=diag.solver_residuals)
            elif config.freeze_potential_after_first_step and frozen_potential is not None:
                pot = frozen_potential
                state = temp.solve_temperature(
                    state, pot, mesh, model, config.tau, config.beta,
                    config.variant, residual_sink=diag.solver_residuals)
            else:
                state, pot = step(state, config, mesh, model,
                                  residual_sink=diag.solver_residuals)
                if config.freeze_potential_after_first_step:
                    frozen_potential = pot
            n += 1
            # keep times on the exact t0 + n*tau grid instead of accumulating
            state = dataclasses.replace(state, time=t0 + n * config.tau)
            last_potential_mu = pot.mu
            change = float(np.max(np.abs(state.alpha - prev_alpha)))
            diag.max_change.append(change)
            diag.compatibility_residuals.append(
                check_current_compatibility(prev_alpha, model))
            if n % config.record_every == 0:
                snapshots.append(Snapshot(state.time, state.alpha.copy(),
                                          pot.mu.copy()))
            if change / config.tau < config.steady_tolerance:
                steady = True
                steady_time = state.time
                break
    except SolverError as exc:
        exc.diagnostics = diag
        raise
    if snapshots[-1].time != state.time:
        snapshots.append(Snapshot(state.time, state.alpha.copy(),
                                  last_potential_mu.copy()))
    return SimulationResult(snapshots=snapshots, steady_reached=steady,
                            steady_time=steady_time,
                            final_profile=state.alpha.copy(),
                            diagnostics=diag, nodes=mesh.nodes.copy())


def reduced_system_rows(mesh: Mesh, tau: float, beta: float
                        ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Constant matrix rows of the reduced benchmark scheme (k=1, phi=x).

    With a1 = h/6 - tau/h and b1 = 2h/3 + 2 tau/h the rows are
        row 0:    (a1*(beta*h - 1) + b1 - tau*beta, 2*a1)
        interior: (a1, b1, a1)
        row N-1:  (a1, b1 + a1/(beta*h + 1))
    over the unknowns alpha_0..alpha_{N-1}.
    """
    h = mesh.h
    n = mesh.n_elements
    a1 = h / 6.0 - tau / h
    b1 = 2.0 * h / 3.0 + 2.0 * tau / h
    sub = np.full(n - 1, a1)
    sup = np.full(n - 1, a1)
    main = np.full(n, b1)
    main[0] = a1 * (beta * h - 1.0) + b1 - tau * beta
    sup[0] = 2.0 * a1
    main[n - 1] = b1 + a1 / (beta * h + 1.0)
    return sub, main, sup


def reduced_rhs(alpha01: np.ndarray, mesh: Mesh, tau: float, beta: float,
                gamma: float) -> np.ndarray:
    """Right-hand side of the reduced scheme for the current level alpha01."""
    h = mesh.h
    n = mesh.n_elements
    rhs = np.empty(n)
    rhs[1:-1] = (h / 6.0) * alpha01[:-2] + (2.0 * h / 3.0) * alpha01[1:-1] \
        + (h / 6.0) * alpha01[2:]
    rhs[0] = (h / 2.0) * (1.0 + beta * h / 3.0) * alpha01[0] \
        + (h / 3.0) * alpha01[1]
    rhs[-1] = (h / 6.0) * alpha01[-2] \
        + (h / 6.0) * (4.0 + 1.0 / (1.0 + beta * h)) * alpha01[-1]
    return rhs + gamma * tau * h


def run_reduced(config: SimulationConfig) -> SimulationResult:
    """Run the reduced benchmark scheme: no potential solve, phi = x exactly.

    Only the constant-coefficient benchmark model is admissible.  The row
    formulas are kept verbatim from the published reduction, including the
    left-boundary closure; see run() with the corrected variant for the
    weak-form treatment.
    """
    if config.model.kind != "paper_example":
        raise ConfigurationError(
            "run_reduced requires the paper_example model "
            f"(got {config.model.kind!r})")
    gamma = float(config.model.parameters["gamma"])
    mesh = config.build_mesh()
    h = mesh.h
    beta = config.beta
    tau = config.tau
    n = mesh.n_elements
    sub, main, sup = reduced_system_rows(mesh, tau, beta)

    def full_vector(alpha01: np.ndarray) -> np.ndarray:
        # alpha_N reconstructed via the right ghost relation at k = 1
        return np.append(alpha01, alpha01[-1] / (1.0 + beta * h))

    alpha01 = np.zeros(n)
    full = full_vector(alpha01)
    diag = Diagnostics()
    snapshots = [Snapshot(0.0, full.copy(), mesh.nodes.copy())]
    steady = False
    steady_time = None
    step_count = 0
    while (step_count + 1) * tau <= config.t_max * (1.0 + 1e-12):
        system = TridiagonalSystem(sub=sub, main=main, sup=sup,
                                   rhs=reduced_rhs(alpha01, mesh, tau, beta,
                                                   gamma))
        new01 = thomas_solve(system)
        scale = 1.0 + float(np.max(np.abs(system.rhs)))
        diag.solver_residuals.append(residual_norm(system, new01) / scale)
        step_count += 1
        new_full = full_vector(new01)
        change = float(np.max(np.abs(new_full - full)))
        diag.max_change.append(change)
        diag.compatibility_residuals.append(0.0)
        alpha01, full = new01, new_full
        t_now = step_count * tau
        if step_count % config.record_every == 0:
            snapshots.append(Snapshot(t_now, full.copy(), mesh.nodes.copy()))
        if change / tau < config.steady_tolerance:
            steady = True
            steady_time = t_now
            break
    t_final = step_count * tau
    if snapshots[-1].time != t_final:
        snapshots.append(Snapshot(t_final, full.copy(), mesh.nodes.copy()))
    return SimulationResult(snapshots=snapshots, steady_reached=steady,
                            steady_time=steady_time,
                            final_profile=full.copy(), diagnostics=diag,
                            nodes=mesh.nodes.copy())


def analytic_steady_state(x, beta: float, gamma: float):
    """Closed-form steady temperature of the constant-coefficient benchmark.

    u*(x) = (gamma/2) x (1 - x) + gamma / (2 beta); requires beta > 0 (the
    adiabatic case has no bounded steady state under constant heating).
    """
    if beta <= 0.0:
        raise ValueError("analytic steady state requires beta > 0")
    x = np.asarray(x, dtype=float)
    out = 0.5 * gamma * x * (1.0 - x) + gamma / (2.0 * beta)
    return float(out) if out.ndim == 0 else out


def steady_state_error(result: SimulationResult, beta: float,
                       gamma: float) -> float:
    """Max nodal deviation of the final profile from the analytic steady state."""
    if not result.steady_reached:
        raise ValueError("steady_state_error requires a steady result")
    exact = analytic_steady_state(result.nodes, beta, gamma)
    return float(np.max(np.abs(result.final_profile - exact)))


def convergence_study(config: SimulationConfig, levels: int
                      ) -> list[tuple[int, float]]:
    """Run N, 2N, 4N, ... and return (n_elements, steady error) per level."""
    if levels < 1:
        raise ConfigurationError("levels must be >= 1")
    if config.model.kind != "paper_example":
        raise ConfigurationError(
            "the convergence study needs the paper_example model "
            "(analytic oracle)")
    gamma = float(config.model.parameters["gamma"])
    out = []
    for i in range(levels):
        n_i = config.n_elements * 2 ** i
        result = run(dataclasses.replace(config, n_elements=n_i))
        err = steady_state_error(result, config.beta, gamma)
        out.append((n_i, err))
    return out
