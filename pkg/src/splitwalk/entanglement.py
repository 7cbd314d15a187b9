"""Coin-position entanglement of pure walker states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .lattice import DomainError, InitialCondition, LatticeSpec, SpinorState, make_initial_state
from .walk import SplitStepParams, WalkParams, check_step_budget, evolve, make_stepper

NEGATIVITY_TOL = 1e-12


@dataclass(frozen=True)
class ReducedCoinDensity:
    matrix: np.ndarray

    def eigenvalues(self) -> tuple[float, float]:
        """Closed-form eigenvalues ``(1 -/+ sqrt(1 - 4 det)) / 2``, ascending."""
        m = self.matrix
        trace = (m[0, 0] + m[1, 1]).real
        det = (m[0, 0] * m[1, 1]).real - abs(m[0, 1]) ** 2
        gap = math.sqrt(max(trace * trace - 4.0 * det, 0.0))
        return 0.5 * (trace - gap), 0.5 * (trace + gap)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def reduced_coin_density(state: SpinorState) -> ReducedCoinDensity:
    """Partial trace over position, ``rho[s, s'] = sum_x psi_s(x) psi_s'(x)*``."""
    amp = state.amplitudes
    return ReducedCoinDensity(amp.T @ amp.conj())


def _entropy_from_density(rho: ReducedCoinDensity) -> float:
    total = 0.0
    for lam in rho.eigenvalues():
        if lam < -NEGATIVITY_TOL:
            raise DomainError(f"reduced density has eigenvalue {lam!r} < 0")
        if lam > 0:
            total -= lam * math.log2(lam)
    return total


def entanglement_entropy(state: SpinorState) -> float:
    """Base-2 von Neumann entropy of the reduced coin density."""
    return _entropy_from_density(reduced_coin_density(state))


def entropy_time_series(
    init: InitialCondition, walk: WalkParams, n_steps: int, lattice: LatticeSpec
) -> np.ndarray:
    """Entropy at steps ``0 .. n_steps`` of a walk started from ``init``."""
    if n_steps < 0:
        raise DomainError(f"n_steps must be non-negative, got {n_steps}")
    state = make_initial_state(init, lattice)
    check_step_budget(state, n_steps)
    stepper = make_stepper(walk)
    out = np.empty(n_steps + 1)
    out[0] = entanglement_entropy(state)
    for i in range(1, n_steps + 1):
        state = stepper(state)
        out[i] = entanglement_entropy(state)
    return out


def long_time_mean(series: Sequence[float], start: int = 50, stop: int = 100) -> float:
    """Mean over steps ``start .. stop`` inclusive."""
    window = np.asarray(series)[start : stop + 1]
    if window.size == 0:
        raise DomainError(f"series of length {len(series)} has no steps in [{start}, {stop}]")
    return float(window.mean())


def final_entropy(init: InitialCondition, walk: WalkParams, n_steps: int, lattice: LatticeSpec) -> float:
    state = evolve(make_initial_state(init, lattice), walk, n_steps)
    return entanglement_entropy(state)


def entropy_sweep(
    cells: Iterable[tuple[InitialCondition, WalkParams]],
    n_steps: int,
    lattice: LatticeSpec,
    map_fn=map,
) -> np.ndarray:
    """Final entropy of every ``(initial condition, walk)`` cell.

    ``map_fn`` lets callers substitute a pool's ``map``; results keep the
    order of ``cells``.
    """
    cells = list(cells)
    return np.array(
        list(
            map_fn(
                _sweep_cell,
                [(init, walk, n_steps, lattice) for init, walk in cells],
            )
        ),
        dtype=float,
    )


def _sweep_cell(args) -> float:
    return final_entropy(*args)


def omega_sweep(
    omega_p: Sequence[float],
    omega_a: Sequence[float],
    walk: WalkParams,
    n_steps: int,
    lattice: LatticeSpec,
    x0: int = 0,
    map_fn=map,
) -> np.ndarray:
    """Entropy after ``n_steps`` on the ``omega_p x omega_a`` grid, indexed ``[i, j]``."""
    cells = [(InitialCondition(p, a, x0), walk) for p in omega_p for a in omega_a]
    return entropy_sweep(cells, n_steps, lattice, map_fn).reshape(len(omega_p), len(omega_a))


def theta_sweep(
    theta1: Sequence[float],
    theta2: Sequence[float],
    init: InitialCondition,
    n_steps: int,
    lattice: LatticeSpec,
    map_fn=map,
) -> np.ndarray:
    """Split-step entropy after ``n_steps`` on the ``theta1 x theta2`` grid."""
    cells = [(init, SplitStepParams.from_thetas(t1, t2)) for t1 in theta1 for t2 in theta2]
    return entropy_sweep(cells, n_steps, lattice, map_fn).reshape(len(theta1), len(theta2))
