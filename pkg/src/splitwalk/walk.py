"""Coin operators and one-step updates for the three walk protocols.

Steppers are stencil passes over the ``(sites, 2)`` amplitude array: each
spin component gathers from its neighbour at ``x + a`` (spin up, moved by
``T_-``) or ``x - a`` (spin down, moved by ``T_+``).  The ``dense_*`` builders
assemble the same operators as explicit ``(2*sites, 2*sites)`` matrices from
Kronecker products; they are used for cross-checks only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .lattice import PERIODIC, BoundaryError, DomainError, LatticeSpec, SpinorState

TWO_PI = 2.0 * math.pi

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY2 = np.eye(2, dtype=np.complex128)
PROJ_UP = np.array([[1, 0], [0, 0]], dtype=np.complex128)
PROJ_DOWN = np.array([[0, 0], [0, 1]], dtype=np.complex128)


def reduce_angle(value: float) -> float:
    """Map an angle into ``[0, 2 pi]``; values already inside are untouched."""
    value = float(value)
    if 0.0 <= value <= TWO_PI:
        return value
    return value % TWO_PI


@dataclass(frozen=True)
class CoinParams:
    """Angles of ``exp(i xi) exp(-i theta sx) exp(-i phi sy) exp(-i delta sz)``."""

    xi: float = 0.0
    theta: float = 0.0
    phi: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        for name in ("xi", "theta", "phi", "delta"):
            object.__setattr__(self, name, reduce_angle(getattr(self, name)))


@dataclass(frozen=True)
class SplitStepParams:
    coin1: CoinParams = field(default_factory=CoinParams)
    coin2: CoinParams = field(default_factory=CoinParams)

    @classmethod
    def from_thetas(cls, theta1: float, theta2: float) -> "SplitStepParams":
        return cls(CoinParams(theta=theta1), CoinParams(theta=theta2))


@dataclass(frozen=True)
class DcaParams:
    """Hopping strength ``alpha`` and mass term ``beta``, ``alpha**2 + beta**2 = 1``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if abs(self.alpha**2 + self.beta**2 - 1.0) > 1e-9:
            raise DomainError(
                f"alpha^2 + beta^2 must equal 1, got {self.alpha**2 + self.beta**2!r}"
            )

    @classmethod
    def from_angle(cls, theta2: float) -> "DcaParams":
        return cls(math.cos(theta2), math.sin(theta2))


WalkParams = Union[CoinParams, SplitStepParams, DcaParams]
Stepper = Callable[[SpinorState], SpinorState]


def coin_matrix(p: CoinParams) -> np.ndarray:
    """Entry-wise closed form of the general coin, global phase included."""
    ct, st = math.cos(p.theta), math.sin(p.theta)
    cp, sp = math.cos(p.phi), math.sin(p.phi)
    em, ep = np.exp(-1j * p.delta), np.exp(1j * p.delta)
    f = em * (ct * cp - 1j * st * sp)
    g = -ep * (ct * sp + 1j * st * cp)
    return np.exp(1j * p.xi) * np.array(
        [[f, g], [-np.conj(g), np.conj(f)]], dtype=np.complex128
    )


def _check_edges(state: SpinorState) -> None:
    if state.lattice.periodic:
        return
    amp = state.amplitudes
    if np.any(amp[0] != 0) or np.any(amp[-1] != 0):
        raise BoundaryError(
            f"walker support reaches the edge of a truncated lattice "
            f"(n_max={state.lattice.n_max})"
        )


def _from_left_neighbour(v: np.ndarray, periodic: bool) -> np.ndarray:
    # out[x] = v[x + a]: the T_- translation
    if periodic:
        return np.roll(v, -1)
    out = np.zeros_like(v)
    out[:-1] = v[1:]
    return out


def _from_right_neighbour(v: np.ndarray, periodic: bool) -> np.ndarray:
    # out[x] = v[x - a]: the T_+ translation
    if periodic:
        return np.roll(v, 1)
    out = np.zeros_like(v)
    out[1:] = v[:-1]
    return out


def step_conventional(state: SpinorState, p: CoinParams) -> SpinorState:
    """One coin toss followed by the conditional shift."""
    _check_edges(state)
    periodic = state.lattice.periodic
    tossed = state.amplitudes @ coin_matrix(p).T
    out = np.empty_like(tossed)
    out[:, 0] = _from_left_neighbour(tossed[:, 0], periodic)
    out[:, 1] = _from_right_neighbour(tossed[:, 1], periodic)
    return SpinorState(out, state.lattice)


def step_split(state: SpinorState, p: SplitStepParams) -> SpinorState:
    """``S_+ (I x C2) S_- (I x C1)`` applied as two half steps."""
    _check_edges(state)
    periodic = state.lattice.periodic
    half = state.amplitudes @ coin_matrix(p.coin1).T
    half[:, 0] = _from_left_neighbour(half[:, 0], periodic)
    full = half @ coin_matrix(p.coin2).T
    full[:, 1] = _from_right_neighbour(full[:, 1], periodic)
    return SpinorState(full, state.lattice)


def step_dca(state: SpinorState, p: DcaParams) -> SpinorState:
    _check_edges(state)
    periodic = state.lattice.periodic
    up, down = state.up, state.down
    out = np.empty_like(state.amplitudes)
    out[:, 0] = p.alpha * _from_left_neighbour(up, periodic) - 1j * p.beta * down
    out[:, 1] = p.alpha * _from_right_neighbour(down, periodic) - 1j * p.beta * up
    return SpinorState(out, state.lattice)


def make_stepper(params: WalkParams) -> Stepper:
    """Bind walk parameters to the matching single-step function."""
    if isinstance(params, CoinParams):
        return lambda s: step_conventional(s, params)
    if isinstance(params, SplitStepParams):
        return lambda s: step_split(s, params)
    if isinstance(params, DcaParams):
        return lambda s: step_dca(s, params)
    raise TypeError(f"no stepper for {type(params).__name__}")


def check_step_budget(state: SpinorState, n_steps: int) -> None:
    """Raise ``BoundaryError`` if ``n_steps`` could carry a truncated walker off the lattice."""
    lattice = state.lattice
    if lattice.periodic or n_steps <= 0:
        return
    radius = max(state.support_radius(), 0)
    if radius + n_steps > lattice.n_max:
        raise BoundaryError(
            f"{n_steps} steps from support radius {radius} exceed "
            f"truncated lattice half-width {lattice.n_max}"
        )


def evolve(
    state: SpinorState,
    stepper: Stepper | WalkParams,
    n_steps: int,
    snapshots: list | None = None,
) -> SpinorState:
    """Apply ``stepper`` ``n_steps`` times.

    If ``snapshots`` is a list, the initial state and every subsequent state
    are appended to it.  On a truncated lattice the step budget is checked
    against the current support before anything is computed.
    """
    if n_steps < 0:
        raise DomainError(f"n_steps must be non-negative, got {n_steps}")
    if not callable(stepper):
        stepper = make_stepper(stepper)
    check_step_budget(state, n_steps)
    if snapshots is not None:
        snapshots.append(state)
    for _ in range(n_steps):
        state = stepper(state)
        if snapshots is not None:
            snapshots.append(state)
    return state


# -- explicit matrices -------------------------------------------------------


def translation_matrices(lattice: LatticeSpec) -> tuple[np.ndarray, np.ndarray]:
    """``(T_-, T_+)`` on the position space, ``T_- |x> = |x - a>``."""
    n = lattice.sites
    t_minus = np.zeros((n, n), dtype=np.complex128)
    idx = np.arange(1, n)
    t_minus[idx - 1, idx] = 1.0
    if lattice.periodic:
        t_minus[n - 1, 0] = 1.0
    return t_minus, t_minus.T.copy()


def dense_conventional_operator(p: CoinParams, lattice: LatticeSpec) -> np.ndarray:
    t_minus, t_plus = translation_matrices(lattice)
    eye = np.eye(lattice.sites)
    shift = np.kron(t_minus, PROJ_UP) + np.kron(t_plus, PROJ_DOWN)
    return shift @ np.kron(eye, coin_matrix(p))


def dense_split_operator(p: SplitStepParams, lattice: LatticeSpec) -> np.ndarray:
    t_minus, t_plus = translation_matrices(lattice)
    eye = np.eye(lattice.sites)
    s_minus = np.kron(t_minus, PROJ_UP) + np.kron(eye, PROJ_DOWN)
    s_plus = np.kron(eye, PROJ_UP) + np.kron(t_plus, PROJ_DOWN)
    c1 = np.kron(eye, coin_matrix(p.coin1))
    c2 = np.kron(eye, coin_matrix(p.coin2))
    return s_plus @ c2 @ s_minus @ c1


def dense_dca_operator(p: DcaParams, lattice: LatticeSpec) -> np.ndarray:
    t_minus, t_plus = translation_matrices(lattice)
    eye = np.eye(lattice.sites)
    shift = np.kron(t_minus, PROJ_UP) + np.kron(t_plus, PROJ_DOWN)
    return p.alpha * shift - 1j * p.beta * np.kron(eye, SIGMA_X)


def dense_operator(params: WalkParams, lattice: LatticeSpec) -> np.ndarray:
    if isinstance(params, CoinParams):
        return dense_conventional_operator(params, lattice)
    if isinstance(params, SplitStepParams):
        return dense_split_operator(params, lattice)
    if isinstance(params, DcaParams):
        return dense_dca_operator(params, lattice)
    raise TypeError(f"no operator for {type(params).__name__}")


def dca_equivalence_residual(
    theta2: float, lattice: LatticeSpec, theta1: float = 0.0
) -> float:
    """Max entry-wise ``|U_split(theta1, theta2) - U_dca(cos theta2, sin theta2)|``.

    Zero (to rounding) exactly when ``sin(theta1) = 0`` with ``cos(theta1) = 1``;
    a nonzero ``theta1`` is the way to probe a broken equivalence.  Both
    operators are assembled on the periodic version of ``lattice``: truncation
    breaks ``T_+ T_- = I`` at the edge site.
    """
    lattice = LatticeSpec(lattice.n_max, PERIODIC)
    u_split = dense_split_operator(SplitStepParams.from_thetas(theta1, theta2), lattice)
    u_dca = dense_dca_operator(DcaParams.from_angle(theta2), lattice)
    return float(np.max(np.abs(u_split - u_dca)))


def split_block_coefficients(p: SplitStepParams) -> dict[tuple[int, int], tuple[complex, complex]]:
    """Spin-block coefficients of the assembled split-step operator.

    Maps ``(row_spin, col_spin)`` to ``(identity_weight, shift_weight)``, where
    the shift is ``T_-`` in the up-up and up-down blocks and ``T_+`` in the
    down-up and down-down blocks.
    """
    c1 = coin_matrix(p.coin1)
    c2 = coin_matrix(p.coin2)
    return {
        (0, 0): (c2[0, 1] * c1[1, 0], c2[0, 0] * c1[0, 0]),
        (0, 1): (c2[0, 1] * c1[1, 1], c2[0, 0] * c1[0, 1]),
        (1, 0): (c2[1, 0] * c1[0, 0], c2[1, 1] * c1[1, 0]),
        (1, 1): (c2[1, 0] * c1[0, 1], c2[1, 1] * c1[1, 1]),
    }


def dca_condition_residual(p: SplitStepParams) -> float:
    """Largest identity weight on the diagonal blocks or shift weight off them.

    Zero when the coin pair reduces the split-step operator to the Dirac
    automaton form.
    """
    blocks = split_block_coefficients(p)
    return float(
        max(
            abs(blocks[(0, 0)][0]),
            abs(blocks[(1, 1)][0]),
            abs(blocks[(0, 1)][1]),
            abs(blocks[(1, 0)][1]),
        )
    )
