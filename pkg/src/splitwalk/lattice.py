"""Spinor wavefunctions on a finite one-dimensional lattice.

Amplitudes are stored site-major as a ``(sites, 2)`` complex array, column 0
holding the spin-up component and column 1 the spin-down component.  Site
index ``i`` corresponds to position ``x = (i - n_max) * a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TRUNCATED = "truncated"
PERIODIC = "periodic"


class DomainError(ValueError):
    """Raised for arguments outside an operation's domain."""


class BoundaryError(DomainError):
    """Raised when a truncated-lattice walker would reach the lattice edge."""


@dataclass(frozen=True)
class UnitsConfig:
    """Lattice spacing ``a``, step duration ``tau``, ``hbar`` and ``c``."""

    a: float = 1.0
    tau: float = 1.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("a", "tau", "hbar", "c"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")


NATURAL_UNITS = UnitsConfig()


@dataclass(frozen=True)
class LatticeSpec:
    n_max: int
    boundary: str = TRUNCATED

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise DomainError(f"n_max must be a positive integer, got {self.n_max!r}")
        if self.boundary not in (TRUNCATED, PERIODIC):
            raise DomainError(f"unknown boundary {self.boundary!r}")

    @property
    def sites(self) -> int:
        return 2 * self.n_max + 1

    @property
    def periodic(self) -> bool:
        return self.boundary == PERIODIC

    def positions(self) -> np.ndarray:
        """Integer site labels ``-n_max .. n_max``."""
        return np.arange(-self.n_max, self.n_max + 1)

    def index(self, x: int) -> int:
        if not -self.n_max <= x <= self.n_max:
            raise DomainError(f"site {x} outside lattice [-{self.n_max}, {self.n_max}]")
        return int(x) + self.n_max

    def momenta(self, units: UnitsConfig = NATURAL_UNITS) -> np.ndarray:
        """Allowed momenta ``2 pi hbar j / (sites a)`` of plane waves on the ring."""
        j = np.arange(self.sites) - self.n_max
        return 2.0 * math.pi * units.hbar * j / (self.sites * units.a)


@dataclass(frozen=True, eq=False)
class SpinorState:
    amplitudes: np.ndarray
    lattice: LatticeSpec = field(repr=False)

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=np.complex128, order="C")
        if amp.shape != (self.lattice.sites, 2):
            raise DomainError(
                f"amplitudes must have shape ({self.lattice.sites}, 2), got {amp.shape}"
            )
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def up(self) -> np.ndarray:
        return self.amplitudes[:, 0]

    @property
    def down(self) -> np.ndarray:
        return self.amplitudes[:, 1]

    def flat(self) -> np.ndarray:
        """Amplitudes as a ``2*sites`` vector, ordered (site, spin)."""
        return self.amplitudes.reshape(-1)

    def support_radius(self) -> int:
        """Largest ``|x|`` carrying nonzero amplitude (``-1`` for the zero state)."""
        occupied = np.flatnonzero(np.any(self.amplitudes != 0, axis=1))
        if occupied.size == 0:
            return -1
        return int(np.max(np.abs(occupied - self.lattice.n_max)))


@dataclass(frozen=True)
class InitialCondition:
    """Bloch-sphere coin state localized at site ``x0``.

    The ket is ``cos(omega_p/2)|up> + exp(i omega_a) sin(omega_p/2)|down>``, so
    its projector carries ``exp(-i omega_a)`` in the upper off-diagonal entry.
    """

    omega_p: float = 0.0
    omega_a: float = 0.0
    x0: int = 0

    def coin_vector(self) -> np.ndarray:
        half = 0.5 * self.omega_p
        return np.array(
            [math.cos(half), np.exp(1j * self.omega_a) * math.sin(half)],
            dtype=np.complex128,
        )


def make_initial_state(init: InitialCondition, lattice: LatticeSpec) -> SpinorState:
    amp = np.zeros((lattice.sites, 2), dtype=np.complex128)
    amp[lattice.index(init.x0)] = init.coin_vector()
    return SpinorState(amp, lattice)


def plane_wave_state(
    coin: np.ndarray, k: float, lattice: LatticeSpec, units: UnitsConfig = NATURAL_UNITS
) -> SpinorState:
    """Momentum eigenstate ``exp(ikx/hbar)/sqrt(sites)`` tensored with ``coin``.

    Only exact on a periodic lattice with ``k`` among ``lattice.momenta()``.
    """
    x = lattice.positions() * units.a
    wave = np.exp(1j * k * x / units.hbar) / math.sqrt(lattice.sites)
    return SpinorState(np.outer(wave, np.asarray(coin, dtype=np.complex128)), lattice)


def position_distribution(state: SpinorState) -> np.ndarray:
    return np.sum(np.abs(state.amplitudes) ** 2, axis=1)


def spin_distributions(state: SpinorState) -> tuple[np.ndarray, np.ndarray]:
    """Per-site probabilities of the up and down components."""
    p = np.abs(state.amplitudes) ** 2
    return p[:, 0], p[:, 1]


def state_norm(state: SpinorState) -> float:
    return float(np.linalg.norm(state.amplitudes))
