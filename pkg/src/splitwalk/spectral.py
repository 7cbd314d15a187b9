"""Momentum-space analysis of the split-step walk with coins C(theta1), C(theta2).

With ``phi`` and ``delta`` set to zero the step operator is diagonal in
momentum, and each block ``U(k)`` is a 2x2 unitary with unit determinant.
Its eigenvalues are ``b +/- i s`` where

    b = cos(t1) cos(t2) cos(ka/hbar) - sin(t1) sin(t2)
    s = sqrt(1 - b**2) = sqrt(|w|**2 + (cos(t1) cos(t2) sin(ka/hbar))**2)
    w = cos(t1) sin(t2) + sin(t1) cos(t2) exp(ika/hbar)

The sum-of-squares form of ``s`` is used throughout: it has no cancellation
near ``b = +/-1``, which keeps the effective Hamiltonian accurate close to
the degenerate points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .lattice import NATURAL_UNITS, UnitsConfig
from .walk import SIGMA_X, SIGMA_Z

DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class _Terms:
    c1: float
    s1: float
    c2: float
    s2: float
    ck: float
    sk: float
    phase: complex  # exp(i k a / hbar)

    @property
    def bracket(self) -> float:
        return self.c1 * self.c2 * self.ck - self.s1 * self.s2

    @property
    def w(self) -> complex:
        return self.c1 * self.s2 + self.s1 * self.c2 * self.phase

    @property
    def kinetic(self) -> float:
        return self.c1 * self.c2 * self.sk

    @property
    def root(self) -> float:
        w = self.w
        return math.sqrt(w.real**2 + w.imag**2 + self.kinetic**2)


def _terms(theta1: float, theta2: float, k: float, units: UnitsConfig) -> _Terms:
    ka = k * units.a / units.hbar
    return _Terms(
        math.cos(theta1),
        math.sin(theta1),
        math.cos(theta2),
        math.sin(theta2),
        math.cos(ka),
        math.sin(ka),
        cmath.exp(1j * ka),
    )


def quasienergy_angle(
    theta1: float, theta2: float, k: float, units: UnitsConfig = NATURAL_UNITS
) -> float:
    """``tau * omega_k`` on the principal branch, in ``[0, pi]``."""
    t = _terms(theta1, theta2, k, units)
    return math.atan2(t.root, t.bracket)


@dataclass(frozen=True)
class MomentumUnitary:
    k: float
    matrix: np.ndarray
    theta1: float
    theta2: float


@dataclass(frozen=True)
class EigenSystem:
    lambda_plus: complex
    lambda_minus: complex
    vec_plus: np.ndarray
    vec_minus: np.ndarray
    norm_plus: float
    norm_minus: float
    degenerate: bool = False


@dataclass(frozen=True)
class EffectiveHamiltonian:
    k: float
    matrix: np.ndarray
    omega_k: float
    degenerate: bool = False


@dataclass(frozen=True)
class MassIdentification:
    angle: float  # |theta1 + theta2| folded into [0, pi]
    mass: float  # hbar * angle * tau / a**2


def momentum_unitary(
    theta1: float, theta2: float, k: float, units: UnitsConfig = NATURAL_UNITS
) -> MomentumUnitary:
    t = _terms(theta1, theta2, k, units)
    e, ebar = t.phase, t.phase.conjugate()
    cc, ss = t.c1 * t.c2, t.s1 * t.s2
    matrix = np.array(
        [
            [-ss + cc * e, -1j * t.c1 * t.s2 - 1j * t.s1 * t.c2 * e],
            [-1j * t.c1 * t.s2 - 1j * t.s1 * t.c2 * ebar, -ss + cc * ebar],
        ],
        dtype=np.complex128,
    )
    return MomentumUnitary(k, matrix, theta1, theta2)


def closed_form_norm(
    theta1: float, theta2: float, k: float, units: UnitsConfig = NATURAL_UNITS
) -> tuple[float, float]:
    """Normalization constants ``(N+, N-)`` of the closed-form eigenvectors.

    Expanded form of ``1/|v|``.  The ``sin(t1)**2 cos(2 t2)`` term enters with
    a plus sign.  Infinite where the unnormalized closed-form vector vanishes.
    """
    ka = k * units.a / units.hbar
    c1, s1, c2, s2 = math.cos(theta1), math.sin(theta1), math.cos(theta2), math.sin(theta2)
    root = _terms(theta1, theta2, k, units).root
    base = (
        1.0
        + c1**2 * s2**2
        + s1**2 * math.cos(2 * theta2)
        + math.sin(2 * theta1) * math.sin(2 * theta2) * math.cos(ka)
        - c1**2 * c2**2 * math.cos(2 * ka)
    )
    cross = 2.0 * c1 * c2 * math.sin(ka) * root
    out = []
    for sq in (base - cross, base + cross):
        out.append(1.0 / math.sqrt(sq) if sq > 0 else math.inf)
    return out[0], out[1]


def closed_form_vectors(t: _Terms) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized eigenvectors for ``Lambda+`` and ``Lambda-``."""
    w = t.w
    return (
        np.array([w, t.kinetic - t.root], dtype=np.complex128),
        np.array([w, t.kinetic + t.root], dtype=np.complex128),
    )


def _fix_phase(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    pivot = v[0] if abs(v[0]) > 1e-12 else v[1]
    return v * (abs(pivot) / pivot)


def _eigenvector(matrix: np.ndarray, lam: complex, closed: np.ndarray) -> np.ndarray:
    # Closed form is the adjugate column (-u01, u00 - lam) up to a factor -i;
    # where it loses rank fall back on the other column.
    other = np.array([matrix[1, 1] - lam, -matrix[1, 0]], dtype=np.complex128)
    if np.linalg.norm(closed) >= 0.1 * np.linalg.norm(other):
        return _fix_phase(closed)
    return _fix_phase(other)


def eigensystem(
    theta1: float, theta2: float, k: float, units: UnitsConfig = NATURAL_UNITS
) -> EigenSystem:
    """Closed-form eigenvalues and normalized eigenvectors of ``U(k)``.

    At a degenerate point (``1 - b**2 < 1e-12``) the result is flagged and the
    eigenvectors are the spin basis ``(|up>, |down>)``.  Eigenvectors are
    phased so their first nonzero component is real and positive.
    """
    t = _terms(theta1, theta2, k, units)
    b, s = t.bracket, t.root
    lam_p, lam_m = complex(b, s), complex(b, -s)
    n_p, n_m = closed_form_norm(theta1, theta2, k, units)
    if s * s < DEGENERACY_TOL:
        up = np.array([1, 0], dtype=np.complex128)
        down = np.array([0, 1], dtype=np.complex128)
        return EigenSystem(lam_p, lam_m, up, down, n_p, n_m, degenerate=True)
    matrix = momentum_unitary(theta1, theta2, k, units).matrix
    closed_p, closed_m = closed_form_vectors(t)
    v_p = _eigenvector(matrix, lam_p, closed_p)
    v_m = _eigenvector(matrix, lam_m, closed_m)
    return EigenSystem(lam_p, lam_m, v_p, v_m, n_p, n_m)


def effective_hamiltonian(
    theta1: float, theta2: float, k: float, units: UnitsConfig = NATURAL_UNITS
) -> EffectiveHamiltonian:
    """Principal-branch ``H(k)`` with ``U(k) = exp(-i H tau / hbar)``.

    The spectrum is ``-hbar omega_k`` on the ``Lambda+`` eigenvector and
    ``+hbar omega_k`` on the ``Lambda-`` one.  At a degenerate point the
    spin-basis projectors stand in for the eigenprojectors.
    """
    t = _terms(theta1, theta2, k, units)
    s = t.root
    angle = math.atan2(s, t.bracket)
    energy = units.hbar * angle / units.tau
    if s * s < DEGENERACY_TOL:
        return EffectiveHamiltonian(k, -energy * SIGMA_Z, angle / units.tau, degenerate=True)
    w = t.w
    bracket = np.array(
        [[t.kinetic, -w], [-w.conjugate(), -t.kinetic]], dtype=np.complex128
    )
    return EffectiveHamiltonian(k, -(energy / s) * bracket, angle / units.tau)


def dirac_hamiltonian(theta2: float, k: float, units: UnitsConfig = NATURAL_UNITS) -> np.ndarray:
    """Small-mass, small-momentum form ``-(a/tau) k sz + (hbar/tau) theta2 sx``."""
    return (-units.a / units.tau) * k * SIGMA_Z + (units.hbar / units.tau) * theta2 * SIGMA_X


def dirac_limit_residual(theta2: float, k: float, units: UnitsConfig = NATURAL_UNITS) -> float:
    """Relative spectral-norm distance between ``H(k, theta1=0)`` and its Dirac form.

    Falls back to the absolute distance when the Dirac form vanishes.
    """
    exact = effective_hamiltonian(0.0, theta2, k, units).matrix
    approx = dirac_hamiltonian(theta2, k, units)
    diff = np.linalg.norm(exact - approx, 2)
    scale = np.linalg.norm(approx, 2)
    return float(diff / scale) if scale > 0 else float(diff)


def mass_from_angles(
    theta1: float, theta2: float, units: UnitsConfig = NATURAL_UNITS
) -> MassIdentification:
    angle = (theta1 + theta2) % (2.0 * math.pi)
    if angle > math.pi:
        angle = 2.0 * math.pi - angle
    return MassIdentification(angle, units.hbar * angle * units.tau / units.a**2)
