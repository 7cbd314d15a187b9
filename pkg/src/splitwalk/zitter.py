"""Zitterbewegung of coin observables for a single-momentum superposition.

A state ``c1|phi+_k> + c2|phi-_k>`` evolves as ``c1 e^{i w t}|phi+> +
c2 e^{-i w t}|phi->``, so any spin observable picks up a cross term at
angular frequency ``2 w``.  Time is sampled at integer multiples of ``tau``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import NATURAL_UNITS, DomainError, UnitsConfig
from .spectral import _terms, closed_form_norm, eigensystem, quasienergy_angle


@dataclass(frozen=True)
class EnergySuperposition:
    c1: complex
    c2: complex
    k: float
    theta1: float
    theta2: float

    def __post_init__(self):
        total = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"|c1|^2 + |c2|^2 must be 1, got {total!r}")

    @classmethod
    def equal_weight(cls, theta1: float, theta2: float, k: float) -> "EnergySuperposition":
        c = 1.0 / math.sqrt(2.0)
        return cls(c, c, k, theta1, theta2)


@dataclass(frozen=True)
class CoinObservable:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (2, 2) or np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise DomainError("coin observable must be a 2x2 Hermitian matrix")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class FrequencyEstimate:
    frequency: float
    oscillating: bool

    def __float__(self) -> float:
        return self.frequency


def zb_frequency(
    theta1: float, theta2: float, k: float, units: UnitsConfig = NATURAL_UNITS
) -> float:
    """Oscillation frequency ``arccos(b) / (pi tau)`` in cycles per unit time."""
    return quasienergy_angle(theta1, theta2, k, units) / (math.pi * units.tau)


def sampled_frequency(z: float, units: UnitsConfig = NATURAL_UNITS) -> float:
    """Apparent frequency of ``z`` when sampled once per step (folded at Nyquist)."""
    rate = 1.0 / units.tau
    z = z % rate
    return min(z, rate - z)


def zb_matrix_element(
    theta1: float,
    theta2: float,
    k: float,
    observable: CoinObservable,
    units: UnitsConfig = NATURAL_UNITS,
) -> complex:
    """``<phi+_k| A |phi-_k>`` from the closed-form eigenvectors.

    Where a closed-form eigenvector loses rank the eigensystem's
    normalized vectors are sandwiched instead.
    """
    es = eigensystem(theta1, theta2, k, units)
    if es.degenerate:
        raise DomainError(
            f"matrix element undefined at degenerate point "
            f"(theta1={theta1}, theta2={theta2}, k={k})"
        )
    a = observable.matrix
    n_p, n_m = es.norm_plus, es.norm_minus
    if max(n_p, n_m) > 1e3:
        return complex(es.vec_plus.conj() @ a @ es.vec_minus)
    t = _terms(theta1, theta2, k, units)
    w = t.w
    weight = abs(w) ** 2
    value = (
        weight * a[0, 0]
        - weight * a[1, 1]
        + w.conjugate() * (t.kinetic + t.root) * a[0, 1]
        + w * (t.kinetic - t.root) * a[1, 0]
    )
    return complex(n_p * n_m * value)


def zb_amplitude(
    s: EnergySuperposition, observable: CoinObservable, units: UnitsConfig = NATURAL_UNITS
) -> float:
    """Amplitude ``2 |c1* c2 <phi+|A|phi->|`` of the oscillating term."""
    if s.c1 == 0 or s.c2 == 0:
        return 0.0
    element = zb_matrix_element(s.theta1, s.theta2, s.k, observable, units)
    return 2.0 * abs(np.conj(s.c1) * s.c2 * element)


def superposition_coin_state(
    s: EnergySuperposition, units: UnitsConfig = NATURAL_UNITS
) -> np.ndarray:
    es = eigensystem(s.theta1, s.theta2, s.k, units)
    return s.c1 * es.vec_plus + s.c2 * es.vec_minus


def expectation_series(
    s: EnergySuperposition,
    observable: CoinObservable,
    n_steps: int,
    units: UnitsConfig = NATURAL_UNITS,
) -> np.ndarray:
    """``<A>`` at ``t = 0, tau, ..., n_steps tau``."""
    if n_steps < 1:
        raise DomainError(f"n_steps must be at least 1, got {n_steps}")
    es = eigensystem(s.theta1, s.theta2, s.k, units)
    a = observable.matrix
    vp, vm = es.vec_plus, es.vec_minus
    mean = (
        abs(s.c1) ** 2 * (vp.conj() @ a @ vp).real
        + abs(s.c2) ** 2 * (vm.conj() @ a @ vm).real
    )
    cross = np.conj(s.c1) * s.c2 * (vp.conj() @ a @ vm)
    angle = quasienergy_angle(s.theta1, s.theta2, s.k, units)
    steps = np.arange(n_steps + 1)
    return mean + 2.0 * np.real(cross * np.exp(-2j * angle * steps))


def extract_frequency(
    series: np.ndarray, units: UnitsConfig = NATURAL_UNITS
) -> FrequencyEstimate:
    """Dominant nonzero frequency of a uniformly sampled series.

    Hann-windowed DFT peak, refined by a parabola through the log magnitudes
    of the peak bin and its neighbours.  A flat series gives ``0`` with
    ``oscillating=False``.
    """
    x = np.asarray(series, dtype=float)
    n = x.size
    if n < 4:
        raise DomainError(f"need at least 4 samples, got {n}")
    x = x - x.mean()
    if np.max(np.abs(x)) <= 1e-12 * max(1.0, float(np.max(np.abs(series)))):
        return FrequencyEstimate(0.0, False)
    mag = np.abs(np.fft.rfft(x * np.hanning(n)))
    peak = int(np.argmax(mag[1:])) + 1
    offset = 0.0
    if peak + 1 < mag.size:
        lo, mid, hi = np.log(mag[peak - 1 : peak + 2] + 1e-300)
        denom = lo - 2.0 * mid + hi
        if denom != 0:
            offset = 0.5 * (lo - hi) / denom
    return FrequencyEstimate((peak + offset) / (n * units.tau), True)
