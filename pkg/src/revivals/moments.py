"""Closed-form expectation values for Kerr-evolved coherent states.

The workhorse is the normal-ordered moment

    <a†^r a^(r+s)> = alpha^s nu^r e^{-nu(1-cos 2chi s t)}
                     * e^{-i chi (s(s-1)+2rs) t - i nu sin(2chi s t)},

from which the x/p means and second moments follow by expanding the
quadratures. Every closed form here can be checked against
numerical_expectation, which knows nothing about the formulas: it just
sandwiches a dense operator matrix between truncated state vectors.

Time arguments accept scalars or arrays; arrays broadcast elementwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import CoherentLabel, FockVector, OperatorMatrix, number_distribution
from .ordering import x_power_terms
from .spectra import Spectrum

#: Imaginary residue above this size in a Hermitian moment is treated as a bug.
HERMITICITY_LIMIT = 1e-8


@dataclass(frozen=True)
class MomentQuery:
    """Selects <a†^r a^(r+s)> on the Kerr-evolved state coherent(label)."""

    r: int
    s: int
    label: CoherentLabel
    chi: float
    t: float

    def __post_init__(self) -> None:
        if self.r < 0 or self.s < 0:
            raise ValueError("moment powers r, s must be nonnegative")
        if not self.chi > 0:
            raise ValueError("chi must be positive")


@dataclass(frozen=True)
class ObservableTrace:
    """A sampled observable: times, values, and a human-readable meaning tag."""

    times: np.ndarray
    values: np.ndarray
    meaning: str

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=np.float64).copy()
        values = np.asarray(self.values).copy()
        if times.ndim != 1 or times.shape != values.shape:
            raise ValueError("times and values must be 1-d and equal length")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)


def _kerr_moment(r: int, s: int, label: CoherentLabel, chi: float, t):
    """Vectorized <a†^r a^(r+s)>; t may be a scalar or an array."""
    t = np.asarray(t, dtype=np.float64)
    nu = label.nu
    alpha = label.alpha
    damping = np.exp(-nu * (1.0 - np.cos(2.0 * chi * s * t)))
    phase = np.exp(
        -1j * (chi * (s * (s - 1) + 2 * r * s) * t + nu * np.sin(2.0 * chi * s * t))
    )
    return (alpha**s) * (nu**r) * damping * phase


def general_moment(query: MomentQuery) -> complex:
    """Evaluate the closed-form normal-ordered moment for one query."""
    return complex(
        _kerr_moment(query.r, query.s, query.label, query.chi, query.t)
    )


def ladder_moment(i: int, j: int, label: CoherentLabel, chi: float, t):
    """<(a†)^i a^j> for arbitrary powers, via conjugation when daggers exceed.

    <(a†)^i a^j> with i > j is the conjugate of <(a†)^j a^i>, which the
    normal-ordered closed form covers directly.
    """
    if i < 0 or j < 0:
        raise ValueError("operator powers must be nonnegative")
    if j >= i:
        return _kerr_moment(i, j - i, label, chi, t)
    return np.conj(_kerr_moment(j, i - j, label, chi, t))


def autocorrelation(label: CoherentLabel, spectrum: Spectrum, t):
    """Overlap of the evolved state with itself at t = 0.

    A(t) = e^{-nu} sum_n (nu^n/n!) e^{+i chi E(n) t}, summed to the
    auto-truncation. |A| <= 1 always; |A(T_rev)| = 1 for periodic spectra.
    Accepts scalar or array t (arrays are evaluated in memory-bounded chunks).
    """
    weights = number_distribution(label)
    energies = spectrum.energies(weights.size - 1)
    t_arr = np.asarray(t, dtype=np.float64)
    if t_arr.ndim == 0:
        return complex(np.sum(weights * np.exp(1j * spectrum.chi * energies * t_arr)))
    out = np.empty(t_arr.shape, dtype=np.complex128)
    chunk = max(1, 2_000_000 // weights.size)
    for start in range(0, t_arr.size, chunk):
        block = t_arr[start : start + chunk]
        out[start : start + chunk] = np.exp(
            1j * spectrum.chi * np.outer(block, energies)
        ) @ weights
    return out


def _envelope_and_angle(label: CoherentLabel, chi: float, t):
    t = np.asarray(t, dtype=np.float64)
    nu = label.nu
    damping = np.exp(-nu * (1.0 - np.cos(2.0 * chi * t)))
    angle = nu * np.sin(2.0 * chi * t)
    return damping, angle


def expect_x(label: CoherentLabel, chi: float, t):
    """<x> on the Kerr-evolved state; equals p at t = 0 and at full revivals."""
    damping, angle = _envelope_and_angle(label, chi, t)
    value = damping * (label.p * np.cos(angle) + label.q * np.sin(angle))
    return float(value) if value.ndim == 0 else value


def expect_p(label: CoherentLabel, chi: float, t):
    """<p> on the Kerr-evolved state; equals q at t = 0."""
    damping, angle = _envelope_and_angle(label, chi, t)
    value = damping * (label.q * np.cos(angle) - label.p * np.sin(angle))
    return float(value) if value.ndim == 0 else value


def _second_moment_bracket(label: CoherentLabel, chi: float, t):
    t = np.asarray(t, dtype=np.float64)
    nu = label.nu
    damping = np.exp(-nu * (1.0 - np.cos(4.0 * chi * t)))
    theta = 2.0 * chi * t + nu * np.sin(4.0 * chi * t)
    p1, q1 = label.p, label.q
    return damping * (
        (p1 * p1 - q1 * q1) * np.cos(theta) + 2.0 * p1 * q1 * np.sin(theta)
    )


def expect_x2(label: CoherentLabel, chi: float, t):
    """<x²>; together with <p²> it sums to 1 + p² + q² at every t."""
    base = 1.0 + label.p * label.p + label.q * label.q
    value = 0.5 * (base + _second_moment_bracket(label, chi, t))
    return float(value) if np.ndim(value) == 0 else value


def expect_p2(label: CoherentLabel, chi: float, t):
    """<p²>; the oscillating bracket enters with the opposite sign to <x²>."""
    base = 1.0 + label.p * label.p + label.q * label.q
    value = 0.5 * (base - _second_moment_bracket(label, chi, t))
    return float(value) if np.ndim(value) == 0 else value


def expect_x_power(k: int, label: CoherentLabel, chi: float, t):
    """<x^k> through the normal-ordered expansion of ((a+a†)/√2)^k.

    No hand-derived closed form exists beyond k = 2; this route sums the
    exact expansion termwise using the general moment (with conjugation for
    dagger-heavy terms), so it works for any k at closed-form speed.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    total = np.zeros(t_arr.shape, dtype=np.complex128)
    for (i, j), coeff in x_power_terms(k).items():
        total = total + coeff * ladder_moment(i, j, label, chi, t_arr)
    total = total * 2.0 ** (-k / 2.0)
    residue = float(np.max(np.abs(total.imag))) if total.size else 0.0
    if residue > HERMITICITY_LIMIT:
        raise ArithmeticError(
            f"<x^{k}> produced imaginary residue {residue:.3e}; expansion bug"
        )
    real = total.real
    return float(real) if real.ndim == 0 else real


def uncertainty_trace(
    label: CoherentLabel, chi: float, times
) -> tuple[ObservableTrace, ObservableTrace]:
    """Uncertainty product trace and the (Δx, Δp) path over the given times.

    Returns two traces: Δx·Δp (real values), and the path with Δx + iΔp
    packed into complex values. The product stays at or above 1/2 up to
    rounding because the state starts minimum-uncertainty.
    """
    times = np.asarray(times, dtype=np.float64)
    var_x = expect_x2(label, chi, times) - expect_x(label, chi, times) ** 2
    var_p = expect_p2(label, chi, times) - expect_p(label, chi, times) ** 2
    dx = np.sqrt(var_x)
    dp = np.sqrt(var_p)
    product = ObservableTrace(times, dx * dp, "Δx·Δp")
    path = ObservableTrace(times, dx + 1j * dp, "(Δx, Δp)")
    return product, path


def numerical_expectation(state: FockVector, op: OperatorMatrix) -> complex:
    """<v|M|v> by dense matrix-vector product; the independent verification route.

    The operator must be built on a truncation at least as large as the
    state's maximum ladder excursion requires; pad the state to match.
    """
    if op.truncation != state.truncation:
        raise ValueError(
            f"dimension mismatch: operator truncation {op.truncation}, "
            f"state truncation {state.truncation}"
        )
    return complex(np.vdot(state.amplitudes, op.entries @ state.amplitudes))
