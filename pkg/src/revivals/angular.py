"""Angular-momentum moments of three-mode coherent products.

Three oscillator modes a, b, c (along x, y, z) each carry their own
coherent label and evolve under independent Kerr phases. The quadratic
combinations such as Lx = (b†c - c†b)/2i then have time-dependent moments
that factorize over modes: expand Lx^n into per-mode normal-ordered terms
once, evaluate each single-mode factor with the closed-form moment engine,
and sum. An independent tensor-product oracle does the same computation
with dense matrices on the truncated two-mode space and arbitrates any
disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import CoherentLabel, auto_truncation, coherent_amplitudes, ladder_matrix
from .moments import HERMITICITY_LIMIT, ladder_moment
from .ordering import interference_power_terms

#: Largest allowed two-mode dimension (N+1)^2 for the tensor oracle.
ORACLE_DIMENSION_LIMIT = 4_000_000

#: Mode pair feeding the interference operator for each Cartesian axis.
_AXIS_PAIRS = {"x": ("mode_b", "mode_c"), "y": ("mode_c", "mode_a"), "z": ("mode_a", "mode_b")}


@dataclass(frozen=True)
class TriModeLabel:
    """Coherent labels of the three modes; the product state is unentangled."""

    mode_a: CoherentLabel
    mode_b: CoherentLabel
    mode_c: CoherentLabel

    @classmethod
    def from_alphas(cls, a: complex, b: complex, c: complex) -> "TriModeLabel":
        return cls(
            CoherentLabel.from_alpha(a),
            CoherentLabel.from_alpha(b),
            CoherentLabel.from_alpha(c),
        )


@dataclass(frozen=True)
class NormalOrderedSum:
    """Expansion of an interference-operator power into per-mode monomials.

    Each term is (coefficient, (j1, j2, j3, j4)) standing for
    coefficient * (b†)^j1 b^j2 (c†)^j3 c^j4, normal-ordered within each mode.
    """

    terms: tuple[tuple[complex, tuple[int, int, int, int]], ...]


def lx_power_expand(n: int) -> NormalOrderedSum:
    """Normal-ordered expansion of Lx^n = [(b†c - c†b)/2i]^n for n = 1..4."""
    if not 1 <= n <= 4:
        raise ValueError("supported interference powers are 1..4")
    return NormalOrderedSum(
        terms=tuple((coeff, powers) for powers, coeff in interference_power_terms(n))
    )


def _pair_labels(axis: str, label: TriModeLabel) -> tuple[CoherentLabel, CoherentLabel]:
    try:
        first, second = _AXIS_PAIRS[axis]
    except KeyError:
        raise ValueError(f"axis must be one of x, y, z, not {axis!r}") from None
    return getattr(label, first), getattr(label, second)


def angular_moment(axis: str, n: int, label: TriModeLabel, chi: float, t):
    """<L_axis^n> on the per-mode Kerr-evolved product state.

    The closed-form path: product states factorize, so every expansion term
    evaluates as the product of two single-mode moments. The result of a
    Hermitian power must be real; an imaginary residue beyond
    HERMITICITY_LIMIT raises instead of being silently dropped.
    """
    first, second = _pair_labels(axis, label)
    t_arr = np.asarray(t, dtype=np.float64)
    total = np.zeros(t_arr.shape, dtype=np.complex128)
    for coeff, (j1, j2, j3, j4) in lx_power_expand(n).terms:
        factor_first = ladder_moment(j1, j2, first, chi, t_arr)
        factor_second = ladder_moment(j3, j4, second, chi, t_arr)
        total = total + coeff * factor_first * factor_second
    residue = float(np.max(np.abs(total.imag)))
    if residue > HERMITICITY_LIMIT:
        raise ArithmeticError(
            f"<L{axis}^{n}> produced imaginary residue {residue:.3e}; expansion bug"
        )
    real = total.real
    return float(real) if real.ndim == 0 else real


def lx_moment(n: int, label: TriModeLabel, chi: float, t):
    """<Lx^n> via the closed-form factorized expansion (n = 1..4)."""
    return angular_moment("x", n, label, chi, t)


def lx_moment_oracle(
    n: int,
    label: TriModeLabel,
    chi: float,
    t: float,
    per_mode_truncation: int | None = None,
):
    """<Lx^n> by brute force on the truncated two-mode space.

    Builds the evolved product state as an (N+1) x (N+1) amplitude array and
    applies Lx through per-mode ladder matrices on the reshaped state, which
    realizes the (N+1)^2-dimensional operator without ever materializing it.
    Knows nothing of the closed forms; this is the arbitration route.
    """
    if not 1 <= n <= 4:
        raise ValueError("supported interference powers are 1..4")
    first, second = _pair_labels("x", label)
    if per_mode_truncation is None:
        per_mode_truncation = auto_truncation(max(first.nu, second.nu))
    dim = per_mode_truncation + 1
    if dim * dim > ORACLE_DIMENSION_LIMIT:
        raise ValueError(
            f"two-mode dimension {dim * dim} exceeds the memory guard "
            f"{ORACLE_DIMENSION_LIMIT}"
        )

    lower = ladder_matrix("annihilation", per_mode_truncation).entries
    raise_ = ladder_matrix("creation", per_mode_truncation).entries
    kerr_phase = np.exp(
        -1j * chi * t * np.arange(dim) * (np.arange(dim) - 1.0)
    )
    amp_first = coherent_amplitudes(first, per_mode_truncation).amplitudes * kerr_phase
    amp_second = coherent_amplitudes(second, per_mode_truncation).amplitudes * kerr_phase
    state = np.outer(amp_first, amp_second)

    applied = state
    for _ in range(n):
        # b†c moves one quantum from the second mode to the first; rows carry
        # the first mode's index, so b acts from the left and c from the right.
        applied = (raise_ @ applied @ lower.T - lower @ applied @ raise_.T) / 2j
    value = complex(np.vdot(state, applied))
    if abs(value.imag) > HERMITICITY_LIMIT * max(1.0, abs(value.real)):
        raise ArithmeticError(
            f"oracle expectation has imaginary residue {value.imag:.3e}"
        )
    return value.real
