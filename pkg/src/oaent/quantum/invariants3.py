"""Exact local-unitary invariants of three-qubit states.

The six invariants follow Sudbery's normalization, evaluated on the
normalized state ``s / |s|``:

* ``I1``: the squared norm of the normalized state (always 1); records also
  carry the raw amplitude sum, squared norm and norm of the integer state,
  because published tables use these interchangeably for ``I1``.
* ``I2, I3, I4``: purities ``Tr rho^2`` of the single-qubit reductions of
  qubits C, B and A (sites 2, 1 and 0).
* ``I5``: ``3 Tr[(rho_A (x) rho_B) rho_AB] - Tr rho_A^3 - Tr rho_B^3``.
* ``I6``: ``tau_ABC^2 / 4`` where ``tau_ABC = 4 |Det|`` is the three-tangle and
  ``Det`` the Cayley hyperdeterminant of the normalized amplitudes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from .density import reduced_density
from .states import PureState

__all__ = ["cayley_hyperdeterminant", "InvariantRecord3", "sudbery_invariants", "three_tangle"]


def cayley_hyperdeterminant(b) -> int:
    """Cayley's hyperdeterminant of a ``2 x 2 x 2`` array ``b[i][j][k]``.

    Works for any commutative ring elements (integers, Fractions, sympy
    expressions).
    """
    b000, b001, b010, b011 = b[0][0][0], b[0][0][1], b[0][1][0], b[0][1][1]
    b100, b101, b110, b111 = b[1][0][0], b[1][0][1], b[1][1][0], b[1][1][1]
    return (b000**2 * b111**2 + b001**2 * b110**2 + b010**2 * b101**2 + b100**2 * b011**2
            - 2 * (b000 * b001 * b110 * b111 + b000 * b010 * b101 * b111
                   + b000 * b100 * b011 * b111 + b001 * b010 * b101 * b110
                   + b001 * b100 * b011 * b110 + b010 * b100 * b011 * b101)
            + 4 * (b000 * b011 * b101 * b110 + b001 * b010 * b100 * b111))


def _check_three_qubits(s: PureState):
    if s.levels != (2, 2, 2):
        raise ValueError("three-qubit invariants need levels (2, 2, 2)")
    if s.is_zero():
        raise ValueError("zero state")


def three_tangle(s: PureState) -> Fraction:
    """``tau_ABC = 4 |Det(psi)|`` on the normalized state."""
    _check_three_qubits(s)
    det = cayley_hyperdeterminant(s.tensor().tolist())
    return Fraction(4 * abs(int(det)), s.norm_sq ** 2)


def _trace_cube(rho) -> Fraction:
    M = sympy.Matrix(rho.numer.tolist())
    return Fraction(int((M ** 3).trace()), rho.denom ** 3)


@dataclass(frozen=True)
class InvariantRecord3:
    """Sudbery invariants ``I1..I6`` plus the raw-norm conventions for ``I1``."""

    I1: Fraction
    I2: Fraction
    I3: Fraction
    I4: Fraction
    I5: Fraction
    I6: Fraction
    amplitude_sum: int
    norm_sq: int
    norm: float

    def as_tuple(self) -> tuple:
        return (self.I1, self.I2, self.I3, self.I4, self.I5, self.I6)

    def to_json(self) -> dict:
        doc = {f"I{i + 1}": str(v) for i, v in enumerate(self.as_tuple())}
        doc.update(amplitude_sum=self.amplitude_sum, norm_sq=self.norm_sq, norm=self.norm)
        return doc


def sudbery_invariants(s: PureState) -> InvariantRecord3:
    _check_three_qubits(s)
    n = s.norm_sq
    rho_a = reduced_density(s, [0])
    rho_b = reduced_density(s, [1])
    rho_c = reduced_density(s, [2])
    rho_ab = reduced_density(s, [0, 1])
    purity = lambda r: Fraction(int(np.sum(r.numer * r.numer)), r.denom ** 2)
    # Tr[(rho_A (x) rho_B) rho_AB] with both reductions sharing denominator n
    kron = np.kron(rho_a.numer, rho_b.numer)
    mixed = Fraction(int(np.sum(kron * rho_ab.numer.T)), n ** 3)
    I5 = 3 * mixed - _trace_cube(rho_a) - _trace_cube(rho_b)
    tau = three_tangle(s)
    return InvariantRecord3(
        I1=Fraction(1),
        I2=purity(rho_c),
        I3=purity(rho_b),
        I4=purity(rho_a),
        I5=I5,
        I6=tau * tau / 4,
        amplitude_sum=sum(s.amplitudes),
        norm_sq=n,
        norm=math.sqrt(n),
    )
