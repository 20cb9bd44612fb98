"""Exact SLOCC polynomial invariants of four-qubit states.

All values are evaluated on the normalized state, so a degree-``2m``
invariant of the integer amplitudes is divided by ``norm_sq ** m``.

* ``H`` (degree 2): ``sum_i (+-) a_i a_{15-i}`` -- the pairing
  ``<psi| sigma_y^{(x)4} |psi*>`` written with Luque--Thibon signs.
* ``L, M, N`` (degree 4): determinants of the three ``4 x 4`` flattenings of
  the amplitude tensor, ordered as in Luque--Thibon, so ``L + M + N = 0``.
* ``D_xy`` (degree 6): determinant of the ``3 x 3`` coefficient matrix of the
  biquadratic form ``b_xy = det_{zt} sum_{ij} a_{ijzt} x_i y_j``.
* ``S, T`` (degrees 8 and 12): the apolar invariants of Schläfli's binary
  quartic ``Det(x_0 A_0 + x_1 A_1)`` (Cayley hyperdeterminant of the pencil
  over the first qubit); ``T`` is the catalecticant.
* ``Delta = S^3 - 27 T^2`` (degree 24): the discriminant of the quartic,
  equal to the ``2x2x2x2`` hyperdeterminant up to a constant; the
  ``hyperdeterminant`` field uses the factor ``2^8 3^9``.
* ``S1, S2, S3`` (degree 4): ``H^2 + 4M``, ``H^2 - 4L`` and ``H^2 - 4M``.

A further tabulated invariant ``P`` has no recoverable definition and is
reported as ``None``.

:func:`calibrate` fits one scalar per field on anchor states so that values
tabulated in other normalizations can be compared exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Mapping, Sequence

import sympy

from .invariants3 import cayley_hyperdeterminant
from .states import PureState

__all__ = [
    "InvariantRecord4",
    "four_qubit_invariants",
    "lt_invariants",
    "hyperdeterminant",
    "schlafli_quartic",
    "Calibration",
    "calibrate",
    "FIELDS",
]

FIELDS = ("Delta", "H", "T", "L", "P", "M", "D_xy", "S1", "S2", "S3")

# flattenings (row/column index bits) in the Luque--Thibon convention
_FLAT = {
    "L": ([["0000", "0010", "0001", "0011"], ["1000", "1010", "1001", "1011"],
           ["0100", "0110", "0101", "0111"], ["1100", "1110", "1101", "1111"]]),
    "M": ([["0000", "0001", "0100", "0101"], ["1000", "1001", "1100", "1101"],
           ["0010", "0011", "0110", "0111"], ["1010", "1011", "1110", "1111"]]),
    "N": ([["0000", "0100", "0010", "0110"], ["1000", "1100", "1010", "1110"],
           ["0001", "0101", "0011", "0111"], ["1001", "1101", "1011", "1111"]]),
}
_H_SIGNS = (1, -1, -1, 1, -1, 1, 1, -1)
HYPERDET_FACTOR = 2 ** 8 * 3 ** 9


def _check_four_qubits(s: PureState):
    if s.levels != (2, 2, 2, 2):
        raise ValueError("four-qubit invariants need levels (2, 2, 2, 2)")
    if s.is_zero():
        raise ValueError("zero state")


def _h(a) -> int:
    return sum(sg * a[i] * a[15 - i] for i, sg in enumerate(_H_SIGNS))


def _flattening_det(a, name: str) -> int:
    M = sympy.Matrix([[a[int(b, 2)] for b in row] for row in _FLAT[name]])
    return int(M.det())


def _d_xy(t) -> int:
    """Raw coefficient determinant of ``b_xy`` for an integer tensor ``t[i][j][z][w]``."""
    # m[z][w] is the bilinear form sum_ij t[i][j][z][w] x_i y_j as a 2x2 coefficient table
    def form(z, w):
        return [[t[i][j][z][w] for j in range(2)] for i in range(2)]

    def product(f, g):
        out = [[0] * 3 for _ in range(3)]
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        out[i + k][j + l] += f[i][j] * g[k][l]
        return out

    p = product(form(0, 0), form(1, 1))
    q = product(form(0, 1), form(1, 0))
    B = sympy.Matrix(3, 3, lambda r, c: p[r][c] - q[r][c])
    return int(B.det())


def schlafli_quartic(s: PureState) -> list[int]:
    """Coefficients ``[c0..c4]`` of ``Det(x0 A0 + x1 A1) = sum c_i x0^(4-i) x1^i``."""
    _check_four_qubits(s)
    t = s.tensor().tolist()
    x0, x1 = sympy.symbols("x0 x1")
    b = [[[x0 * t[0][i][j][k] + x1 * t[1][i][j][k] for k in range(2)] for j in range(2)]
         for i in range(2)]
    poly = sympy.Poly(sympy.expand(cayley_hyperdeterminant(b)), x0, x1)
    return [int(poly.coeff_monomial(x0 ** (4 - i) * x1 ** i)) for i in range(5)]


def _quartic_invariants(co: Sequence[int]) -> tuple[Fraction, Fraction]:
    a, e = Fraction(co[0]), Fraction(co[4])
    b, c, d = Fraction(co[1], 4), Fraction(co[2], 6), Fraction(co[3], 4)
    S = a * e - 4 * b * d + 3 * c * c
    T = a * c * e + 2 * b * c * d - a * d * d - e * b * b - c ** 3
    return S, T


@dataclass(frozen=True)
class InvariantRecord4:
    """Four-qubit invariants of the normalized state (exact rationals)."""

    H: Fraction
    L: Fraction
    M: Fraction
    N: Fraction
    D_xy: Fraction
    S: Fraction
    T: Fraction
    Delta: Fraction
    S1: Fraction
    S2: Fraction
    S3: Fraction
    P: Fraction | None = None
    norm_sq: int = 1

    @property
    def hyperdeterminant(self) -> Fraction:
        return HYPERDET_FACTOR * self.Delta

    def get(self, name: str):
        return getattr(self, name)

    def to_json(self) -> dict:
        doc = {}
        for f in fields(self):
            v = getattr(self, f.name)
            doc[f.name] = v if f.name == "norm_sq" else (None if v is None else str(v))
        doc["hyperdeterminant"] = str(self.hyperdeterminant)
        return doc


def four_qubit_invariants(s: PureState) -> InvariantRecord4:
    _check_four_qubits(s)
    a = s.amplitudes
    n = s.norm_sq
    H = Fraction(_h(a), n)
    L = Fraction(_flattening_det(a, "L"), n ** 2)
    M = Fraction(_flattening_det(a, "M"), n ** 2)
    N = Fraction(_flattening_det(a, "N"), n ** 2)
    D = Fraction(_d_xy(s.tensor().tolist()), n ** 3)
    S, T = _quartic_invariants(schlafli_quartic(s))
    S, T = S / n ** 4, T / n ** 6
    return InvariantRecord4(
        H=H, L=L, M=M, N=N, D_xy=D, S=S, T=T, Delta=S ** 3 - 27 * T ** 2,
        S1=H * H + 4 * M, S2=H * H - 4 * L, S3=H * H - 4 * M, P=None, norm_sq=n,
    )


lt_invariants = four_qubit_invariants


def hyperdeterminant(s: PureState) -> Fraction:
    """Quartic discriminant ``Delta = S^3 - 27 T^2`` of the normalized state.

    This is the normalization of the tabulated generator records; multiply by
    :data:`HYPERDET_FACTOR` for the ``2x2x2x2`` hyperdeterminant proper.
    """
    return four_qubit_invariants(s).Delta


@dataclass(frozen=True)
class Calibration:
    """Per-field scalar ``target = factor * source`` fitted on anchor states.

    ``source`` names the record attribute used for each tabulated field.  A
    factor the anchors never fix (the invariant vanishes on every anchor)
    stays at 1, the standard normalization.
    """

    source: Mapping[str, str]
    factors: Mapping[str, Fraction | None]
    conflicts: tuple[str, ...] = field(default=())

    def apply(self, rec: InvariantRecord4) -> dict[str, Fraction | None]:
        out = {}
        for name, src in self.source.items():
            v = rec.get(src)
            f = self.factors.get(name)
            if v is None:
                out[name] = None
            else:
                out[name] = (Fraction(1) if f is None else f) * v
        return out


# which computed invariant each tabulated column is compared with; the
# degree of the tabulated "H" and "T" columns (denominators n^4 and n^6)
# identifies them with the quartic invariants S and T
APPENDIX_SOURCES = {"Delta": "Delta", "H": "S", "T": "T", "L": "L", "P": "P",
                    "M": "M", "D_xy": "D_xy", "S1": "S1", "S2": "S2", "S3": "S3"}


def calibrate(anchors: Sequence[tuple[InvariantRecord4, Mapping[str, Fraction]]],
              source: Mapping[str, str] | None = None) -> Calibration:
    """Fit one scalar per field from ``(record, tabulated values)`` anchor pairs."""
    source = dict(source or APPENDIX_SOURCES)
    factors: dict[str, Fraction | None] = {}
    conflicts = []
    for name, src in source.items():
        f = None
        for rec, target in anchors:
            v = rec.get(src)
            t = Fraction(target[name])
            if v is None or v == 0:
                if v == 0 and t != 0:
                    conflicts.append(f"{name}: tabulated {t} where the invariant vanishes")
                continue
            ratio = t / v
            if f is None:
                f = ratio
            elif ratio != f:
                conflicts.append(f"{name}: anchors need factors {f} and {ratio}")
        factors[name] = f
    return Calibration(source, factors, tuple(conflicts))
