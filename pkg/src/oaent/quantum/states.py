"""Unnormalized integer-amplitude pure states and the array <-> state map.

The state of an array is ``sum over runs |run>``, so amplitudes equal the
run multiplicities.  Amplitudes may be negative for derived states (for
instance Hadamard transforms); only nonnegative states map back to arrays.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..oa import AlphabetSpec, CoefficientVector, OrthogonalArray, _as_alphabet

__all__ = [
    "PureState",
    "state_from_oa",
    "oa_from_state",
    "hadamard_all",
    "flip_site",
    "permute_sites",
    "permute_symbols",
    "format_ket",
    "parse_ket",
]


@dataclass(frozen=True)
class PureState:
    """Integer amplitudes over the computational basis in mixed-radix order."""

    alphabet: AlphabetSpec
    amplitudes: tuple[int, ...]

    def __init__(self, levels, amplitudes: Sequence[int]):
        alphabet = _as_alphabet(levels)
        amps = tuple(int(a) for a in amplitudes)
        if len(amps) != alphabet.size:
            raise ValueError(f"expected {alphabet.size} amplitudes, got {len(amps)}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_dict(cls, levels, amps: Mapping[Sequence[int], int]) -> "PureState":
        alphabet = _as_alphabet(levels)
        vec = [0] * alphabet.size
        for t, a in amps.items():
            vec[alphabet.ravel(t)] += int(a)
        return cls(alphabet, vec)

    @classmethod
    def from_kets(cls, kets: Sequence[str], levels=None, weights=None) -> "PureState":
        """``from_kets(["000", "111"])`` is the unnormalized GHZ state."""
        N = len(kets[0])
        levels = levels or (2,) * N
        weights = weights or [1] * len(kets)
        amps: dict = {}
        for ket, w in zip(kets, weights):
            t = tuple(int(ch) for ch in ket)
            amps[t] = amps.get(t, 0) + w
        return cls.from_dict(levels, amps)

    @property
    def N(self) -> int:
        return self.alphabet.N

    @property
    def levels(self) -> tuple[int, ...]:
        return self.alphabet.levels

    @property
    def norm_sq(self) -> int:
        return sum(a * a for a in self.amplitudes)

    def amplitude(self, run: Sequence[int]) -> int:
        return self.amplitudes[self.alphabet.ravel(run)]

    def tensor(self) -> np.ndarray:
        """Amplitudes as an object-dtype (exact) array of shape ``levels``."""
        return np.array(self.amplitudes, dtype=object).reshape(self.levels)

    def is_zero(self) -> bool:
        return not any(self.amplitudes)

    def items(self):
        for i, a in enumerate(self.amplitudes):
            if a:
                yield self.alphabet.unravel(i), a

    def to_json(self) -> dict:
        return {"levels": list(self.levels),
                "amplitudes": [list(t) + [a] for t, a in self.items()]}

    @classmethod
    def from_json(cls, doc) -> "PureState":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls.from_dict(doc["levels"], {tuple(e[:-1]): e[-1] for e in doc["amplitudes"]})

    def __add__(self, other: "PureState") -> "PureState":
        return PureState(self.alphabet, [a + b for a, b in zip(self.amplitudes, other.amplitudes)])

    def __sub__(self, other: "PureState") -> "PureState":
        return PureState(self.alphabet, [a - b for a, b in zip(self.amplitudes, other.amplitudes)])

    def scaled(self, factor: int) -> "PureState":
        return PureState(self.alphabet, [factor * a for a in self.amplitudes])

    def __str__(self):
        return format_ket(self)


def state_from_oa(oa: OrthogonalArray) -> PureState:
    return PureState(oa.alphabet, oa.counts().counts)


def oa_from_state(s: PureState) -> OrthogonalArray:
    if any(a < 0 for a in s.amplitudes):
        raise ValueError("state has a negative amplitude and is not array-based")
    return CoefficientVector(s.alphabet, s.amplitudes).to_oa()


def _apply_site(s: PureState, site: int, matrix) -> PureState:
    """Apply an integer ``d x d`` matrix to one site: new[.., i, ..] = sum_j M[i, j] old[.., j, ..]."""
    T = s.tensor()
    M = np.array(matrix, dtype=object)
    out = np.tensordot(M, T, axes=([1], [site]))
    out = np.moveaxis(out, 0, site)
    return PureState(s.alphabet, [int(x) for x in out.reshape(-1)])


def hadamard_all(s: PureState) -> PureState:
    """Unnormalized Hadamard ``[[1, 1], [1, -1]]`` on every qubit."""
    if set(s.levels) != {2}:
        raise ValueError("Hadamard transform defined for qubits only")
    out = s
    for site in range(s.N):
        out = _apply_site(out, site, [[1, 1], [1, -1]])
    return out


def permute_symbols(s: PureState, site: int, perm: Sequence[int]) -> PureState:
    """Relabel symbol ``a`` of ``site`` as ``perm[a]``."""
    d = s.levels[site]
    P = [[1 if perm[j] == i else 0 for j in range(d)] for i in range(d)]
    return _apply_site(s, site, P)


def flip_site(s: PureState, site: int) -> PureState:
    """Reverse the symbols of one site (the Pauli X for a qubit)."""
    d = s.levels[site]
    return permute_symbols(s, site, list(reversed(range(d))))


def permute_sites(s: PureState, order: Sequence[int]) -> PureState:
    """New site ``j`` is old site ``order[j]``."""
    T = np.transpose(s.tensor(), axes=list(order))
    levels = [s.levels[o] for o in order]
    return PureState(levels, [int(x) for x in T.reshape(-1)])


def format_ket(s: PureState) -> str:
    """Text ket notation such as ``2|000> + |011>`` (sorted by basis index)."""
    wide = max(s.levels) > 10
    parts = []
    for t, a in s.items():
        label = (",".join(map(str, t)) if wide else "".join(map(str, t)))
        coeff = "" if abs(a) == 1 else str(abs(a))
        sign = "-" if a < 0 else "+"
        parts.append((sign, f"{coeff}|{label}>"))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


def parse_ket(text: str, levels=None) -> PureState:
    """Inverse of :func:`format_ket` for single-digit symbols."""
    import re

    terms = re.findall(r"([+-]?)\s*(\d*)\s*\|([\d,]+)>", text)
    if not terms:
        raise ValueError(f"no kets found in {text!r}")
    amps: dict = {}
    for sign, coeff, label in terms:
        t = tuple(int(x) for x in (label.split(",") if "," in label else label))
        a = int(coeff) if coeff else 1
        amps[t] = amps.get(t, 0) + (-a if sign == "-" else a)
    N = len(next(iter(amps)))
    if levels is None:
        levels = (max(2, max(max(t) for t in amps) + 1),) * N
    return PureState.from_dict(levels, amps)


def gcd_content(s: PureState) -> int:
    return math.gcd(*s.amplitudes)
