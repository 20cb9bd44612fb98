"""Exact reduced density matrices, purities, entropies and uniformity.

A reduction of ``|s><s| / <s|s>`` has entries ``numer / denom`` with an
integer matrix ``numer`` (a Gram matrix of amplitude slices) and
``denom = norm_sq``, so everything except logarithms is exact.  Entropies are
computed from certified isolating intervals of the characteristic polynomial's
roots and carry an explicit error bound.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
import sympy

from .states import PureState

__all__ = [
    "DensityMatrix",
    "PrecisionError",
    "Entropy",
    "reduced_density",
    "purity",
    "von_neumann_entropy",
    "mean_bipartite_entropy",
    "uniformity",
    "single_site_purities",
]


class PrecisionError(ArithmeticError):
    """The requested entropy precision could not be certified."""


@dataclass(frozen=True)
class DensityMatrix:
    """Real symmetric density matrix ``numer / denom`` on subsystems ``dims``."""

    dims: tuple[int, ...]
    numer: np.ndarray = field(repr=False)  # object dtype, Python ints
    denom: int = 1

    @property
    def dim(self) -> int:
        return self.numer.shape[0]

    @property
    def entries(self) -> list[list[Fraction]]:
        return [[Fraction(int(x), self.denom) for x in row] for row in self.numer]

    def trace(self) -> Fraction:
        return Fraction(int(sum(self.numer[i, i] for i in range(self.dim))), self.denom)

    def is_symmetric(self) -> bool:
        return bool((self.numer == self.numer.T).all())

    def is_psd(self) -> bool:
        return bool(sympy.Matrix(self.numer.tolist()).is_positive_semidefinite)

    def is_maximally_mixed(self) -> bool:
        n = self.dim
        if self.denom % n:
            return False
        target = self.denom // n
        return all(self.numer[i, j] == (target if i == j else 0)
                   for i in range(n) for j in range(n))

    def is_diagonal(self) -> bool:
        return all(self.numer[i, j] == 0 for i in range(self.dim) for j in range(self.dim) if i != j)

    def permuted(self, perm: Sequence[int]) -> "DensityMatrix":
        """``P rho P^T`` for the basis permutation ``i -> perm[i]``."""
        n = self.dim
        out = np.empty_like(self.numer)
        for i in range(n):
            for j in range(n):
                out[perm[i], perm[j]] = self.numer[i, j]
        return DensityMatrix(self.dims, out, self.denom)

    def key(self) -> tuple:
        """Hashable exact representation (reduced fractions)."""
        g = math.gcd(self.denom, *[int(x) for x in self.numer.reshape(-1)])
        return (self.dims, tuple(int(x) // g for x in self.numer.reshape(-1)), self.denom // g)

    def __eq__(self, other):
        return isinstance(other, DensityMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def reduced_density(s: PureState, keep: Sequence[int]) -> DensityMatrix:
    """Partial trace of the normalized projector onto the sites in ``keep``."""
    keep = sorted(int(k) for k in keep)
    if s.is_zero():
        raise ValueError("zero state has no density matrix")
    if not keep or len(set(keep)) != len(keep) or any(not 0 <= k < s.N for k in keep):
        raise ValueError(f"invalid site selection {keep}")
    rest = [j for j in range(s.N) if j not in keep]
    T = np.transpose(s.tensor(), axes=keep + rest)
    dk = math.prod(s.levels[j] for j in keep)
    M = T.reshape(dk, -1)
    numer = M.dot(M.T)
    return DensityMatrix(tuple(s.levels[j] for j in keep), numer, s.norm_sq)


def purity(rho: DensityMatrix) -> Fraction:
    """``Tr rho^2`` exactly."""
    total = sum(int(x) * int(x) for x in rho.numer.reshape(-1))
    return Fraction(total, rho.denom * rho.denom)


def single_site_purities(s: PureState) -> list[Fraction]:
    return [purity(reduced_density(s, [j])) for j in range(s.N)]


@dataclass(frozen=True)
class Entropy:
    """Entropy in bits with a certified absolute error bound."""

    value: float
    error: float
    exact_spectrum: bool = False

    def __float__(self):
        return self.value


def _plogp(x) -> mpmath.mpf:
    return -x * mpmath.log(x, 2) if x > 0 else mpmath.mpf(0)


def _spectrum_entropy(numer: np.ndarray, denom: int, tol: float) -> Entropy:
    """Entropy of ``numer/denom`` from isolating intervals of eigenvalues."""
    n = numer.shape[0]
    if all(numer[i, j] == 0 for i in range(n) for j in range(n) if i != j):
        val = sum(_plogp(mpmath.mpf(int(numer[i, i])) / denom) for i in range(n))
        return Entropy(float(val), 0.0, True)
    x = sympy.Symbol("x")
    poly = sympy.Matrix(numer.tolist()).charpoly(x)
    # strip zero eigenvalues exactly
    coeffs = poly.all_coeffs()
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    q = sympy.Poly(coeffs, x)
    if q.degree() == 0:
        return Entropy(0.0, 0.0, True)
    if q.degree() <= 2:
        total = mpmath.mpf(0)
        for root, mult in sympy.roots(q, x).items():
            lam = mpmath.mpf(sympy.N(root / denom, 40))
            total += mult * _plogp(lam)
        return Entropy(float(total), 0.0, True)
    eps = Fraction(denom, 10 ** 16)
    for _ in range(6):
        intervals = q.intervals(eps=eps)
        total = mpmath.mpf(0)
        err = mpmath.mpf(0)
        ok = True
        for (a, b), mult in intervals:
            a = mpmath.mpf(sympy.Rational(a) / denom)
            b = mpmath.mpf(sympy.Rational(b) / denom)
            if a <= 0:
                ok = False
                break
            mid = (a + b) / 2
            slope = max(abs(mpmath.log(a, 2) + 1 / mpmath.log(2)),
                        abs(mpmath.log(b, 2) + 1 / mpmath.log(2)))
            total += mult * _plogp(mid)
            err += mult * slope * (b - a) / 2
        if ok and err < tol:
            return Entropy(float(total), float(err), False)
        eps = eps / 10 ** 4
    raise PrecisionError("could not certify the entropy to the requested precision")


def von_neumann_entropy(rho: DensityMatrix, tol: float = 1e-12) -> Entropy:
    """``-Tr rho log2 rho`` with certified error below ``tol``."""
    return _spectrum_entropy(rho.numer, rho.denom, tol)


def _bipartition_entropy(s: PureState, part: Sequence[int], tol: float) -> Entropy:
    rest = [j for j in range(s.N) if j not in part]
    small = part if math.prod(s.levels[j] for j in part) <= math.prod(s.levels[j] for j in rest) else rest
    return von_neumann_entropy(reduced_density(s, small), tol)


def mean_bipartite_entropy(s: PureState, tol: float = 1e-12) -> Entropy:
    """Average entanglement entropy over all ``2^(N-1) - 1`` bipartitions."""
    N = s.N
    parts = []
    for size in range(1, N // 2 + 1):
        for part in itertools.combinations(range(N), size):
            if 2 * size == N and 0 not in part:
                continue  # count each balanced split once
            parts.append(part)
    vals = [_bipartition_entropy(s, p, tol / max(1, len(parts))) for p in parts]
    value = math.fsum(v.value for v in vals) / len(vals)
    error = math.fsum(v.error for v in vals) / len(vals)
    return Entropy(value, error, all(v.exact_spectrum for v in vals))


def uniformity(s: PureState) -> int:
    """Largest k such that every k-site reduction is maximally mixed."""
    if s.is_zero():
        raise ValueError("zero state")
    best = 0
    for k in range(1, s.N // 2 + 1):
        if all(reduced_density(s, part).is_maximally_mixed()
               for part in itertools.combinations(range(s.N), k)):
            best = k
        else:
            break
    return best
