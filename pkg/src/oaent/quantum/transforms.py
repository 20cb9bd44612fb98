"""Local free operations: integer stochastic matrices and measurements.

A local transformation ``A`` acts on one site as ``|j> -> sum_i A[i, j] |i>``.
It maps array-based states to array-based states exactly when ``A`` has
nonnegative integer entries with equal row and column sums (the magic
constant ``c``); the run count is then multiplied by ``c``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import sympy
from scipy.optimize import linear_sum_assignment

from .states import PureState, _apply_site

__all__ = [
    "StochasticCheck",
    "is_integer_stochastic",
    "birkhoff_decompose",
    "apply_local_transform",
    "project_measure",
    "stochastic_matrices",
]


@dataclass(frozen=True)
class StochasticCheck:
    ok: bool
    c: int | None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _as_int_matrix(matrix) -> np.ndarray:
    M = np.array(matrix, dtype=object)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    for x in M.reshape(-1):
        if int(x) != x:
            raise ValueError("matrix entries must be integers")
    return np.array([[int(x) for x in row] for row in M], dtype=object)


def is_integer_stochastic(matrix) -> StochasticCheck:
    """Nonnegative integer matrix whose row and column sums all equal ``c``."""
    M = _as_int_matrix(matrix)
    if any(x < 0 for x in M.reshape(-1)):
        return StochasticCheck(False, None, "negative entry")
    rows = [int(sum(r)) for r in M]
    cols = [int(sum(c)) for c in M.T]
    if len(set(rows)) != 1:
        return StochasticCheck(False, None, f"row sums {rows} are unequal")
    if len(set(cols)) != 1:
        return StochasticCheck(False, None, f"column sums {cols} are unequal")
    if rows[0] != cols[0]:
        return StochasticCheck(False, None, "row and column sums differ")
    return StochasticCheck(True, rows[0])


def birkhoff_decompose(matrix) -> list[tuple[tuple[int, ...], int]]:
    """Write an integer stochastic matrix as a sum of ``c`` permutation matrices.

    Returns ``[(perm, multiplicity)]`` where ``perm[i]`` is the column of the
    one in row ``i``; multiplicities add up to the magic constant.  Each step
    extracts a perfect matching inside the support (one exists by Birkhoff's
    theorem) and subtracts its minimal entry.
    """
    check = is_integer_stochastic(matrix)
    if not check:
        raise ValueError(f"not integer stochastic: {check.reason}")
    M = np.array(_as_int_matrix(matrix), dtype=np.int64)
    n = len(M)
    out: dict[tuple[int, ...], int] = {}
    while M.any():
        # a maximum-weight assignment restricted to the support is perfect
        cost = np.where(M > 0, 0, 1)
        rows, cols = linear_sum_assignment(cost)
        if cost[rows, cols].any():
            raise RuntimeError("support has no perfect matching")
        perm = tuple(int(c) for c in cols[np.argsort(rows)])
        w = int(min(M[i, perm[i]] for i in range(n)))
        for i in range(n):
            M[i, perm[i]] -= w
        out[perm] = out.get(perm, 0) + w
    return sorted(out.items(), key=lambda kv: (-kv[1], kv[0]))


def apply_local_transform(s: PureState, site: int, matrix) -> PureState:
    """Apply an invertible integer stochastic matrix to one site."""
    M = _as_int_matrix(matrix)
    d = s.levels[site]
    if M.shape != (d, d):
        raise ValueError(f"matrix must be {d}x{d} for site {site}")
    check = is_integer_stochastic(M)
    if not check:
        raise ValueError(f"matrix is not integer stochastic: {check.reason}")
    if sympy.Matrix(M.tolist()).det() == 0:
        raise ValueError("matrix is singular")
    return _apply_site(s, site, M)


def project_measure(s: PureState, site: int, outcome: int) -> PureState:
    """Unnormalized post-measurement state on the remaining sites.

    Keeps the amplitudes whose ``site`` symbol equals ``outcome`` and deletes
    that site; the result may be the zero state.
    """
    if not 0 <= outcome < s.levels[site]:
        raise ValueError(f"outcome {outcome} outside the alphabet of site {site}")
    if s.N < 2:
        raise ValueError("cannot measure the only site")
    T = np.take(s.tensor(), outcome, axis=site)
    levels = [d for j, d in enumerate(s.levels) if j != site]
    return PureState(levels, [int(x) for x in T.reshape(-1)])


def stochastic_matrices(d: int, c: int, invertible: bool = True) -> list[np.ndarray]:
    """All ``d x d`` integer stochastic matrices with magic constant ``c``.

    Enumerated as distinct sums of ``c`` permutation matrices (Birkhoff), in a
    deterministic order; singular ones are dropped when ``invertible``.
    """
    perms = [np.eye(d, dtype=np.int64)[list(p)] for p in itertools.permutations(range(d))]
    seen = set()
    out = []
    for combo in itertools.combinations_with_replacement(range(len(perms)), c):
        M = sum(perms[i] for i in combo)
        key = M.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if invertible and sympy.Matrix(M.tolist()).det() == 0:
            continue
        out.append(M)
    out.sort(key=lambda M: tuple(M.reshape(-1)))
    return out
