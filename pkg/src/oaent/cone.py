"""The OA cone: constraint systems, Hilbert bases and lattice points.

Every array with strength ``k`` over ``levels`` is a nonnegative integer
solution ``c`` of a homogeneous system of marginal-balance equations (every
k-tuple appears equally often in every k-column projection).  The solution
monoid is finitely generated; its unique minimal generating set (the Hilbert
basis) consists of the *generating arrays*.

Because the cone is cut out by equalities plus the nonnegative orthant, its
Hilbert basis is exactly the set of pointwise-minimal nonzero nonnegative
solutions.  The default solver is a project-and-lift completion procedure:

1. an integral row reduction with unit pivots exhibits the solution lattice as
   the graph of an integer map from a set of *free* coordinates, so the unit
   vectors of the free coordinates, lifted, form a lattice basis;
2. the remaining (pivot) coordinates are added one at a time.  For each new
   coordinate ``i`` the current generating set is completed under the order
   ``x <= y`` iff ``x_T <= y_T`` on the already-nonnegative coordinates ``T``
   and ``x_i`` is sign-conformal to and not larger in modulus than ``y_i``.
   Pair sums of elements with opposite signs in coordinate ``i`` are formed and
   processed by increasing degree (sum over ``T``); a candidate survives only
   if no element of lower degree lies below it.  Finally elements with
   ``x_i < 0`` are dropped.

A slower but fully general Contejean-Devie search is available as
``method="contejean-devie"``.
"""
from __future__ import annotations

import itertools
import json
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numba as nb
import numpy as np

from .oa import AlphabetSpec, CoefficientVector, OrthogonalArray, _as_alphabet, format_oa

__all__ = [
    "BudgetExceeded",
    "Budget",
    "ConstraintSystem",
    "HilbertBasis",
    "NonexistenceCertificate",
    "build_constraints",
    "hilbert_basis",
    "min_runs",
    "prove_nonexistence",
    "enumerate_lattice_points",
    "decompose",
    "verify_conjecture",
    "export_basis",
    "lattice_basis",
    "unit_rref",
]


class BudgetExceeded(RuntimeError):
    """Raised when a computation would exceed its configured resources.

    ``progress`` holds a partial-progress report; results are never truncated.
    """

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = progress or {}


@dataclass
class Budget:
    """Resource caps for the solvers (``None`` = unlimited)."""

    max_seconds: float | None = None
    max_elements: int | None = 2_000_000

    def __post_init__(self):
        self._start = time.monotonic()

    def restart(self):
        self._start = time.monotonic()

    def elapsed(self) -> float:
        return time.monotonic() - self._start

    def check(self, elements: int = 0, progress=None):
        if self.max_seconds is not None and self.elapsed() > self.max_seconds:
            raise BudgetExceeded(f"time budget of {self.max_seconds}s exceeded", progress)
        if self.max_elements is not None and elements > self.max_elements:
            raise BudgetExceeded(f"element budget of {self.max_elements} exceeded", progress)


# ------------------------------------------------------------ constraints


@dataclass(frozen=True)
class ConstraintSystem:
    """Homogeneous marginal-balance system ``equations @ c = 0`` with ``c >= 0``.

    ``equations`` keeps the full audit list (one row per k-column set and per
    non-reference tuple); ``independent`` is a row-reduced equivalent used by
    the solvers.
    """

    alphabet: AlphabetSpec
    k: int
    equations: np.ndarray = field(repr=False)
    independent: np.ndarray = field(repr=False)
    pivots: tuple[int, ...] = field(repr=False)

    @property
    def bound(self) -> int:
        return self.alphabet.size

    @property
    def n(self) -> int:
        return self.alphabet.size

    def is_solution(self, counts) -> bool:
        c = np.asarray(counts, dtype=np.int64)
        return bool((c >= 0).all() and not (self.equations @ c).any())

    def describe(self) -> list[str]:
        """Human-readable equations ``c_.. + ... = c_.. + ...``."""
        names = ["c_" + "".join(str(s) for s in t) for t in self.alphabet.tuples()]
        out = []
        for row in self.equations:
            lhs = " + ".join(names[i] for i in np.flatnonzero(row > 0))
            rhs = " + ".join(names[i] for i in np.flatnonzero(row < 0))
            out.append(f"{lhs} = {rhs}")
        return out


def build_constraints(levels, k: int) -> ConstraintSystem:
    """Balance equations for strength ``k`` over the given alphabet.

    For each k-column set and each tuple ``t`` other than the all-zero tuple,
    the equation reads ``#(t) - #(0...0) = 0`` where ``#`` is the marginal sum
    of run multiplicities.
    """
    alphabet = _as_alphabet(levels)
    N = alphabet.N
    if not 1 <= k <= N:
        raise ValueError(f"strength k={k} out of range 1..{N}")
    runs = np.array(alphabet.tuples(), dtype=np.int64)
    rows = []
    for cols in itertools.combinations(range(N), k):
        sub_levels = [alphabet.levels[c] for c in cols]
        code = np.zeros(len(runs), dtype=np.int64)
        for c in cols:
            code = code * alphabet.levels[c] + runs[:, c]
        ref = (code == 0).astype(np.int64)
        for t in range(1, math.prod(sub_levels)):
            rows.append((code == t).astype(np.int64) - ref)
    equations = np.array(rows, dtype=np.int64)
    red = unit_rref(equations)
    if red is None:
        independent, pivots = _rank_reduce(equations), ()
    else:
        independent, pivots = red
    return ConstraintSystem(alphabet, k, equations, independent, tuple(pivots))


def unit_rref(A) -> tuple[np.ndarray, list[int]] | None:
    """Integral reduced row echelon form using only unit pivots.

    Rows are divided by their content before each pivot choice.  Returns the
    reduced independent rows and pivot columns, or ``None`` when at some stage
    no entry of modulus one is available (the lattice is then not a graph
    over a coordinate subset).
    """
    A = np.array(A, dtype=np.int64)
    m, n = A.shape
    piv_rows, piv_cols = [], []
    active = np.ones(m, dtype=bool)
    col_done = np.zeros(n, dtype=bool)
    while active.any():
        rows_a = np.flatnonzero(active)
        cols_a = np.flatnonzero(~col_done)
        sub = A[np.ix_(rows_a, cols_a)]
        g = np.gcd.reduce(np.abs(sub), axis=1)
        zero = g == 0
        active[rows_a[zero]] = False
        rows_a, sub, g = rows_a[~zero], sub[~zero], g[~zero]
        if len(rows_a) == 0:
            break
        # pivot columns are already cleared in these rows, so dividing is exact
        A[rows_a] //= g[:, None]
        sub = sub // g[:, None]
        units = np.argwhere(np.abs(sub) == 1)
        if len(units) == 0:
            return None
        ri, ci = units[0]
        r, c = rows_a[ri], cols_a[ci]
        if A[r, c] < 0:
            A[r] = -A[r]
        nz = np.flatnonzero(A[:, c])
        nz = nz[nz != r]
        A[nz] -= np.outer(A[nz, c], A[r])
        active[r] = False
        col_done[c] = True
        piv_rows.append(r)
        piv_cols.append(c)
    return A[piv_rows], piv_cols


def _rank_reduce(A: np.ndarray) -> np.ndarray:
    """Exact maximal independent row subset (fallback when no unit RREF exists)."""
    import sympy

    M = sympy.Matrix(A.tolist())
    _, pivots = M.T.rref()
    return A[list(pivots)]


def lattice_basis(system: ConstraintSystem) -> tuple[np.ndarray, list[int]]:
    """Basis of the solution lattice, one vector per free coordinate.

    Row ``a`` has a one in free coordinate ``free[a]``, zeros in the other free
    coordinates and the values forced on the pivot coordinates.
    """
    if not system.pivots and len(system.independent):
        raise ValueError("no unit-pivot reduction; use method='contejean-devie'")
    R, piv = system.independent, list(system.pivots)
    n = system.n
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    B = np.zeros((len(free), n), dtype=np.int64)
    for a, f in enumerate(free):
        B[a, f] = 1
        for row, p in enumerate(piv):
            B[a, p] = -R[row, f]
    return B, free


# ----------------------------------------------------- completion kernels


@nb.njit(cache=True)
def _reducible(w, wdeg, S, deg, m, cols, i, start):
    """Is some S[a] (start <= a < m, lower degree) below w in the lifting order?"""
    lw = w[i]
    for a in range(start, m):
        if deg[a] >= wdeg:
            continue
        ls = S[a, i]
        if ls > 0:
            if lw < ls:
                continue
        elif ls < 0:
            if lw > ls:
                continue
        ok = True
        for c in cols:
            if S[a, c] > w[c]:
                ok = False
                break
        if ok:
            return True
    return False


@nb.njit(cache=True)
def _pair_sums(fi, lo, hi, S, deg, cols, i):
    """Irreducible sums S[fi] + S[g], g in [lo, hi), with opposite signs at i."""
    lf = S[fi, i]
    n = S.shape[1]
    out = np.empty((hi - lo, n), dtype=S.dtype)
    odeg = np.empty(hi - lo, dtype=np.int64)
    k = 0
    w = np.empty(n, dtype=S.dtype)
    for g in range(lo, hi):
        lg = S[g, i]
        if lg == 0 or (lg > 0) == (lf > 0):
            continue
        for c in range(n):
            w[c] = S[fi, c] + S[g, c]
        wd = deg[fi] + deg[g]
        if _reducible(w, wd, S, deg, hi, cols, i, 0):
            continue
        out[k] = w
        odeg[k] = wd
        k += 1
    return out[:k], odeg[:k]


@nb.njit(cache=True)
def _irreducible_mask(C, D, S, deg, m, cols, i, start):
    keep = np.zeros(C.shape[0], dtype=np.bool_)
    for r in range(C.shape[0]):
        keep[r] = not _reducible(C[r], D, S, deg, m, cols, i, start)
    return keep


@nb.njit(cache=True)
def _minimal_mask(G):
    """Pointwise-minimal rows of a nonnegative matrix (duplicates keep the first)."""
    m, n = G.shape
    keep = np.ones(m, dtype=np.bool_)
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            below = True
            equal = True
            for c in range(n):
                if G[b, c] > G[a, c]:
                    below = False
                    break
                if G[b, c] != G[a, c]:
                    equal = False
            if below and (not equal or b < a):
                keep[a] = False
                break
    return keep


def _lift(G: np.ndarray, T: np.ndarray, i: int, budget: Budget, progress: dict) -> np.ndarray:
    """Complete ``G`` for coordinate ``i`` and keep elements with ``x_i >= 0``."""
    cols = np.flatnonzero(T).astype(np.int64)
    n = G.shape[1]
    S = np.zeros((max(1024, 4 * len(G)), n), dtype=np.int64)
    deg = np.zeros(len(S), dtype=np.int64)
    m = len(G)
    S[:m] = G
    deg[:m] = G[:, cols].sum(axis=1)
    buckets: dict[int, list] = {}

    def push(fi, lo, hi):
        W, Dd = _pair_sums(fi, lo, hi, S, deg, cols, i)
        for dval in np.unique(Dd):
            buckets.setdefault(int(dval), []).append((hi, W[Dd == dval]))

    for fi in range(m):
        if S[fi, i] != 0:
            push(fi, fi + 1, m)
    while buckets:
        D = min(buckets)
        items = buckets.pop(D)
        cand = np.unique(np.vstack([c for _, c in items]), axis=0)
        # candidates were already tested against everything present when they
        # were generated; only elements added since then need checking
        start = min(g for g, _ in items)
        keep = cand[_irreducible_mask(cand, D, S, deg, m, cols, i, start)]
        if not len(keep):
            continue
        while m + len(keep) > len(S):
            S = np.vstack([S, np.zeros_like(S)])
            deg = np.concatenate([deg, np.zeros_like(deg)])
        first = m
        S[m:m + len(keep)] = keep
        deg[m:m + len(keep)] = D
        m += len(keep)
        progress.update(elements=m, degree=D)
        budget.check(m, dict(progress))
        for fi in range(first, m):
            if S[fi, i] != 0:
                push(fi, 0, fi)
    out = S[:m]
    return out[out[:, i] >= 0]


def _project_and_lift(system: ConstraintSystem, budget: Budget, verbose=False) -> np.ndarray:
    B, free = lattice_basis(system)
    n = system.n
    T = np.zeros(n, dtype=bool)
    T[free] = True
    G = B
    todo = list(system.pivots)
    progress = {"lifted": 0, "to_lift": len(todo)}
    while todo:
        # next coordinate: fewest opposite-sign pairs, ties by index
        i = min(todo, key=lambda c: (int((G[:, c] > 0).sum()) * int((G[:, c] < 0).sum()), c))
        todo.remove(i)
        t0 = time.monotonic()
        G = _lift(G, T, i, budget, progress)
        T[i] = True
        progress["lifted"] += 1
        if verbose:
            print(f"lift coordinate {i}: {len(G)} elements ({time.monotonic() - t0:.2f}s)", flush=True)
    G = G[_minimal_mask(G)]
    return G


def _contejean_devie(A: np.ndarray, budget: Budget) -> np.ndarray:
    """Minimal nonnegative solutions of ``A x = 0`` by Contejean-Devie search.

    Starting from unit vectors, a non-solution ``p`` is extended by ``e_j``
    only when ``<A p, A e_j> < 0`` (the defect moves towards the origin), and
    extensions lying above an already-found solution are discarded.
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    cols = A.T
    found: list[np.ndarray] = []
    frontier = {tuple(np.eye(n, dtype=np.int64)[j]) for j in range(n)}
    while frontier:
        frontier_arr = np.array(sorted(frontier), dtype=np.int64)
        budget.check(len(frontier), {"solutions": len(found), "frontier": len(frontier)})
        defects = frontier_arr @ A.T
        is_sol = ~defects.any(axis=1)
        for p in frontier_arr[is_sol]:
            found.append(p)
        F = np.array(found, dtype=np.int64).reshape(-1, n)
        nxt = set()
        for p, dp in zip(frontier_arr[~is_sol], defects[~is_sol]):
            scores = cols @ dp
            for j in np.flatnonzero(scores < 0):
                q = p.copy()
                q[j] += 1
                if len(F) and (F <= q).all(axis=1).any():
                    continue
                nxt.add(tuple(q))
        frontier = nxt
    F = np.array(found, dtype=np.int64).reshape(-1, n)
    return F[_minimal_mask(F)] if len(F) else F


# ------------------------------------------------------------ Hilbert basis


def _canonical_order(G: np.ndarray) -> np.ndarray:
    """Sort by run count, then lexicographically by coefficient vector."""
    if len(G) == 0:
        return G
    keys = [G[:, c] for c in reversed(range(G.shape[1]))] + [G.sum(axis=1)]
    return G[np.lexsort(keys)]


@dataclass(frozen=True)
class HilbertBasis:
    """Generators of the OA cone in canonical order (run count, then lex)."""

    system: ConstraintSystem
    matrix: np.ndarray = field(repr=False)
    seconds: float = field(default=0.0, compare=False)
    method: str = "project-and-lift"

    @property
    def generators(self) -> list[CoefficientVector]:
        return [CoefficientVector(self.system.alphabet, row) for row in self.matrix]

    @property
    def arrays(self) -> list[OrthogonalArray]:
        return [g.to_oa() for g in self.generators]

    @property
    def runs_per_generator(self) -> list[int]:
        return [int(x) for x in self.matrix.sum(axis=1)]

    def __len__(self):
        return len(self.matrix)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def index_of(self, counts) -> int:
        """Zero-based position of a coefficient vector among the generators."""
        c = np.asarray(counts.counts if isinstance(counts, CoefficientVector) else counts)
        hits = np.flatnonzero((self.matrix == c).all(axis=1))
        if not len(hits):
            raise KeyError("not a generator")
        return int(hits[0])

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.system.alphabet.levels),
            "k": self.system.k,
            "generators": self.matrix.tolist(),
            "runs_per_generator": self.runs_per_generator,
        }


_BASIS_CACHE: dict = {}


def hilbert_basis(system: ConstraintSystem, budget: Budget | None = None,
                  method: str = "project-and-lift", verbose: bool = False,
                  use_cache: bool = True) -> HilbertBasis:
    """Hilbert basis of the cone ``{c >= 0 : equations @ c = 0}``.

    Results are canonically sorted and therefore independent of internal
    processing order.  Exceeding ``budget`` raises :class:`BudgetExceeded`.
    """
    key = (system.alphabet.levels, system.k, method)
    if use_cache and key in _BASIS_CACHE:
        return _BASIS_CACHE[key]
    budget = budget or Budget()
    budget.restart()
    t0 = time.monotonic()
    if method == "project-and-lift":
        if not system.pivots:
            raise ValueError("no unit-pivot reduction available; use method='contejean-devie'")
        G = _project_and_lift(system, budget, verbose)
    elif method == "contejean-devie":
        G = _contejean_devie(system.independent, budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    basis = HilbertBasis(system, _canonical_order(G), time.monotonic() - t0, method)
    if use_cache:
        _BASIS_CACHE[key] = basis
    return basis


def min_runs(basis: HilbertBasis) -> int:
    if len(basis) == 0:
        raise ValueError("empty basis")
    return min(basis.runs_per_generator)


# ------------------------------------------------------------- existence


@dataclass(frozen=True)
class NonexistenceCertificate:
    """Proof that no OA with ``r`` runs exists for the given alphabet and strength.

    ``reason`` is ``"min-runs"`` (every generator has more than ``r`` runs) or
    ``"no-combination"`` (``r`` is not a nonnegative integer combination of the
    generator run counts).  Both are checkable against ``generator_runs``.
    """

    r: int
    alphabet: AlphabetSpec
    k: int
    reason: str
    min_runs: int
    generator_runs: tuple[int, ...] = field(repr=False)

    def check(self) -> bool:
        if self.reason == "min-runs":
            return self.min_runs > self.r and min(self.generator_runs) == self.min_runs
        if self.reason == "no-combination":
            return _combination(sorted(set(self.generator_runs)), self.r) is None
        return False


def _combination(sizes: Sequence[int], r: int):
    """Multiplicities alpha with sum(alpha_i * sizes[i]) == r, preferring early sizes."""
    if r == 0:
        return [0] * len(sizes)
    reach = [False] * (r + 1)
    reach[0] = True
    for s in sizes:
        for v in range(s, r + 1):
            reach[v] = reach[v] or reach[v - s]
    if not reach[r]:
        return None

    # greedy over sizes in order with feasibility check via a second DP
    def feasible(rem, from_idx):
        ok = [False] * (rem + 1)
        ok[0] = True
        for s in sizes[from_idx:]:
            for v in range(s, rem + 1):
                ok[v] = ok[v] or ok[v - s]
        return ok[rem]

    alpha = [0] * len(sizes)
    rem = r
    for idx, s in enumerate(sizes):
        while rem >= s and feasible(rem - s, idx):
            alpha[idx] += 1
            rem -= s
    assert rem == 0
    return alpha


def prove_nonexistence(r: int, levels, k: int, budget: Budget | None = None):
    """Certificate that OA(r, levels, k) does not exist, or a witness array.

    A witness is built by composing generators; the relaxation "is there a
    rational solution with total r" is always feasible for r > 0 (the uniform
    vector scaled by r / prod(levels)), so certificates come from the basis.
    """
    alphabet = _as_alphabet(levels)
    if not 0 <= r <= alphabet.size:
        raise ValueError(f"r={r} outside 0..{alphabet.size}")
    system = build_constraints(alphabet, k)
    basis = hilbert_basis(system, budget)
    runs = basis.runs_per_generator
    lo = min(runs)
    if r == 0:
        return OrthogonalArray([], alphabet)
    if r < lo:
        return NonexistenceCertificate(r, alphabet, k, "min-runs", lo, tuple(runs))
    # pick generators in canonical order for each run size used
    sizes = sorted(set(runs))
    alpha = _combination(sizes, r)
    if alpha is None:
        return NonexistenceCertificate(r, alphabet, k, "no-combination", lo, tuple(runs))
    c = np.zeros(alphabet.size, dtype=np.int64)
    for s, a in zip(sizes, alpha):
        first = runs.index(s)
        c += a * basis.matrix[first]
    return CoefficientVector(alphabet, c).to_oa()


# ---------------------------------------------------------- lattice points


def enumerate_lattice_points(system: ConstraintSystem, r_max: int,
                             basis: HilbertBasis | None = None,
                             budget: Budget | None = None) -> Iterator[CoefficientVector]:
    """Every nonzero solution with total at most ``r_max``, each exactly once.

    Points are produced as bounded nonnegative combinations of the generators
    and deduplicated on their coefficient vectors; output is ordered by run
    count and then lexicographically.
    """
    for row in lattice_point_matrix(system, r_max, basis, budget):
        yield CoefficientVector(system.alphabet, row)


def lattice_point_matrix(system: ConstraintSystem, r_max: int,
                         basis: HilbertBasis | None = None,
                         budget: Budget | None = None) -> np.ndarray:
    """Array form of :func:`enumerate_lattice_points`."""
    if r_max > system.bound:
        raise ValueError(f"r_max={r_max} exceeds the bound {system.bound}")
    n = system.n
    if r_max <= 0:
        return np.zeros((0, n), dtype=np.int64)
    basis = basis or hilbert_basis(system, budget)
    budget = budget or Budget(max_elements=None)
    G = basis.matrix
    gr = G.sum(axis=1)
    levels: dict[int, np.ndarray] = {0: np.zeros((1, n), dtype=np.int64)}
    for r in range(1, r_max + 1):
        parts = []
        for gi in np.flatnonzero(gr <= r):
            prev = levels.get(r - int(gr[gi]))
            if prev is not None and len(prev):
                parts.append(prev + G[gi])
        levels[r] = np.unique(np.vstack(parts), axis=0) if parts else np.zeros((0, n), dtype=np.int64)
        budget.check(sum(len(v) for v in levels.values()), {"r": r})
    out = [levels[r] for r in range(1, r_max + 1) if len(levels[r])]
    return np.vstack(out) if out else np.zeros((0, n), dtype=np.int64)


# ------------------------------------------------------------ decomposition


def decompose(oa, basis: HilbertBasis) -> list[tuple[int, int]]:
    """One decomposition of ``oa`` as a sum of generators.

    Depth-first search over generators in canonical order, trying the largest
    feasible multiplicity first; returns ``[(generator_index, multiplicity)]``
    (zero-based indices, zero multiplicities omitted).
    """
    cv = oa.counts() if isinstance(oa, OrthogonalArray) else oa
    if cv.alphabet != basis.system.alphabet:
        raise ValueError("array alphabet does not match the basis")
    c = np.asarray(cv.counts, dtype=np.int64)
    if not basis.system.is_solution(c):
        raise ValueError("not an OA of this strength")
    G = basis.matrix
    failed: set = set()

    def dfs(rem, start):
        if not rem.any():
            return []
        key = (rem.tobytes(), start)
        if key in failed:
            return None
        for gi in range(start, len(G)):
            g = G[gi]
            if (g > rem).any():
                continue
            nz = g > 0
            top = int((rem[nz] // g[nz]).min())
            for mult in range(top, 0, -1):
                sub = dfs(rem - mult * g, gi + 1)
                if sub is not None:
                    return [(gi, mult)] + sub
        failed.add(key)
        return None

    result = dfs(c, 0)
    if result is None:  # impossible for a genuine solution (Gordan)
        raise RuntimeError("no decomposition found")
    return result


# -------------------------------------------------------------- conjecture


@dataclass
class ConjectureTranscript:
    N: int
    holds: bool
    basis: list[list[int]]
    predicted: list[list[int]]
    hadamard_raw: list[int]
    content: int
    status: str

    def to_json(self) -> dict:
        return self.__dict__.copy()


def verify_conjecture(N: int, budget: Budget | None = None) -> ConjectureTranscript:
    """Check that the strength-(N-1) qubit cone has exactly two generators.

    The prediction is the Hadamard-transformed GHZ state (which, cleared of its
    common factor 2, is the even-parity indicator) and its partner obtained by
    flipping the symbol of the last site (the odd-parity indicator).
    """
    from .quantum.states import PureState, hadamard_all, flip_site

    if N < 2:
        raise ValueError("N must be at least 2")
    alphabet = AlphabetSpec.uniform(N, 2)
    basis = hilbert_basis(build_constraints(alphabet, N - 1), budget)
    ghz = PureState.from_dict(alphabet, {(0,) * N: 1, (1,) * N: 1})
    raw = hadamard_all(ghz)
    raw_vec = [raw.amplitude(t) for t in alphabet.tuples()]
    content = math.gcd(*raw_vec)
    status = "ok"
    if any(v < 0 for v in raw_vec):
        status = "format-mismatch"
        return ConjectureTranscript(N, False, basis.matrix.tolist(), [], raw_vec, content, status)
    first = [v // content for v in raw_vec]
    flipped = flip_site(PureState(alphabet, first), N - 1)
    second = [flipped.amplitude(t) for t in alphabet.tuples()]
    predicted = _canonical_order(np.array([first, second], dtype=np.int64))
    holds = len(basis) == 2 and np.array_equal(predicted, basis.matrix)
    return ConjectureTranscript(N, bool(holds), basis.matrix.tolist(), predicted.tolist(),
                                raw_vec, content, status)


# ------------------------------------------------------------------ export


def basis_file_stem(levels, k: int, i: int) -> str:
    alphabet = _as_alphabet(levels)
    d = str(alphabet.d) if alphabet.homogeneous() else "x".join(str(x) for x in alphabet.levels)
    return f"g_{alphabet.N}_{d}_{k}_{i}"


def export_basis(basis: HilbertBasis, directory) -> list[str]:
    """Write ``basis.json`` and one ``g_{N}_{d}_{k}_{i}.oa`` file per generator (1-based)."""
    os.makedirs(directory, exist_ok=True)
    written = []
    path = os.path.join(directory, "basis.json")
    with open(path, "w") as fh:
        json.dump(basis.to_json(), fh, indent=1)
    written.append(path)
    for i, oa in enumerate(basis.arrays, start=1):
        path = os.path.join(directory, basis_file_stem(basis.system.alphabet, basis.system.k, i) + ".oa")
        with open(path, "w") as fh:
            fh.write(format_oa(oa))
        written.append(path)
    return written
