"""Array isomorphism: colored-graph canonical forms, witnesses and filters.

Two arrays are isomorphic when one becomes the other by permuting rows,
permuting columns of equal alphabet size, and relabeling symbols inside
columns.  An array is encoded as a vertex-colored graph

* one vertex per distinct run, colored by its multiplicity,
* one vertex per (column, symbol) pair,
* one vertex per column, colored by the column's alphabet size,

with run ``u`` joined to ``(j, u_j)`` for every ``j`` and each ``(j, s)``
joined to column ``j``.  Color-preserving graph isomorphisms are exactly
array isomorphisms, so arrays are isomorphic iff the canonical forms of
their graphs coincide.

Canonical labeling uses color refinement plus individualization with
refinement-trace pruning and automorphism pruning.  :func:`orbit_form` is an
independent brute-force canonical form (minimum coefficient vector over the
whole permutation group) used as a cross-check and for bulk work on small
alphabets.

The filters are cheap necessary conditions taken from entanglement theory:
isomorphic arrays have equal multisets of single-site purities, single-site
reductions related by permutation matrices, and equal local invariants.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cone import Budget
from .oa import AlphabetSpec, OrthogonalArray, _as_alphabet

__all__ = [
    "ColoredGraph",
    "CanonicalForm",
    "Witness",
    "IsoResult",
    "encode_graph",
    "canonical_form",
    "array_form",
    "are_isomorphic",
    "isomorphism",
    "apply_witness",
    "purity_filter",
    "reduction_filter",
    "invariant_filter",
    "orbit_form",
    "orbit_forms",
    "group_size",
    "scramble",
    "DISTINGUISHED",
    "INCONCLUSIVE",
]

DISTINGUISHED = "distinguished"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected vertex-colored graph.

    ``colors[v]`` is a sortable key; ``adjacency[v]`` is a sorted tuple of
    neighbors.  ``meaning[v]`` records what each vertex stands for:
    ``("run", run)``, ``("level", j, s)`` or ``("column", j)``.
    """

    colors: tuple
    adjacency: tuple[tuple[int, ...], ...]
    meaning: tuple

    @property
    def n(self) -> int:
        return len(self.colors)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]


@dataclass(frozen=True)
class CanonicalForm:
    """Byte encoding of the canonically relabeled graph."""

    data: bytes

    def __lt__(self, other):
        return self.data < other.data

    def hex(self) -> str:
        return self.data.hex()


def encode_graph(oa: OrthogonalArray) -> ColoredGraph:
    if oa.r == 0:
        raise ValueError("cannot encode the empty array")
    levels = oa.levels
    counts = Counter(oa.runs)
    runs = sorted(counts)
    colors, meaning = [], []
    for u in runs:
        colors.append((0, counts[u]))
        meaning.append(("run", u))
    level_id = {}
    for j, d in enumerate(levels):
        for s in range(d):
            level_id[j, s] = len(colors)
            colors.append((1, d))
            meaning.append(("level", j, s))
    col_id = {}
    for j, d in enumerate(levels):
        col_id[j] = len(colors)
        colors.append((2, d))
        meaning.append(("column", j))
    adj = [set() for _ in colors]
    for i, u in enumerate(runs):
        for j, s in enumerate(u):
            adj[i].add(level_id[j, s])
            adj[level_id[j, s]].add(i)
    for (j, s), v in level_id.items():
        adj[v].add(col_id[j])
        adj[col_id[j]].add(v)
    return ColoredGraph(tuple(colors), tuple(tuple(sorted(a)) for a in adj), tuple(meaning))


# ---------------------------------------------------------------- refinement

def _rank(keys) -> np.ndarray:
    """Dense ranks of sortable keys."""
    order = sorted(set(keys))
    pos = {k: i for i, k in enumerate(order)}
    return np.array([pos[k] for k in keys], dtype=np.int64)


def _refine(A: np.ndarray, col: np.ndarray) -> tuple[np.ndarray, bytes]:
    """Coarsest equitable refinement of an ordered coloring, with its trace.

    New colors are ordered by (old color, neighbor-color counts), which keeps
    the refinement isomorphism-invariant.  The trace is the quotient matrix
    of the final partition.
    """
    while True:
        k = int(col.max()) + 1
        onehot = np.zeros((len(col), k), dtype=np.int64)
        onehot[np.arange(len(col)), col] = 1
        cnt = A @ onehot
        sig = np.concatenate([col[:, None], cnt], axis=1)
        new = _rank(list(map(tuple, sig.tolist())))
        if new.max() == col.max():
            col = new
            break
        col = new
    k = int(col.max()) + 1
    first = np.zeros(k, dtype=np.int64)
    first[col] = np.arange(len(col))  # any representative works on an equitable partition
    quotient = cnt[first]
    sizes = np.bincount(col, minlength=k)
    trace = np.concatenate([sizes, quotient.reshape(-1)]).astype(np.int64).tobytes()
    return col, trace


def _individualize(col: np.ndarray, v: int) -> np.ndarray:
    new = 2 * col + 1
    new[v] -= 1  # v precedes the rest of its cell
    return _rank(new.tolist())


def _leaf_code(A: np.ndarray, base: np.ndarray, lab: np.ndarray) -> bytes:
    """Adjacency and base colors after relabeling ``v -> lab[v]``."""
    n = len(lab)
    inv = np.empty(n, dtype=np.int64)
    inv[lab] = np.arange(n)
    B = A[np.ix_(inv, inv)]
    return base[inv].astype(np.int64).tobytes() + np.packbits(B.astype(np.uint8)).tobytes()


class _Orbits:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def _canonical_labeling(g: ColoredGraph, budget: Budget | None = None):
    n = g.n
    A = np.zeros((n, n), dtype=np.int64)
    for u, nb in enumerate(g.adjacency):
        A[u, list(nb)] = 1
    base = _rank(list(g.colors))
    # ranks forget the color values themselves (e.g. run multiplicities)
    palette = repr(sorted(set(g.colors))).encode()
    col, trace = _refine(A, base.copy())
    best = {"key": None, "lab": None}
    autos: list[np.ndarray] = []

    def search(col, key, prefix):
        if budget is not None:
            budget.check()
        if best["key"] is not None:
            ref = best["key"][:len(key)]
            if key > ref:
                return
        sizes = np.bincount(col)
        if sizes.max() == 1:
            leaf = key + [(1, palette + _leaf_code(A, base, col))]
            if best["key"] is None or leaf < best["key"]:
                best["key"], best["lab"] = leaf, col.copy()
            elif leaf == best["key"]:
                # col and best lab give the same graph: an automorphism
                inv = np.empty(n, dtype=np.int64)
                inv[best["lab"]] = np.arange(n)
                autos.append(inv[col])
            return
        # first smallest non-singleton cell
        cand = [c for c in range(len(sizes)) if sizes[c] > 1]
        target = min(cand, key=lambda c: (sizes[c], c))
        cell = np.flatnonzero(col == target)
        done: list[int] = []
        for v in cell:
            v = int(v)
            if done:
                orb = _Orbits(n)
                for gamma in autos:
                    if all(gamma[p] == p for p in prefix):
                        for x in range(n):
                            orb.union(x, int(gamma[x]))
                if any(orb.find(v) == orb.find(w) for w in done):
                    continue
            done.append(v)
            child, tr = _refine(A, _individualize(col, v))
            search(child, key + [(0, tr)], prefix + [v])

    search(col, [(0, trace)], [])
    return best["lab"], best["key"]


def canonical_form(g: ColoredGraph, budget: Budget | None = None) -> CanonicalForm:
    lab, key = _canonical_labeling(g, budget)
    return CanonicalForm(key[-1][1])


def array_form(oa: OrthogonalArray, budget: Budget | None = None) -> CanonicalForm:
    """Canonical form of an array (via its colored graph)."""
    return canonical_form(encode_graph(oa), budget)


# ---------------------------------------------------------------- witnesses

@dataclass(frozen=True)
class Witness:
    """Column ``j`` of ``a`` becomes column ``columns[j]`` of ``b`` with symbols
    relabeled by ``symbols[j]``; rows then agree as multisets."""

    columns: tuple[int, ...]
    symbols: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"columns": list(self.columns), "symbols": [list(s) for s in self.symbols]}


def apply_witness(oa: OrthogonalArray, w: Witness) -> OrthogonalArray:
    N = oa.N
    levels = [0] * N
    for j, t in enumerate(w.columns):
        levels[t] = oa.levels[j]
    runs = []
    for u in oa.runs:
        v = [0] * N
        for j, t in enumerate(w.columns):
            v[t] = w.symbols[j][u[j]]
        runs.append(v)
    return OrthogonalArray(runs, levels)


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Witness | None = None
    decided_by: str = "canonical"

    def __bool__(self):
        return self.isomorphic

    def to_json(self) -> dict:
        return {"isomorphic": self.isomorphic, "decided_by": self.decided_by,
                "witness": None if self.witness is None else self.witness.to_json()}


def _witness(ga: ColoredGraph, la: np.ndarray, gb: ColoredGraph, lb: np.ndarray) -> Witness:
    inv_b = np.empty(len(lb), dtype=np.int64)
    inv_b[lb] = np.arange(len(lb))
    phi = inv_b[la]  # vertex of a -> vertex of b
    cols, syms = {}, {}
    for v, m in enumerate(ga.meaning):
        mb = gb.meaning[int(phi[v])]
        if m[0] == "column":
            cols[m[1]] = mb[1]
        elif m[0] == "level":
            syms.setdefault(m[1], {})[m[2]] = mb[2]
    N = len(cols)
    return Witness(tuple(cols[j] for j in range(N)),
                   tuple(tuple(syms[j][s] for s in range(len(syms[j]))) for j in range(N)))


# ---------------------------------------------------------------- filters

def _states(a, b):
    from .quantum.states import state_from_oa

    return state_from_oa(a), state_from_oa(b)


def purity_filter(a: OrthogonalArray, b: OrthogonalArray) -> str:
    """Isomorphic arrays have equal multisets of single-site purities."""
    from .quantum.density import single_site_purities

    sa, sb = _states(a, b)
    ka = Counter(zip(a.levels, single_site_purities(sa)))
    kb = Counter(zip(b.levels, single_site_purities(sb)))
    return INCONCLUSIVE if ka == kb else DISTINGUISHED


def _perm_canonical(rho) -> tuple:
    """Least entry tuple of ``P rho P^T`` over permutation matrices ``P``."""
    d = rho.dim
    flat = [int(x) for x in rho.numer.reshape(-1)]
    best = None
    for p in itertools.permutations(range(d)):
        t = tuple(flat[p[i] * d + p[j]] for i in range(d) for j in range(d))
        if best is None or t < best:
            best = t
    g = math.gcd(rho.denom, *best)
    return (d, tuple(x // g for x in best), rho.denom // g)


def reduction_filter(a: OrthogonalArray, b: OrthogonalArray) -> str:
    """Single-site reductions must match under a site bijection and permutation matrices."""
    from .quantum.density import reduced_density

    sa, sb = _states(a, b)
    ka = Counter(_perm_canonical(reduced_density(sa, [j])) for j in range(sa.N))
    kb = Counter(_perm_canonical(reduced_density(sb, [j])) for j in range(sb.N))
    return INCONCLUSIVE if ka == kb else DISTINGUISHED


def _invariant_key(oa: OrthogonalArray):
    from .quantum.density import reduced_density, purity
    from .quantum.states import state_from_oa

    s = state_from_oa(oa)
    if oa.levels == (2, 2, 2):
        from .quantum.invariants3 import sudbery_invariants

        rec = sudbery_invariants(s)
        return ("I", tuple(sorted((rec.I2, rec.I3, rec.I4))), rec.I5, rec.I6)
    if oa.levels == (2, 2, 2, 2):
        from .quantum.invariants4 import four_qubit_invariants

        rec = four_qubit_invariants(s)
        return ("LT", rec.H ** 2, tuple(sorted((rec.L ** 2, rec.M ** 2, rec.N ** 2))),
                rec.S, rec.T, rec.Delta)
    key = Counter()
    for size in range(1, s.N):
        for part in itertools.combinations(range(s.N), size):
            key[(tuple(sorted(oa.levels[j] for j in part)), purity(reduced_density(s, part)))] += 1
    return ("purities", tuple(sorted(key.items())))


def invariant_filter(a: OrthogonalArray, b: OrthogonalArray) -> str:
    """Local invariants (three/four-qubit records, else all reduction purities)."""
    return INCONCLUSIVE if _invariant_key(a) == _invariant_key(b) else DISTINGUISHED


FILTERS = (("purity", purity_filter), ("reduction", reduction_filter), ("invariants", invariant_filter))


def isomorphism(a: OrthogonalArray, b: OrthogonalArray, use_filters: bool = True,
                budget: Budget | None = None) -> IsoResult:
    """Decide isomorphism; a positive answer carries a verified witness."""
    if sorted(a.levels) != sorted(b.levels):
        raise ValueError("arrays have different alphabet multisets")
    if a.r != b.r:
        return IsoResult(False, None, "runs")
    if a.r == 0:
        return IsoResult(True, Witness(tuple(range(a.N)), tuple(tuple(range(d)) for d in a.levels)), "empty")
    if use_filters:
        for name, f in FILTERS:
            if f(a, b) == DISTINGUISHED:
                return IsoResult(False, None, name)
    ga, gb = encode_graph(a), encode_graph(b)
    la, ka = _canonical_labeling(ga, budget)
    lb, kb = _canonical_labeling(gb, budget)
    if ka[-1] != kb[-1]:
        return IsoResult(False, None, "canonical")
    w = _witness(ga, la, gb, lb)
    if apply_witness(a, w).runs != b.runs:
        raise AssertionError("canonical forms agree but the witness does not verify")
    return IsoResult(True, w, "canonical")


def are_isomorphic(a: OrthogonalArray, b: OrthogonalArray) -> bool:
    return isomorphism(a, b).isomorphic


# ---------------------------------------------------------------- orbit forms

@lru_cache(maxsize=None)
def _group_indices(levels: tuple[int, ...]) -> np.ndarray:
    """Index maps of all column/symbol permutations acting on coefficient vectors.

    Row ``g`` satisfies ``(g . c)[x] = c[G[g, x]]``.
    """
    alpha = AlphabetSpec(levels)
    tuples = np.array(alpha.tuples(), dtype=np.int64).reshape(alpha.size, alpha.N)
    radix = np.array([math.prod(levels[j + 1:]) for j in range(alpha.N)], dtype=np.int64)
    col_perms = [p for p in itertools.permutations(range(alpha.N))
                 if all(levels[p[j]] == levels[j] for j in range(alpha.N))]
    sym_perms = list(itertools.product(*[list(itertools.permutations(range(d))) for d in levels]))
    out = []
    for p in col_perms:
        for sp in sym_perms:
            # new run v comes from old run x with x[p[j]] = sp[j][v[j]]
            x = np.empty_like(tuples)
            for j in range(alpha.N):
                x[:, p[j]] = np.array(sp[j], dtype=np.int64)[tuples[:, j]]
            out.append(x @ radix)
    return np.unique(np.array(out, dtype=np.int64), axis=0)


def _lexmin_rows(M: np.ndarray) -> np.ndarray:
    order = np.lexsort(M.T[::-1])
    return M[order[0]]


def orbit_form(oa_or_counts, levels=None, largest: bool = False) -> tuple[int, ...]:
    """Lexicographically least coefficient vector over the isomorphism group.

    ``largest=True`` returns the greatest one instead (a display-friendly
    representative that puts weight on the all-zero run).

    Brute force over ``N!`` column and ``prod d_j!`` symbol permutations, so
    intended for small alphabets; agrees with :func:`array_form` on deciding
    isomorphism.
    """
    if isinstance(oa_or_counts, OrthogonalArray):
        levels, c = oa_or_counts.levels, np.array(oa_or_counts.counts().counts)
    else:
        levels, c = _as_alphabet(levels).levels, np.asarray(oa_or_counts)
    G = _group_indices(tuple(levels))
    if largest:
        return tuple(-int(x) for x in _lexmin_rows(-c[G]))
    return tuple(int(x) for x in _lexmin_rows(c[G]))


def orbit_forms(C: np.ndarray, levels, chunk_elements: int = 4_000_000) -> np.ndarray:
    """Row-wise :func:`orbit_form` for a matrix of coefficient vectors (vectorized)."""
    G = _group_indices(_as_alphabet(levels).levels)
    C = np.asarray(C, dtype=np.int64)
    out = np.empty_like(C)
    step = max(1, chunk_elements // G.size)
    for lo in range(0, len(C), step):
        X = C[lo:lo + step][:, G]  # (batch, |group|, n)
        alive = np.ones(X.shape[:2], dtype=bool)
        big = np.iinfo(np.int64).max
        for p in range(X.shape[2]):
            vals = np.where(alive, X[:, :, p], big)
            m = vals.min(axis=1)
            out[lo:lo + step, p] = m
            alive &= vals == m[:, None]
    return out


def group_size(levels) -> int:
    """Number of distinct column/symbol relabelings acting on coefficient vectors."""
    return len(_group_indices(_as_alphabet(levels).levels))


def scramble(oa: OrthogonalArray, rng: np.random.Generator) -> OrthogonalArray:
    """Random row, column (within equal alphabet sizes) and symbol permutation."""
    levels = oa.levels
    N = oa.N
    cols = list(range(N))
    for d in set(levels):
        idx = [j for j in range(N) if levels[j] == d]
        perm = list(rng.permutation(idx))
        for j, t in zip(idx, perm):
            cols[j] = int(t)
    syms = tuple(tuple(int(x) for x in rng.permutation(d)) for d in levels)
    out = apply_witness(oa, Witness(tuple(cols), syms))
    rows = [out.runs[i] for i in rng.permutation(out.r)]
    return OrthogonalArray(rows, out.levels)
