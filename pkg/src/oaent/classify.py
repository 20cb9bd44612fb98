"""Coarse-grained entanglement classification of array-based states.

Two levels are provided:

* :func:`classify_generators` splits the generators of a cone into
  isomorphism classes (isomorphic arrays give locally equivalent states).
* :func:`classify_full` groups *all* arrays with at most ``r_max`` runs into
  classes of the free operations: isomorphisms plus invertible integer
  stochastic matrices on single sites (and their inverses).  Nodes are
  canonical forms, every transform with magic constant ``c >= 2`` and
  ``c * r <= r_max`` adds an undirected edge, and classes are the connected
  components.

Catalogs are deterministic: classes are sorted by the run count of their
representative, then by canonical form.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from .cone import (Budget, BudgetExceeded, HilbertBasis, build_constraints, hilbert_basis,
                   lattice_point_matrix)
from .iso import array_form, orbit_form, orbit_forms
from .oa import (AlphabetSpec, CoefficientVector, OrthogonalArray, _as_alphabet, format_oa,
                 is_mds, strength)

__all__ = [
    "EntanglementClass",
    "Catalog",
    "classify_generators",
    "classify_full",
    "mds_generator_check",
    "MdsCheck",
    "heterogeneous_catalogs",
    "generic_span_check",
    "invariant_profile",
]

CHECKPOINT_FORMAT = "oaent-classify-checkpoint-1"


def invariant_profile(oa: OrthogonalArray) -> dict:
    """Exact invariant record of the array's state (JSON-ready)."""
    from .quantum.density import single_site_purities
    from .quantum.states import state_from_oa

    s = state_from_oa(oa)
    if oa.levels == (2, 2, 2):
        from .quantum.invariants3 import sudbery_invariants

        return {"kind": "three-qubit", **sudbery_invariants(s).to_json()}
    if oa.levels == (2, 2, 2, 2):
        from .quantum.invariants4 import four_qubit_invariants

        return {"kind": "four-qubit", **four_qubit_invariants(s).to_json()}
    return {"kind": "purities", "single_site": [str(p) for p in single_site_purities(s)]}


def _flags(oa: OrthogonalArray) -> dict:
    from .quantum.density import single_site_purities, uniformity
    from .quantum.states import state_from_oa

    s = state_from_oa(oa)
    t = strength(oa)
    return {
        "strength": t,
        "k_uniform": uniformity(s),
        "is_mds": bool(is_mds(oa)) if t >= 1 and oa.alphabet.homogeneous() else False,
        "separable": all(p == 1 for p in single_site_purities(s)),
    }


@dataclass
class EntanglementClass:
    """A class with its representative (least runs, then least canonical form)."""

    representative: OrthogonalArray
    members: int
    forms: int = 1
    member_indices: list[int] = field(default_factory=list)
    invariants: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.representative.r

    def ket(self) -> str:
        from .quantum.states import format_ket, state_from_oa

        return format_ket(state_from_oa(self.representative))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "representative": format_oa(self.representative, header=False).strip().splitlines(),
            "ket": self.ket(),
            "members": self.members,
            "isomorphism_classes": self.forms,
            "member_indices": [i + 1 for i in self.member_indices],
            "invariants": self.invariants,
            "flags": self.flags,
        }


@dataclass
class Catalog:
    alphabet: AlphabetSpec
    k: int
    kind: str
    classes: list[EntanglementClass]
    provenance: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.classes)

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.levels),
            "k": self.k,
            "kind": self.kind,
            "classes": [c.to_json() for c in self.classes],
            "provenance": self.provenance,
        }

    def table(self) -> str:
        """Plain-text table: class number, runs, members, representative ket, invariants."""
        lines = [f"# {self.kind} classes of OA({self.alphabet.label()}, k={self.k}): {len(self)}"]
        for i, c in enumerate(self.classes, start=1):
            inv = c.invariants
            if inv.get("kind") == "three-qubit":
                vals = " ".join(inv[f"I{j}"] for j in range(2, 7))
            elif inv.get("kind") == "four-qubit":
                vals = " ".join(f"{n}={inv[n]}" for n in ("H", "L", "M", "D_xy"))
            else:
                vals = " ".join(inv.get("single_site", []))
            lines.append(f"{i:4d}  r={c.r:<3d} members={c.members:<6d} {c.ket():<48s} {vals}")
        return "\n".join(lines) + "\n"


def _small_group(levels, limit: int = 50_000) -> bool:
    alphabet = _as_alphabet(levels)
    import math

    total = math.factorial(alphabet.N) * math.prod(math.factorial(d) for d in alphabet.levels)
    return total <= limit


def classify_generators(levels, k: int, budget: Budget | None = None,
                        with_invariants: bool = True, basis: HilbertBasis | None = None) -> Catalog:
    """Isomorphism classes of the generating arrays (colored-graph canonical forms)."""
    alphabet = _as_alphabet(levels)
    basis = basis or hilbert_basis(build_constraints(alphabet, k), budget)
    groups: dict[bytes, list[int]] = {}
    for i, oa in enumerate(basis.arrays):
        groups.setdefault(array_form(oa, budget).data, []).append(i)
    classes = []
    for form, idx in groups.items():
        rep = basis.arrays[idx[0]]
        classes.append(EntanglementClass(
            rep, len(idx), 1, idx,
            invariant_profile(rep) if with_invariants else {},
            _flags(rep) if with_invariants else {},
        ))
    classes.sort(key=lambda c: (c.r, array_form(c.representative).data))
    prov = {"version": __version__, "generators": len(basis), "method": basis.method}
    return Catalog(alphabet, k, "generator", classes, prov)


class _UnionFind:
    def __init__(self, n):
        self.parent = np.arange(n, dtype=np.int64)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return int(root)

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            # smaller index becomes the root: deterministic regardless of order
            self.parent[max(a, b)] = min(a, b)


def _canonical_rows(P: np.ndarray, levels, threads: int) -> np.ndarray:
    if _small_group(levels):
        if threads <= 1 or len(P) < 4096:
            return orbit_forms(P, levels)
        chunks = np.array_split(P, threads)
        with ThreadPoolExecutor(threads) as ex:
            return np.vstack(list(ex.map(lambda c: orbit_forms(c, levels), chunks)))
    # large groups: graph canonical forms, keyed back to a representative row
    out = np.empty_like(P)
    seen: dict[bytes, np.ndarray] = {}
    for i, row in enumerate(P):
        oa = CoefficientVector(levels, row).to_oa()
        key = array_form(oa).data
        out[i] = seen.setdefault(key, row)
    return out


def _apply_site_vec(vec: np.ndarray, levels, site: int, A: np.ndarray) -> np.ndarray:
    T = vec.reshape(levels)
    out = np.moveaxis(np.tensordot(A, T, axes=([1], [site])), 0, site)
    return out.reshape(-1)


def _save_checkpoint(path, meta, nxt, uf):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump({"format": CHECKPOINT_FORMAT, **meta, "next": nxt,
                   "parent": uf.parent.tolist()}, fh)
    os.replace(tmp, path)


def classify_full(levels, k: int, r_max: int, budget: Budget | None = None,
                  threads: int = 1, checkpoint: str | None = None,
                  with_invariants: bool = True) -> Catalog:
    """Free-operation classes of all arrays with at most ``r_max`` runs.

    ``checkpoint`` names a file for periodic progress; an existing compatible
    checkpoint is resumed.  On budget exhaustion :class:`BudgetExceeded`
    carries the number of processed nodes and the current component count.
    """
    from .quantum.transforms import stochastic_matrices

    alphabet = _as_alphabet(levels)
    levels = alphabet.levels
    budget = budget or Budget(max_elements=None)
    budget.restart()
    t0 = time.monotonic()
    system = build_constraints(alphabet, k)
    P = lattice_point_matrix(system, r_max, budget=budget)
    canon = _canonical_rows(P, levels, threads)
    forms, point_of = np.unique(canon, axis=0, return_inverse=True)
    point_of = point_of.reshape(-1)
    runs = forms.sum(axis=1)
    order = np.lexsort(tuple(forms.T[::-1]) + (runs,))  # by r, then lexicographic
    forms, runs = forms[order], runs[order]
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    point_of = rank[point_of]
    index = {f.tobytes(): i for i, f in enumerate(forms)}

    meta = {"levels": list(levels), "k": k, "r_max": r_max, "nodes": len(forms)}
    uf = _UnionFind(len(forms))
    start = 0
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            doc = json.load(fh)
        if doc.get("format") == CHECKPOINT_FORMAT and all(doc.get(k2) == v for k2, v in meta.items()):
            uf.parent = np.array(doc["parent"], dtype=np.int64)
            start = int(doc["next"])

    mats: dict[tuple[int, int], list[np.ndarray]] = {}
    last_save = time.monotonic()
    for i in range(start, len(forms)):
        r = int(runs[i])
        x = forms[i]
        for site, d in enumerate(levels):
            for c in range(2, r_max // r + 1):
                if (d, c) not in mats:
                    mats[d, c] = stochastic_matrices(d, c)
                targets = [_apply_site_vec(x, levels, site, A) for A in mats[d, c]]
                if not targets:
                    continue
                for y in _canonical_rows(np.array(targets), levels, 1):
                    j = index.get(y.tobytes())
                    if j is None:
                        raise AssertionError("free operation left the lattice-point set")
                    uf.union(i, j)
        if i % 64 == 0:
            try:
                budget.check(0, {"processed": i, "nodes": len(forms)})
            except BudgetExceeded:
                if checkpoint:
                    _save_checkpoint(checkpoint, meta, i, uf)
                raise
            if checkpoint and time.monotonic() - last_save > 30:
                _save_checkpoint(checkpoint, meta, i, uf)
                last_save = time.monotonic()
    if checkpoint:
        _save_checkpoint(checkpoint, meta, len(forms), uf)

    roots = np.array([uf.find(i) for i in range(len(forms))])
    npoints = np.bincount(point_of, minlength=len(forms))
    classes = []
    for root in np.unique(roots):
        nodes = np.flatnonzero(roots == root)
        rep_node = int(nodes[0])  # nodes are sorted by (r, canonical form)
        rep_vec = forms[rep_node]
        if _small_group(levels):
            rep_vec = orbit_form(rep_vec, levels, largest=True)
        rep = CoefficientVector(alphabet, rep_vec).to_oa()
        classes.append(EntanglementClass(
            rep, int(npoints[nodes].sum()), len(nodes), [int(n) for n in nodes],
            invariant_profile(rep) if with_invariants else {},
            _flags(rep) if with_invariants else {},
        ))
    classes.sort(key=lambda c: c.member_indices[0])
    prov = {"version": __version__, "r_max": r_max, "lattice_points": int(len(P)),
            "isomorphism_classes": int(len(forms)), "seconds": round(time.monotonic() - t0, 3)}
    return Catalog(alphabet, k, "free-operation", classes, prov)


@dataclass(frozen=True)
class MdsCheck:
    runs: int
    mds_arrays: int
    missing: list
    ok: bool


def mds_generator_check(levels, k: int, budget: Budget | None = None) -> MdsCheck:
    """Every index-one array (an MDS code for ``k < N``) must be a generator.

    Enumerates all arrays of strength ``k`` with ``d**k`` runs, confirms each
    is MDS, and checks that each appears among the generators of the cone.
    """
    alphabet = _as_alphabet(levels)
    if not alphabet.homogeneous():
        raise ValueError("MDS check is defined for uniform alphabets")
    runs = alphabet.d ** k
    system = build_constraints(alphabet, k)
    basis = hilbert_basis(system, budget)
    P = lattice_point_matrix(system, runs, basis, budget)
    P = P[P.sum(axis=1) == runs]
    gens = {g.tobytes() for g in basis.matrix}
    missing = []
    for row in P:
        oa = CoefficientVector(alphabet, row).to_oa()
        if k < alphabet.N and not is_mds(oa):
            raise AssertionError("an index-one array failed the MDS test")
        if row.tobytes() not in gens:
            missing.append(row.tolist())
    return MdsCheck(runs, int(len(P)), missing, not missing)


def heterogeneous_catalogs(budget: Budget | None = None, ks: Sequence[int] = (1, 2)) -> dict:
    """Generator catalogs for the mixed alphabets ``2,2,3`` and ``2,3,3``."""
    out = {}
    for levels in ((2, 2, 3), (2, 3, 3)):
        for k in ks:
            out[levels, k] = classify_generators(levels, k, budget)
    return out


def generic_span_check(indices: Sequence[int] = (2, 3, 5, 8)) -> dict:
    """Express the four products of Bell pairs through strength-one generators.

    The states ``|u0>..|u3>`` (products of two equal Bell states on qubits
    (1,2) and (3,4)) span the generic four-qubit family.  Returns exact
    coefficients with respect to the states of the listed (1-based) generators
    of ``OA(4,2,1)``, or ``None`` for a ``u`` outside their span.
    """
    import sympy

    from .quantum.states import PureState

    basis = hilbert_basis(build_constraints((2, 2, 2, 2), 1))
    G = sympy.Matrix([list(basis.matrix[i - 1]) for i in indices]).T
    bell = {"phi+": {(0, 0): 1, (1, 1): 1}, "phi-": {(0, 0): 1, (1, 1): -1},
            "psi+": {(0, 1): 1, (1, 0): 1}, "psi-": {(0, 1): 1, (1, 0): -1}}
    result = {}
    for j, name in enumerate(("phi+", "phi-", "psi+", "psi-")):
        amps = {}
        for a, x in bell[name].items():
            for b, y in bell[name].items():
                amps[a + b] = x * y
        u = sympy.Matrix(PureState.from_dict((2,) * 4, amps).amplitudes)
        try:
            sol, params = G.gauss_jordan_solve(u)
        except ValueError:
            result[f"u{j}"] = None
            continue
        result[f"u{j}"] = [str(Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])))
                           for v in sol.subs({p: 0 for p in params})]
    return result
