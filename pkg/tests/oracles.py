"""Independent brute-force oracles used to cross-check the library.

Nothing here imports the routines under test: arrays are plain tuples of
runs, balance is checked by counting, and isomorphism is decided by
exhaustive search over column and symbol permutations.
"""
import itertools
from collections import Counter

import numpy as np


def runs_from_counts(counts, levels):
    tuples = list(itertools.product(*(range(d) for d in levels)))
    rows = []
    for t, c in zip(tuples, counts):
        rows.extend([t] * int(c))
    return tuple(sorted(rows))


def counts_from_runs(runs, levels):
    tuples = list(itertools.product(*(range(d) for d in levels)))
    pos = {t: i for i, t in enumerate(tuples)}
    c = [0] * len(tuples)
    for row in runs:
        c[pos[tuple(row)]] += 1
    return tuple(c)


def has_strength(runs, levels, k):
    """Every k-column projection contains each k-tuple equally often."""
    if not runs:
        return True
    for cols in itertools.combinations(range(len(levels)), k):
        size = int(np.prod([levels[c] for c in cols]))
        if len(runs) % size:
            return False
        counts = Counter(tuple(row[c] for c in cols) for row in runs)
        if len(counts) != size or len(set(counts.values())) != 1:
            return False
    return True


def brute_lattice(levels, k, r_max):
    """All nonzero count vectors with total <= r_max defining a strength-k array."""
    tuples = list(itertools.product(*(range(d) for d in levels)))
    out = set()
    for r in range(1, r_max + 1):
        for combo in itertools.combinations_with_replacement(tuples, r):
            if has_strength(combo, levels, k):
                out.add(counts_from_runs(combo, levels))
    return sorted(out, key=lambda c: (sum(c), c))


def brute_hilbert(points):
    """Irreducible elements: points that are not a sum of two nonzero points."""
    pts = set(points)
    irreducible = []
    for p in points:
        reducible = False
        for q in points:
            if q == p or any(a > b for a, b in zip(q, p)):
                continue
            rest = tuple(b - a for a, b in zip(q, p))
            if rest in pts:
                reducible = True
                break
        if not reducible:
            irreducible.append(p)
    return sorted(irreducible, key=lambda c: (sum(c), c))


def iso_key(runs, levels):
    """Least sorted run tuple over all column and per-column symbol permutations."""
    N = len(levels)
    best = None
    for cols in itertools.permutations(range(N)):
        if any(levels[cols[j]] != levels[j] for j in range(N)):
            continue
        for syms in itertools.product(*(itertools.permutations(range(levels[j])) for j in range(N))):
            image = tuple(sorted(tuple(syms[j][row[cols[j]]] for j in range(N)) for row in runs))
            if best is None or image < best:
                best = image
    return best


def stochastic_matrices(d, c):
    """All invertible d x d nonnegative integer matrices with row/column sums c."""
    out = []
    for entries in itertools.product(range(c + 1), repeat=d * d):
        M = np.array(entries).reshape(d, d)
        if (M.sum(axis=0) == c).all() and (M.sum(axis=1) == c).all():
            if abs(round(np.linalg.det(M))) > 0:
                out.append(M)
    return out


def apply_site(counts, levels, site, M):
    T = np.array(counts, dtype=np.int64).reshape(levels)
    T = np.moveaxis(np.tensordot(M, T, axes=([1], [site])), 0, site)
    return tuple(int(x) for x in T.reshape(-1))


def free_operation_classes(levels, k, r_max):
    """Connected components of the lattice points under free operations."""
    points = brute_lattice(levels, k, r_max)
    key = {p: iso_key(runs_from_counts(p, levels), levels) for p in points}
    nodes = sorted(set(key.values()), key=lambda rows: (len(rows), rows))
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    mats = {}
    for p in points:
        r = sum(p)
        for site, d in enumerate(levels):
            for c in range(2, r_max // r + 1):
                if (d, c) not in mats:
                    mats[d, c] = stochastic_matrices(d, c)
                for M in mats[d, c]:
                    q = apply_site(p, levels, site, M)
                    a, b = find(key[p]), find(key[q])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
    comps = {}
    for n in nodes:
        comps.setdefault(find(n), []).append(n)
    return [sorted(v, key=lambda rows: (len(rows), rows)) for v in comps.values()]


# ------------------------------------------------------------- numerics


def partial_trace(psi, N, keep):
    """Float reduced density matrix of a real qubit state vector."""
    psi = np.asarray(psi, dtype=float)
    psi = psi / np.linalg.norm(psi)
    T = psi.reshape((2,) * N)
    rest = [j for j in range(N) if j not in keep]
    M = np.transpose(T, list(keep) + rest).reshape(2 ** len(keep), -1)
    return M @ M.T


def three_tangle_ckw(psi):
    """Coffman-Kundu-Wootters three-tangle from the normalized amplitudes."""
    a = np.asarray(psi, dtype=float)
    a = a / np.linalg.norm(a)
    a = a.reshape(2, 2, 2)
    d1 = a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2 + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2 \
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2 + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    d2 = a[0, 0, 0] * a[1, 1, 1] * (a[0, 1, 1] * a[1, 0, 0] + a[1, 0, 1] * a[0, 1, 0]
                                    + a[1, 1, 0] * a[0, 0, 1]) \
        + a[0, 1, 1] * a[1, 0, 0] * (a[1, 0, 1] * a[0, 1, 0] + a[1, 1, 0] * a[0, 0, 1]) \
        + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1]
    d3 = a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1] \
        + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0]
    return 4 * abs(d1 - 2 * d2 + 4 * d3)


def quartic_discriminant(coeffs):
    """Discriminant a0^6 prod_{i<j} (x_i - x_j)^2 of sum coeffs[i] x^(4-i), from numeric roots."""
    a0 = coeffs[0]
    roots = np.roots(coeffs)
    disc = a0 ** 6
    for i, j in itertools.combinations(range(4), 2):
        disc *= (roots[i] - roots[j]) ** 2
    return float(np.real(disc))
