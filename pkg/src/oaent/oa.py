"""Orthogonal arrays over homogeneous or mixed-radix alphabets.

An orthogonal array OA(r, N, d, k) is a multiset of ``r`` runs (rows) of
length ``N``; column ``j`` takes symbols in ``range(levels[j])``.  Row order
never matters, so runs are stored as a sorted tuple and equality is multiset
equality.  The equivalent lattice-point view is the :class:`CoefficientVector`
holding the multiplicity of every possible run.

Quality measures implemented here are purely combinatorial: strength, index,
J-characteristics, generalized resolution, irredundancy and the MDS test.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import sympy

__all__ = [
    "AlphabetSpec",
    "OrthogonalArray",
    "CoefficientVector",
    "JValue",
    "GrReport",
    "MdsReport",
    "strength",
    "index",
    "j_characteristic",
    "generalized_resolution",
    "is_irredundant",
    "is_mds",
    "compose",
    "column_project",
    "full_factorial",
    "parse_oa",
    "format_oa",
    "read_oa",
    "write_oa",
]


@dataclass(frozen=True)
class AlphabetSpec:
    """Per-column alphabet sizes ``levels = (d_1, ..., d_N)``."""

    levels: tuple[int, ...]

    def __init__(self, levels: Iterable[int]):
        levels = tuple(int(x) for x in levels)
        if len(levels) < 1:
            raise ValueError("an alphabet needs at least one column")
        if any(d < 2 for d in levels):
            raise ValueError(f"alphabet sizes must be >= 2, got {levels}")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def uniform(cls, N: int, d: int) -> "AlphabetSpec":
        return cls((d,) * N)

    @property
    def N(self) -> int:
        return len(self.levels)

    @property
    def size(self) -> int:
        """Number of distinct runs, i.e. the full-factorial run count."""
        return math.prod(self.levels)

    def homogeneous(self) -> bool:
        return len(set(self.levels)) == 1

    @property
    def d(self) -> int:
        if not self.homogeneous():
            raise ValueError(f"mixed-radix alphabet {self.levels} has no single d")
        return self.levels[0]

    def tuples(self) -> list[tuple[int, ...]]:
        """All runs in mixed-radix (lexicographic) order."""
        return list(itertools.product(*(range(d) for d in self.levels)))

    def ravel(self, run: Sequence[int]) -> int:
        """Position of ``run`` in :meth:`tuples` order."""
        pos = 0
        for s, d in zip(run, self.levels):
            pos = pos * d + int(s)
        return pos

    def unravel(self, pos: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.levels):
            pos, s = divmod(pos, d)
            out.append(s)
        return tuple(reversed(out))

    def label(self) -> str:
        return ",".join(str(d) for d in self.levels)

    def __str__(self):
        return f"AlphabetSpec({self.label()})"


def _as_alphabet(levels) -> AlphabetSpec:
    return levels if isinstance(levels, AlphabetSpec) else AlphabetSpec(levels)


@dataclass(frozen=True)
class OrthogonalArray:
    """A multiset of runs over an alphabet; rows are kept sorted.

    The run-count bound ``r <= prod(levels)`` is not enforced here because
    free operations legitimately multiply run counts; :func:`compose` checks it.
    """

    alphabet: AlphabetSpec
    runs: tuple[tuple[int, ...], ...]

    def __init__(self, runs: Iterable[Sequence[int]], levels=None):
        runs = [tuple(int(s) for s in row) for row in runs]
        if levels is None:
            if not runs:
                raise ValueError("cannot infer the alphabet of an empty array")
            N = len(runs[0])
            d = max(2, max(max(row) for row in runs) + 1)
            levels = (d,) * N
        alphabet = _as_alphabet(levels)
        for row in runs:
            if len(row) != alphabet.N:
                raise ValueError(f"run {row} has {len(row)} symbols, expected {alphabet.N}")
            for s, d in zip(row, alphabet.levels):
                if not 0 <= s < d:
                    raise ValueError(f"symbol {s} out of range in run {row} (levels {alphabet.levels})")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "runs", tuple(sorted(runs)))

    @classmethod
    def from_counts(cls, counts: Sequence[int], levels) -> "OrthogonalArray":
        return CoefficientVector(levels, counts).to_oa()

    @classmethod
    def from_strings(cls, rows: Iterable[str], levels=None) -> "OrthogonalArray":
        """Build from compact rows such as ``"0110"`` (single-digit symbols)."""
        return cls([[int(ch) for ch in row] for row in rows], levels)

    @property
    def r(self) -> int:
        return len(self.runs)

    @property
    def N(self) -> int:
        return self.alphabet.N

    @property
    def levels(self) -> tuple[int, ...]:
        return self.alphabet.levels

    def to_numpy(self) -> np.ndarray:
        return np.array(self.runs, dtype=np.int64).reshape(self.r, self.N)

    def counts(self) -> "CoefficientVector":
        c = [0] * self.alphabet.size
        for row in self.runs:
            c[self.alphabet.ravel(row)] += 1
        return CoefficientVector(self.alphabet, c)

    def __len__(self):
        return self.r

    def __str__(self):
        return format_oa(self, header=False).rstrip()


@dataclass(frozen=True)
class CoefficientVector:
    """Dense vector of run multiplicities ``c[i_1...i_N]`` in mixed-radix order."""

    alphabet: AlphabetSpec
    counts: tuple[int, ...]

    def __init__(self, levels, counts: Sequence[int]):
        alphabet = _as_alphabet(levels)
        counts = tuple(int(x) for x in counts)
        if len(counts) != alphabet.size:
            raise ValueError(f"expected {alphabet.size} coefficients, got {len(counts)}")
        if any(x < 0 for x in counts):
            raise ValueError("coefficients must be nonnegative")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "counts", counts)

    @property
    def r(self) -> int:
        return sum(self.counts)

    def __getitem__(self, run: Sequence[int]) -> int:
        return self.counts[self.alphabet.ravel(run)]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {self.alphabet.unravel(i): c for i, c in enumerate(self.counts) if c}

    def to_numpy(self) -> np.ndarray:
        return np.array(self.counts, dtype=np.int64)

    def to_oa(self) -> OrthogonalArray:
        rows = []
        for i, c in enumerate(self.counts):
            rows.extend([self.alphabet.unravel(i)] * c)
        return OrthogonalArray(rows, self.alphabet)

    def __add__(self, other: "CoefficientVector") -> "CoefficientVector":
        if other.alphabet != self.alphabet:
            raise ValueError("alphabets differ")
        return CoefficientVector(self.alphabet, [a + b for a, b in zip(self.counts, other.counts)])


def full_factorial(levels) -> OrthogonalArray:
    alphabet = _as_alphabet(levels)
    return OrthogonalArray(alphabet.tuples(), alphabet)


# ---------------------------------------------------------------- strength


def _projection_counts(arr: np.ndarray, levels: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    """Histogram of the projected runs over all tuples of the selected columns."""
    code = np.zeros(len(arr), dtype=np.int64)
    size = 1
    for c in cols:
        code = code * levels[c] + arr[:, c]
        size *= levels[c]
    return np.bincount(code, minlength=size)


def _balanced(arr, levels, cols) -> bool:
    h = _projection_counts(arr, levels, cols)
    return bool((h == h[0]).all())


def strength(oa: OrthogonalArray) -> int:
    """Largest k such that every k-column projection is a multiple of the full factorial."""
    if oa.r == 0:
        raise ValueError("undefined strength: the array is empty")
    arr = oa.to_numpy()
    k = 0
    for t in range(1, oa.N + 1):
        if all(_balanced(arr, oa.levels, cols) for cols in itertools.combinations(range(oa.N), t)):
            k = t
        else:
            break
    return k


def index(oa: OrthogonalArray, k: int) -> int:
    """Common tuple multiplicity ``lambda = r / prod_{j in I} d_j`` over k-column sets I."""
    if k < 0 or k > strength(oa):
        raise ValueError(f"k={k} exceeds the strength of the array")
    values = {oa.r // math.prod(oa.levels[c] for c in cols)
              for cols in itertools.combinations(range(oa.N), k)}
    if len(values) != 1:
        raise ValueError(f"index depends on the column set for mixed radix {oa.levels}: {sorted(values)}")
    return values.pop()


def column_project(oa: OrthogonalArray, columns: Sequence[int]) -> OrthogonalArray:
    """Restrict every run to ``columns`` (in the given order), keeping multiplicities."""
    columns = [int(c) for c in columns]
    if len(set(columns)) != len(columns) or any(not 0 <= c < oa.N for c in columns):
        raise ValueError(f"invalid column selection {columns}")
    levels = [oa.levels[c] for c in columns]
    return OrthogonalArray([[row[c] for c in columns] for row in oa.runs], levels)


def is_irredundant(oa: OrthogonalArray, k: int) -> bool:
    """True iff every projection onto N-k columns has pairwise distinct rows."""
    if not 0 <= k <= oa.N:
        raise ValueError(f"k={k} out of range")
    for cols in itertools.combinations(range(oa.N), oa.N - k):
        seen = set()
        for row in oa.runs:
            key = tuple(row[c] for c in cols)
            if key in seen:
                return False
            seen.add(key)
    return True


@dataclass(frozen=True)
class MdsReport:
    is_mds: bool
    k: int
    distance: int | None

    def __bool__(self):
        return self.is_mds


def _min_distance(oa: OrthogonalArray) -> int | None:
    if oa.r < 2:
        return None
    arr = oa.to_numpy()
    best = oa.N
    for i in range(oa.r - 1):
        dist = (arr[i + 1:] != arr[i]).sum(axis=1)
        best = min(best, int(dist.min()))
    return best


def is_mds(oa: OrthogonalArray) -> MdsReport:
    """Index-unity array of strength ``k < N`` whose rows form an MDS code.

    Index unity already forces every pair of rows to differ in at least
    ``N - k + 1`` places (any ``k`` coordinates determine a row), so the
    Singleton bound is attained; irredundancy in the ``N - k`` column sense
    additionally holds exactly when ``k <= N / 2`` and is not required here.
    By convention the full factorial (k = N) is not reported as MDS.
    """
    d = oa.alphabet.d
    k = strength(oa)
    dist = _min_distance(oa)
    ok = k < oa.N and oa.r == d ** k and dist == oa.N - k + 1
    return MdsReport(bool(ok), k, dist)


def compose(a: OrthogonalArray, b: OrthogonalArray, *more: OrthogonalArray) -> OrthogonalArray:
    """Multiset union of runs (the partial composition of arrays)."""
    arrays = (a, b) + more
    alphabet = a.alphabet
    if any(x.alphabet != alphabet for x in arrays):
        raise ValueError("cannot compose arrays over different alphabets")
    total = sum(x.r for x in arrays)
    if total > alphabet.size:
        raise ValueError(f"composition exceeds full factorial size ({total} > {alphabet.size})")
    return OrthogonalArray([row for x in arrays for row in x.runs], alphabet)


# ------------------------------------------------------- J-characteristics


def _is_rational_cyclotomic(L: int) -> bool:
    # cos(2 pi m / L) is rational for every m exactly when L divides 4 or 6
    return L in (1, 2, 3, 4, 6)


_COS_RATIONAL = {
    1: [Fraction(1)],
    2: [Fraction(1), Fraction(-1)],
    3: [Fraction(1), Fraction(-1, 2), Fraction(-1, 2)],
    4: [Fraction(1), Fraction(0), Fraction(-1), Fraction(0)],
    6: [Fraction(1), Fraction(1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-1, 2), Fraction(1, 2)],
}


@dataclass(frozen=True)
class JValue:
    """A J-characteristic ``|sum_i prod_j omega^{a_ij}|`` kept exact through its square.

    ``sq`` is an ``int`` whenever the roots of unity involved have rational
    real parts (orders 1, 2, 3, 4, 6); otherwise a sympy algebraic number.
    """

    sq: object

    @property
    def exact(self):
        if isinstance(self.sq, int):
            root = math.isqrt(self.sq)
            return root if root * root == self.sq else sympy.sqrt(self.sq)
        return sympy.sqrt(self.sq)

    @property
    def value(self) -> float:
        return math.sqrt(float(self.sq))

    def is_zero(self) -> bool:
        if isinstance(self.sq, int):
            return self.sq == 0
        return sympy.simplify(self.sq) == 0

    def __float__(self):
        return self.value


def _phase_histogram(oa: OrthogonalArray, cols: Sequence[int], perms=None) -> tuple[np.ndarray, int]:
    levels = oa.levels
    L = math.lcm(*(levels[c] for c in cols))
    arr = oa.to_numpy()
    phase = np.zeros(oa.r, dtype=np.int64)
    for c in cols:
        sym = arr[:, c] if perms is None else np.asarray(perms[c])[arr[:, c]]
        phase += sym * (L // levels[c])
    return np.bincount(phase % L, minlength=L), L


def _modulus_sq(hist: np.ndarray, L: int):
    """|sum_m hist[m] zeta_L^m|^2 as an exact number."""
    hist = [int(x) for x in hist]
    A = [sum(hist[a] * hist[(a - delta) % L] for a in range(L)) for delta in range(L)]
    if _is_rational_cyclotomic(L):
        val = sum(Fraction(a) * c for a, c in zip(A, _COS_RATIONAL[L]))
        assert val.denominator == 1
        return int(val)
    expr = sum(a * sympy.cos(2 * sympy.pi * delta / L) for delta, a in enumerate(A) if a)
    return sympy.nsimplify(sympy.simplify(expr))


def j_characteristic(oa: OrthogonalArray, columns: Sequence[int], perms=None) -> JValue:
    """J-characteristic of the columns ``I``: modulus of the root-of-unity sum.

    ``perms`` optionally relabels symbols per column before evaluation
    (``perms[c][s]`` is the new symbol for ``s`` in column ``c``).
    """
    columns = [int(c) for c in columns]
    if not columns or len(set(columns)) != len(columns):
        raise ValueError("columns must be a nonempty set of distinct indices")
    if any(not 0 <= c < oa.N for c in columns):
        raise ValueError(f"column index out of range in {columns}")
    hist, L = _phase_histogram(oa, columns, perms)
    return JValue(_modulus_sq(hist, L))


UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class GrReport:
    """Generalized resolution ``GR = t + 1 - J_t^max / r``.

    ``t`` is ``None`` and ``gr`` is the string ``"unbounded"`` when every
    J-characteristic vanishes (e.g. full factorials).
    """

    t: int | None
    j_max: object = None
    gr: object = UNBOUNDED
    perms: tuple | None = field(default=None, compare=False)

    @property
    def unbounded(self) -> bool:
        return self.t is None

    def __float__(self):
        if self.unbounded:
            return math.inf
        return float(self.gr)

    def __str__(self):
        return "unbounded" if self.unbounded else str(self.gr)


def _first_nonzero_order(oa, perms):
    """Smallest t with some nonzero J_t and the largest |J_t|^2 at that order."""
    for t in range(1, oa.N + 1):
        best = None
        for cols in itertools.combinations(range(oa.N), t):
            sq = j_characteristic(oa, cols, perms).sq
            if best is None or _exact_gt(sq, best):
                best = sq
        if not _exact_is_zero(best):
            return t, best
    return None, 0


def _exact_is_zero(x) -> bool:
    return x == 0 if isinstance(x, int) else sympy.simplify(x) == 0


def _exact_gt(a, b) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return a > b
    return bool(sympy.simplify(sympy.nsimplify(a) - sympy.nsimplify(b)) > 0)


MAX_RELABELINGS = 1_000_000


def _symbol_relabelings(levels):
    """Per-column symbol permutations modulo cyclic shifts (which only rotate phases)."""
    total = math.prod(math.factorial(d - 1) for d in levels)
    if total > MAX_RELABELINGS:
        raise ValueError(f"generalized resolution would scan more than {MAX_RELABELINGS}"
                         " symbol relabelings; alphabet too large")
    per_col = []
    for d in levels:
        perms = [p for p in itertools.permutations(range(d)) if p[0] == 0]
        per_col.append(perms)
    return itertools.product(*per_col)


def generalized_resolution(oa: OrthogonalArray) -> GrReport:
    """Generalized resolution, maximized over per-column symbol relabelings.

    Row and column permutations cannot change the value; symbol relabelings
    can only when some column has more than two symbols.  Cyclic shifts of a
    column multiply every row term by the same phase, so only relabelings
    fixing symbol 0 are enumerated.
    """
    if oa.r == 0:
        raise ValueError("generalized resolution of an empty array")
    best = None
    for perms in _symbol_relabelings(oa.levels):
        perms_arg = None if all(list(p) == sorted(p) for p in perms) else perms
        t, sq = _first_nonzero_order(oa, perms_arg)
        if t is None:
            return GrReport(None, perms=perms)
        if best is None or t > best[0] or (t == best[0] and _exact_gt(best[1], sq)):
            best = (t, sq, perms)
    t, sq, perms = best
    jmax = JValue(sq).exact
    gr = sympy.nsimplify(t + 1 - sympy.sympify(jmax) / oa.r)
    return GrReport(t, jmax, gr, perms)


# ------------------------------------------------------------- text format


def parse_oa(text: str, levels=None) -> OrthogonalArray:
    """Parse the whitespace-separated run format with optional ``# levels:`` header."""
    header_levels = None
    rows = []
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            body = s[1:].strip()
            if body.lower().startswith("levels:"):
                header_levels = tuple(int(x) for x in body.split(":", 1)[1].split())
            continue
        rows.append([int(x) for x in s.split()])
    lv = levels if levels is not None else header_levels
    if lv is None and not rows:
        raise ValueError("empty array without a levels header")
    return OrthogonalArray(rows, lv)


def format_oa(oa: OrthogonalArray, header: bool = True) -> str:
    lines = []
    if header:
        lines.append("# levels: " + " ".join(str(d) for d in oa.levels))
    lines.extend(" ".join(str(s) for s in row) for row in oa.runs)
    return "\n".join(lines) + "\n"


def read_oa(path, levels=None) -> OrthogonalArray:
    if str(path) == "-":
        import sys
        return parse_oa(sys.stdin.read(), levels)
    with open(path) as fh:
        return parse_oa(fh.read(), levels)


def write_oa(oa: OrthogonalArray, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_oa(oa))
