import itertools

import numpy as np
import pytest
import sympy

from oaent import (
    AlphabetSpec,
    CoefficientVector,
    OrthogonalArray,
    column_project,
    compose,
    format_oa,
    full_factorial,
    generalized_resolution,
    index,
    is_irredundant,
    is_mds,
    j_characteristic,
    parse_oa,
    read_oa,
    strength,
    write_oa,
)

from oracles import has_strength

BELL = OrthogonalArray.from_strings(["00", "11"])
GHZ3 = OrthogonalArray.from_strings(["000", "111"])
ODD = OrthogonalArray.from_strings(["001", "010", "100", "111"])
EVEN = OrthogonalArray.from_strings(["000", "011", "101", "110"])
GHZ_LARGE = OrthogonalArray.from_strings(["000", "100", "100", "011", "011", "111"])


def random_array(rng, levels, r):
    return OrthogonalArray([[int(rng.integers(d)) for d in levels] for _ in range(r)], levels)


# ------------------------------------------------------------------ types


def test_alphabet_validation():
    with pytest.raises(ValueError):
        AlphabetSpec([])
    with pytest.raises(ValueError):
        AlphabetSpec([2, 1])
    a = AlphabetSpec([2, 2, 3])
    assert not a.homogeneous() and a.size == 12
    with pytest.raises(ValueError):
        a.d
    assert AlphabetSpec.uniform(3, 2).d == 2
    for i, t in enumerate(a.tuples()):
        assert a.ravel(t) == i and a.unravel(i) == t


def test_symbols_checked_against_levels():
    with pytest.raises(ValueError):
        OrthogonalArray([[0, 2]], (2, 2))
    with pytest.raises(ValueError):
        OrthogonalArray([[0, 1, 0]], (2, 2))


def test_row_order_irrelevant():
    a = OrthogonalArray.from_strings(["11", "00"])
    assert a == BELL and hash(a) == hash(BELL)


def test_coefficient_vector_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(200):
        levels = tuple(int(x) for x in rng.integers(2, 4, size=int(rng.integers(1, 5))))
        oa = random_array(rng, levels, int(rng.integers(0, 9)))
        cv = oa.counts()
        assert cv.r == oa.r
        assert cv.to_oa() == oa
        assert CoefficientVector(levels, cv.counts).to_oa().counts() == cv


def test_coefficient_vector_rejects_negative():
    with pytest.raises(ValueError):
        CoefficientVector((2, 2), [1, -1, 0, 0])


# --------------------------------------------------------------- strength


def test_strength_examples():
    assert strength(full_factorial((2, 2))) == 2
    assert strength(ODD) == 2
    assert strength(GHZ3) == 1
    with pytest.raises(ValueError, match="undefined strength"):
        strength(OrthogonalArray([], (2, 2)))


def test_strength_matches_counting_oracle():
    rng = np.random.default_rng(1)
    for _ in range(300):
        levels = tuple(int(x) for x in rng.integers(2, 4, size=int(rng.integers(2, 5))))
        oa = random_array(rng, levels, int(rng.integers(1, 13)))
        expected = max(k for k in range(oa.N + 1) if all(has_strength(oa.runs, levels, j)
                                                          for j in range(k + 1)))
        assert strength(oa) == expected


def test_mixed_radix_strength():
    oa = full_factorial((2, 3))
    assert strength(oa) == 2
    half = OrthogonalArray([(0, 0), (1, 1), (0, 2), (1, 0), (0, 1), (1, 2)], (2, 3))
    assert strength(half) == 2
    three = OrthogonalArray([(0, 0), (1, 1), (0, 2)], (2, 3))
    assert strength(three) == 0


def test_index_examples():
    assert index(ODD, 2) == 1
    assert index(GHZ3, 1) == 1
    assert index(GHZ_LARGE, 1) == 3
    with pytest.raises(ValueError):
        index(GHZ3, 2)


def test_projection_is_multiple_of_full_factorial():
    rng = np.random.default_rng(2)
    arrays = [ODD, EVEN, GHZ_LARGE, full_factorial((2, 3, 2))]
    for oa in arrays:
        k = strength(oa)
        lam = index(oa, k)
        for cols in itertools.combinations(range(oa.N), k):
            proj = column_project(oa, cols)
            ff = full_factorial(proj.levels)
            assert proj.counts().counts == tuple(lam * c for c in ff.counts().counts)
    del rng


def test_column_project_examples():
    oa = OrthogonalArray([[0, 1, 2, 3]], (4, 4, 4, 4))
    assert column_project(oa, [2, 3]).runs == ((2, 3),)
    for cols in itertools.combinations(range(3), 2):
        assert column_project(ODD, cols) == full_factorial((2, 2))
    assert column_project(ODD, [0, 1, 2]) == ODD
    with pytest.raises(ValueError):
        column_project(ODD, [0, 0])


# ------------------------------------------------------------- J and GR


def test_j_characteristic_examples():
    assert j_characteristic(BELL, [0, 1]).exact == 2
    assert j_characteristic(GHZ3, [0, 1, 2]).is_zero()
    for cols in itertools.combinations(range(3), 2):
        assert j_characteristic(EVEN, cols).is_zero()
    with pytest.raises(ValueError):
        j_characteristic(BELL, [2])


def _j_float(oa, cols, perms=None):
    total = 0j
    for row in oa.runs:
        phase = 1
        for c in cols:
            s = row[c] if perms is None else perms[c][row[c]]
            phase *= np.exp(2j * np.pi * s / oa.levels[c])
        total += phase
    return abs(total)


def test_j_characteristic_matches_floating_point_oracle():
    rng = np.random.default_rng(3)
    for _ in range(150):
        levels = tuple(int(x) for x in rng.integers(2, 6, size=int(rng.integers(1, 4))))
        oa = random_array(rng, levels, int(rng.integers(1, 9)))
        for t in range(1, oa.N + 1):
            for cols in itertools.combinations(range(oa.N), t):
                assert float(j_characteristic(oa, cols)) == pytest.approx(_j_float(oa, cols), abs=1e-9)


def test_j_characteristic_row_permutation_invariant_and_vanishes_below_strength():
    rng = np.random.default_rng(4)
    for oa in (ODD, EVEN, GHZ_LARGE, full_factorial((3, 3))):
        k = strength(oa)
        for t in range(1, k + 1):
            for cols in itertools.combinations(range(oa.N), t):
                assert j_characteristic(oa, cols).is_zero()
        rows = list(oa.runs)
        rng.shuffle(rows)
        assert OrthogonalArray(rows, oa.levels) == oa


def test_generalized_resolution_examples():
    g = generalized_resolution(BELL)
    assert (g.t, g.j_max, g.gr) == (2, 2, 2)
    g = generalized_resolution(EVEN)
    assert (g.t, g.j_max, g.gr) == (3, 4, 3)
    assert generalized_resolution(full_factorial((2, 2, 2))).unbounded
    assert str(generalized_resolution(full_factorial((2, 2, 2)))) == "unbounded"
    with pytest.raises(ValueError):
        generalized_resolution(OrthogonalArray([], (2, 2)))


def test_generalized_resolution_bounds_and_qubit_invariance():
    rng = np.random.default_rng(5)
    for _ in range(60):
        oa = random_array(rng, (2, 2, 2, 2), int(rng.integers(1, 10)))
        g = generalized_resolution(oa)
        if g.unbounded:
            continue
        # GR = t exactly when some order-t J reaches r (e.g. a repeated column pair)
        assert g.t <= g.gr < g.t + 1
        assert g.gr == g.t + 1 - sympy.sympify(g.j_max) / oa.r
        perm = rng.permutation(4)
        flips = rng.integers(0, 2, size=4)
        image = OrthogonalArray([[row[p] ^ int(flips[j]) for j, p in enumerate(perm)]
                                 for row in oa.runs], oa.levels)
        assert generalized_resolution(image).gr == g.gr


def test_generalized_resolution_maximizes_over_symbol_relabelings():
    # for three symbols the maximum over relabelings is attained by brute force
    rng = np.random.default_rng(6)
    for _ in range(15):
        oa = random_array(rng, (3, 3), int(rng.integers(2, 7)))
        g = generalized_resolution(oa)
        best = None
        for p0 in itertools.permutations(range(3)):
            for p1 in itertools.permutations(range(3)):
                perms = (p0, p1)
                for t in (1, 2):
                    js = [_j_float(oa, cols, perms) for cols in itertools.combinations(range(2), t)]
                    if max(js) > 1e-9:
                        val = t + 1 - max(js) / oa.r
                        best = val if best is None else max(best, val)
                        break
        if best is None:
            assert g.unbounded
        else:
            assert float(g.gr) == pytest.approx(best, abs=1e-9)


# ------------------------------------------------------ irredundancy, MDS


def test_irredundant_examples(paper):
    assert is_irredundant(GHZ3, 1)
    w = OrthogonalArray.from_strings(paper["w_array_4_2_1_42"])
    assert not is_irredundant(w, 1)
    assert not is_irredundant(full_factorial((2, 2, 2)), 1)


def test_mds_examples():
    rep = is_mds(ODD)
    assert rep and rep.k == 2 and rep.distance == 2
    rep = is_mds(GHZ3)
    assert rep and rep.k == 1 and rep.distance == 3
    assert not is_mds(full_factorial((2, 2)))
    assert not is_mds(GHZ_LARGE)


def test_mds_implies_irredundant_index_unity():
    # linear codes over Z_3: (a, b, a + b) and (a, b, a + b, a + 2b) are MDS
    for cols in ([(1, 0), (0, 1), (1, 1)], [(1, 0), (0, 1), (1, 1), (1, 2)]):
        oa = OrthogonalArray([[(a * x + b * y) % 3 for x, y in cols]
                              for a in range(3) for b in range(3)], (3,) * len(cols))
        rep = is_mds(oa)
        assert rep and rep.k == 2 and rep.distance == oa.N - 1
        assert oa.r == 3 ** rep.k
        assert is_irredundant(oa, min(rep.k, oa.N - rep.k))
    rng = np.random.default_rng(7)
    for _ in range(300):
        oa = random_array(rng, (3, 3, 3), 9)
        if is_mds(oa):
            k = strength(oa)
            assert oa.r == 3 ** k and is_irredundant(oa, min(k, oa.N - k))
    for oa in (ODD, EVEN, GHZ3):
        k = strength(oa)
        assert is_irredundant(oa, min(k, oa.N - k))


# ------------------------------------------------------------- compose


def test_compose_examples():
    empty = OrthogonalArray([], (2, 2))
    assert compose(empty, BELL) == BELL
    other = OrthogonalArray.from_strings(["01", "10"])
    assert compose(BELL, other) == full_factorial((2, 2))
    with pytest.raises(ValueError, match="exceeds full factorial size"):
        compose(BELL, BELL, other)


def test_compose_strength_property():
    rng = np.random.default_rng(8)
    pool = [ODD, EVEN, GHZ3, OrthogonalArray.from_strings(["001", "110"]),
            OrthogonalArray.from_strings(["010", "101"])]
    for _ in range(100):
        a, b = (pool[int(i)] for i in rng.integers(0, len(pool), size=2))
        if a.r + b.r > 8:
            continue
        c = compose(a, b)
        assert strength(c) >= min(strength(a), strength(b))
        assert compose(a, b) == compose(b, a)


# -------------------------------------------------------------- text I/O


def test_text_format_round_trip(tmp_path):
    oa = OrthogonalArray([(0, 2), (1, 0), (1, 1)], (2, 3))
    text = format_oa(oa)
    assert text.startswith("# levels: 2 3")
    assert parse_oa(text) == oa
    path = tmp_path / "x.oa"
    write_oa(oa, path)
    assert read_oa(path) == oa
    parsed = parse_oa("# comment\n\n0 1\n1 0\n")
    assert parsed == OrthogonalArray.from_strings(["01", "10"])
