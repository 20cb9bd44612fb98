import json
from fractions import Fraction

import pytest

from oaent import (
    Budget,
    BudgetExceeded,
    OrthogonalArray,
    full_factorial,
    generalized_resolution,
    strength,
)
from oaent.classify import (
    classify_full,
    classify_generators,
    generic_span_check,
    heterogeneous_catalogs,
    mds_generator_check,
)
from oaent.iso import are_isomorphic, orbit_form
from oaent.quantum import state_from_oa, sudbery_invariants

import oracles


def _partition(catalog, levels, k, r_max):
    """Catalog classes as sets of brute-force isomorphism keys."""
    from oaent import build_constraints
    from oaent.cone import lattice_point_matrix
    from oaent.iso import orbit_forms

    P = lattice_point_matrix(build_constraints(levels, k), r_max)
    forms = sorted({tuple(int(x) for x in f) for f in orbit_forms(P, levels)},
                   key=lambda f: (sum(f), f))
    out = []
    for c in catalog.classes:
        keys = set()
        for node in c.member_indices:
            f = forms[node]
            keys.add(oracles.iso_key(oracles.runs_from_counts(f, levels), levels))
        out.append(frozenset(keys))
    return out


def test_generator_class_counts(paper):
    counts = paper["class_counts"]["generators"]
    assert len(classify_generators((2, 2, 2), 1)) == counts["3,2,1"]
    assert len(classify_generators((2, 2, 2, 2), 1)) == counts["4,2,1"]
    assert len(classify_generators((2, 2, 2), 2)) == 1
    assert len(classify_generators((2, 2), 1)) == 1


def test_generator_classes_agree_with_brute_force_isomorphism(appendix_a):
    for key, levels, k in (("3,2,1", (2,) * 3, 1), ("4,2,1", (2,) * 4, 1), ("4,2,2", (2,) * 4, 2)):
        cat = classify_generators(levels, k, with_invariants=False)
        brute = {}
        for oa in appendix_a[key]:
            brute.setdefault(oracles.iso_key(oa.runs, levels), 0)
            brute[oracles.iso_key(oa.runs, levels)] += 1
        assert sorted(c.members for c in cat.classes) == sorted(brute.values())


def test_heterogeneous_catalogs(paper):
    counts = paper["class_counts"]["generators"]
    cats = heterogeneous_catalogs()
    assert len(cats[(2, 2, 3), 1]) == counts["2,2,3:1"]
    assert len(cats[(2, 3, 3), 1]) == counts["2,3,3:1"]
    # strength two (not tabulated in the source)
    assert len(cats[(2, 2, 3), 2]) == 2 and len(cats[(2, 3, 3), 2]) == 3
    for cat in cats.values():
        for c in cat.classes:
            assert strength(c.representative) >= cat.k


@pytest.mark.parametrize("levels,k,r_max", [((2, 2), 1, 4), ((2, 2, 2), 1, 8), ((2, 2, 2), 2, 8)])
def test_full_classification_matches_brute_force(levels, k, r_max):
    cat = classify_full(levels, k, r_max)
    brute = {frozenset(comp) for comp in oracles.free_operation_classes(levels, k, r_max)}
    assert set(_partition(cat, levels, k, r_max)) == brute


def test_two_qubit_full_classification():
    cat = classify_full((2, 2), 1, 4)
    # Bell pair, and the product state |++> (full factorial) which no
    # stochastic matrix connects to it
    assert len(cat) == 2
    assert are_isomorphic(cat.classes[0].representative, OrthogonalArray.from_strings(["00", "11"]))
    assert cat.classes[1].representative == full_factorial((2, 2))


def test_three_qubit_full_classification(paper):
    cat = classify_full((2, 2, 2), 1, 8)
    assert len(cat) == paper["class_counts"]["full"]["3,2,1"]
    reps = [c.representative for c in cat.classes]
    # the least-run class is GHZ; the full factorial is a class by itself
    assert are_isomorphic(reps[0], OrthogonalArray.from_strings(["000", "111"]))
    singleton = [c for c in cat.classes if c.representative == full_factorial((2, 2, 2))]
    assert len(singleton) == 1 and singleton[0].forms == 1
    assert singleton[0].flags["separable"]


def test_class_members_share_strength_and_gr_is_least_at_representative():
    levels, k, r_max = (2, 2, 2), 1, 8
    cat = classify_full(levels, k, r_max)
    for c, keys in zip(cat.classes, _partition(cat, levels, k, r_max)):
        members = [OrthogonalArray(rows, levels) for rows in keys]
        t = {strength(m) for m in members}
        assert t == {strength(c.representative)}
        rep_gr = generalized_resolution(c.representative)
        for m in members:
            g = generalized_resolution(m)
            if rep_gr.unbounded:
                assert g.unbounded
            elif not g.unbounded:
                assert g.gr >= rep_gr.gr or m.r == c.representative.r


def test_generators_of_one_class_share_invariants(appendix_a):
    cat = classify_generators((2, 2, 2), 1)
    for c in cat.classes:
        recs = {sudbery_invariants(state_from_oa(appendix_a["3,2,1"][i])).as_tuple() for i in c.member_indices}
        assert len(recs) == 1


def test_catalog_is_deterministic_across_threads():
    a = classify_full((2, 2, 2, 2), 1, 10, threads=1)
    b = classify_full((2, 2, 2, 2), 1, 10, threads=2)
    strip = lambda doc: {k: v for k, v in doc.items() if k != "provenance"}
    assert strip(a.to_json()) == strip(b.to_json())
    assert a.table() == b.table()


class _TripAfter(Budget):
    """Raises once the classification loop has processed ``n`` nodes."""

    def __init__(self, n):
        super().__init__(max_elements=None)
        self.n = n

    def check(self, elements=0, progress=None):
        if progress and progress.get("processed", 0) >= self.n:
            raise BudgetExceeded("tripped", progress)


def test_checkpoint_resume(tmp_path):
    path = str(tmp_path / "cp.json")
    reference = classify_full((2, 2, 2, 2), 1, 10)
    with pytest.raises(BudgetExceeded) as info:
        classify_full((2, 2, 2, 2), 1, 10, budget=_TripAfter(64), checkpoint=path)
    assert info.value.progress["processed"] == 64
    saved = json.load(open(path))
    assert saved["next"] == 64
    resumed = classify_full((2, 2, 2, 2), 1, 10, checkpoint=path)
    assert [c.member_indices for c in resumed.classes] == [c.member_indices for c in reference.classes]
    assert json.load(open(path))["next"] == saved["nodes"]


def test_incompatible_checkpoint_is_ignored(tmp_path):
    path = str(tmp_path / "cp.json")
    classify_full((2, 2, 2), 1, 6, checkpoint=path)
    cat = classify_full((2, 2, 2), 1, 8, checkpoint=path)
    assert len(cat) == 9


def test_mds_generator_check():
    rep = mds_generator_check((2, 2, 2), 2)
    assert rep.ok and rep.mds_arrays == 2
    rep = mds_generator_check((2, 2), 1)
    assert rep.ok and rep.mds_arrays == 2
    rep = mds_generator_check((3, 3, 3), 2)
    assert rep.ok and rep.mds_arrays == 12
    # no index-one array of strength two on four qubits: vacuous
    rep = mds_generator_check((2, 2, 2, 2), 2)
    assert rep.ok and rep.mds_arrays == 0
    with pytest.raises(ValueError):
        mds_generator_check((2, 3), 1)


def test_generic_span_check(paper):
    out = generic_span_check(paper["generic_span_indices"])
    F = Fraction
    as_frac = {k: [F(x) for x in v] for k, v in out.items()}
    assert as_frac == {"u0": [0, 0, 1, 1], "u1": [0, 0, -1, 1], "u2": [1, 1, 0, 0], "u3": [-1, 1, 0, 0]}


def test_catalog_json_and_table():
    cat = classify_generators((2, 2, 2), 1)
    doc = cat.to_json()
    assert doc["kind"] == "generator" and len(doc["classes"]) == 2
    assert doc["classes"][0]["r"] == 2 and doc["classes"][1]["r"] == 4
    assert sum(c["members"] for c in doc["classes"]) == 6
    assert cat.table().splitlines()[0].endswith(": 2")
    json.dumps(doc)


def test_representatives_are_display_forms():
    cat = classify_full((2, 2, 2), 1, 8)
    for c in cat.classes:
        counts = c.representative.counts().counts
        assert tuple(counts) == orbit_form(c.representative, largest=True)
