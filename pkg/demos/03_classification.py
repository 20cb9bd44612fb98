"""Coarse-grained entanglement classes from generating arrays.

Run with ``python3 demos/03_classification.py``.
"""
from oaent.classify import classify_full, classify_generators
from oaent.iso import isomorphism
from oaent import OrthogonalArray
from oaent.quantum import four_qubit_invariants, parse_ket

# Isomorphic arrays (row, column and symbol permutations) give locally
# equivalent states; the decision comes with a checked witness.
res = isomorphism(OrthogonalArray.from_strings(["00", "11"]), OrthogonalArray.from_strings(["01", "10"]))
print("Bell arrays isomorphic:", res.isomorphic, "witness:", res.witness.to_json())

# Generators of strength one on three and four qubits, up to isomorphism.
for levels in ((2, 2, 2), (2, 2, 2, 2)):
    cat = classify_generators(levels, 1)
    print(cat.table())

# All arrays with at most eight runs on three qubits, joined by free operations.
print(classify_full((2, 2, 2), 1, 8).table())

# Four-qubit invariants of one generic generator: nonzero hyperdeterminant.
rec = four_qubit_invariants(parse_ket("2|0000> + |0111> + |1011> + |1101> + |1110>"))
print("H, L, M, D_xy:", rec.H, rec.L, rec.M, rec.D_xy, "| Delta:", rec.Delta)
