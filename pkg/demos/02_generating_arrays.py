"""Every orthogonal array is a sum of finitely many generating arrays.

Run with ``python3 demos/02_generating_arrays.py``.
"""
from oaent import (
    OrthogonalArray,
    build_constraints,
    decompose,
    hilbert_basis,
    min_runs,
    prove_nonexistence,
    verify_conjecture,
)

# The arrays of strength k on a fixed alphabet are the integer points of a
# rational cone; its Hilbert basis lists the generating arrays.
for levels, k in (((2, 2), 1), ((2, 2, 2), 1), ((2, 2, 2), 2), ((2, 2, 2, 2), 2)):
    basis = hilbert_basis(build_constraints(levels, k))
    print(f"levels {levels} strength {k}: {len(basis)} generators,"
          f" runs {sorted(set(basis.runs_per_generator))}")

# Any array decomposes into generators (greedy search with backtracking).
basis = hilbert_basis(build_constraints((2, 2, 2), 1))
six = OrthogonalArray.from_strings(["000", "100", "100", "011", "011", "111"])
for i, mult in decompose(six, basis):
    runs = " ".join("".join(map(str, u)) for u in basis.arrays[i].runs)
    print(f"  {mult} x generator {i + 1}: {runs}")

# The smallest generator bounds the run count from below: no four-run array
# of strength two exists on four binary columns.
four = hilbert_basis(build_constraints((2, 2, 2, 2), 2))
cert = prove_nonexistence(4, (2, 2, 2, 2), 2)
print("min runs:", min_runs(four), "| certificate:", cert.reason, "verified:", cert.check())

# Strength N-1 on N binary columns: always exactly the even- and odd-weight arrays.
for N in range(2, 7):
    tr = verify_conjecture(N)
    print(f"N={N}: {len(tr.basis)} generators, holds={tr.holds}")
