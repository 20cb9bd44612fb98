"""From an orthogonal array to an entangled state, and back.

Run with ``python3 demos/01_arrays_and_states.py``.
"""
from oaent import OrthogonalArray, generalized_resolution, index, is_irredundant, strength
from oaent.quantum import (
    apply_local_transform,
    format_ket,
    oa_from_state,
    state_from_oa,
    sudbery_invariants,
)
from oaent.quantum.density import single_site_purities

# A two-run array on three binary columns: every column is balanced.
ghz = OrthogonalArray.from_strings(["000", "111"])
t = strength(ghz)
print(f"strength {t}, index {index(ghz, t)}, irredundant: {is_irredundant(ghz, t)}")
print("generalized resolution:", generalized_resolution(ghz))

# Each run becomes one product ket; equal-strength arrays give states whose
# t-party reductions are maximally mixed when the array is irredundant.
state = state_from_oa(ghz)
print("state:", format_ket(state))
print("single-site purities:", [str(p) for p in single_site_purities(state)])
print("invariants (I1..I6):", [str(x) for x in sudbery_invariants(state).as_tuple()])

# A local integer stochastic matrix is a free operation: it maps arrays to
# arrays of the same strength, here turning 2 runs into 6.
bigger = oa_from_state(apply_local_transform(state, 0, [[1, 2], [2, 1]]))
print("after A=((1,2),(2,1)) on site 0:", [''.join(map(str, u)) for u in bigger.runs])
print("strength preserved:", strength(bigger) == t,
      "| GR", generalized_resolution(ghz), "->", generalized_resolution(bigger))
