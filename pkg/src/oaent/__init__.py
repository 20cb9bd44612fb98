"""Orthogonal arrays, their Hilbert-basis generators and array-based entangled states."""

__version__ = "0.1.0"

from .oa import (  # noqa: E402
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
from .cone import (  # noqa: E402
    Budget,
    BudgetExceeded,
    build_constraints,
    decompose,
    enumerate_lattice_points,
    export_basis,
    hilbert_basis,
    min_runs,
    prove_nonexistence,
    verify_conjecture,
)
from .iso import are_isomorphic, array_form, isomorphism, orbit_form  # noqa: E402
