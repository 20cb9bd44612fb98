"""Array-based pure states, reductions, local invariants and free operations."""

from .states import (  # noqa: F401
    PureState,
    flip_site,
    format_ket,
    hadamard_all,
    oa_from_state,
    parse_ket,
    permute_sites,
    permute_symbols,
    state_from_oa,
)
from .density import (  # noqa: F401
    DensityMatrix,
    Entropy,
    PrecisionError,
    mean_bipartite_entropy,
    purity,
    reduced_density,
    uniformity,
    von_neumann_entropy,
)
from .transforms import (  # noqa: F401
    apply_local_transform,
    birkhoff_decompose,
    is_integer_stochastic,
    project_measure,
    stochastic_matrices,
)
from .invariants3 import sudbery_invariants, three_tangle  # noqa: F401
from .invariants4 import four_qubit_invariants, hyperdeterminant, lt_invariants  # noqa: F401
