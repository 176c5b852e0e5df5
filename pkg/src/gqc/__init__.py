"""Geometric-mean q-concurrence (GqC) and related multipartite entanglement tools."""

from .bounds import (
    BoundCertificate,
    closed_form_ghz,
    closed_form_w,
    continuity_bound_bipartite,
    continuity_bound_multipartite,
    convex_hull_oracle,
    gqc_ghz_closed,
    gqc_w_closed,
    lower_bound_bipartite,
    lower_bound_multipartite,
    mixed_gqc_upper_estimate,
)
from .errors import (
    DegenerateWitnessError,
    DomainError,
    GQCError,
    NormalizationError,
    PartitionError,
    ResourceError,
    ShapeError,
    SymmetryError,
)
from .measures import (
    MeasureReport,
    all_measures,
    concurrence_pure,
    f_q,
    ggm_pure,
    gmc_pure,
    gqc_pure,
    max_fq,
    q_concurrence_pure,
)
from .partitions import Bipartition, cardinality, enumerate_bipartitions
from .states import (
    NoisyStateSpec,
    basis_state,
    class1,
    class2,
    four_qubit_family,
    ghz_state,
    haar_random_pure,
    noisy_state,
    paired_tensor,
    parse_state,
    product_state,
    random_density_matrix,
    w_state,
)
from .tensor import (
    DensityMatrix,
    StateVector,
    fidelity_with_pure,
    load_state,
    partial_trace,
    schmidt,
    trace_power,
)

__version__ = "0.1.0"
