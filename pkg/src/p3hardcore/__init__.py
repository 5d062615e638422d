"""Exact Penrose P3 tilings and the ground state of the hard-core gas on them."""
from .golden import PHI, CycloPoint, GoldenNumber, fibonacci
from .tiling import (
    THICK,
    THIN,
    HalfRhomb,
    Rhombus,
    Tiling,
    TilingError,
    census,
    make_seed,
    substitute,
    supertile_partition,
    tiling_from_json,
    tiling_to_json,
)
from .graph import SiteGraph, build_graph, classify_all, classify_vertex_star, graph_to_json
from .supertiling import RkttGraph, SupertilingGraph, build_supertiling, derive_rktt
from .patterns import (
    PATTERN_OF_LABEL,
    PERFECT_COUNT,
    Partition,
    Partitioner,
    PatternInstance,
    Template,
    load_templates,
    map_star_to_pattern,
    partition_patches,
)
from .groundstate import (
    Configuration,
    exact_density,
    mis_configuration,
    perfect_configuration,
    urchin_flip,
    window_density,
    yellow_loops,
)
from .counting import (
    build_loops,
    cycle_brute_force,
    loop_decomposition_check,
    loop_partition_function,
    max_independent_set,
    verify_lemma1,
)
from .gibbs import (
    HardCoreSampler,
    contour_weight,
    glauber_sample,
    hamiltonian,
    polymer_series_bound,
    tau_threshold,
)

__version__ = "0.1.0"


def generate(seed: str = "sun", k: int = 8) -> Tiling:
    """``substitute(make_seed(seed), k)``."""
    return substitute(make_seed(seed), k)
