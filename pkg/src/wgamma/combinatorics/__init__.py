from wgamma.combinatorics.moments import (
    BlockProfile,
    catalan,
    free_cumulants,
    moment_cumulant_sum,
    moment_enum,
    moment_routes,
    profile_counts,
)
from wgamma.combinatorics.partitions import (
    NoncrossingPartition,
    PairPartition,
    Permutation,
    cycle_count_pi_gamma,
    enumerate_nc,
    even_blocks,
    fat,
    join_block_count,
)

__all__ = [
    "BlockProfile",
    "NoncrossingPartition",
    "PairPartition",
    "Permutation",
    "catalan",
    "cycle_count_pi_gamma",
    "enumerate_nc",
    "even_blocks",
    "fat",
    "free_cumulants",
    "join_block_count",
    "moment_cumulant_sum",
    "moment_enum",
    "moment_routes",
    "profile_counts",
]
