from .convex import (
    ConvexOptSpec,
    scvx_construction,
    scvx_per_query_kl,
    scvx_queries_lower,
    scvx_queries_report,
    scvx_risk_lower,
    scvx_risk_report,
)
from .density import (
    DensitySpec,
    density_divergence_chain,
    density_minimax_risk_lower,
    density_samples_lower,
)
from .group_testing import (
    GroupTestingSpec,
    gt_approx_report,
    gt_approx_tests_lower,
    gt_capacity,
    gt_exact_report,
    gt_exact_tests_lower,
    gt_nmax,
)
from .ising import (
    IsingSpec,
    erdos_renyi_report,
    erdos_renyi_samples_lower,
    ising_adaptive_nodes_lower,
    ising_adaptive_report,
    ising_approx_report,
    ising_approx_samples_lower,
    ising_exact_report,
    ising_exact_samples_lower,
    ising_single_edge_stats,
)
from .sparse import (
    SparseRegressionSpec,
    sparse_minimax_risk_lower,
    sparse_packing_family,
    sparse_samples_lower,
)
