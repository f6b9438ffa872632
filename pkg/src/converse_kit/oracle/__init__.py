from .decoding import (
    bayes_optimal_approx_error,
    bayes_optimal_error,
    exhaustive_min_error,
    map_decoder,
)
from .group_testing import gt_exact_joint, gt_simulate
from .ising_enum import IsingModel, ising_ensemble_mi, ising_enumerate
from .montecarlo import Box, L2Ball, LinfBall, SimResult, ball_volume_mc, mixture_mi_mc
