"""Why the minimum over hypotheses cannot replace the mutual information.

Eight noiseless hypotheses are perfectly distinguishable, so the MAP error is
zero.  Choosing the auxiliary equal to one of the rows makes the smallest
divergence zero, and plugging that into Fano claims an error of 2/3.  The
average and maximum statistics are infinite for this auxiliary, so their
floors are vacuous but still correct.
"""

import numpy as np

from converse_kit import measures as M
from converse_kit.mi_bounds import HypothesisFamily
from converse_kit.oracle.decoding import bayes_optimal_error
from converse_kit.reductions import LossModel, local_bound

rows = np.eye(8)
fam = HypothesisFamily(np.full(8, 1 / 8), rows)
d = np.array([M.kl_divergence(r, rows[0]) for r in rows])
print(f"I(V;Y) = {fam.exact_mi():.4f} nats, MAP error = {bayes_optimal_error(fam.prior.mass, rows)}")
for variant in ("aux-min", "aux-avg", "aux-max"):
    rep = local_bound(LossModel.squared(), 1.0, d, variant)
    print(f"{variant:>8}: statistic={rep.intermediates['divergence_statistic']:.4f}  "
          f"claimed error floor={rep.intermediates['pe_lower']:.4f}")
    for note in rep.notes:
        print(f"          note: {note}")
