"""Minimax rates: sparse linear regression and Holder density estimation.

Sparse: the packing count enters through ln N_max; the exact neighborhood
count is much smaller than the generic estimate, which tightens the bound.
Density: the bound times n^(2/3) is roughly flat, which is the rate.
"""

from converse_kit.applications.density import DensitySpec, density_minimax_risk_lower
from converse_kit.applications.sparse import SparseRegressionSpec, sparse_headline, sparse_minimax_risk_lower

sp = SparseRegressionSpec(64, 2, 1.0, 6400.0)
for mode in ("paper", "exact"):
    rep = sparse_minimax_risk_lower(sp, n_max=mode)
    print(f"sparse, N_max={mode:>5}: risk >= {rep.value:.6g}")
print(f"sparse headline expression: {sparse_headline(sp):.6g}")

spec = DensitySpec(0.25, 1.0, 1.0)
print("\n      n     risk bound   bound * n^(2/3)")
for n in (10**3, 10**4, 10**5, 10**6):
    rep = density_minimax_risk_lower(spec, n)
    print(f"{n:>8} {rep.value:>13.6g} {rep.intermediates['scaled_by_n_2_3']:>17.6f}")
