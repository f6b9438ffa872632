"""Constants frozen from tools/freeze_oracle.py (mpmath at 50 digits, library not imported)."""

ENTROPY_QUARTER = 0.56233514461880835
H2_011 = 0.34651533691866615
H2_INV_HALF_LN2 = 0.11002786443835955
FANO_RHS_HALF_M4 = 1.2424533248940002
FANO_PE_MI1_M1024 = 0.75573049591110366
GT_CAPACITY_011 = 0.34663184364127916
GT_EXACT_PRE_CEIL = 26.165907401269308
GT_APPROX_NMAX = 499752
GT_APPROX_PRE_CEIL = 7.2350545862071492
ISING_EXACT_N1 = 5.8498811593813072
ISING_EXACT_N2 = 176.39696243461545
ISING_APPROX_NMAX_TREES = 1557014531761486700227590
ISING_APPROX_NMAX_MATCHINGS = 22708975129067020930214
ISING_APPROX_N1 = 3.9168523012139916
ISING_APPROX_N2 = 31.104429037603742
ISING_ADAPTIVE_N1 = 584.98811593813072
ISING_ADAPTIVE_N2 = 8200.1476807348217
SPARSE_NMAX_PAPER = 129
SPARSE_CHAIN_PAPER = 0.0017906913803494022
SPARSE_NMAX_EXACT = 3
SPARSE_CHAIN_EXACT = 0.0030012207825386
SPARSE_HEADLINE = 0.0021660849392498291
DENSITY_SCALED_1000 = 0.0029693203301246786
DENSITY_SCALED_10000 = 0.003038497149972632
DENSITY_SCALED_100000 = 0.0030714303822290236
DENSITY_SCALED_1000000 = 0.003086898855946236
SCVX_PRE_CEIL = 1.7328679513998633
L2_BALL_5 = 5.2637890139143246
