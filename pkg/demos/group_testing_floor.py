"""Group testing: the information floor against a MAP decoder that actually runs.

Small instance (p=8 items, k=2 defectives, 10% flip noise).  For each number
of tests n we print the Fano floor on the exact-recovery error and the
simulated error of the optimal decoder over random Bernoulli designs.
"""

from converse_kit.applications.group_testing import GroupTestingSpec, gt_capacity, gt_exact_tests_lower
from converse_kit.fano import fano_pe_lower
from converse_kit.oracle.group_testing import gt_simulate
from math import comb

spec = GroupTestingSpec(8, 2, 0.1)
cap = gt_capacity(spec.eps)
m = comb(spec.p, spec.k)
print(f"capacity per test: {cap:.4f} nats, hypotheses: {m}")
print(f"{'n':>3} {'fano floor':>11} {'MAP error':>10} {'stderr':>8}")
for n in range(0, 13, 2):
    floor = fano_pe_lower(n * cap, m)
    sim = gt_simulate(spec, n, trials=2000, seed=n)
    print(f"{n:>3} {floor:>11.4f} {sim.estimate:>10.4f} {sim.stderr:>8.4f}")

big = GroupTestingSpec(100, 5, 0.0, 0.0)
print(f"\nnoiseless p=100, k=5, zero error: at least {gt_exact_tests_lower(big)} tests")
