"""Independent arbitrary-precision evaluation of the frozen test constants.

Run ``python3 tools/freeze_oracle.py`` to regenerate; the printed literals
are pasted into ``tests/oracle_values.py``.  Nothing here imports the
library, so the frozen values cannot inherit its bugs.
"""

import math

import mpmath as mp

mp.mp.dps = 50


def H2(a):
    a = mp.mpf(a)
    return -a * mp.log(a) - (1 - a) * mp.log(1 - a)


def H2_inv(h):
    return mp.findroot(lambda a: H2(a) - h, (mp.mpf("1e-30"), mp.mpf("0.5")), solver="bisect")


def lnC(n, r):
    return mp.log(math.comb(n, r))


def fano_num(delta, log_card):
    return max(mp.mpf(0), (1 - mp.mpf(delta)) * log_card - mp.log(2))


def gt_approx(p, k, L, alpha):
    jmax = math.floor(alpha * k)
    nmax = sum(math.comb(p - L, j) * math.comb(L, k - j) for j in range(jmax + 1))
    need = lnC(p, k) - mp.log(nmax)
    return nmax, need / mp.log(2)


def ising_exact(p, lam, delta):
    kl = lam * mp.tanh(lam)
    n1 = fano_num(delta, (p - 2) * mp.log(p)) / (p * mp.log(2))
    n2 = fano_num(delta, lnC(p, 2)) / kl
    return n1, n2


def ising_approx(p, lam, alpha, delta):
    m = p // 2
    kl = lam * mp.tanh(lam)
    jmax = math.floor(alpha * p)
    other1 = math.comb(p, 2) - p + 1
    n1max = sum(math.comb(p - 1, j) * math.comb(other1, j) for j in range(jmax + 1))
    other2 = math.comb(p, 2) - m
    n2max = sum(math.comb(m, j) * math.comb(other2, j) for j in range(jmax + 1))
    g2 = math.factorial(2 * m) // (2**m * math.factorial(m))
    n1 = fano_num(delta, (p - 2) * mp.log(p) - mp.log(n1max)) / (p * mp.log(2))
    n2 = fano_num(delta, mp.log(g2) - mp.log(n2max)) / (m * kl)
    return n1max, n2max, n1, n2


def ising_adaptive(p, lam, delta):
    m = p // 2
    kl = lam * mp.tanh(lam)
    g2 = math.factorial(2 * m) // (2**m * math.factorial(m))
    return (fano_num(delta, (p - 2) * mp.log(p)) / mp.log(2),
            fano_num(delta, mp.log(g2)) / (kl / 2))


def sparse_chain(p, k, sigma, frob, exact):
    ep2 = mp.mpf(sigma) ** 2 * p * mp.log(mp.mpf(p) / k) / (2 * frob)
    size = 2**k * math.comb(p, k)
    t = mp.mpf(k) / 2
    if exact:
        nmax = sum(math.comb(k, a) * math.comb(p - k, a) * 2**a * math.comb(k - a, b)
                   for a in range(k + 1) for b in range(k - a + 1) if 2 * a + b <= t)
    else:
        nmax = sum(2**j * math.comb(p, j) for j in range(math.ceil(k / 2) + 1))
    mi = ep2 / (2 * sigma**2) * (mp.mpf(k) / p) * frob
    sep = mp.sqrt(ep2 * t)
    pe = max(mp.mpf(0), 1 - (mi + mp.log(2)) / (mp.log(size) - mp.log(nmax)))
    return nmax, (sep / 2) ** 2 * pe


def density_bound(eta, c_lo, c_hi, n):
    eta, c_lo, c_hi, n = map(mp.mpf, (eta, c_lo, c_hi, n))
    cp = c_hi / mp.sqrt(eta)
    inv_eps_p = (2 / c_lo) * (2 * cp ** (mp.mpf(2) / 3) * n ** (mp.mpf(1) / 3) + mp.log(2))
    eps_p = 1 / inv_eps_p
    return (eps_p / 2) ** 2 * mp.mpf("0.5")


def show(name, x):
    print(f"{name} = {mp.nstr(x, 17) if isinstance(x, mp.mpf) else x!r}")


if __name__ == "__main__":
    show("ENTROPY_QUARTER", -(mp.mpf("0.25") * mp.log("0.25") + mp.mpf("0.75") * mp.log("0.75")))
    show("H2_011", H2("0.11"))
    show("H2_INV_HALF_LN2", H2_inv(mp.log(2) / 2))
    show("FANO_RHS_HALF_M4", mp.log(2) + mp.log(3) / 2)
    show("FANO_PE_MI1_M1024", 1 - (1 + mp.log(2)) / (10 * mp.log(2)))
    show("GT_CAPACITY_011", mp.log(2) - H2("0.11"))
    show("GT_EXACT_PRE_CEIL", lnC(100, 5) / mp.log(2))
    nmax, pre = gt_approx(100, 5, 10, 0.4)
    show("GT_APPROX_NMAX", nmax)
    show("GT_APPROX_PRE_CEIL", pre)
    n1, n2 = ising_exact(100, mp.mpf("0.2"), mp.mpf("0.1"))
    show("ISING_EXACT_N1", n1)
    show("ISING_EXACT_N2", n2)
    a1, a2, m1, m2 = ising_approx(60, mp.mpf("0.2"), 0.1, mp.mpf("0.1"))
    show("ISING_APPROX_NMAX_TREES", a1)
    show("ISING_APPROX_NMAX_MATCHINGS", a2)
    show("ISING_APPROX_N1", m1)
    show("ISING_APPROX_N2", m2)
    b1, b2 = ising_adaptive(100, mp.mpf("0.2"), mp.mpf("0.1"))
    show("ISING_ADAPTIVE_N1", b1)
    show("ISING_ADAPTIVE_N2", b2)
    for tag, ex in (("PAPER", False), ("EXACT", True)):
        nm, val = sparse_chain(64, 2, 1, 6400, ex)
        show(f"SPARSE_NMAX_{tag}", nm)
        show(f"SPARSE_CHAIN_{tag}", val)
    show("SPARSE_HEADLINE", mp.mpf(2 * 64) * mp.log(32) / (32 * 6400))
    for n in (10**3, 10**4, 10**5, 10**6):
        show(f"DENSITY_SCALED_{n}", density_bound("0.25", 1, 1, n) * mp.mpf(n) ** (mp.mpf(2) / 3))
    show("SCVX_PRE_CEIL", mp.log(2) / mp.mpf("0.4"))
    show("L2_BALL_5", mp.pi ** mp.mpf(2.5) / mp.gamma(mp.mpf(3.5)))
