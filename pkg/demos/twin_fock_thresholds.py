"""
How much noise can a twin Fock state take?
==========================================

Two thresholds for the half-filled Dicke state |D_{N,N/2}>. Above ``p``
the population alone certifies that all N particles are entangled, whatever
the noise. Above ``p'`` the two-particle reduced state stays entangled under
white noise. The first settles near 1/2, the second climbs to 1.
"""

from dickedepth import p_prime_threshold_exact, p_threshold, twin_fock_extrapolation

print(f"{'N':>5} {'p':>10} {'p_prime':>10}")
for N in (4, 6, 10, 20, 50, 100, 500, 1000):
    p = p_threshold(N, N // 2)
    pp = p_prime_threshold_exact(N, N // 2)
    print(f"{N:>5} {float(p):>10.6f} {float(pp):>10.6f}")

# N = 4 is the one case where the 2-RDM test is the easier one to pass.
print("p' < p at N=4:", p_prime_threshold_exact(4, 2) < p_threshold(4, 2).value)

# Fitting p against 1/N puts the large-N limit at one half.
_, limit = twin_fock_extrapolation(range(4, 61, 2))
print(f"extrapolated p at N -> infinity: {limit:.4f}")

# The best cut is always two particles against the rest.
t = p_threshold(100, 50)
print("optimal split for N=100:", t.arg_partition, "Schmidt index", t.arg_j, "value", t.value)
