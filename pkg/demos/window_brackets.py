"""
Thresholds for a window of Dicke states
=======================================

Experiments rarely resolve a single excitation number. Counting every shot
in a window X gives a population that must beat ``q_X``, the largest
overlap of the window with a state that factorizes across some cut.
``qx_bracket`` squeezes ``q_X`` between a product state that attains the
lower end and a certified branch-and-bound upper end.
"""

from dickedepth import qx_bracket, qx_spectral_bound, verdict_mixture

N = 12
for X in [(6,), (5, 6, 7), (4, 5, 6, 7, 8), (0, 1)]:
    b = qx_bracket(N, X)
    print(f"X={X}: q in [{b.lower:.8f}, {b.upper:.8f}], best cut m0={b.m0_star}")

# The plain operator-norm bound is useless here: it is exactly 1 for any window.
print("spectral bound for X=(5,6,7):", qx_spectral_bound(N, (5, 6, 7)))

# A window that contains r=0 holds the product state |0...0>, so it never certifies.
print(verdict_mixture(N, (0, 1), 1.0).status.value)

# The product state behind the lower end, in the Dicke bases of the two parts.
w = qx_bracket(N, (5, 6, 7)).witness_state
print("witness cut", w.partition, "a =", w.a.round(4))
