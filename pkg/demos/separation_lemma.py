"""
Factorial matrices and recovering p from e^{lam z} p + q
=========================================================
"""
import random
from fractions import Fraction

from confalg import factorial_det_check, factorial_matrix, forward_expand, separate, separation_window

for row in factorial_matrix(2, 3):
    print([str(x) for x in row])

for m in range(5):
    computed, closed, equal = factorial_det_check(m, m + 2)
    print(f"m={m} N={m + 2}: det = {computed}  closed form {'agrees' if equal else 'DIFFERS'}")

# p = 2 z + lam z^-1, q = 5 z^3: only lam-degrees above deg q are used
p = {0: {(1, 0): Fraction(2)}, 1: {(-1, 0): Fraction(1)}}
q = {0: {(3, 0): Fraction(5)}}
window = separation_window(1, 0)
coeffs = forward_expand(p, q, window)
print("window", window)
for N in window:
    print(f"  lam^{N}:", {e: str(v) for (e, _), v in sorted(coeffs[N].items())})
print("recovered:", {i: {e: str(v) for (e, _), v in pi.items()} for i, pi in separate(coeffs, 1, 0).items()})

# coefficients in a coordinate subspace stay there
rng = random.Random(1)
U = {0, 2}
p = {i: {(rng.randint(-2, 2), rng.choice(sorted(U))): Fraction(rng.randint(1, 5))} for i in range(3)}
q = {i: {(rng.randint(-2, 2), 1): Fraction(rng.randint(1, 5))} for i in range(2)}
got = separate(forward_expand(p, q, separation_window(2, 1)), 2, 1)
print("recovered coordinates:", sorted({c for pi in got.values() for (_, c) in pi}))
