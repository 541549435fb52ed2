"""The optimal matching distance D2 between two spectra.

D2 is the minimum over all pairings of the l2 distance between eigenvalue
multisets, computed exactly via the assignment problem.  It is the
quantity every perturbation bound in this package is checked against: a
greedy pairing could overstate the distance and fake a bound violation.

Run:  python3 demos/02_spectral_matching.py
"""

import numpy as np

import specvar as sv

rng = np.random.default_rng(1)

print("== matching two small spectra ==")
a = sv.Spectrum(np.array([1.0, 2.0]))
b = sv.Spectrum(np.array([2.5, 1.1]))
m = sv.optimal_match(a, b)
print("a =", a.values, " b =", b.values)
print(f"d2 = {m.d2:.6f} (= sqrt(0.26): pair 1<->1.1 and 2<->2.5)")
print(f"d_inf = {m.d_inf:.6f}  (always <= d2)")
print("permutation:", m.permutation)

print()
print("== the exact solver agrees with brute-force enumeration ==")
for trial in range(3):
    n = int(rng.integers(2, 8))
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    fast = sv.optimal_match(x, y).d2
    slow = sv.brute_force_match(x, y).d2  # minimum over all n! pairings
    print(f"n={n}: assignment {fast:.12f} vs enumeration {slow:.12f}")

print()
print("== spectra of matrices ==")
aM = np.diag([1.0, 2.0, 3.0]) + 0.05 * sv.complex_gaussian(3, 3, rng)
bM = aM + 0.1 * sv.complex_gaussian(3, 3, rng)
sa, sb = sv.eigenvalues(aM), sv.eigenvalues(bM)
match = sv.optimal_match(sa, sb)
print("spectrum A:", np.round(sa.values, 4))
print("spectrum B:", np.round(sb.values, 4))
print(f"d2 = {match.d2:.6f}, d_inf = {match.d_inf:.6f}")

print()
print("== a uniform shift moves every eigenvalue by exactly t ==")
t = 0.3 - 0.1j
shifted = sv.optimal_match(sa, sv.Spectrum(sa.values + t))
print(f"d2 = {shifted.d2:.12f} = sqrt(3)*|t| = {np.sqrt(3) * abs(t):.12f}")
