"""The maximal unitary block count s(M) and its witness.

s(M) is the largest number of diagonal blocks achievable as U* M U with U
unitary: n for normal matrices, 1 for unitarily irreducible ones, and the
number of irreducible components in general.  The witness U, the block
sizes and the residual couplings are all returned, and the computation is
seeded and reproducible.

Run:  python3 demos/03_block_structure.py
"""

import numpy as np

import specvar as sv

rng = np.random.default_rng(2)


def jordan_block(lam, size):
    return lam * np.eye(size, dtype=complex) + np.diag(np.ones(size - 1), k=1)


print("== normal matrices split completely: s = n ==")
u = sv.random_unitary(5, rng)
normal = u @ np.diag(rng.standard_normal(5) + 1j * rng.standard_normal(5)) @ u.conj().T
dec = sv.s_number(normal)
print(f"s = {dec.s}, block sizes = {dec.block_sizes}, "
      f"is_normal = {sv.is_normal(normal)}")

print()
print("== a single Jordan block is irreducible: s = 1 ==")
j3 = jordan_block(0.5 + 1j, 3)
print(f"s = {sv.s_number(j3).s}, commutant dimension = "
      f"{len(sv.commutant_basis(j3))} (scalars only)")

print()
print("== hidden block structure is recovered through a random unitary ==")
m = np.zeros((5, 5), dtype=complex)
m[:2, :2] = jordan_block(0.0, 2)
m[2:, 2:] = jordan_block(5.0, 3)
w = sv.random_unitary(5, rng)
hidden = w @ m @ w.conj().T
dec = sv.s_number(hidden)
print(f"constructed blocks (2, 3)  ->  recovered s = {dec.s}, "
      f"sizes = {dec.block_sizes}")
print(f"witness unitarity residual : "
      f"{np.linalg.norm(dec.u.conj().T @ dec.u - np.eye(5)):.2e}")
print(f"off-block coupling residual: "
      f"{sv.offblock_residual(hidden, dec.u, dec.block_sizes):.2e}")

print()
print("== two copies of the same irreducible block still give s = 2 ==")
twin = np.zeros((4, 4), dtype=complex)
twin[0, 1] = 1.0
twin[2, 3] = 1.0
w4 = sv.random_unitary(4, rng)
dec = sv.s_number(w4 @ twin @ w4.conj().T)
print(f"s = {dec.s}, sizes = {dec.block_sizes} "
      f"(commutant dimension {len(sv.commutant_basis(twin))})")
