"""Eigensystems without elimination
=================================

The eigenvalues are the diagonal entries, read off directly.  The matrix of
eigencolumns is unit-diagonal with the same sparsity as the couplings, and
its exact inverse just negates the off-diagonal part.  A coupling across
two equal diagonal entries is a Jordan block; the library refuses it loudly
instead of returning garbage.
"""

import numpy as np

from zzham import (
    GzzHamiltonian,
    NonDiagonalizableError,
    ZigZagHamiltonian,
    eigen_q,
    eigen_qtilde,
    factor_inverse,
    spectrum,
    zz_eigen,
)

h = GzzHamiltonian([2.0, -0.5], [1.0, 3.0], {(1, 1): 3.0, (2, 2): -1.0, (1, 2): 0.7})
print("spectrum:", [(str(label), value) for label, value in spectrum(h)])

q = eigen_q(h)
hd, qd = h.to_dense(), q.to_dense()
lam = np.diag(hd.diagonal())
print("Q =")
print(qd)
print("||H Q - Q Lambda|| =", np.linalg.norm(hd @ qd - qd @ lam))
print("Q^-1 by negation, ||Q Q^-1 - 1|| =",
      np.linalg.norm(qd @ factor_inverse(q).to_dense() - np.eye(4)))

# the transpose eigensystem comes from the same data
qt = eigen_qtilde(h).to_dense()
print("||H^T Qt - Qt Lambda|| =", np.linalg.norm(hd.T @ qt - qt @ lam))
print("Qt^T Q == 1 exactly:", np.array_equal(qt.T @ qd, np.eye(4)))

# zig-zag models expose the same solvability in their own shape
z = ZigZagHamiltonian("TZ", [4.0, 3.0, 2.0, 1.0], [1.0, 1.0, 1.0])
v = zz_eigen(z)
print("\nTZ ladder eigenvector matrix (TZ-shaped, unit diagonal):")
print(v.to_dense())
print("residual:", np.linalg.norm(z.to_dense() @ v.to_dense() - v.to_dense() @ np.diag(z.a)))

# Jordan refusal
try:
    eigen_q(GzzHamiltonian([1.0], [1.0], {(1, 1): 2.0}))
except NonDiagonalizableError as err:
    print("\nJordan case refused:", err, "| offending pairs:", err.pairs)
