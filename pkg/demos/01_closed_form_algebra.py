"""Closed-form algebra on block-coupled models
=============================================

The models live on a basis ordered in signed pairs {+1, -1, +2, -2, ...}.
A model is a diagonal plus a degree-2 nilpotent whose 2x2 blocks carry a
single nonzero corner.  Products and inverses never touch dense storage:
the diagonal multiplies componentwise and each coupling updates by one
multiply-add.
"""

import numpy as np

from zzham import GzzHamiltonian, gzz_add, gzz_inverse, gzz_mul
from zzham.oracle import dense_mul

# two blocks, three couplings
a = GzzHamiltonian([2.0, -1.0], [1.0, 4.0], {(1, 1): 3.0, (1, 2): -2.0, (2, 1): 0.5})
b = GzzHamiltonian([5.0, 2.0], [4.0, -3.0], {(1, 1): 1.0, (2, 2): 2.0})

print("A =")
print(a.to_dense())
print("B =")
print(b.to_dense())

# closure: the product stays in the class and matches the dense product
prod = gzz_mul(a, b)
print("\nA @ B (closed form) =")
print(prod.to_dense())
print("max |closed form - dense product| =",
      np.abs(prod.to_dense() - dense_mul(a.to_dense(), b.to_dense())).max())
print("pattern(A@B) subset of pattern(A) | pattern(B):",
      prod.pattern <= (a.pattern | b.pattern))

# sums are componentwise and exact cancellations prune the pattern
print("\nA + (-A) couplings:", gzz_add(a, GzzHamiltonian(-a.lambda_plus,
      -a.lambda_minus, {k: -v for k, v in a.couplings.items()})).couplings)

# the inverse is a formula, not an elimination
inv = gzz_inverse(a)
print("\nA^-1 (closed form) =")
print(inv.to_dense())
print("max |A @ A^-1 - 1| =",
      np.abs(dense_mul(a.to_dense(), inv.to_dense()) - np.eye(4)).max())
