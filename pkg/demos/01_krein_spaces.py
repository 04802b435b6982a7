"""Krein spaces: decompositions, Krein adjoints and comparable norms."""
import numpy as np

from kreinlab import (KreinSpace, canonical_decomposition, j_norm, krein_adjoint,
                      norm_equivalence)
from kreinlab.random_instances import random_symmetry

# the hyperbolic plane: <x, y> = conj(x0) y1 + conj(x1) y0
K = KreinSpace(np.array([[0.0, 1.0], [1.0, 0.0]]))
d = canonical_decomposition(K)
print("signature", d.signature)
print("J =\n", np.round(d.J.real, 6))

x = np.array([1.0, 0.0])
print("<x, x> =", K.inner(x, x), " (a neutral vector)")
print("|x|_J =", j_norm(x, d, K))

T = np.array([[1.0, 2.0], [0.0, 3.0]])
Ts = krein_adjoint(T, K, K)
print("Krein adjoint of T =\n", Ts.real)

# another fundamental symmetry gives an equivalent Hilbert norm
J2 = random_symmetry(np.random.default_rng(0), K)
c, C = norm_equivalence(K, d.J, J2)
print(f"{c:.4f} |x|_J2 <= |x|_J <= {C:.4f} |x|_J2")
