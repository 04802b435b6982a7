"""B(K) as a Krein C*-algebra, and a symmetry that does not work."""
import numpy as np

from kreinlab import (AdSymmetry, KreinSpace, even_odd_split, full_matrix_algebra,
                      krein_operator_algebra, verify_krein_cstar)

K = KreinSpace.signature_form(1, 1)
alg, alpha = krein_operator_algebra(K)
print(verify_krein_cstar(alg, alpha, samples=50).summary())

plus, minus = even_odd_split(alg, alpha)
print("even part dim", plus.dim, " odd part dim", minus.dim)

# M2 with the Hilbert adjoint is already a C*-algebra; twisting it by Ad_J
# destroys positivity, and the report carries a witness
rep = verify_krein_cstar(full_matrix_algebra(2), AdSymmetry((np.diag([1.0, -1.0]),)), samples=50)
print(rep.summary())
print("witness:\n", np.round(rep["positivity"].witness, 3))
