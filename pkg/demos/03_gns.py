"""GNS for a two-object C*-category and the Gel'fand-Naimark direct sum."""
import numpy as np

from kreinlab import gelfand_naimark, gns, verify_state
from kreinlab.cstar_category import full_operator_category
from kreinlab.gns_repr import isometry_residual, vector_state, verify_representation

cat = full_operator_category([2, 3], labels=["A", "B"])
state = vector_state(cat, [[1, 0], [0, 1, 1]])
print(verify_state(state).summary())

rep = gns(state)
print("GNS space dims per object:", rep.dims)
print(verify_representation(rep).summary())

x = cat.hom(0, 1).random_element(np.random.default_rng(3))
print("omega(x) =", np.round(state(x, 0, 1), 6))
print("<xi_B, pi(x) xi_A> =", np.round(rep.xi[1].conj() @ rep(x, 0, 1) @ rep.xi[0], 6))

gn = gelfand_naimark(cat)
print("direct sum dims:", gn.dims, " isometry residual %.1e" % isometry_residual(gn)[0])
