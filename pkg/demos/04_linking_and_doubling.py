"""From a Krein algebra to its linking category, and doubling a category."""
import numpy as np

from kreinlab import KreinSpace, doubling, envelope, krein_link, krein_operator_algebra
from kreinlab import verify_krein_cstar_category
from kreinlab.cstar_category import isoenv_check
from kreinlab.random_instances import random_krein_category

alg, alpha = krein_operator_algebra(KreinSpace.signature_form(2, 1))
link, grading = krein_link(alg, alpha)
print("hom dims of [A+, A-]:", {k: link.hom(*k).dim for k in link.pairs()})
print(verify_krein_cstar_category(link, grading, samples=20).summary())
print(isoenv_check(alg, alpha).summary())

env, _ = envelope(link)
print("dim of the envelope", env.dim, "= 2 dim A =", 2 * alg.dim)

cat, sym = random_krein_category(np.random.default_rng(7), 2, 3)
doubled, g = doubling(cat, sym)
print("doubled objects:", [o.label for o in doubled.objects])
print("verdict:", verify_krein_cstar_category(doubled, g, samples=20).passed)
