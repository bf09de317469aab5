"""
Monomial ideals and their integral closures
===========================================

For monomial ideals the closure is read off the Newton polyhedron, and the
multiplicity is a normalized area.  Both are exact.
"""

# %%
from idealaudit.monomial import (
    MonomialIdeal,
    colength,
    enumerate_integrally_closed,
    integral_closure,
    newton_member,
    normalized_volume,
)

I = MonomialIdeal.from_gens([(2, 0), (0, 3)])
print("closure of", I, "is", integral_closure(I))

# %%
# xy^2 enters the closure; the certificate is a convex combination of the
# generators plus a nonnegative slack
cert = newton_member((1, 2), I)
print("weights", cert.weights, "slack", cert.slack, "verified", cert.verify(I))

# %%
for gens in ([(2, 0), (0, 3)], [(3, 0), (1, 1), (0, 3)], [(4, 0), (1, 2), (0, 5)]):
    M = MonomialIdeal.from_gens(gens)
    print(M, "colength", colength(M), "e =", normalized_volume(M))

# %%
# The integrally closed family grows quickly with the colength
counts = {}
for M in enumerate_integrally_closed(2, 12):
    counts[colength(M)] = counts.get(colength(M), 0) + 1
print(sorted(counts.items()))
