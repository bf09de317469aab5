"""
Generators, order, Loewy length, m-fullness
===========================================
"""

# %%
from idealaudit import IdealHandle, QQ, RingPresentation, invariant_bundle
from idealaudit.invariants import is_m_full

plane = RingPresentation(QQ, ("x", "y"))
for gens in (("x^2", "y^2"), ("x^2", "x*y", "y^2"), ("x^2", "x*y^2", "y^3")):
    I = IdealHandle.parse(plane, *gens)
    b = invariant_bundle(I)
    print(I.describe(), "mu", b.mu, "ord", b.ord, "ll", b.loewy, "m-full", b.m_full, "witness", b.m_full_witness)

# %%
# (x^2, y^2) fails: every trial z gives mI : z = m^2, three dimensions above mI.
v = is_m_full(IdealHandle.parse(plane, "x^2", "y^2"))
print("tried", [str(z) for z in v.tried], "colon dims", v.colon_dims)

# %%
# The E8 surface singularity x^2 + y^3 + z^5
base = RingPresentation(QQ, ("x", "y", "z"))
E8 = RingPresentation(QQ, base.variables, (base.parse("x^2+y^3+z^5"),), 2)
I = IdealHandle.parse(E8, "x", "y^2", "y*z^2", "z^4")
print(invariant_bundle(I))
