"""
Lengths of local quotients
==========================

Every invariant in the package is built from one primitive: the length of
R/J for an m-primary ideal J of a local ring.  It is computed in a
truncated polynomial quotient using a local term order.
"""

# %%
from idealaudit import IdealHandle, RingPresentation, QQ
from idealaudit import groebner as gb

plane = RingPresentation(QQ, ("x", "y"))
I = IdealHandle.parse(plane, "x^3", "x*y", "y^2")
print(I, "has colength", I.length())

# %%
# A hypersurface: x^2 + y^5 + z^5 = 0.  The truncation degree N grows until
# m^(N-1) vanishes in the model, which certifies the count.
base = RingPresentation(QQ, ("x", "y", "z"))
R = RingPresentation(QQ, base.variables, (base.parse("x^2+y^5+z^5"),), 2)
Q = IdealHandle.parse(R, "x", "z^3")
model = Q.model()
print("length R/(x, z^3) =", model.length, "at truncation", model.truncation_N)

# %%
# The same number from a shuffled, recombined generating set
print(gb.length(R, [R.parse("x + z^3"), R.parse("z^3 - 2*x*y")]))

# %%
# Membership in the model: y^4 lies in (x, z^4) on the cylinder x^2 + y^2 = 0
cyl = RingPresentation(QQ, base.variables, (base.parse("x^2+y^2"),), 2)
J = IdealHandle.parse(cyl, "x", "z^4")
print("y^4 in (x, z^4):", gb.member(cyl.parse("y^4"), J.model()))
