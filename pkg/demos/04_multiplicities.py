"""
Hilbert-Samuel multiplicities and their relatives
=================================================

e(I) is read off the d-th finite difference of n -> length(R/I^n) once it is
constant over three consecutive values.  No extrapolation happens.
"""

# %%
from idealaudit import IdealHandle, QQ, RingPresentation
from idealaudit.multiplicity import (
    fiber_growth,
    h_vector,
    hs_coefficients,
    hs_table,
    mixed_multiplicity,
    rees_mixed,
)

plane = RingPresentation(QQ, ("x", "y"))
I = IdealHandle.parse(plane, "x^4", "x^3*y", "x*y^3", "y^4")
t = hs_table(I, n_max=5)
print("n_max 5:", t.values, t.status)
t = hs_table(I)
print("n_max 8:", t.values, t.status, "e =", t.e)

# %%
base = RingPresentation(QQ, ("x", "y", "z"))
E8 = RingPresentation(QQ, base.variables, (base.parse("x^2+y^3+z^5"),), 2)
m = IdealHandle.maximal(E8)
print("h-vector", h_vector(E8).a)
print("(e, e1, e2) of m:", hs_coefficients(m))
print("mu(m^n):", fiber_growth(m).values)

# %%
# Mixed multiplicity with the maximal ideal, two ways
J = IdealHandle.parse(plane, "x^3", "x*y", "y^3")
M = IdealHandle.maximal(plane)
print("e(J|m) =", mixed_multiplicity(J, M), "=", rees_mixed(J, M))
