"""
The nu_e ladder in characteristic p
===================================

nu_e is the least N with a^N inside the bracket power J^[p^e]; the ratios
nu_e / p^e increase toward the F-threshold.
"""

# %%
from idealaudit import GF, IdealHandle, RingPresentation
from idealaudit.frobenius import check_crll, check_hmtw_dim2, fthreshold_estimate

R = RingPresentation(GF(5), ("x", "y"))
m = IdealHandle.maximal(R)
seq = fthreshold_estimate(m, m, 3)
print("nu:", seq.entries)
print("estimates:", {e: str(v) for e, v in seq.estimates.items()}, "closed form", seq.regular_closed_form)

# %%
J = IdealHandle.parse(R, "x^2", "y^3")
seq = fthreshold_estimate(m, J, 2)
print("nu for (x^2, y^3):", seq.entries, "threshold", seq.regular_closed_form)
for v in (check_hmtw_dim2(J), check_crll(J)):
    print(v.name, v.lhs, "<=", v.rhs, "holds" if v.holds else "violated")
