"""
Auditing the inequality suite
=============================

Each check is an exact comparison with a signed slack.  Hypotheses are
recorded next to the verdict, so a violation outside them is not mistaken
for a counterexample.
"""

# %%
from idealaudit import IdealHandle, QQ, RingPresentation
from idealaudit.auditor import AuditConfig, audit_family, closure_family, audit_ideal
from idealaudit.corpus import corpus_run
from idealaudit.monomial import enumerate_integrally_closed

base = RingPresentation(QQ, ("x", "y", "z"))
R = RingPresentation(QQ, base.variables, (base.parse("x^2+y^5+z^5"),), 2)
rec = audit_ideal(IdealHandle.parse(R, "x", "y^3", "y^2*z", "y*z^2", "z^3"))
for v in rec.verdicts:
    print(f"{v.name:8} {v.status:12} slack {v.slack}")

# %%
plane = RingPresentation(QQ, ("x", "y"))
family = [IdealHandle.from_monomial(plane, M) for M in enumerate_integrally_closed(2, 12)]
summary = audit_family(family, AuditConfig(checks=("A", "E")))
print(summary.count, "ideals;", summary.tallies)

# %%
# Which closures of (x^a, y^a, x^b y^c) meet e = ll * ord?
rows = closure_family(4)
print(sum(r.equality for r in rows), "of", len(rows), "are equality cases")

# %%
report = corpus_run()
print("corpus reproduced:", report.ok, report.diff())
