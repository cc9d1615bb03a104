"""
L^{2,2} for balanced metrics near the Iwasawa manifold
======================================================

The space of (2,2)-forms that are d-closed, have ∂∂̄-closed Hodge dual and
are orthogonal to F has dimension 7 on the Iwasawa manifold and drops to 5
on every nearby structure of the curve familyI(1, a, 0).
"""

from bcnil.cli import format_form
from bcnil.deformations import curve_at, transported_metric
from bcnil.hermitian import classify_metric, conformal_factor, l22

for a in ["0", "1/5", "1/2", "9/10"]:
    s = curve_at("iwasawa", a)
    m = transported_metric(a, t2=2)
    assert classify_metric(s, m).balanced
    print(f"a = {a}: dim L22 = {l22(s, m).dimension}")

###############################################################################
# A basis at a = 1/2.

s = curve_at("iwasawa", "1/2")
for form in l22(s, transported_metric("1/2")).basis:
    print("  ", format_form(form))

###############################################################################
# On the Iwasawa manifold the holomorphic volume form is closed, so the SU(3)
# conformal factor is defined; for the t² family it equals 1/t².

s0 = curve_at("iwasawa", "0")
for t2 in (1, 2, 5):
    print("t² =", t2, " e^{2f} =", conformal_factor(s0, transported_metric("0", t2)))
