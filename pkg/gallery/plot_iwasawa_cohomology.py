"""
Cohomology tables of the Iwasawa manifold
=========================================

Bott-Chern, Aeppli and Dolbeault dimensions of the complex-parallelizable
structure dω³ = ω¹², and the eight classes spanning H^{2,2}_BC.
"""

from bcnil.cli import format_form
from bcnil.cohomology import bott_chern, dimension_table
from bcnil.structures import iwasawa

s = iwasawa()
for j, f in enumerate(s.equations, start=1):
    print(f"dω^{j} =", format_form(f))

###############################################################################
# Dimensions indexed by (p, q); rows are p.

for theory in ("bottChern", "aeppli", "dolbeault"):
    print(theory)
    for p, row in enumerate(dimension_table(s, theory)):
        print("  ", p, row)

###############################################################################
# Betti numbers come from the real de Rham complex of the same algebra.

print("betti", s.betti_numbers())

###############################################################################
# Representatives of H^{2,2}_BC.  Any other choice differs by ∂∂̄-exact forms.

for form in bott_chern(s, 2, 2).representatives:
    print("  ", format_form(form))
