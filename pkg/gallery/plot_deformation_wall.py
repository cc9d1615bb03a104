"""
Jumps along a deformation of an abelian structure
=================================================

The h4 abelian structure deforms into Family I with D = (a² - 1)/(4a²).
At a = 0 the ∂∂̄ defects f_2 and k_1 are positive; they vanish for small a ≠ 0,
and h^{BC}_{1,1} rises to 5 exactly at a = 1/3.
"""

from bcnil.deformations import sweep

samples = ["0", "1/10", "1/4", "1/3", "1/2", "4/5"]
table = sweep("h4Abelian", samples, ["f2", "k1", "bc11", "bc31", "dolb02"])

print("a      " + "  ".join(f"{q:>6}" for q in table.quantities))
for row in table.rows:
    mark = " <- wall" if row.on_wall else ""
    print(f"{str(row.a):6} " + "  ".join(f"{row.values[q]:>6}" for q in table.quantities) + mark)

###############################################################################
# The same sweep with worker threads gives an identical table.

assert sweep("h4Abelian", samples, table.quantities, workers=4).to_json() == table.to_json()
