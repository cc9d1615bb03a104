"""
Reproducing the Bott-Chern tables
=================================

Every row of the shipped witness table is recomputed and compared cell by cell.
"""

from collections import Counter

from bcnil.report import COLUMNS, report

rows = report("all")
print(len(rows), "rows,", sum(r.match for r in rows), "match")
print(Counter(r.family for r in rows))

###############################################################################
# The h5 rows, the largest block.

print("row  " + " ".join(f"{c:>4}" for c in COLUMNS) + "  witness")
for r in rows:
    if r.algebra == "h5":
        print(f"{r.index:3}  " + " ".join(f"{v:>4}" for v in r.computed) + "  " + str(r.witness))

###############################################################################
# The balanced-structure table (scope "table1"): structures admitting balanced metrics.

for r in report("table1"):
    print(r.algebra, r.witness, r.computed, "balanced" if r.balanced_exists else "-")
