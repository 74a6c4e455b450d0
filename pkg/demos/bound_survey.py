"""Kernel sizes of random instances next to the bounds they must respect.

Prints one row per (q, d, h) cell: the largest kernel seen and the
smallest applicable bound in that cell.
"""

import sys
from collections import defaultdict

from christol import compile_instance
from christol.corpus import random_instances

count = int(sys.argv[1]) if len(sys.argv) > 1 else 81
cells = defaultdict(list)
for inst in random_instances(count, seed=0):
    rep = compile_instance(inst.P, inst.prefix, forward=True, verify=0).report
    assert all(rep.bound_checks().values()), inst.name
    bound = int(rep.bounds.applicable_reverse(rep.smooth))
    cells[rep.q, rep.d, rep.h].append((rep.comp_reverse, rep.comp_forward, bound))

print(f"{'q':>2} {'d':>2} {'h':>2} {'n':>3} {'max rev':>8} {'max fwd':>8} {'min bound':>12}")
for (q, d, h), rows in sorted(cells.items()):
    print(f"{q:>2} {d:>2} {h:>2} {len(rows):>3} {max(r[0] for r in rows):>8} "
          f"{max(r[1] for r in rows):>8} {min(r[2] for r in rows):>12}")
