"""A root that is not smooth at the origin: y^2 + x y + x^3 over F_2.

dP/dy = x vanishes at 0, so the root must first be pinned by the prefix
(0, 0, 1) of length r + 1 = 3.  After shifting out that prefix the rest is a
diagonal, and the kernel has 5 elements.
"""

from christol import compile_instance, make_field, parse_poly, root_prefixes, degree_height
from christol.automaton import evaluate

F = make_field(2)
P = parse_poly("y^2 + x*y + x^3", F)
md = degree_height(P)
print("d, h =", md.d, md.h)
print("prefixes:", [[int(c) for c in pre] for pre in root_prefixes(md)])

comp = compile_instance(P, [0, 0, 1])
prep, rep = comp.prep, comp.report
print(f"r={prep.r} s={prep.s} t0={prep.t0}")
print("D =", prep.D)
print("N0 =", prep.N0)
print(f"raw states {rep.states_raw}, kernel size {rep.comp_reverse}, "
      f"bound {int(rep.bounds.general_bound)}, oracle ok {rep.verification.ok}")

# the root is sum x^(2^n + 1) over n >= 0
print("support below 70:", [n for n in range(70) if evaluate(comp.reverse, n) == 1])
