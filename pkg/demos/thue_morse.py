"""Thue-Morse from its quadratic equation over F_2.

t(x) = sum t_n x^n satisfies (1+x)^3 y^2 + (1+x)^2 y + x = 0.  Compile the
root into both automata, print them as DOT and check the first terms.
"""

from christol import compile_instance, make_field, parse_poly, serialize
from christol.automaton import evaluate_range

F = make_field(2)
P = parse_poly("(1+x)^3*y^2 + (1+x)^2*y + x", F)
comp = compile_instance(P, [0], forward=True)

print(comp.report.to_json())
print(serialize(comp.reverse, "dot"))

terms = [int(c) for c in evaluate_range(comp.forward, 32)]
print("t_0..t_31 =", "".join(map(str, terms)))
assert terms == [bin(n).count("1") % 2 for n in range(32)]
