"""One pass/fail line per acceptance criterion, printed in the pytest summary."""

import time

import numpy as np
import pytest

import test_automaton
import test_cartier
import test_furstenberg
import test_series
from christol.automaton import evaluate_range
from christol.corpus import random_instances
from christol.gf import make_field
from christol.pipeline import compile_instance
from christol.polynomial import parse_poly
from conftest import ACCEPTANCE_LINES, CORPUS_SEED, CORPUS_SIZE

F2, F3 = make_field(2), make_field(3)


def record(name, ok, detail=""):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    assert ok, detail


def timed_compile(text, prefix, F=F2):
    t = time.perf_counter()
    comp = compile_instance(parse_poly(text, F), prefix, forward=True, verify=4096)
    return comp, comp.report, time.perf_counter() - t


# --- criterion 1: worked instances -------------------------------------------------

def test_c1_powers_of_two():
    comp, rep, dt = timed_compile("y^2+y+x", [0])
    ok = (rep.comp_reverse == 3 and int(rep.bounds.smooth_bound) == 17
          and rep.verification.agreement and rep.verification.ok and dt < 10)
    record("1a  y^2+y+x: comp=3, smooth_bound=17, exact to 4096", ok,
           f"comp={rep.comp_reverse} bound={int(rep.bounds.smooth_bound)} {dt:.2f}s")


def test_c1_thue_morse():
    comp, rep, dt = timed_compile("(1+x)^3*y^2 + (1+x)^2*y + x", [0])
    agree = np.array_equal(evaluate_range(comp.forward, 4096), evaluate_range(comp.reverse, 4096))
    ok = (rep.comp_reverse == 2 and (rep.d, rep.h) == (2, 3)
          and int(rep.bounds.smooth_bound) == 257 and agree and rep.verification.ok and dt < 10)
    record("1b  Thue-Morse: comp=2, d=2, h=3, smooth_bound=257, readings agree", ok,
           f"comp={rep.comp_reverse} fwd={rep.comp_forward} {dt:.2f}s")


def test_c1_rational():
    comp, rep, dt = timed_compile("(1+x)*y+x", [0])
    ok = rep.comp_reverse == 2 and (rep.d, rep.h) == (1, 1) and rep.verification.ok and dt < 10
    record("1c  (1+x)y+x: comp=2, d=1, h=1", ok, f"comp={rep.comp_reverse} {dt:.2f}s")


def test_c1_singular():
    comp, rep, dt = timed_compile("y^2+x*y+x^3", [0, 0, 1])
    ok = ((rep.r, rep.s, comp.prep.t0, rep.comp_reverse) == (2, 3, 1, 5)
          and int(rep.bounds.general_bound) == 514 and rep.verification.ok and dt < 10)
    record("1d  y^2+xy+x^3: r=2, s=3, t0=1, comp=5, general_bound=514", ok,
           f"r={rep.r} s={rep.s} comp={rep.comp_reverse} {dt:.2f}s")


def test_c1_sqrt_over_f3():
    comp, rep, dt = timed_compile("y^2-(1+x)", [1], F3)
    ver = rep.verification
    ok = (rep.r == 0 and int(comp.reverse.out[comp.reverse.initial]) == 1
          and ver.oracle_exact and rep.comp_reverse == ver.oracle_count and ver.ok and dt < 10)
    record("1e  y^2-(1+x) over F_3: r=0, a0=1, comp = oracle count", ok,
           f"comp={rep.comp_reverse} oracle={ver.oracle_count} {dt:.2f}s")


# --- criterion 2: bound suite --------------------------------------------------------

def test_c2_bound_suite():
    t = time.perf_counter()
    corpus = random_instances(CORPUS_SIZE, seed=CORPUS_SEED)
    reps = [compile_instance(I.P, I.prefix, forward=True, verify=0).report for I in corpus]
    dt = time.perf_counter() - t
    cells = {(r.q, r.d, r.h) for r in reps}
    covered = cells == {(q, d, h) for q in (2, 3, 4) for d in (1, 2, 3) for h in (1, 2, 3)}
    bad = [I.name for I, r in zip(corpus, reps) if not all(r.bound_checks().values())]
    ok = len(reps) >= 200 and covered and not bad and dt < 300
    record("2   bound suite: comp_reverse <= bound, comp_forward <= q^m_span", ok,
           f"{len(reps)} instances, {len(bad)} violations, {dt:.1f}s")


# --- criterion 3: property suites ----------------------------------------------------

PROPERTIES = [
    ("3a  section of F*G^q", test_cartier.test_product_rule, ()),
    ("3b  degree contraction", test_cartier.test_degree_contraction, ()),
    ("3c  diagonal commutes with sections", test_series.test_diagonal_commutes_with_sections, ()),
    ("3d  Furstenberg identity on corpus", test_furstenberg.test_furstenberg_identity, ("corpus",)),
    ("3e  r <= h(2d-1) on corpus", test_furstenberg.test_preparation_invariants, ("corpus",)),
    ("3f  degree fixpoint on every state", test_cartier.test_degree_fixpoint_on_every_state,
     ("compiled",)),
    ("3g  minimization idempotence", test_automaton.test_minimize_idempotent, ()),
    ("3h  serialization round-trip", test_automaton.test_serialize_roundtrip, ()),
    ("3i  padding invariance", test_automaton.test_padding_invariance, ("compiled",)),
]


@pytest.mark.parametrize("name,fn,needs", PROPERTIES, ids=[p[0][:3].strip() for p in PROPERTIES])
def test_c3_property(request, name, fn, needs):
    args = [request.getfixturevalue(n) for n in needs]
    try:
        fn(*args)
        ok, detail = True, ""
    except AssertionError as exc:
        ok, detail = False, str(exc).splitlines()[0] if str(exc) else "assertion failed"
    record(name, ok, detail)
