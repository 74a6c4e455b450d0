import json

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from christol.automaton import (Dfao, digits_lsb, evaluate, evaluate_range, forward_construct,
                                krylov_span, linear_bfs, minimize, orbit_closure, parse_json,
                                serialize)
from christol.cartier import KernelState, LinearModel, initial_state
from christol.furstenberg import degree_height, prepare
from christol.gf import make_field
from christol.polynomial import BPoly, UPoly, parse_poly
from christol.series import expand_root

F2, F3 = make_field(2), make_field(3)
THUE_MORSE = "(1+x)^3*y^2 + (1+x)^2*y + x"


def build(text, prefix, F=F2):
    P = parse_poly(text, F)
    prep = prepare(degree_height(P), prefix)
    states, raw = orbit_closure(prep)
    return P, prep, states, raw


def ints(codes):
    return [int(c) for c in codes]


def test_smooth_example_raw_and_minimal():
    P, prep, states, raw = build("y^2+y+x", [0])
    assert raw.n_states >= 3
    assert np.array_equal(evaluate_range(raw, 4096), expand_root(P, [0], 4096).coeffs)
    assert minimize(raw).n_states == 3


def test_rational_example():
    _, _, _, raw = build("(1+x)*y+x", [0])
    assert ints(evaluate_range(raw, 32)) == [0] + [1] * 31
    assert minimize(raw).n_states == 2


def test_zero_start_state():
    prep = prepare(degree_height(parse_poly("y^2+y+x", F2)), [0])
    zero = KernelState(UPoly(F2, []), BPoly(F2))
    _, raw = orbit_closure(prep, start=zero)
    assert raw.n_states == 1
    assert ints(raw.delta[0]) == [0, 0] and raw.out[0] == 0


def test_minimized_sizes():
    for text, pre, want in [("y^2+y+x", [0], 3), (THUE_MORSE, [0], 2),
                            ("y^2+x*y+x^3", [0, 0, 1], 5)]:
        assert minimize(build(text, pre)[3]).n_states == want


def test_thue_morse_both_readings():
    P, prep, states, raw = build(THUE_MORSE, [0])
    rev = minimize(raw)
    fwd = minimize(forward_construct(states, raw, prep))
    tm = [bin(n).count("1") % 2 for n in range(4096)]
    assert ints(evaluate_range(rev, 4096)) == tm
    assert ints(evaluate_range(fwd, 4096)) == tm
    assert evaluate(rev, 3) == 0 and evaluate(fwd, 3) == 0
    assert evaluate(rev, 0) == rev.out[rev.initial]


def test_smooth_example_forward():
    P, prep, states, raw = build("y^2+y+x", [0])
    fwd = minimize(forward_construct(states, raw, prep))
    m = len(krylov_span(states, raw, prep)[0])
    assert fwd.n_states <= 2 ** m
    assert np.array_equal(evaluate_range(fwd, 4096), evaluate_range(raw, 4096))


def test_powers_of_two_eval():
    rev = minimize(build("y^2+y+x", [0])[3])
    assert evaluate(rev, 8) == 1
    assert evaluate(rev, 6) == 0


def test_leading_zero_functional():
    for text, pre, F in [(THUE_MORSE, [0], F2), ("y^2+x*y+x^3", [0, 0, 1], F2),
                         ("y^2-(1+x)", [1], F3)]:
        _, prep, states, raw = build(text, pre, F)
        basis, mats = krylov_span(states, raw, prep)
        psi0 = raw.out[basis]
        assert np.array_equal(F.matmul(psi0[None, :], mats[0])[0], psi0)


def test_serialize_zero_automaton():
    a = Dfao(F2, 2, 0, np.zeros((1, 2), dtype=np.int64), np.zeros(1, dtype=np.int64))
    assert serialize(a, "json") == \
        '{"q":2,"reading":"reverse","initial":0,"outputs":["0"],"delta":[[0,0]]}'


def test_thue_morse_dot():
    rev = minimize(build(THUE_MORSE, [0])[3])
    dot = serialize(rev, "dot")
    assert dot.count("shape=circle") == 2
    assert 's0 [shape=circle, label="s0/0"]' in dot
    assert 's0 -> s0 [label="0"]' in dot and 's1 -> s1 [label="0"]' in dot
    assert 's0 -> s1 [label="1"]' in dot and 's1 -> s0 [label="1"]' in dot
    assert "__start -> s0" in dot


def _sequential_bfs(start, mats, p):
    index = {tuple(start): 0}
    found, delta = [tuple(start)], []
    k = 0
    while k < len(found):
        v = np.array(found[k], dtype=np.int64)
        row = []
        for M in mats:
            w = tuple(int(c) for c in (v @ M) % p)
            if w not in index:
                index[w] = len(found)
                found.append(w)
            row.append(index[w])
        delta.append(row)
        k += 1
    return np.array(found), np.array(delta)


@st.composite
def linear_systems(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    q = draw(st.integers(2, 3))
    n = draw(st.integers(1, 6))
    mats = np.array(draw(st.lists(st.integers(0, p - 1), min_size=q * n * n,
                                  max_size=q * n * n))).reshape(q, n, n)
    start = draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    return np.array(start), mats, p


@given(linear_systems())
def test_linear_bfs_matches_sequential(sys_):
    start, mats, p = sys_
    vecs, delta = linear_bfs(start, mats, p)
    want_v, want_d = _sequential_bfs(start, mats, p)
    assert np.array_equal(vecs, want_v)
    assert np.array_equal(delta, want_d)


def test_linear_bfs_numbering_on_orbit():
    prep = prepare(degree_height(parse_poly("y^2+x*y+x^3", F2)), [0, 0, 1])
    model = LinearModel(prep)
    start = model.flatten(initial_state(prep))
    vecs, delta = linear_bfs(start, model.mats, 2)
    want_v, want_d = _sequential_bfs(start, model.mats, 2)
    assert np.array_equal(vecs, want_v) and np.array_equal(delta, want_d)


# --- properties ------------------------------------------------------------------

@st.composite
def dfaos(draw):
    p, e = draw(st.sampled_from([(2, 1), (3, 1), (2, 2)]))
    F = make_field(p, e)
    q = F.q
    n = draw(st.integers(1, 8))
    delta = np.array(draw(st.lists(st.integers(0, n - 1), min_size=n * q,
                                   max_size=n * q))).reshape(n, q)
    out = np.array(draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n)))
    reading = draw(st.sampled_from(["reverse", "forward"]))
    return Dfao(F, q, draw(st.integers(0, n - 1)), delta, out, reading)


def _all_words(q, length):
    words = [[]]
    for _ in range(length):
        words = [w + [d] for w in words for d in range(q)]
    return words


@given(dfaos())
def test_serialize_roundtrip(a):
    text = serialize(a, "json")
    assert parse_json(text, a.field).same_as(a)
    assert list(json.loads(text)) == ["q", "reading", "initial", "outputs", "delta"]


@given(dfaos())
def test_minimize_preserves_function(a):
    m = minimize(a)
    assert m.n_states <= a.n_states
    for k in range(4):
        for w in _all_words(a.q, k):
            assert m.run(w) == a.run(w)


@given(dfaos())
def test_minimize_idempotent(a):
    m = minimize(a)
    assert minimize(m).same_as(m)


@settings(max_examples=200)
@given(st.integers(0, 10 ** 6), st.integers(0, 220), st.booleans())
def test_padding_invariance(compiled, n, k, forward):
    comp = compiled[k % len(compiled)]
    a = comp.forward if forward else comp.reverse
    digits = digits_lsb(n, a.q)
    padded = digits + [0, 0, 0]
    if forward:
        digits.reverse()
        padded.reverse()
    assert a.run(padded) == a.run(digits) == evaluate(a, n)


# --- every corpus instance -------------------------------------------------------

def test_exactness_on_corpus(corpus, compiled, oracles):
    for inst, comp, (want, _, _) in zip(corpus, compiled, oracles):
        assert np.array_equal(evaluate_range(comp.reverse, 4096), want), inst.name
        assert np.array_equal(evaluate_range(comp.forward, 4096), want), inst.name
        assert np.array_equal(evaluate_range(comp.raw, 4096), want), inst.name


def test_kernel_size_matches_oracle(corpus, compiled, oracles):
    exact = 0
    for inst, comp, (_, count, ok) in zip(corpus, compiled, oracles):
        assert comp.reverse.n_states <= comp.raw.n_states
        if ok:
            exact += 1
            assert comp.reverse.n_states == count, inst.name
    assert exact >= len(corpus) // 2


def test_minimization_idempotent_on_corpus(compiled):
    for comp in compiled:
        assert minimize(comp.reverse).same_as(comp.reverse)
        assert minimize(comp.forward).same_as(comp.forward)


def test_forward_bounded_by_span(compiled):
    for comp in compiled:
        rep = comp.report
        assert comp.forward.n_states <= rep.q ** rep.span_dim
        assert rep.span_dim <= LinearModel(comp.prep).n
