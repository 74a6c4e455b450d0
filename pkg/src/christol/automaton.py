"""
Automata with output built from the kernel orbit.

`orbit_closure` explores the states reachable from the initial kernel state
under the q section operators and records them as a reverse-reading DFAO
(least significant digit first).  `minimize` is Moore partition refinement;
applied to the raw reverse automaton it yields exactly one state per element
of the q-kernel.  `forward_construct` dualises the linear span of the orbit:
forward states are linear functionals psi, moved by psi -> psi o M_l.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .cartier import (LinearModel, SpanBuilder, fp_collapse, fp_expand, fp_matrix,
                      initial_state, state_vector)
from .errors import InvariantBreach, StateExplosion
from .gf import FqElem, make_field

DEFAULT_STATE_CAP = 10 ** 6


@dataclass(eq=False)
class Dfao:
    """Deterministic finite automaton with output over digits 0..q-1."""

    field: object
    q: int
    initial: int
    delta: np.ndarray     # shape (n_states, q)
    out: np.ndarray       # element codes, shape (n_states,)
    reading: str = "reverse"

    @property
    def n_states(self):
        return int(self.delta.shape[0])

    def output(self, state):
        return FqElem(self.field, self.out[state])

    def run(self, digits):
        """Feed digits in the given order, return the output element."""
        s = self.initial
        for dgt in digits:
            s = int(self.delta[s, dgt])
        return FqElem(self.field, self.out[s])

    def __call__(self, n):
        return evaluate(self, n)

    def same_as(self, other):
        return (self.field == other.field and self.q == other.q
                and self.initial == other.initial and self.reading == other.reading
                and np.array_equal(self.delta, other.delta)
                and np.array_equal(self.out, other.out))

    def __repr__(self):
        return f"Dfao({self.n_states} states, q={self.q}, {self.reading})"


def digits_lsb(n, q):
    """Base-q digits of n, least significant first; [] for n = 0."""
    out = []
    while n:
        n, d = divmod(n, q)
        out.append(d)
    return out


def evaluate(a, n):
    """a_n: digits of n fed least significant first (reverse reading) or most
    significant first (forward reading)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    digits = digits_lsb(n, a.q)
    if a.reading == "forward":
        digits.reverse()
    return a.run(digits)


def evaluate_range(a, count):
    """Codes of a_0 .. a_{count-1}, vectorized over n."""
    n = np.arange(count, dtype=np.int64)
    state = np.full(count, a.initial, dtype=np.int64)
    if a.reading == "reverse":
        rest = n.copy()
        while rest.any():
            live = rest > 0
            state[live] = a.delta[state[live], rest[live] % a.q]
            rest //= a.q
    else:
        width = len(digits_lsb(max(count - 1, 0), a.q))
        for pos in range(width - 1, -1, -1):
            digit = (n // a.q ** pos) % a.q
            # leading zeros are fed too; forward automata ignore them
            state = a.delta[state, digit]
    return a.out[state]


# --- construction -------------------------------------------------------------------------

_CHUNK = 8192


def _packer(p, n):
    """Row packer F_p^n -> bytes, used as dictionary keys."""
    if p == 2:
        return lambda rows: np.packbits(rows, axis=1)
    k = max(1, int(np.log(256) / np.log(p)))
    width = -(-n // k)
    weights = (p ** np.arange(k)).astype(np.int64)

    def pack(rows):
        pad = np.zeros((rows.shape[0], width * k), dtype=np.int64)
        pad[:, :n] = rows
        return (pad.reshape(-1, width, k) @ weights).astype(np.uint8)
    return pack


def linear_bfs(start, mats, p, cap=DEFAULT_STATE_CAP, what="states"):
    """FIFO closure of `start` under the F_p-linear maps v -> v @ mats[l].

    Frontiers are expanded in blocks, but numbering is exactly that of the
    one-at-a-time BFS (first discovery, digits ascending).  Returns the
    visited vectors (uint8, in id order) and the transition table.
    """
    q, n = mats.shape[0], mats.shape[1]
    big = np.ascontiguousarray(mats.transpose(1, 0, 2).reshape(n, q * n)).astype(np.float64)
    pack = _packer(p, n)
    start = np.asarray(start, dtype=np.uint8).reshape(1, n)
    index = {pack(start).tobytes(): 0}
    found = [start]
    rows = []
    frontier = start
    count = 1
    while len(frontier):
        nxt = []
        for lo in range(0, len(frontier), _CHUNK):
            block = frontier[lo: lo + _CHUNK]
            kids = np.rint(block.astype(np.float64) @ big).astype(np.int64) % p
            kids = kids.reshape(-1, n).astype(np.uint8)
            packed = pack(kids)
            w = packed.shape[1]
            raw = packed.tobytes()
            ids = np.empty(len(kids), dtype=np.int64)
            fresh = []
            for k in range(len(kids)):
                key = raw[k * w:(k + 1) * w]
                sid = index.get(key)
                if sid is None:
                    sid = count
                    count += 1
                    if count > cap:
                        raise StateExplosion(f"more than {cap} {what}")
                    index[key] = sid
                    fresh.append(k)
                ids[k] = sid
            rows.append(ids.reshape(-1, q))
            if fresh:
                nxt.append(kids[fresh])
        frontier = np.concatenate(nxt) if nxt else np.zeros((0, n), dtype=np.uint8)
        if len(frontier):
            found.append(frontier)
    return np.concatenate(found), np.concatenate(rows)


class OrbitStates(Sequence):
    """The orbit as a read-only list of KernelState, materialized on access."""

    def __init__(self, model, vectors):
        self.model = model
        self.vectors = vectors

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(len(self)))]
        return self.model.state(self.vectors[k])

    def codes(self, k):
        return self.model.codes(self.vectors[k])


def orbit_closure(prep, cap=DEFAULT_STATE_CAP, start=None):
    """BFS over kernel states; returns (states, raw reverse Dfao)."""
    F = prep.field
    model = LinearModel(prep)
    init = initial_state(prep) if start is None else start
    vectors, delta = linear_bfs(model.flatten(init), model.mats, F.p, cap)
    out = model.outputs(vectors)
    return OrbitStates(model, vectors), Dfao(F, F.q, 0, delta, out, "reverse")


def _state_codes(states, k, prep):
    if isinstance(states, OrbitStates):
        return states.codes(k)
    return state_vector(states[k], prep)


def _reachable(a):
    seen = np.zeros(a.n_states, dtype=bool)
    order = [a.initial]
    seen[a.initial] = True
    k = 0
    while k < len(order):
        s = order[k]
        k += 1
        for t in a.delta[s]:
            if not seen[t]:
                seen[t] = True
                order.append(int(t))
    return order


def minimize(a):
    """Moore partition refinement.  The result is numbered in BFS order from
    the initial state (digits ascending), so equal automata compare equal."""
    keep = _reachable(a)
    remap = np.full(a.n_states, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    delta = remap[a.delta[keep]]
    out = a.out[keep]
    _, blocks = np.unique(out, return_inverse=True)
    blocks = blocks.reshape(-1)
    count = int(blocks.max()) + 1 if len(blocks) else 0
    while True:
        signature = np.column_stack([blocks, blocks[delta]])
        _, new_blocks = np.unique(signature, axis=0, return_inverse=True)
        new_blocks = new_blocks.reshape(-1)
        new_count = int(new_blocks.max()) + 1
        blocks = new_blocks
        if new_count == count:
            break
        count = new_count
    # canonical numbering by BFS over blocks
    start = int(blocks[0])
    block_delta = np.zeros((count, a.q), dtype=np.int64)
    block_out = np.zeros(count, dtype=np.int64)
    block_delta[blocks] = blocks[delta]
    block_out[blocks] = out
    order = [start]
    pos = {start: 0}
    k = 0
    while k < len(order):
        b = order[k]
        k += 1
        for t in block_delta[b]:
            t = int(t)
            if t not in pos:
                pos[t] = len(order)
                order.append(t)
    perm = np.array([pos[b] for b in range(count)], dtype=np.int64)
    new_delta = np.zeros((count, a.q), dtype=np.int64)
    new_delta[perm] = perm[block_delta]
    new_out = np.zeros(count, dtype=np.int64)
    new_out[perm] = block_out
    return Dfao(a.field, a.q, 0, new_delta, new_out, a.reading)


def krylov_span(states, raw, prep):
    """Basis of the span of the orbit, grown from the initial state.

    Returns (basis_ids, matrices) where matrices[l][:, k] holds the
    coordinates of the l-successor of basis state k.
    """
    F = prep.field
    q = F.q
    first = _state_codes(states, raw.initial, prep)
    sb = SpanBuilder(F, len(first))
    basis = []
    queue = deque([raw.initial])
    seen = {raw.initial}
    while queue:
        sid = queue.popleft()
        _, new = sb.add(_state_codes(states, sid, prep))
        if not new:
            continue
        basis.append(sid)
        for t in raw.delta[sid]:
            t = int(t)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    m = sb.dim
    mats = np.zeros((q, m, m), dtype=np.int64)
    for k, sid in enumerate(basis):
        for l in range(q):
            c = sb.coordinates(_state_codes(states, int(raw.delta[sid, l]), prep))
            mats[l, : len(c), k] = c
    return basis, mats


def forward_construct(states, raw, prep, cap=DEFAULT_STATE_CAP):
    """Forward-reading DFAO from the dual action on the orbit span.

    The returned automaton is not yet minimized; it has at most q^m states
    where m = dimension of the span.
    """
    F = prep.field
    q = F.q
    basis, mats = krylov_span(states, raw, prep)
    m = len(basis)
    if m == 0:
        delta = np.zeros((1, q), dtype=np.int64)
        return Dfao(F, q, 0, delta, np.zeros(1, dtype=np.int64), "forward")
    psi0 = np.array([raw.out[sid] for sid in basis], dtype=np.int64)
    if not np.array_equal(F.matmul(psi0[None, :], mats[0])[0], psi0):
        raise InvariantBreach("output functional is not fixed by the 0-section")
    # the initial state is basis element 0, so psi(init) = psi[0]
    dual = fp_matrix(F, lambda psi: F.matmul(psi[None, :], mats)[:, 0, :], m)
    funcs, delta = linear_bfs(fp_expand(F, psi0), dual, F.p, cap, "forward states")
    out = fp_collapse(F, funcs[:, : F.e])[:, 0]
    return Dfao(F, q, 0, delta, out, "forward")


def span_dimension(states, raw, prep):
    return len(krylov_span(states, raw, prep)[0])


# --- serialization -------------------------------------------------------------------------

def serialize(a, fmt="json"):
    if fmt == "json":
        obj = {
            "q": a.q,
            "reading": a.reading,
            "initial": a.initial,
            "outputs": [a.field.format_code(int(c)) for c in a.out],
            "delta": [[int(t) for t in row] for row in a.delta],
        }
        return json.dumps(obj, separators=(",", ":"))
    if fmt == "dot":
        lines = ["digraph dfao {", "  rankdir=LR;", "  __start [shape=point];"]
        for s in range(a.n_states):
            label = f"s{s}/{a.field.format_code(int(a.out[s]))}"
            lines.append(f'  s{s} [shape=circle, label="{label}"];')
        lines.append(f"  __start -> s{a.initial};")
        for s in range(a.n_states):
            for d in range(a.q):
                lines.append(f'  s{s} -> s{int(a.delta[s, d])} [label="{d}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_json(text, field=None):
    """Inverse of serialize(a, "json").  A prime field is inferred from q
    when `field` is omitted."""
    obj = json.loads(text)
    q = int(obj["q"])
    if field is None:
        field = make_field(q)
    if field.q != q:
        raise ValueError(f"field has q = {field.q}, automaton has q = {q}")
    out = np.array([field.parse_element(s) for s in obj["outputs"]], dtype=np.int64)
    delta = np.array(obj["delta"], dtype=np.int64).reshape(len(out), q)
    return Dfao(field, q, int(obj["initial"]), delta, out, obj["reading"])
