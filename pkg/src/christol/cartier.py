"""
Two-dimensional section operators and the exact kernel-state transition.

A kernel state (T, N) stands for the series T(x) + Diag(N / D), where D is
the fixed unit denominator of a `Preparation`.  Applying the section
operator for digit l to such a series gives another state of the same shape:

    T' = sections_l(T),   N' = Lambda_{l,l}(N * D^(q-1))

since Lambda_{l,l}(N / D) = Lambda_{l,l}(N * D^(q-1)) / D and sections
commute with taking diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DigitOutOfRange, InvariantBreach
from .polynomial import BPoly, UPoly


@dataclass(frozen=True, eq=False)
class KernelState:
    T: UPoly
    N: BPoly

    def key(self):
        return (self.T.coeffs.tobytes(), self.N.codes.shape, self.N.codes.tobytes())

    def __eq__(self, other):
        return isinstance(other, KernelState) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_zero(self):
        return self.T.is_zero() and self.N.is_zero()

    def __repr__(self):
        return f"KernelState(T={self.T}, N={self.N})"


def initial_state(prep):
    return KernelState(prep.V, prep.N_init)


def cartier2_poly(B, i, j):
    """Lambda_{i,j} on a polynomial: keep x^(qn+i) y^(qm+j) as x^n y^m."""
    q = B.field.q
    if not (0 <= i < q and 0 <= j < q):
        raise DigitOutOfRange(f"digits ({i}, {j}) out of range for q = {q}")
    if B.is_zero():
        return B
    return BPoly._raw(B.field, B.codes[i::q, j::q])


def cartier1_poly(U, digit):
    q = U.field.q
    if not 0 <= digit < q:
        raise DigitOutOfRange(f"digit {digit} out of range for q = {q}")
    return UPoly._raw(U.field, U.coeffs[digit::q])


def transitions(state, prep):
    """All q successor states, sharing one product N * D^(q-1)."""
    q = prep.field.q
    prod = state.N * prep.D_pow
    return [KernelState(cartier1_poly(state.T, l), cartier2_poly(prod, l, l))
            for l in range(q)]


def transition(state, digit, prep):
    q = prep.field.q
    if not 0 <= digit < q:
        raise DigitOutOfRange(f"digit {digit} out of range for q = {q}")
    return KernelState(cartier1_poly(state.T, digit),
                       cartier2_poly(state.N * prep.D_pow, digit, digit))


def state_output(state, prep):
    """Constant term of T + Diag(N / D), i.e. T(0) + N(0,0) / D(0,0)."""
    F = prep.field
    t0 = state.T[0]
    n00 = state.N.coeff(0, 0)
    return t0 + n00 / prep.D.coeff(0, 0)


def check_degree_box(state, prep):
    """Numerators never leave the box max(deg N_init, deg D) in x and y."""
    N = state.N
    if N.is_zero():
        return
    if N.deg_x > prep.max_deg_x or N.deg_y > prep.max_deg_y:
        raise InvariantBreach(
            f"numerator degrees ({N.deg_x}, {N.deg_y}) left the box "
            f"({prep.max_deg_x}, {prep.max_deg_y})")
    if state.T.deg > prep.r:
        raise InvariantBreach("polynomial part exceeds degree r")


# --- linear algebra on states -------------------------------------------------------------

def state_vector(state, prep):
    """Flatten (T, N) into the ambient coordinate space of the preparation."""
    r = prep.r
    X, Y = prep.max_deg_x + 1, prep.max_deg_y + 1
    vec = np.zeros(r + 1 + X * Y, dtype=np.int64)
    t = state.T.coeffs
    vec[: len(t)] = t
    box = np.zeros((X, Y), dtype=np.int64)
    n = state.N.codes
    box[: n.shape[0], : n.shape[1]] = n
    vec[r + 1:] = box.reshape(-1)
    return vec


def state_from_vector(vec, prep):
    """Inverse of state_vector."""
    r = prep.r
    X, Y = prep.max_deg_x + 1, prep.max_deg_y + 1
    vec = np.asarray(vec, dtype=np.int64)
    return KernelState(UPoly._raw(prep.field, vec[: r + 1]),
                       BPoly._raw(prep.field, vec[r + 1:].reshape(X, Y)))


def fp_expand(F, codes):
    """Code vectors (..., n) -> F_p digit vectors (..., n*e), digit index fastest."""
    c = F.coords(codes)                     # (e, ..., n)
    return np.moveaxis(c, 0, -1).reshape(c.shape[1:-1] + (-1,))


def fp_collapse(F, digits):
    """Inverse of fp_expand."""
    d = np.asarray(digits, dtype=np.int64)
    d = d.reshape(d.shape[:-1] + (-1, F.e))
    return F.from_coords(np.moveaxis(d, -1, 0))


def fp_matrix(F, apply, n):
    """F_p matrix (row convention) of an F_p-linear map on F_q^n.

    `apply` sends a code vector of length n to a code array of shape (..., k);
    the result has shape (..., n*e, k*e).
    """
    rows = []
    for pos in range(n):
        for t in range(F.e):
            v = np.zeros(n, dtype=np.int64)
            v[pos] = F.p ** t
            rows.append(fp_expand(F, apply(v)))
    return np.moveaxis(np.array(rows, dtype=np.int64), 0, -2)


def transition_table(prep):
    """Successors of the unit vectors of the degree box, as code vectors.

    Entry [k, l] is state_vector(transition(e_k, l)).  For a monomial
    x^i y^j the product with D^(q-1) is a shifted copy, so each section is
    read straight out of D^(q-1).
    """
    q = prep.field.q
    r = prep.r
    X, Y = prep.max_deg_x + 1, prep.max_deg_y + 1
    n = r + 1 + X * Y
    Dp = prep.D_pow.codes
    out = np.zeros((n, q, n), dtype=np.int64)
    for k in range(r + 1):
        out[k, k % q, k // q] = 1
    for i in range(X):
        for j in range(Y):
            pos = r + 1 + i * Y + j
            for l in range(q):
                # N'[u, v] = Dp[q*u + l - i, q*v + l - j]
                a0, b0 = (l - i) % q, (l - j) % q
                ua, vb = (a0 + i - l) // q, (b0 + j - l) // q
                sec = Dp[a0::q, b0::q]
                if sec[max(X - ua, 0):].any() or sec[:, max(Y - vb, 0):].any():
                    raise InvariantBreach("a successor numerator left the degree box")
                sec = sec[: max(X - ua, 0), : max(Y - vb, 0)]
                box = np.zeros((X, Y), dtype=np.int64)
                box[ua: ua + sec.shape[0], vb: vb + sec.shape[1]] = sec
                out[pos, l, r + 1:] = box.reshape(-1)
    return out


class LinearModel:
    """The kernel transitions as F_p matrices on the degree box.

    A state is flattened by `state_vector` and then expanded into F_p digits;
    `mats[l]` maps it to its l-successor and `out_mat` to the digits of its
    output.  Building the model checks that the box is invariant.
    """

    def __init__(self, prep):
        self.prep = prep
        F = self.field = prep.field
        self.n = prep.r + 1 + (prep.max_deg_x + 1) * (prep.max_deg_y + 1)
        child = transition_table(prep)                      # (n, q, n) codes
        mats = np.zeros((F.q, self.n * F.e, self.n * F.e), dtype=np.int64)
        for t in range(F.e):
            scaled = fp_expand(F, F.scale(F.p ** t, child))  # (n, q, n*e)
            mats[:, t::F.e, :] = scaled.transpose(1, 0, 2)
        self.mats = mats
        self.out_mat = fp_matrix(
            F, lambda v: np.array([state_output(state_from_vector(v, prep), prep).code]),
            self.n)

    def flatten(self, state):
        check_degree_box(state, self.prep)
        return fp_expand(self.field, state_vector(state, self.prep)).astype(np.uint8)

    def codes(self, flat):
        return fp_collapse(self.field, flat)

    def state(self, flat):
        return state_from_vector(self.codes(flat), self.prep)

    def series_matrix(self, prec):
        """F_p matrix sending a flattened state to the digits of the first
        `prec` coefficients of T + Diag(N / D)."""
        from .series import bi_inverse
        prep, F = self.prep, self.field
        r, Y = prep.r, prep.max_deg_y + 1
        inv = bi_inverse(F, prep.D.codes, 2 * prec)
        cols = np.zeros((self.n, prec), dtype=np.int64)
        for k in range(min(r + 1, prec)):
            cols[k, k] = 1
        idx = np.arange(prec)
        for i in range(prep.max_deg_x + 1):
            for j in range(Y):
                # Diag(x^i y^j / D)_n = (1/D)_{n-i, n-j}
                a, b = idx - i, idx - j
                ok = (a >= 0) & (b >= 0)
                cols[r + 1 + i * Y + j, ok] = inv[a[ok], b[ok]]
        rows = [fp_expand(F, F.scale(F.p ** t, cols[pos]))
                for pos in range(self.n) for t in range(F.e)]
        return np.array(rows, dtype=np.int64)

    def series(self, flats, prec, chunk=4096):
        """Codes of the first `prec` coefficients for each flattened state."""
        F = self.field
        S = self.series_matrix(prec).astype(np.float64)
        flats = np.asarray(flats).reshape(-1, S.shape[0])
        out = np.zeros((len(flats), prec), dtype=np.int64)
        for lo in range(0, len(flats), chunk):
            block = flats[lo: lo + chunk].astype(np.float64) @ S
            out[lo: lo + chunk] = fp_collapse(F, np.rint(block).astype(np.int64) % F.p)
        return out

    def outputs(self, flats):
        digits = (np.asarray(flats, dtype=np.int64) @ self.out_mat) % self.field.p
        return fp_collapse(self.field, digits)[..., 0]


class SpanBuilder:
    """Incremental Gaussian elimination over F_q.

    Vectors are added one at a time; a vector independent of the previous
    ones becomes a new basis element.  For every added vector the exact
    coordinates in the current basis are returned.
    """

    def __init__(self, field, length):
        self.field = field
        self.length = length
        self.rows = []      # echelon rows, pivot entry 1
        self.pivots = []
        self.combos = []    # echelon row k = sum_t combos[k][t] * basis[t]

    @property
    def dim(self):
        return len(self.rows)

    def _reduce(self, vec):
        F = self.field
        v = np.asarray(vec, dtype=np.int64).copy()
        coeffs = []
        for row, piv in zip(self.rows, self.pivots):
            c = int(v[piv])
            coeffs.append(c)
            if c:
                v = F.sub(v, F.scale(c, row))
        return v, coeffs

    def _combine(self, coeffs, m):
        F = self.field
        out = np.zeros(m, dtype=np.int64)
        for c, combo in zip(coeffs, self.combos):
            if c:
                out[: len(combo)] = F.add(out[: len(combo)], F.scale(c, combo))
        return out

    def coordinates(self, vec):
        """Coordinates of a vector lying in the span; raises otherwise."""
        v, coeffs = self._reduce(vec)
        if v.any():
            raise ValueError("vector is not in the span")
        return self._combine(coeffs, self.dim)

    def add(self, vec):
        """Returns (coordinates, is_new_basis_element)."""
        F = self.field
        v, coeffs = self._reduce(vec)
        if not v.any():
            return self._combine(coeffs, self.dim), False
        m = self.dim
        piv = int(np.flatnonzero(v)[0])
        inv = F.inv_code(int(v[piv]))
        # v = new_basis - sum_k coeffs[k] * E_k
        combo = F.neg(self._combine(coeffs, m + 1))
        combo[m] = 1
        self.rows.append(F.scale(inv, v))
        self.pivots.append(piv)
        self.combos.append(F.scale(inv, combo))
        coords = np.zeros(m + 1, dtype=np.int64)
        coords[m] = 1
        return coords, True


def state_vectorize(states, prep):
    """Basis (indices into `states`) of the span and coordinates of each state."""
    if not states:
        raise ValueError("state_vectorize needs at least one state")
    F = prep.field
    sb = SpanBuilder(F, len(state_vector(states[0], prep)))
    basis = []
    raw = []
    for k, st in enumerate(states):
        coords, new = sb.add(state_vector(st, prep))
        if new:
            basis.append(k)
        raw.append(coords)
    m = sb.dim
    coords = np.zeros((len(states), m), dtype=np.int64)
    for k, c in enumerate(raw):
        coords[k, : len(c)] = c
    return basis, coords


def cartier2_series(g, i, j):
    """Lambda_{i,j} on a total-degree truncation (re-exported from series)."""
    from .series import cartier2_series as _c2
    return _c2(g, i, j)

