"""
Truncated power series over F_q.

This module is the *oracle side* of the package: it expands algebraic roots
coefficient by coefficient, applies the one-dimensional section operators
(a_n) -> (a_{qn+l}) to truncations, expands bivariate rational functions and
takes diagonals.  `kernel_oracle` enumerates the q-kernel of a truncated
series by brute force, independently of the symbolic construction in
`christol.cartier` / `christol.automaton`.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np

from .errors import (AmbiguousContinuation, NoContinuation, NonUnitDenominator,
                     PrecisionExhausted)
from .gf import FqElem
from .polynomial import BPoly, compose_y, dpdy, shift_out

DEFAULT_PRECISION = 4096
DEFAULT_LMIN = 16


class TruncSeries:
    """sum_{n < prec} a_n x^n, i.e. a power series known to `prec` terms."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        if isinstance(coeffs, np.ndarray):
            self.coeffs = coeffs.astype(np.int64).reshape(-1)
        else:
            self.coeffs = np.array([field.code(c) for c in coeffs], dtype=np.int64)
        if len(self.coeffs) < 1:
            raise PrecisionExhausted("a truncated series needs precision >= 1")

    @property
    def prec(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return FqElem(self.field, self.coeffs[n])

    def to_list(self):
        return [FqElem(self.field, c) for c in self.coeffs]

    def to_ints(self):
        return [int(c) for c in self.coeffs]

    def truncate(self, n):
        return TruncSeries(self.field, self.coeffs[:n])

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    def agrees_with(self, other):
        """Equality on the common known prefix."""
        n = min(self.prec, other.prec)
        return np.array_equal(self.coeffs[:n], other.coeffs[:n])

    def __repr__(self):
        head = ", ".join(self.field.format_code(int(c)) for c in self.coeffs[:12])
        more = ", ..." if self.prec > 12 else ""
        return f"TruncSeries([{head}{more}], prec={self.prec})"


class BiTruncSeries:
    """Bivariate series truncated to total degree < prec.

    Stored as a prec x prec code array whose entries with i + j >= prec are
    zero.
    """

    __slots__ = ("field", "codes", "prec")

    def __init__(self, field, codes, prec):
        self.field = field
        self.prec = prec
        arr = np.zeros((prec, prec), dtype=np.int64)
        r = min(prec, codes.shape[0])
        c = min(prec, codes.shape[1]) if codes.ndim == 2 else 0
        if codes.size:
            arr[:r, :c] = codes[:r, :c]
        arr[_total_degree_mask(prec, prec) >= prec] = 0
        self.codes = arr

    def terms(self):
        idx = np.argwhere(self.codes)
        return {(int(i), int(j)): FqElem(self.field, self.codes[i, j]) for i, j in idx}

    def __eq__(self, other):
        if not isinstance(other, BiTruncSeries):
            return NotImplemented
        return (self.field == other.field and self.prec == other.prec
                and np.array_equal(self.codes, other.codes))

    def __repr__(self):
        return f"BiTruncSeries({len(self.terms())} terms, prec={self.prec})"


def _total_degree_mask(rows, cols):
    return np.add.outer(np.arange(rows), np.arange(cols))


# --- helpers on raw code arrays -------------------------------------------------------

def series_mul(field, a, b, n):
    """Product of two truncated series, truncated to n terms."""
    return _fit(field.convolve(a[:n], b[:n])[:n], n)


def _fit(a, n):
    if len(a) >= n:
        return a[:n]
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] = a
    return out


def series_inverse(field, a, n):
    """1/a mod x^n for a series with a[0] != 0 (Newton iteration)."""
    if not a[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv = np.array([field.inv_code(int(a[0]))], dtype=np.int64)
    m = 1
    while m < n:
        m = min(2 * m, n)
        # inv <- inv * (2 - a * inv)
        e = series_mul(field, _fit(a, m), _fit(inv, m), m)
        two_minus = field.neg(e)
        two_minus[0] = field.add_code(int(two_minus[0]), field.code(2))
        inv = series_mul(field, _fit(inv, m), two_minus, m)
    return inv[:n]


def eval_at_series(P, s, n):
    """P(x, s(x)) mod x^n, for a code array s."""
    F = P.field
    s = _fit(np.asarray(s, dtype=np.int64), n)
    acc = np.zeros(n, dtype=np.int64)
    for c in reversed(P.y_coeffs()):
        acc = F.add(series_mul(F, acc, s, n), _fit(c.coeffs, n))
    return acc


# --- operations -------------------------------------------------------------------------

def enumerate_prefixes(P, depth):
    """All (a_0, ..., a_depth) with P(x, sum a_n x^n) = 0 mod x^(depth+1),
    in lexicographic order of element codes."""
    F = P.field
    partial = [()]
    for k in range(depth + 1):
        survivors = []
        for pre in partial:
            base = np.zeros(k + 1, dtype=np.int64)
            base[:k] = pre
            for c in range(F.q):
                base[k] = c
                if not eval_at_series(P, base, k + 1).any():
                    survivors.append(pre + (c,))
        partial = survivors
        if not partial:
            break
    return [[FqElem(F, c) for c in pre] for pre in partial]


def _root_codes(F, row):
    """Roots in F_q of the univariate polynomial with code coefficients `row`."""
    roots = []
    for c in range(F.q):
        acc = 0
        for coef in row[::-1]:
            acc = F.add_code(F.mul_code(acc, c), int(coef))
        if acc == 0:
            roots.append(c)
    return roots


def expand_root(P, prefix, N):
    """Unique continuation of a root prefix of P to N coefficients.

    Past the supplied prefix, each new coefficient must be forced: write the
    tail as y, normalise P(x, V(x) + x^k y) by its x-valuation and require the
    resulting equation at x = 0 to have exactly one root in F_q.  Once that
    root is simple, the rest follows by Newton iteration.
    """
    F = P.field
    codes = [F.code(c) for c in prefix]
    if N <= len(codes):
        return TruncSeries(F, np.array(codes[:N], dtype=np.int64))
    if codes and eval_at_series(P, np.array(codes, dtype=np.int64), len(codes)).any():
        raise NoContinuation("prefix is not a root prefix of P")
    x = BPoly.x(F)
    y = BPoly.y(F)
    while len(codes) < N:
        k = len(codes)
        V = BPoly._raw(F, np.array(codes, dtype=np.int64).reshape(-1, 1))
        R = compose_y(P, V + (x ** k) * y)
        if R.is_zero():
            raise AmbiguousContinuation("P vanishes identically along the prefix")
        Rt = shift_out(R, sx=R.x_valuation())
        row = Rt.codes[0]
        roots = _root_codes(F, row)
        if not roots:
            raise NoContinuation(f"no coefficient a_{k} continues the root")
        if len(roots) > 1:
            raise AmbiguousContinuation(
                f"a_{k} is not determined: candidates {[F.format_code(c) for c in roots]}")
        c = roots[0]
        deriv = dpdy(Rt)
        if deriv.is_zero() or not _is_simple(F, deriv.codes[0], c):
            # forced but multiple: take it and renormalise
            codes.append(c)
            continue
        tail = _newton_root(Rt, deriv, c, N - k)
        codes.extend(int(t) for t in tail)
    return TruncSeries(F, np.array(codes[:N], dtype=np.int64))


def _is_simple(F, deriv_row, c):
    """True when the y-derivative at (0, c) is nonzero."""
    acc = 0
    for coef in deriv_row[::-1]:
        acc = F.add_code(F.mul_code(acc, c), int(coef))
    return acc != 0


def _newton_root(R, dR, c, n):
    """Root t of R(x, t) = 0 with t(0) = c, assuming dR/dy(0, c) != 0."""
    F = R.field
    t = np.array([c], dtype=np.int64)
    m = 1
    while m < n:
        m = min(2 * m, n)
        t = _fit(t, m)
        val = eval_at_series(R, t, m)
        der = eval_at_series(dR, t, m)
        step = series_mul(F, val, series_inverse(F, der, m), m)
        t = F.sub(t, step)
    return _fit(t, n)


def cartier1(g, digit):
    """(a_n) -> (a_{qn + digit}) on a truncation."""
    q = g.field.q
    if not 0 <= digit < q:
        raise ValueError(f"digit {digit} out of range for q = {q}")
    out = g.coeffs[digit::q]
    if len(out) == 0:
        raise PrecisionExhausted(
            f"section {digit} of a series known to {g.prec} terms is empty")
    return TruncSeries(g.field, out)


def bi_inverse(field, D, prec):
    """1/D truncated to total degree < prec, for D with a unit constant term."""
    d = np.zeros((prec, prec), dtype=np.int64)
    r, c = min(prec, D.shape[0]), min(prec, D.shape[1])
    d[:r, :c] = D[:r, :c]
    mask = _total_degree_mask(prec, prec)
    d[mask >= prec] = 0
    inv = np.zeros((1, 1), dtype=np.int64)
    inv[0, 0] = field.inv_code(int(d[0, 0]))
    m = 1
    while m < prec:
        m = min(2 * m, prec)
        cur = np.zeros((m, m), dtype=np.int64)
        cur[: inv.shape[0], : inv.shape[1]] = inv
        e = field.convolve(d[:m, :m], cur)[:m, :m]
        e = field.neg(e)
        e[0, 0] = field.add_code(int(e[0, 0]), field.code(2))
        e[mask[:m, :m] >= m] = 0
        inv = field.convolve(cur, e)[:m, :m]
        inv[mask[:m, :m] >= m] = 0
    return inv


def rational_expand(N, D, prec):
    """N / D as a bivariate series truncated to total degree < prec."""
    F = D.field
    if D.coeff(0, 0).code == 0:
        raise NonUnitDenominator("denominator vanishes at the origin")
    inv = bi_inverse(F, D.codes, prec)
    if N.is_zero():
        return BiTruncSeries(F, np.zeros((0, 0), dtype=np.int64), prec)
    prod = F.convolve(N.codes[:prec, :prec], inv)
    return BiTruncSeries(F, prod, prec)


def cartier2_series(g, i, j):
    """(a_{n,m}) -> (a_{qn+i, qm+j}) on a total-degree truncation."""
    q = g.field.q
    new_prec = math.ceil((g.prec - i - j) / q)
    if new_prec < 1:
        raise PrecisionExhausted("bivariate section is empty")
    return BiTruncSeries(g.field, g.codes[i::q, j::q], new_prec)


def diagonal(g):
    """sum_n a_{n,n} x^n; known to ceil(prec/2) terms."""
    n = (g.prec + 1) // 2
    return TruncSeries(g.field, np.diagonal(g.codes)[:n].copy())


def kernel_oracle(P, prefix, N=DEFAULT_PRECISION, L_min=DEFAULT_LMIN, series=None):
    """Brute-force q-kernel of the root of P starting with `prefix`.

    Breadth-first closure of the truncated root under all sections; two
    nodes are identified when they agree on their common known prefix.  An
    identification backed by fewer than `L_min` coefficients, or a node that
    could not be expanded with at least `L_min` coefficients, clears the
    `exact` flag.  Returns (count, exact, truncations).
    """
    F = P.field
    q = F.q
    f = series if series is not None else expand_root(P, prefix, N)
    classes = [f.coeffs]
    by_key = {}
    exact = True

    def key(a):
        return a[:L_min].tobytes()

    if f.prec >= L_min:
        by_key.setdefault(key(f.coeffs), []).append(0)
    else:
        exact = False
    queue = deque([0]) if f.prec >= L_min else deque()
    while queue:
        rep = classes[queue.popleft()]
        for digit in range(q):
            child = rep[digit::q]
            if len(child) == 0:
                raise PrecisionExhausted("oracle precision exhausted before closure")
            if len(child) >= L_min:
                found = None
                for cid in by_key.get(key(child), ()):
                    other = classes[cid]
                    n = min(len(other), len(child))
                    if np.array_equal(other[:n], child[:n]):
                        found = cid
                        break
                if found is None:
                    classes.append(child)
                    cid = len(classes) - 1
                    by_key.setdefault(key(child), []).append(cid)
                    queue.append(cid)
            else:
                exact = False
                if not any(np.array_equal(other[:len(child)], child[:len(other)])
                           for other in classes):
                    classes.append(child)
    return len(classes), exact, [TruncSeries(F, c) for c in classes]
