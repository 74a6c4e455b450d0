"""
Univariate and bivariate polynomials over a finite field.

Both classes wrap a dense numpy array of element codes (see `christol.gf`),
trimmed so that the representation is canonical: `UPoly` holds coefficients
of x^0, x^1, ...; `BPoly` holds a 2-d array indexed ``[i, j]`` for the
monomial x^i y^j.  The zero polynomial is the empty array.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .errors import (BothConstantInY, FieldMismatch, NotDivisible,
                     PolynomialSyntaxError)
from .gf import FqElem

NEG_INF = -math.inf  # degree of the zero polynomial


def _trim1(a):
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _trim2(a):
    if a.size == 0 or not a.any():
        return np.zeros((0, 0), dtype=np.int64)
    rows = np.flatnonzero(a.any(axis=1))
    cols = np.flatnonzero(a.any(axis=0))
    return a[: rows[-1] + 1, : cols[-1] + 1]


def _pad2(a, shape):
    out = np.zeros(shape, dtype=np.int64)
    out[: a.shape[0], : a.shape[1]] = a
    return out


class UPoly:
    """Dense univariate polynomial in x over a finite field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        self.field = field
        arr = np.asarray([field.code(c) for c in coeffs] if not isinstance(coeffs, np.ndarray)
                         else coeffs, dtype=np.int64).reshape(-1)
        self.coeffs = _trim1(arr)

    @classmethod
    def _raw(cls, field, arr):
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = _trim1(np.asarray(arr, dtype=np.int64).reshape(-1))
        return obj

    @classmethod
    def monomial(cls, field, k, c=1):
        arr = np.zeros(k + 1, dtype=np.int64)
        arr[k] = field.code(c)
        return cls._raw(field, arr)

    @property
    def deg(self):
        return len(self.coeffs) - 1 if len(self.coeffs) else NEG_INF

    def is_zero(self):
        return len(self.coeffs) == 0

    def __getitem__(self, k):
        return FqElem(self.field, self.coeffs[k] if 0 <= k < len(self.coeffs) else 0)

    def lc(self):
        return self[len(self.coeffs) - 1]

    def _check(self, other):
        if not isinstance(other, UPoly):
            return False
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return True

    def _coerce(self, other):
        if isinstance(other, UPoly):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer, FqElem)):
            return UPoly(self.field, [other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return UPoly._raw(self.field, self.field.add(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw(self.field, self.field.neg(self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return UPoly._raw(self.field, self.field.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UPoly(self.field, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = [int(c) for c in self.coeffs]
        db = len(other.coeffs) - 1
        inv_lc = F.inv_code(int(other.coeffs[-1]))
        quo = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            t = F.mul_code(c, inv_lc)
            quo[k - db] = t
            for i, b in enumerate(other.coeffs):
                if b:
                    rem[k - db + i] = F.sub_code(rem[k - db + i], F.mul_code(t, int(b)))
        return UPoly._raw(F, np.array(quo, dtype=np.int64)), \
            UPoly._raw(F, np.array(rem[:db] if db else [], dtype=np.int64))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise NotDivisible("inexact polynomial division")
        return quo

    def __eq__(self, other):
        if isinstance(other, (int, np.integer, FqElem)):
            other = self._coerce(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs.tobytes()))

    def __call__(self, point):
        acc = self.field.zero
        point = self.field(point)
        for c in self.coeffs[::-1]:
            acc = acc * point + int(c)
        return acc

    def to_list(self):
        return [FqElem(self.field, c) for c in self.coeffs]

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        return _format_terms(self.field, ((i, 0, c) for i, c in enumerate(self.coeffs)))


class BPoly:
    """Bivariate polynomial in x, y stored densely as codes[i, j] for x^i y^j."""

    __slots__ = ("field", "codes")

    def __init__(self, field, terms=None):
        self.field = field
        if terms is None:
            terms = {}
        if isinstance(terms, np.ndarray):
            arr = terms.astype(np.int64)
        else:
            items = {k: field.code(v) for k, v in dict(terms).items()}
            if items:
                X = max(i for i, _ in items) + 1
                Y = max(j for _, j in items) + 1
                arr = np.zeros((X, Y), dtype=np.int64)
                for (i, j), c in items.items():
                    if i < 0 or j < 0:
                        raise ValueError("negative exponent")
                    arr[i, j] = c
            else:
                arr = np.zeros((0, 0), dtype=np.int64)
        self.codes = _trim2(arr)

    @classmethod
    def _raw(cls, field, arr):
        obj = cls.__new__(cls)
        obj.field = field
        obj.codes = _trim2(np.asarray(arr, dtype=np.int64))
        return obj

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(0, 0): c})

    @classmethod
    def x(cls, field):
        return cls(field, {(1, 0): 1})

    @classmethod
    def y(cls, field):
        return cls(field, {(0, 1): 1})

    @classmethod
    def from_upoly(cls, u, var="x"):
        arr = u.coeffs.reshape(-1, 1) if var == "x" else u.coeffs.reshape(1, -1)
        return cls._raw(u.field, arr)

    @classmethod
    def from_y_coeffs(cls, field, coeffs):
        """Build sum_j coeffs[j](x) y^j from a list of UPoly."""
        X = max((len(c.coeffs) for c in coeffs), default=0)
        arr = np.zeros((X, len(coeffs)), dtype=np.int64)
        for j, c in enumerate(coeffs):
            arr[: len(c.coeffs), j] = c.coeffs
        return cls._raw(field, arr)

    # shape / access ---------------------------------------------------------
    def is_zero(self):
        return self.codes.size == 0

    @property
    def deg_x(self):
        return self.codes.shape[0] - 1 if self.codes.size else NEG_INF

    @property
    def deg_y(self):
        return self.codes.shape[1] - 1 if self.codes.size else NEG_INF

    def coeff(self, i, j):
        X, Y = self.codes.shape
        return FqElem(self.field, self.codes[i, j] if i < X and j < Y else 0)

    def terms(self):
        """Canonical map (i, j) -> nonzero FqElem, in lexicographic order."""
        idx = np.argwhere(self.codes)
        return {(int(i), int(j)): FqElem(self.field, self.codes[i, j]) for i, j in idx}

    def __len__(self):
        return int(np.count_nonzero(self.codes))

    def y_coeff(self, j):
        if self.codes.size == 0 or j >= self.codes.shape[1]:
            return UPoly(self.field)
        return UPoly._raw(self.field, self.codes[:, j])

    def y_coeffs(self):
        return [self.y_coeff(j) for j in range(self.codes.shape[1])]

    def x_valuation(self):
        """Largest s with x^s dividing the polynomial (inf for zero)."""
        if self.is_zero():
            return math.inf
        return int(np.flatnonzero(self.codes.any(axis=1))[0])

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BPoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, np.integer, FqElem)):
            return BPoly.constant(self.field, other)
        if isinstance(other, UPoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return BPoly.from_upoly(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        shape = tuple(max(a, b) for a, b in zip(self.codes.shape, other.codes.shape))
        return BPoly._raw(self.field, self.field.add(_pad2(self.codes, shape),
                                                     _pad2(other.codes, shape)))

    __radd__ = __add__

    def __neg__(self):
        return BPoly._raw(self.field, self.field.neg(self.codes))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return BPoly(self.field)
        return BPoly._raw(self.field, self.field.convolve(self.codes, other.codes))

    __rmul__ = __mul__

    def __pow__(self, n):
        result = BPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, np.integer, FqElem, UPoly)):
            other = self._coerce(other)
        if not isinstance(other, BPoly):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.codes, other.codes)

    def __hash__(self):
        return hash((self.field, self.codes.shape, self.codes.tobytes()))

    def key(self):
        return (self.codes.shape, self.codes.tobytes())

    def __call__(self, x, y):
        """Evaluate at a point of F_q x F_q."""
        F = self.field
        x, y = F(x), F(y)
        acc = F.zero
        for i, j in np.argwhere(self.codes):
            acc = acc + FqElem(F, self.codes[i, j]) * x ** int(i) * y ** int(j)
        return acc

    def __repr__(self):
        return f"BPoly({self})"

    def __str__(self):
        idx = np.argwhere(self.codes)
        return _format_terms(self.field, ((int(i), int(j), self.codes[i, j]) for i, j in idx))


def _format_terms(field, triples):
    parts = []
    for i, j, c in triples:
        if not c:
            continue
        mono = []
        if i:
            mono.append("x" if i == 1 else f"x^{i}")
        if j:
            mono.append("y" if j == 1 else f"y^{j}")
        cs = field.format_code(int(c))
        if field.e > 1 and "+" in cs:
            cs = f"({cs})"
        if mono and cs == "1":
            parts.append("*".join(mono))
        else:
            parts.append("*".join([cs] + mono))
    return " + ".join(parts) or "0"


# --- operations ------------------------------------------------------------------

def poly_arith(op, a, b):
    """Functional form of ring arithmetic: add, sub, mul, pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown polynomial operation {op!r}")


def dpdy(P):
    """Formal partial derivative in y."""
    F = P.field
    if P.codes.shape[1] <= 1:
        return BPoly(F)
    mult = np.arange(1, P.codes.shape[1], dtype=np.int64) % F.p
    return BPoly._raw(F, F.mul(P.codes[:, 1:], mult[None, :]))


def dpdx(P):
    F = P.field
    if P.codes.shape[0] <= 1:
        return BPoly(F)
    mult = np.arange(1, P.codes.shape[0], dtype=np.int64) % F.p
    return BPoly._raw(F, F.mul(P.codes[1:, :], mult[:, None]))


def sylvester_matrix(A, B):
    """Sylvester matrix in y with UPoly entries (rows: deg_y B shifts of A,
    then deg_y A shifts of B)."""
    m, n = int(A.deg_y), int(B.deg_y)
    a = A.y_coeffs()[::-1]  # leading first
    b = B.y_coeffs()[::-1]
    zero = UPoly(A.field)
    size = m + n
    rows = []
    for k in range(n):
        rows.append([zero] * k + a + [zero] * (size - k - len(a)))
    for k in range(m):
        rows.append([zero] * k + b + [zero] * (size - k - len(b)))
    return rows


def bareiss_det(M, field):
    """Fraction-free determinant of a square matrix over F_q[x]."""
    n = len(M)
    if n == 0:
        return UPoly(field, [1])
    M = [row[:] for row in M]
    sign = 1
    prev = UPoly(field, [1])
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return UPoly(field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant_y(A, B):
    """Resultant with respect to y, an element of F_q[x], via the Sylvester
    determinant computed on the literal polynomials."""
    if A.field != B.field:
        raise FieldMismatch(f"{A.field!r} vs {B.field!r}")
    F = A.field
    if A.is_zero() or B.is_zero():
        if (not A.is_zero() and A.deg_y >= 1) or (not B.is_zero() and B.deg_y >= 1):
            return UPoly(F)
        raise BothConstantInY("resultant of polynomials constant in y")
    if A.deg_y == 0 and B.deg_y == 0:
        raise BothConstantInY("resultant of polynomials constant in y")
    return bareiss_det(sylvester_matrix(A, B), F)


def valuation(U):
    """Largest k with x^k | U; math.inf for the zero polynomial."""
    if isinstance(U, BPoly):
        return U.x_valuation()
    nz = np.flatnonzero(U.coeffs)
    return int(nz[0]) if nz.size else math.inf


def x_to_xy(P):
    """P(xy, y): the monomial x^i y^j becomes x^i y^(i+j)."""
    if P.is_zero():
        return P
    X, Y = P.codes.shape
    out = np.zeros((X, X + Y - 1), dtype=np.int64)
    for i in range(X):
        out[i, i: i + Y] = P.codes[i]
    return BPoly._raw(P.field, out)


def compose_y(P, M):
    """P(x, M(x, y)) by Horner's rule in y."""
    if M.field != P.field:
        raise FieldMismatch(f"{P.field!r} vs {M.field!r}")
    acc = BPoly(P.field)
    for c in reversed(P.y_coeffs()):
        acc = acc * M + BPoly.from_upoly(c)
    return acc


def shift_out(P, sx=0, sy=0):
    """Divide by x^sx y^sy; raises NotDivisible if some term is too low."""
    if P.is_zero():
        return P
    if P.codes[:sx].any() or P.codes[:, :sy].any():
        raise NotDivisible(f"not divisible by x^{sx} y^{sy}")
    return BPoly._raw(P.field, P.codes[sx:, sy:])


def shift_in(P, sx=0, sy=0):
    """Multiply by x^sx y^sy."""
    if P.is_zero():
        return P
    X, Y = P.codes.shape
    out = np.zeros((X + sx, Y + sy), dtype=np.int64)
    out[sx:, sy:] = P.codes
    return BPoly._raw(P.field, out)


def substitute(P, mode, arg=None):
    """Substitutions used to build the diagonal representation.

    mode = "x_to_xy"      -> P(xy, y)
    mode = "y_to_M"       -> P(x, arg) for a BPoly arg
    mode = "x_shift_out"  -> x^(-arg) P
    """
    if mode == "x_to_xy":
        return x_to_xy(P)
    if mode == "y_to_M":
        return compose_y(P, arg)
    if mode == "x_shift_out":
        return shift_out(P, sx=arg)
    raise ValueError(f"unknown substitution mode {mode!r}")


# --- Newton polygon ---------------------------------------------------------------

def convex_hull(points):
    """Andrew's monotone chain; returns hull vertices counter-clockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    return lower[:-1] + upper[:-1]


def interior_lattice_points(points):
    """Lattice points strictly inside the convex hull, by Pick's theorem."""
    hull = convex_hull(points)
    if len(hull) < 3:
        return 0
    twice_area = 0
    boundary = 0
    for k, (x0, y0) in enumerate(hull):
        x1, y1 = hull[(k + 1) % len(hull)]
        twice_area += x0 * y1 - x1 * y0
        boundary += math.gcd(abs(x1 - x0), abs(y1 - y0))
    if twice_area == 0:
        return 0
    # Pick: A = I + B/2 - 1
    return (abs(twice_area) - boundary + 2) // 2


def newton_interior(P):
    """g_P: interior lattice points of the Newton polygon of P."""
    return interior_lattice_points(list(P.terms()))


# --- text input -----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyg])|(\*\*|[-+*^()]))")


def parse_poly(text, field):
    """Parse a polynomial in x, y over `field`.

    Accepts sums of products of integers, x, y, g (the extension generator),
    parenthesised subexpressions and nonnegative integer powers (``^`` or
    ``**``), e.g. ``(g+1)*x*y^2 + g*y + 1`` or ``(1+x)^3*y^2 + x``.
    Juxtaposition multiplies, '-' is taken mod p.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        if m.group(1):
            tokens.append(("num", int(m.group(1))))
        elif m.group(2):
            tokens.append(("var", m.group(2)))
        else:
            tokens.append(("op", "^" if m.group(3) == "**" else m.group(3)))
    tokens.append(("end", None))
    if len(tokens) == 1:
        raise PolynomialSyntaxError("empty polynomial")
    parser = _Parser(tokens, field)
    result = parser.expr()
    if parser.peek()[0] != "end":
        raise PolynomialSyntaxError(f"trailing input in {text!r}")
    return result


class _Parser:
    def __init__(self, tokens, field):
        self.tokens = tokens
        self.pos = 0
        self.field = field

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                acc = acc * self.unary()
            elif tok[0] in ("num", "var") or tok == ("op", "("):
                acc = acc * self.unary()
            else:
                return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, value = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a nonnegative integer")
            return base ** value
        return base

    def atom(self):
        kind, value = self.take()
        F = self.field
        if kind == "num":
            return BPoly.constant(F, value)
        if kind == "var":
            if value == "x":
                return BPoly.x(F)
            if value == "y":
                return BPoly.y(F)
            if F.e == 1:
                raise PolynomialSyntaxError("g is only available in extension fields")
            return BPoly.constant(F, F.gen)
        if (kind, value) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise PolynomialSyntaxError("unbalanced parenthesis")
            return inner
        if value is None:
            raise PolynomialSyntaxError("unexpected end of input")
        raise PolynomialSyntaxError(f"unexpected token {value!r}")
