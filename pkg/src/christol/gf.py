"""
Finite fields F_q = F_p[g]/(m(g)) with canonical power-basis elements.

An element is stored as a single integer *code*: the power-basis coordinates
(c_0, ..., c_{e-1}) read as base-p digits, code = sum c_k p^k.  Codes are
unique, so equality of elements is equality of codes, and polynomials or
series over F_q can be kept as plain numpy integer arrays of codes.

`Field` exposes scalar arithmetic on codes and vectorized arithmetic on code
arrays (addition, scaling, elementwise products, n-dimensional convolution,
matrix products).  `FqElem` is the user-facing immutable element wrapper.
"""

from __future__ import annotations

import itertools
import re

import numpy as np
from scipy import signal

from .errors import (ChristolError, DegreeMismatch, DivisionByZero,
                     FieldMismatch, NotPrime, ReducibleModulus)

MAX_ORDER = 2 ** 16
_TABLE_LIMIT = 256


class FieldTooLarge(ChristolError, ValueError):
    pass


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


# --- plain polynomial helpers over F_p (lists low-to-high) -------------------

def _fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m over F_p."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            for i in range(dm + 1):
                a[k - dm + i] = (a[k - dm + i] - c * m[i]) % p
    return _fp_trim(a[:dm])


def _is_irreducible(m, p):
    e = len(m) - 1
    if e <= 1:
        return True
    for deg in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _fp_mod(m, list(low) + [1], p):
                return False
    return True


def default_modulus(p, e):
    """Smallest monic irreducible of degree e, in lexicographic order of the
    low-to-high coefficient list (c_0, ..., c_{e-1}, 1)."""
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        m = list(low) + [1]
        if m[0] != 0 and _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# --- exact integer convolution ------------------------------------------------

def int_convolve(a, b):
    """Exact full convolution of two integer arrays of equal ndim."""
    if a.size == 0 or b.size == 0:
        shape = tuple(max(x + y - 1, 0) for x, y in zip(a.shape, b.shape))
        return np.zeros(shape, dtype=np.int64)
    bound = int(np.abs(a).max()) * int(np.abs(b).max()) * min(a.size, b.size)
    if a.size * b.size > 40_000 and bound < 2 ** 50:
        out = signal.fftconvolve(a.astype(np.float64), b.astype(np.float64))
        return np.rint(out).astype(np.int64)
    return signal.convolve(a.astype(np.int64), b.astype(np.int64),
                           method="direct")


class Field:
    """The finite field F_q, q = p^e, presented as F_p[g]/(modulus)."""

    def __init__(self, p, e, modulus):
        self.p = p
        self.e = e
        self.modulus = tuple(modulus)
        self.q = p ** e
        self._m = np.array(self.modulus, dtype=np.int64)
        self._powers = p ** np.arange(e, dtype=np.int64)
        self._add_table = None
        self._mul_table = None
        if e > 1 and self.q <= _TABLE_LIMIT:
            codes = np.arange(self.q, dtype=np.int64)
            self._add_table = self._add_coords(codes[:, None], codes[None, :])
            self._mul_table = self._mul_coords(codes[:, None], codes[None, :])
        self._inv = None
        if self.q <= 4096:
            self._inv = [0] + [self._pow_code(a, self.q - 2) for a in range(1, self.q)]

    # identity -------------------------------------------------------------
    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    @property
    def is_prime(self):
        return self.e == 1

    def check_same(self, other):
        if self != other:
            raise FieldMismatch(f"{self!r} vs {other!r}")

    # elements -------------------------------------------------------------
    def __call__(self, value):
        return FqElem(self, self.code(value))

    @property
    def zero(self):
        return FqElem(self, 0)

    @property
    def one(self):
        return FqElem(self, 1)

    @property
    def gen(self):
        """The class of g (equal to the generator's code, p, when e > 1)."""
        if self.e == 1:
            return FqElem(self, (-self.modulus[0]) % self.p)
        return FqElem(self, self.p)

    def elements(self):
        return [FqElem(self, c) for c in range(self.q)]

    def code(self, value):
        """Coerce an int, FqElem or coordinate sequence to a code."""
        if isinstance(value, FqElem):
            self.check_same(value.field)
            return value.code
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        coords = list(value)
        if len(coords) != self.e:
            raise DegreeMismatch(f"expected {self.e} coordinates, got {len(coords)}")
        return self.from_coords_int([c % self.p for c in coords])

    def coords_int(self, code):
        return [(code // self.p ** k) % self.p for k in range(self.e)]

    def from_coords_int(self, coords):
        return sum(int(c) * self.p ** k for k, c in enumerate(coords))

    # scalar arithmetic on codes --------------------------------------------
    def add_code(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return self.from_coords_int([(x + y) % self.p for x, y in
                                     zip(self.coords_int(a), self.coords_int(b))])

    def neg_code(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self.from_coords_int([(-x) % self.p for x in self.coords_int(a)])

    def sub_code(self, a, b):
        return self.add_code(a, self.neg_code(b))

    def mul_code(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        ca, cb = self.coords_int(a), self.coords_int(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        red = _fp_mod(prod, self.modulus, self.p)
        return self.from_coords_int(red + [0] * (self.e - len(red)))

    def _pow_code(self, a, n):
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul_code(result, base)
            base = self.mul_code(base, base)
            n >>= 1
        return result

    def pow_code(self, a, n):
        if n < 0:
            return self._pow_code(self.inv_code(a), -n)
        return self._pow_code(a, n)

    def inv_code(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero in " + repr(self))
        if self._inv is not None:
            return self._inv[a]
        return self._pow_code(a, self.q - 2)

    # vectorized arithmetic on code arrays --------------------------------------
    def coords(self, a):
        """Code array of shape S -> digit array of shape (e, *S)."""
        a = np.asarray(a, dtype=np.int64)
        return (a[None, ...] // self._powers.reshape((-1,) + (1,) * a.ndim)) % self.p

    def from_coords(self, c):
        return np.tensordot(self._powers, c, axes=(0, 0)).astype(np.int64)

    def _reduce(self, c):
        """Reduce a digit array with leading axis of any length modulo m(g)."""
        c = c.copy()
        e = self.e
        for k in range(c.shape[0] - 1, e - 1, -1):
            lead = c[k] % self.p
            if lead.any():
                for i in range(e):
                    if self._m[i]:
                        c[k - e + i] -= lead * self._m[i]
        return c[:e] % self.p

    def _add_coords(self, a, b):
        return self.from_coords((self.coords(a) + self.coords(b)) % self.p)

    def _mul_coords(self, a, b):
        ca, cb = self.coords(a), self.coords(b)
        shape = np.broadcast_shapes(ca.shape[1:], cb.shape[1:])
        out = np.zeros((2 * self.e - 1,) + shape, dtype=np.int64)
        for i in range(self.e):
            for j in range(self.e):
                out[i + j] += ca[i] * cb[j]
        return self.from_coords(self._reduce(out))

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._add_coords(a, b)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.e == 1:
            return (-a) % self.p
        return self.from_coords((-self.coords(a)) % self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        """Elementwise product with numpy broadcasting."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._mul_coords(a, b)

    def scale(self, c, a):
        return self.mul(np.int64(c), a)

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis) if a.size else \
                np.zeros(np.sum(a, axis=axis).shape, dtype=np.int64)
        c = self.coords(a)
        ax = None if axis is None else (axis + 1 if axis >= 0 else axis)
        if ax is None:
            return self.from_coords(c.reshape(self.e, -1).sum(axis=1) % self.p)
        return self.from_coords(c.sum(axis=ax) % self.p)

    def convolve(self, a, b):
        """Full n-dimensional convolution (polynomial product) of code arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return int_convolve(a, b) % self.p
        ca, cb = self.coords(a), self.coords(b)
        shape = tuple(max(x + y - 1, 0) for x, y in zip(a.shape, b.shape))
        out = np.zeros((2 * self.e - 1,) + shape, dtype=np.int64)
        if a.size and b.size:
            for i in range(self.e):
                if not ca[i].any():
                    continue
                for j in range(self.e):
                    if cb[j].any():
                        out[i + j] += int_convolve(ca[i], cb[j])
        return self.from_coords(self._reduce(out))

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a @ b) % self.p
        ca, cb = self.coords(a), self.coords(b)
        out = np.zeros((2 * self.e - 1,) + (a @ b).shape, dtype=np.int64)
        for i in range(self.e):
            for j in range(self.e):
                out[i + j] += ca[i] @ cb[j]
        return self.from_coords(self._reduce(out))

    # formatting ---------------------------------------------------------------
    def format_code(self, code):
        if self.e == 1:
            return str(code)
        coords = self.coords_int(code)
        terms = []
        for k in range(self.e - 1, -1, -1):
            c = coords[k]
            if not c:
                continue
            mono = "" if k == 0 else ("g" if k == 1 else f"g^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms) or "0"

    def parse_element(self, text):
        """Inverse of `format_code`: integers or F_p-polynomials in g."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty field element")
        coords = [0] * max(self.e, 1)
        for sign, term in re.findall(r"([+-]?)([^+-]+)", text):
            m = re.fullmatch(r"(\d+)?\*?(g(?:\^(\d+))?)?", term)
            if m is None or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad field element {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            k = 0 if m.group(2) is None else int(m.group(3) or 1)
            if k and self.e == 1:
                raise ValueError("g is not available in a prime field")
            if sign == "-":
                c = -c
            if k >= self.e:
                # reduce g^k through the modulus
                red = _fp_mod([0] * k + [c], self.modulus, self.p)
                for i, v in enumerate(red):
                    coords[i] += v
            else:
                coords[k] += c
        return self.from_coords_int([c % self.p for c in coords])


class FqElem:
    """Immutable element of a `Field`."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, name, value):
        raise AttributeError("FqElem is immutable")

    @property
    def coeffs(self):
        """Power-basis coordinates (c_0, ..., c_{e-1})."""
        return self.field.coords_int(self.code)

    def _other(self, other):
        if isinstance(other, FqElem):
            self.field.check_same(other.field)
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.add_code(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.sub_code(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.sub_code(o, self.code))

    def __neg__(self):
        return FqElem(self.field, self.field.neg_code(self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.mul_code(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.mul_code(self.code, self.field.inv_code(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.mul_code(o, self.field.inv_code(self.code)))

    def __pow__(self, n):
        return FqElem(self.field, self.field.pow_code(self.code, int(n)))

    def inverse(self):
        return FqElem(self.field, self.field.inv_code(self.code))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __str__(self):
        return self.field.format_code(self.code)

    def __repr__(self):
        return f"FqElem({self}, {self.field!r})"


def make_field(p, e=1, modulus=None):
    """Build and validate F_{p^e}.

    `modulus` is the low-to-high coefficient list of a monic irreducible
    polynomial of degree e over F_p; when omitted for e > 1 the smallest one
    in lexicographic order is used.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise DegreeMismatch("extension degree must be >= 1")
    if p ** e > MAX_ORDER:
        raise FieldTooLarge(f"q = {p}^{e} exceeds {MAX_ORDER}")
    if modulus is None:
        modulus = default_modulus(p, e)
    else:
        modulus = [int(c) % p for c in modulus]
        modulus = _fp_trim(modulus)
        if len(modulus) - 1 != e:
            raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected {e}")
        if modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not _is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
    return _cached_field(p, e, tuple(modulus))


_FIELDS = {}


def _cached_field(p, e, modulus):
    key = (p, e, modulus)
    if key not in _FIELDS:
        _FIELDS[key] = Field(p, e, modulus)
    return _FIELDS[key]


def field_arith(ctx, op, a, b=None):
    """Functional form of the field operations: add, sub, mul, inv, pow."""
    a = ctx(a)
    if op == "add":
        return a + ctx(b)
    if op == "sub":
        return a - ctx(b)
    if op == "mul":
        return a * ctx(b)
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(ctx, a, direction="forward"):
    """a^p (forward) or the unique p-th root a^(p^(e-1)) (inverse)."""
    a = ctx(a)
    if direction == "forward":
        return a ** ctx.p
    if direction == "inverse":
        return a ** (ctx.p ** (ctx.e - 1))
    raise ValueError(f"unknown direction {direction!r}")


def parse_field_spec(text):
    """Parse `p=<int> e=<int> [modulus=<c0,c1,...,1>]` (comma or space separated)."""
    fields = dict(re.findall(r"(\w+)\s*=\s*([\d,\s]+?)(?=\s*(?:\w+\s*=|$))", text.strip()))
    if "p" not in fields:
        raise ValueError(f"field spec {text!r} lacks p=")
    p = int(fields["p"].strip(", "))
    e = int(fields.get("e", "1").strip(", "))
    modulus = None
    if "modulus" in fields:
        modulus = [int(c) for c in re.split(r"[,\s]+", fields["modulus"].strip(", ")) if c]
    return make_field(p, e, modulus)
