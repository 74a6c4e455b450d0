"""Hypothesis strategies shared by the property tests."""

import numpy as np
from hypothesis import strategies as st

from christol.gf import FqElem, make_field
from christol.polynomial import BPoly, UPoly

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]


@st.composite
def fields(draw, choices=SMALL_FIELDS):
    p, e = draw(st.sampled_from(choices))
    return make_field(p, e)


def codes(F, n):
    return st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n)


def elements(F, nonzero=False):
    return st.integers(1 if nonzero else 0, F.q - 1).map(lambda c: FqElem(F, c))


@st.composite
def upolys(draw, F, max_deg=6, nonzero=False):
    n = draw(st.integers(1, max_deg + 1))
    c = draw(codes(F, n))
    if nonzero and not any(c):
        c[-1] = 1
    return UPoly._raw(F, np.array(c, dtype=np.int64))


@st.composite
def bpolys(draw, F, max_x=4, max_y=4, nonzero=False):
    X = draw(st.integers(1, max_x + 1))
    Y = draw(st.integers(1, max_y + 1))
    c = np.array(draw(codes(F, X * Y)), dtype=np.int64).reshape(X, Y)
    if nonzero and not c.any():
        c[-1, -1] = 1
    return BPoly._raw(F, c)
