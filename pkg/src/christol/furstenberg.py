"""
Diagonal representation of an algebraic power series.

Given P(x, y) and the first r + 1 coefficients of a root f, where r is the
x-adic order of Res_y(P, dP/dy), `prepare` shifts the root so that it leaves
a polynomial Qtilde smooth at the origin, and returns the unit denominator D
and numerator N0 with

    f(x) = V_r(x) + x^r * Diag( N0 / D ),
    D  = y^-1 Qtilde(xy, y),   N0 = y * (dQtilde/dy)(xy, y).

The smooth case is simply r = 0 with V_0 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import t0_of
from .errors import (DegreeZero, InvalidPrefix, InvariantBreach, NotSeparable,
                     PrefixMismatch, SmoothnessCheckFailed)
from .gf import FqElem
from .polynomial import (BPoly, UPoly, compose_y, dpdy, newton_interior,
                         resultant_y, shift_in, shift_out, valuation, x_to_xy)
from .series import TruncSeries, enumerate_prefixes, eval_at_series


@dataclass(frozen=True, eq=False)
class MinimalData:
    P: BPoly
    d: int
    h: int
    field: object
    resultant: UPoly

    @property
    def r(self):
        return valuation(self.resultant)


@dataclass(frozen=True, eq=False)
class Preparation:
    md: MinimalData
    r: int
    prefix: tuple
    V: UPoly
    M: BPoly
    Q: BPoly
    s: int
    Qtilde: BPoly
    D: BPoly
    N0: BPoly
    t0: int
    smooth: bool
    N_init: BPoly
    D_pow: BPoly      # D^(q-1), shared by every transition
    max_deg_x: int    # degree box that every reachable numerator stays in
    max_deg_y: int

    @property
    def field(self):
        return self.md.field

    @property
    def a0(self):
        return self.prefix[0]

    @property
    def g_P(self):
        return newton_interior(self.md.P)


def degree_height(P):
    """Read off (d, h) and run the separability gate."""
    if P.is_zero() or P.deg_y < 1:
        raise DegreeZero("P must have positive degree in y")
    dP = dpdy(P)
    if dP.is_zero():
        raise NotSeparable("dP/dy vanishes identically (P is a polynomial in y^p)")
    res = resultant_y(P, dP)
    if res.is_zero():
        raise NotSeparable("Res_y(P, dP/dy) = 0: P has a repeated factor")
    return MinimalData(P=P, d=int(P.deg_y), h=int(P.deg_x), field=P.field, resultant=res)


def resultant_order(P):
    md = P if isinstance(P, MinimalData) else degree_height(P)
    r = md.r
    if r > md.h * (2 * md.d - 1):
        raise InvariantBreach(f"r = {r} exceeds h(2d-1) = {md.h * (2 * md.d - 1)}")
    return r


def prepare(md, prefix):
    """Build the full diagonal representation for the root starting with `prefix`."""
    if not isinstance(md, MinimalData):
        md = degree_height(md)
    F = md.field
    P = md.P
    r = resultant_order(md)
    prefix = tuple(F(c) for c in prefix)
    if len(prefix) != r + 1:
        raise InvalidPrefix(f"expected a prefix of length r + 1 = {r + 1}, got {len(prefix)}")
    codes = np.array([c.code for c in prefix], dtype=np.int64)
    if eval_at_series(P, codes, r + 1).any():
        raise InvalidPrefix("prefix is not a root of P modulo x^(r+1)")

    V = UPoly(F, prefix)
    x_r = BPoly(F, {(r, 1): 1})
    M = BPoly.from_upoly(V) + x_r
    Q = compose_y(P, M)
    s = Q.x_valuation()
    Qt = shift_out(Q, sx=s)
    slope = Qt.coeff(0, 1)
    if Qt.coeff(0, 0).code != 0 or slope.code == 0:
        raise InvalidPrefix("prefix does not extend to a power-series root of P")

    D = shift_out(x_to_xy(Qt), sy=1)
    N0 = shift_in(x_to_xy(dpdy(Qt)), sy=1)
    if D.coeff(0, 0) != slope:
        raise SmoothnessCheckFailed("constant term of D differs from dQtilde/dy(0,0)")

    N_init = shift_in(N0, sx=r, sy=r)
    q = F.q
    smooth = prefix[0].code == 0 and dpdy(P).coeff(0, 0).code != 0
    return Preparation(
        md=md, r=r, prefix=prefix, V=V, M=M, Q=Q, s=s, Qtilde=Qt, D=D, N0=N0,
        t0=t0_of(q, r), smooth=smooth, N_init=N_init, D_pow=D ** (q - 1),
        max_deg_x=max(int(N_init.deg_x), int(D.deg_x)),
        max_deg_y=max(int(N_init.deg_y), int(D.deg_y)),
    )


def root_prefixes(md):
    """Prefixes of length r + 1 that extend to genuine power-series roots."""
    if not isinstance(md, MinimalData):
        md = degree_height(md)
    r = resultant_order(md)
    out = []
    for pre in enumerate_prefixes(md.P, r):
        try:
            prepare(md, pre)
        except InvalidPrefix:
            continue
        out.append(pre)
    return out


def residual_series(prep, f):
    """x^-r (f - V_r), known to f.prec - r terms."""
    r = prep.r
    head = [int(c) for c in f.coeffs[: r + 1]]
    if head != [c.code for c in prep.prefix]:
        raise PrefixMismatch("series does not start with the preparation's prefix")
    tail = f.coeffs[r:].copy()
    tail[0] = 0
    return TruncSeries(f.field, tail)


def nu_of(prep):
    """Order at 0 of dP/dy(x, V_r(x)); equals s - r."""
    F = prep.field
    n = prep.s + 2
    vals = eval_at_series(dpdy(prep.md.P), prep.V.coeffs, n)
    nz = np.flatnonzero(vals)
    return int(nz[0]) if nz.size else None


def describe(prep):
    """Short human-readable summary."""
    F = prep.field
    return (f"P = {prep.md.P} over {F!r}: d={prep.md.d} h={prep.md.h} r={prep.r} "
            f"s={prep.s} prefix={[str(c) for c in prep.prefix]} smooth={prep.smooth}")


__all__ = ["MinimalData", "Preparation", "degree_height", "resultant_order", "prepare",
           "root_prefixes", "residual_series", "nu_of", "describe", "FqElem"]
