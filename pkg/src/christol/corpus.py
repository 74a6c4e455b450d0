"""Worked instances and a seeded generator of random separable instances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeZero, NotSeparable
from .furstenberg import degree_height, root_prefixes
from .gf import make_field
from .polynomial import BPoly, parse_poly


@dataclass(frozen=True)
class Instance:
    name: str
    P: BPoly
    prefix: tuple

    @property
    def field(self):
        return self.P.field


def worked_instances():
    F2, F3 = make_field(2), make_field(3)
    return [
        Instance("sum x^(2^n)", parse_poly("y^2 + y + x", F2), (0,)),
        Instance("thue-morse", parse_poly("(1+x)^3*y^2 + (1+x)^2*y + x", F2), (0,)),
        Instance("x/(1+x)", parse_poly("(1+x)*y + x", F2), (0,)),
        Instance("sum x^(2^n+1)", parse_poly("y^2 + x*y + x^3", F2), (0, 0, 1)),
        Instance("sqrt(1+x) over F_3", parse_poly("y^2 - (1+x)", F3), (1,)),
    ]


def random_poly(field, d, h, rng, density=0.6):
    """Random P with deg_y P = d and deg_x P = h exactly."""
    q = field.q
    while True:
        codes = rng.integers(0, q, size=(h + 1, d + 1))
        codes[rng.random(size=codes.shape) > density] = 0
        if codes[:, d].any() and codes[h, :].any():
            return BPoly._raw(field, codes)


def random_instances(count, seed=0, fields=((2, 1), (3, 1), (2, 2)),
                     degrees=(1, 2, 3), heights=(1, 2, 3), max_tries=200):
    """`count` random separable instances possessing a power-series root.

    Cells (field, d, h) are visited round-robin so every combination is
    represented; the root is drawn uniformly among the valid prefixes.
    """
    rng = np.random.default_rng(seed)
    cells = [(f, d, h) for f in fields for d in degrees for h in heights]
    out = []
    k = 0
    while len(out) < count:
        (p, e), d, h = cells[k % len(cells)]
        k += 1
        F = make_field(p, e)
        for _ in range(max_tries):
            P = random_poly(F, d, h, rng)
            try:
                md = degree_height(P)
            except (NotSeparable, DegreeZero):
                continue
            roots = root_prefixes(md)
            if not roots:
                continue
            pre = roots[int(rng.integers(len(roots)))]
            out.append(Instance(f"random-{len(out)} q={F.q} d={d} h={h}", P,
                                tuple(pre)))
            break
    return out
