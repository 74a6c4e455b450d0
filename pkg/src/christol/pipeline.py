"""
End-to-end compilation of one instance into automata plus a report.

    prepare -> orbit -> minimize -> (forward) -> bounds -> verify
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .automaton import (DEFAULT_STATE_CAP, evaluate_range, forward_construct, krylov_span,
                        minimize, orbit_closure)
from .bounds import BoundSet, compute_bounds
from .furstenberg import Preparation, degree_height, prepare
from .series import DEFAULT_LMIN, DEFAULT_PRECISION, expand_root, kernel_oracle

DEFAULT_VERIFY = 4096

REPORT_KEYS = ("p", "e", "q", "d", "h", "r", "s", "g_P", "smooth", "states_raw",
               "comp_reverse", "comp_forward", "span_dim", "bounds", "verification")


@dataclass
class Verification:
    horizon: int
    agreement: Optional[bool] = None
    oracle_count: Optional[int] = None
    oracle_exact: Optional[bool] = None

    @property
    def ok(self):
        if self.horizon == 0:
            return None
        return bool(self.agreement and self.oracle_exact
                    and self.oracle_count is not None and self._comp == self.oracle_count)

    _comp: Optional[int] = None

    def to_json(self):
        return {"horizon": self.horizon, "agreement": self.agreement,
                "oracle_count": self.oracle_count, "oracle_exact": self.oracle_exact,
                "ok": self.ok}


@dataclass
class Report:
    p: int
    e: int
    q: int
    d: int
    h: int
    r: int
    s: int
    g_P: int
    smooth: bool
    states_raw: int
    comp_reverse: int
    comp_forward: Optional[int]
    span_dim: int
    bounds: BoundSet
    verification: Verification

    def to_dict(self):
        out = {}
        for k in REPORT_KEYS:
            v = getattr(self, k)
            out[k] = v.to_json() if hasattr(v, "to_json") else v
        return out

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    def bound_checks(self):
        """name -> bool for each inequality the instance must satisfy."""
        checks = {
            "comp_reverse <= states_raw": self.comp_reverse <= self.states_raw,
            "comp_reverse <= applicable bound":
                self.comp_reverse <= int(self.bounds.applicable_reverse(self.smooth)),
            "g_P <= (h-1)(d-1)": self.g_P <= self.bounds.riemann_gP_cap,
        }
        if self.comp_forward is not None:
            checks["comp_forward <= q^span_dim"] = self.comp_forward <= self.q ** self.span_dim
        return checks


@dataclass
class Compilation:
    prep: Preparation
    states: object
    raw: object
    reverse: object
    forward: object
    report: Report


def compile_instance(P, prefix, forward=True, verify=DEFAULT_VERIFY,
                     precision=DEFAULT_PRECISION, lmin=DEFAULT_LMIN, cap=DEFAULT_STATE_CAP):
    """Run the whole pipeline for the root of P that starts with `prefix`."""
    F = P.field
    md = degree_height(P)
    prep = prepare(md, prefix)
    states, raw = orbit_closure(prep, cap=cap)
    reverse = minimize(raw)
    basis, _ = krylov_span(states, raw, prep)
    fwd = minimize(forward_construct(states, raw, prep, cap=cap)) if forward else None
    bounds = compute_bounds(F.q, md.d, md.h, prep.r, prep.t0, prep.g_P, prep.smooth)

    ver = Verification(horizon=verify, _comp=reverse.n_states)
    if verify:
        f = expand_root(P, prep.prefix, max(verify, precision))
        want = f.coeffs[:verify]
        agree = np.array_equal(evaluate_range(reverse, verify), want)
        if fwd is not None:
            agree = agree and np.array_equal(evaluate_range(fwd, verify), want)
        ver.agreement = bool(agree)
        count, exact, _ = kernel_oracle(P, prep.prefix, precision, lmin, series=f)
        ver.oracle_count, ver.oracle_exact = count, exact

    report = Report(
        p=F.p, e=F.e, q=F.q, d=md.d, h=md.h, r=prep.r, s=prep.s, g_P=prep.g_P,
        smooth=prep.smooth, states_raw=raw.n_states, comp_reverse=reverse.n_states,
        comp_forward=None if fwd is None else fwd.n_states, span_dim=len(basis),
        bounds=bounds, verification=ver)
    return Compilation(prep, states, raw, reverse, fwd, report)
