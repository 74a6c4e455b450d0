"""Finite automata for algebraic power series over finite fields.

The root of P(x, y) = 0 is written as the diagonal of a rational function;
section operators act on that representation with bounded degrees, which
gives the kernel, the minimal reverse and forward automata, and the
complexity bounds.
"""

from .automaton import (Dfao, evaluate, forward_construct, minimize, orbit_closure,
                        parse_json, serialize)
from .bounds import BoundSet, compute_bounds, t0_of
from .furstenberg import degree_height, prepare, root_prefixes
from .gf import FqElem, make_field, parse_field_spec
from .pipeline import Report, compile_instance
from .polynomial import BPoly, UPoly, parse_poly
from .series import TruncSeries, expand_root, kernel_oracle

__version__ = "0.1.0"
