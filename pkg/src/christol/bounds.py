"""Closed-form complexity bounds, as exact integers or q-power certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

EXACT_EXPONENT_LIMIT = 64


@dataclass(frozen=True)
class PowerSum:
    """sum_k q^(exponents[k]); exact integer available via int()."""

    base: int
    exponents: tuple

    def __int__(self):
        return sum(self.base ** k for k in self.exponents)

    def value(self):
        return int(self)

    def is_small(self):
        return int(self) < 2 ** 64

    def to_json(self):
        if max(self.exponents, default=0) <= EXACT_EXPONENT_LIMIT and self.is_small():
            return int(self)
        return {"base": self.base, "exponents": list(self.exponents)}

    def __ge__(self, other):
        return int(self) >= int(other)

    def __le__(self, other):
        return int(self) <= int(other)


@dataclass(frozen=True)
class BoundSet:
    q: int
    smooth_bound: Optional[PowerSum]
    general_bound: PowerSum
    forward_smooth: int
    forward_general: int
    forward_general_worstcase: int
    ore_baseline_exponent: int
    bridy_exponent: int
    bridy_rect_exponent: int
    riemann_gP_cap: int
    extra: dict = field(default_factory=dict, compare=False)

    def applicable_reverse(self, smooth):
        """The bound comp_reverse must satisfy for this instance."""
        if smooth and self.smooth_bound is not None:
            return self.smooth_bound
        return self.general_bound

    def to_json(self):
        def power(exp):
            return PowerSum(self.q, (exp,)).to_json()

        return {
            "smooth_bound": None if self.smooth_bound is None else self.smooth_bound.to_json(),
            "general_bound": self.general_bound.to_json(),
            "forward_smooth": {"exponent": self.forward_smooth, "value": power(self.forward_smooth)},
            "forward_general": {"exponent": self.forward_general, "value": power(self.forward_general)},
            "forward_general_worstcase": {"exponent": self.forward_general_worstcase,
                                          "value": power(self.forward_general_worstcase)},
            "ore_baseline_exponent": self.ore_baseline_exponent,
            "bridy_exponent": self.bridy_exponent,
            "bridy_rect_exponent": self.bridy_rect_exponent,
            "riemann_gP_cap": self.riemann_gP_cap,
        }


def t0_of(q, r):
    """floor(log_q r) for r >= 1, -1 for r = 0 (empty initial segment)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return -1
    t = 0
    while q ** (t + 1) <= r:
        t += 1
    return t


def compute_bounds(q, d, h, r, t0, g_P, smooth):
    """All bounds for an instance of degree d, height h, resultant order r.

    smooth_bound is only defined for the smooth case (f(0) = 0 and
    dP/dy(0,0) != 0).  The initial-segment summand of general_bound is q^t0
    for r >= 1 and 0 when r = 0.
    """
    if q < 2 or d < 1 or h < 0 or r < 0 or g_P < 0:
        raise ValueError("invalid bound parameters")
    main = (h + 1) * d
    smooth_bound = PowerSum(q, (0, main)) if smooth else None
    general_exps = (main + 1,) if r == 0 else (main + 1, max(t0, 0))
    return BoundSet(
        q=q,
        smooth_bound=smooth_bound,
        general_bound=PowerSum(q, general_exps),
        forward_smooth=1 + main,
        forward_general=1 + main + r,
        forward_general_worstcase=(3 * h + 1) * d - h + 1,
        ore_baseline_exponent=d * (4 * h * q ** d + 1),
        bridy_exponent=h + d + g_P - 1,
        bridy_rect_exponent=h * d,
        riemann_gP_cap=max(h - 1, 0) * (d - 1),
    )
