"""Compact coordinate chart for the two-point compactified real line.

Everything numeric in the library happens in the coordinate
u = x / (1 + |x|), which maps [-inf, inf] onto [-1, 1] with a strictly
increasing algebraic bijection.  Grids, audits and refinements all live
in u; x-space values are recovered with :func:`decompactify`.
"""

from __future__ import annotations

import math

INF = math.inf
NEG_INF = -math.inf


def is_finite(x: float) -> bool:
    return math.isfinite(x)


def compactify(x: float) -> float:
    """Map an extended real x to u = x/(1+|x|) in [-1, 1]."""
    if x == INF:
        return 1.0
    if x == NEG_INF:
        return -1.0
    return x / (1.0 + abs(x))


def decompactify(u: float) -> float:
    """Inverse chart: u in [-1, 1] back to the extended real line."""
    if u >= 1.0:
        return INF
    if u <= -1.0:
        return NEG_INF
    return u / (1.0 - abs(u))


def uniform_u_grid(n: int) -> list[float]:
    """n equally spaced points in [-1, 1], endpoints included."""
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    step = 2.0 / (n - 1)
    return [-1.0 + i * step for i in range(n)]


def parse_extended(text: str) -> float:
    """Parse 'inf', '-inf' or a finite decimal into an extended real."""
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity", "+infinity", "oo"):
        return INF
    if t in ("-inf", "-infinity", "-oo"):
        return NEG_INF
    return float(text)


def format_extended(x: float) -> str:
    if x == INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    return repr(x)
