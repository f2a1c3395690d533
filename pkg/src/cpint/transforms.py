"""Half-plane Poisson integral, Laplace transform, and exponentially
weighted integrals for distributions carried by continuous primitives.

Every transform value is one product integral against an explicitly
decomposed BV kernel, so the Hoelder bound controls all truncation and
the integral itself stays endpoint evaluation underneath.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy import integrate

from .bv import BVFunction, Piece, from_callable, monotone
from .cfun import DEFAULT_TOL
from .chart import INF, NEG_INF
from .errors import DomainError, NoLimitAtInfinity
from .products import integral_product
from .space import Distribution

_TAIL_SAFETY = 5.0


@dataclass(frozen=True)
class HalfPlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0.0):
            raise DomainError("Poisson evaluation needs y > 0")


def poisson_kernel_bv(x: float, y: float) -> BVFunction:
    """t -> y / (pi ((x-t)^2 + y^2)) as a two-piece monotone BVFunction;
    variation 2/(pi y)."""
    peak = 1.0 / (math.pi * y)

    def K(t: float) -> float:
        return y / (math.pi * ((x - t) ** 2 + y * y))

    return BVFunction([Piece(NEG_INF, x, K, 0.0, peak),
                       Piece(x, INF, K, peak, 0.0)])


def poisson(f: Distribution, p: HalfPlanePoint,
            tol: float = DEFAULT_TOL) -> float:
    """Harmonic extension u(x, y) of f to the upper half plane."""
    return integral_product(f, poisson_kernel_bv(p.x, p.y), tol)


def laplacian_probe(f: Distribution, p: HalfPlanePoint, h: float,
                    tol: float = 1e-13) -> float:
    """Centered five-point finite-difference Laplacian of the Poisson
    extension at p; the true Laplacian is zero, so the probe measures
    only the O(h^2) discretization residual."""
    if not (0.0 < h < p.y):
        raise DomainError("need 0 < h < y for the five-point stencil")
    u = lambda x, y: poisson(f, HalfPlanePoint(x, y), tol)
    c = u(p.x, p.y)
    return (u(p.x + h, p.y) + u(p.x - h, p.y)
            + u(p.x, p.y + h) + u(p.x, p.y - h) - 4.0 * c) / (h * h)


def boundary_norm_gap(f: Distribution, y: float,
                      probes: int = 21,
                      tol: float = DEFAULT_TOL) -> float:
    """Estimate of the Alexiewicz distance between u(., y) and f.

    The primitive of u(., y) at x is itself a product integral of f
    against the monotone kernel t -> (arctan((x-t)/y) + pi/2)/pi, so the
    gap is the sup over probe points of the primitive difference.
    """
    if not y > 0.0:
        raise DomainError("boundary gap needs y > 0")
    F = f.primitive
    gap = 0.0
    xs = [-10.0 + 20.0 * i / (probes - 1) for i in range(probes)]
    for x in xs:
        g = monotone(lambda t, x=x: (math.atan((x - t) / y) + math.pi / 2)
                     / math.pi, 1.0, 0.0)
        U = integral_product(f, g, tol)
        gap = max(gap, abs(U - F(x)))
    return gap


def _laplace_kernel_bv(z: complex, part: str, n: int,
                       tol: float) -> BVFunction:
    """t^n e^(-zt) (real or imaginary part) on [0, inf) as a BVFunction,
    constant on (-inf, 0] and truncated where the envelope is below
    tolerance."""
    x, y = z.real, z.imag

    def kernel(t: float) -> float:
        w = (t ** n if n else 1.0) * cmath.exp(-z * t)
        return w.real if part == "re" else w.imag

    if x <= 0.0:
        raise DomainError("kernel decomposition needs re(z) > 0")
    T = (math.log(1.0 / tol) + _TAIL_SAFETY + n * max(
        0.0, math.log1p(n / x))) / x
    if y == 0.0 and n == 0:
        if part == "im":
            return BVFunction([Piece(NEG_INF, INF, lambda t: 0.0, 0.0, 0.0)])
        # plain exponential: single monotone piece, no truncation
        return BVFunction([Piece(NEG_INF, 0.0, lambda t: 1.0, 1.0, 1.0),
                           Piece(0.0, INF, lambda t: math.exp(-x * t),
                                 1.0, 0.0)])
    oscillations = 1 + int(T * abs(y) / math.pi)
    samples = min(65537, max(4097, 64 * oscillations))
    return from_callable(kernel, 0.0, T, kernel(0.0), kernel(T),
                         outside_lo=kernel(0.0), outside_hi=kernel(T),
                         samples=samples)


def _check_laplace_point(z: complex) -> None:
    if z.real > 0.0:
        return
    if z == 0.0:
        return
    raise DomainError("Laplace transform needs re(z) > 0 or z = 0")


def laplace(f: Distribution, z: complex,
            tol: float = DEFAULT_TOL) -> complex:
    """Laplace transform of a distribution supported on [0, inf)."""
    _check_laplace_point(z)
    if z == 0.0:
        return complex(f.total, 0.0)
    re = integral_product(f, _laplace_kernel_bv(z, "re", 0, tol), tol)
    im = integral_product(f, _laplace_kernel_bv(z, "im", 0, tol), tol)
    return complex(re, im)


def laplace_derivative(f: Distribution, z: complex, n: int,
                       tol: float = DEFAULT_TOL) -> complex:
    """n-th derivative of the transform: (-1)^n int f(t) t^n e^(-zt) dt.

    Differentiation passes under the integral because the difference
    kernels have uniformly bounded variation for re(z) > 0.
    """
    if n < 0:
        raise DomainError("derivative order must be nonnegative")
    if n == 0:
        return laplace(f, z, tol)
    if not z.real > 0.0:
        raise DomainError("derivative exchange needs re(z) > 0")
    sign = -1.0 if n % 2 else 1.0
    re = integral_product(f, _laplace_kernel_bv(z, "re", n, tol), tol)
    im = integral_product(f, _laplace_kernel_bv(z, "im", n, tol), tol)
    return sign * complex(re, im)


def growth_probe(f: Distribution, alpha: float, radii,
                 angles: int = 33, tol: float = DEFAULT_TOL) -> list[float]:
    """max |Laplace transform| on cone arcs |arg z| <= alpha at each
    radius; decreasing values are evidence for the o(1) decay."""
    if not (0.0 <= alpha < math.pi / 2):
        raise DomainError("cone half-angle must lie in [0, pi/2)")
    out = []
    for r in radii:
        best = 0.0
        for i in range(angles):
            theta = -alpha + 2.0 * alpha * i / max(1, angles - 1)
            z = complex(r * math.cos(theta), r * math.sin(theta))
            best = max(best, abs(laplace(f, z, tol)))
        out.append(best)
    return out


def weighted_integral(F_loc, r: float, tol: float = DEFAULT_TOL) -> float:
    """int_0^inf f(t) e^(-rt) dt for f the derivative of F_loc.

    Uses the identity F_r(x) = F(x) e^(-rx) - F(0) + r int_0^x F e^(-rt)
    whose last term converges absolutely; membership in the weighted
    space is decided by a tail audit of F_r.
    """
    F0 = F_loc(0.0)

    def Fr(x: float) -> float:
        if x <= 0.0:
            return 0.0
        if r == 0.0:
            return F_loc(x) - F0
        cap = (math.log(1.0 / tol) + 50.0) / r if r > 0 else x
        xq = min(x, cap) if r > 0 else x
        tail_term = F_loc(x) * math.exp(-r * x) if r * x < 700 else 0.0
        val, _ = integrate.quad(lambda t: F_loc(t) * math.exp(-r * t),
                                0.0, xq, limit=400)
        return tail_term - F0 + r * val

    # geometric tail audit of F_r
    vals = []
    for k in range(10, 40):
        v = Fr(2.0 ** k - 1.0)
        if not math.isfinite(v):
            raise NoLimitAtInfinity("weighted primitive overflows")
        vals.append(v)
    mean = sum(vals[-8:]) / 8.0
    spread = max(abs(v - mean) for v in vals[-8:])
    if not spread < math.sqrt(tol) * (1.0 + abs(mean)):
        raise NoLimitAtInfinity(
            f"weighted primitive spread {spread:g}; not in the weighted space")
    return mean
