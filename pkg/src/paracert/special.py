"""Exponent bookkeeping and closed-form special constants.

Everything here returns rigorous :class:`~paracert.interval.Interval`
enclosures.  Gamma values are only needed at half-integer arguments,
where the recurrence down to Gamma(1) = 1 or Gamma(1/2) = sqrt(pi) gives
an exact rational coefficient times an optional sqrt(pi); keeping that
split symbolic lets ratios like the Wallis mean cancel the sqrt(pi)
exactly instead of dragging a transcendental enclosure through the
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .interval import Interval, DomainError, PI

__all__ = [
    "UnsupportedArgument",
    "Exponents",
    "gamma_half_integer",
    "gamma_parts",
    "kappa",
    "lower_bound_factor",
    "extension_constant",
    "phi",
    "phi_one_closed_form",
    "phi_monotone_check",
    "PhiMonotoneReport",
]


class UnsupportedArgument(ValueError):
    """Argument outside the half-integer lattice this module covers."""


@dataclass(frozen=True)
class Exponents:
    """Admissible (d, p, q) triple with q = (d+2)/d * p'.

    d = 1, 2 are the certified dimensions; other d construct fine but
    only the float-mode tooling accepts them.
    """

    d: int
    p: Fraction
    q: Fraction
    p_prime: Fraction

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be a positive integer")
        if self.p <= 1:
            raise ValueError("p must exceed 1")
        if self.p_prime != self.p / (self.p - 1):
            raise ValueError("p_prime is not the conjugate of p")
        if self.q != Fraction(self.d + 2, self.d) * self.p_prime:
            raise ValueError("q must equal (d+2)/d * p'")

    @classmethod
    def make(cls, d: int, p=Fraction(2)) -> "Exponents":
        p = Fraction(p)
        if p <= 1:
            raise ValueError("p must exceed 1")
        p_prime = p / (p - 1)
        return cls(d=d, p=p, q=Fraction(d + 2, d) * p_prime, p_prime=p_prime)

    @classmethod
    def stein_tomas(cls, d: int) -> "Exponents":
        """The p = 2 endpoint: q = 6 for d = 1, q = 4 for d = 2."""
        return cls.make(d, Fraction(2))

    @property
    def certified(self) -> bool:
        return self.d in (1, 2)


def gamma_parts(z: Fraction) -> tuple[Fraction, int]:
    """Gamma(z) = coeff * sqrt(pi)**power for half-integer z > 0.

    Returns (coeff, power) with coeff an exact Fraction and power 0 or 1.
    """
    z = Fraction(z)
    if z <= 0 or (2 * z).denominator != 1:
        raise UnsupportedArgument(f"gamma wanted at {z}; need positive k/2")
    coeff = Fraction(1)
    while z > 1:
        z -= 1
        coeff *= z
    return (coeff, 0) if z == 1 else (coeff, 1)


_SQRT_PI = PI.sqrt()


def gamma_half_integer(z) -> Interval:
    """Enclosure of Gamma(z) at a positive half-integer z."""
    coeff, power = gamma_parts(Fraction(z))
    out = Interval.from_fraction(coeff)
    return out * _SQRT_PI if power else out


def kappa(e: Exponents) -> Interval:
    """Mean of |cos|**q over a period: Gamma((q+1)/2) / (sqrt(pi) Gamma((q+2)/2)).

    For integer q one of the two gamma factors carries the sqrt(pi), so
    the result is an exact rational (5/16 at q = 6, 3/8 at q = 4).
    """
    n1, s1 = gamma_parts((e.q + 1) / 2)
    n2, s2 = gamma_parts((e.q + 2) / 2)
    ratio = Interval.from_fraction(n1 / n2)
    net = s1 - s2 - 1  # power of sqrt(pi); always in {-2, -1, 0}
    if net == 0:
        return ratio
    if net == -1:
        return ratio / _SQRT_PI
    return ratio / PI


def lower_bound_factor(e: Exponents) -> Interval:
    """kappa**(1/q) * 2**(1/p'), the certified gain over a single paraboloid.

    Strictly between 1 and sqrt(2) whenever kappa is in (0, 1).
    """
    return kappa(e).pow_real(Fraction(1) / e.q) * Interval(2.0).pow_real(
        Fraction(1) / e.p_prime
    )


def extension_constant(e: Exponents) -> Interval:
    """The polar normalisation 2 * pi**(d(1+q)/2) / Gamma(d/2)."""
    a = Fraction(e.d) * (1 + e.q) / 2
    if (2 * a).denominator != 1:
        raise UnsupportedArgument(f"pi exponent {a} is not a half-integer")
    m = a.numerator // a.denominator  # floor; remainder is 0 or 1/2
    s = 1 if a - m == Fraction(1, 2) else 0
    g, t = gamma_parts(Fraction(e.d, 2))
    out = Interval.from_fraction(2 / g) * PI.pow_int(m)
    net = s - t
    if net == 1:
        out = out * _SQRT_PI
    elif net == -1:
        out = out / _SQRT_PI
    return out


def _phi_integrand(t: Interval, q2: Fraction):
    # After the substitution theta = pi*u the weight 1/pi cancels and the
    # u-box [0, 1] has exact endpoints.
    def f(cell) -> Interval:
        base = 1 + t * (PI * cell.axes[0]).cos()
        clipped = Interval(max(base.lo, 0.0), max(base.hi, 0.0))
        return clipped.pow_real(q2)

    return f


def phi(t: Interval, q, steps: int = 4096) -> Interval:
    """Enclosure of (1/pi) * int_0^pi (1 + t cos theta)**(q/2) dtheta, t in [0, 1].

    The base 1 + t cos theta touches zero at t = 1; its enclosure is
    clipped at zero before the power, which is sound because the true
    base is nonnegative on the domain.
    """
    from . import quad

    if not (0.0 <= t.lo and t.hi <= 1.0):
        raise DomainError(f"phi wants t inside [0, 1], got {t}")
    q2 = Fraction(q) / 2
    box = quad.Box((Interval(0.0, 1.0),))
    return quad.riemann_enclosure(_phi_integrand(t, q2), box, (int(steps),))


def phi_one_closed_form(q) -> Interval:
    """phi(1) = 2**(q/2) Gamma((q+1)/2) / (sqrt(pi) Gamma((q+2)/2))."""
    q = Fraction(q)
    two_pow = Interval(2.0).pow_real(q / 2)
    n1, s1 = gamma_parts((q + 1) / 2)
    n2, s2 = gamma_parts((q + 2) / 2)
    ratio = Interval.from_fraction(n1 / n2)
    net = s1 - s2 - 1
    if net == 0:
        return two_pow * ratio
    if net == -1:
        return two_pow * ratio / _SQRT_PI
    return two_pow * ratio / PI


@dataclass(frozen=True)
class PhiMonotoneReport:
    status: str  # "certified" or "inconclusive"
    q: Fraction
    steps: int
    points: tuple[float, ...]
    enclosures: tuple[Interval, ...]
    margins: tuple[float, ...]  # lower(phi(t_{i+1})) - upper(phi(t_i))

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def phi_monotone_check(q, points, steps: int = 4096) -> PhiMonotoneReport:
    """Certify strict increase of phi across the given grid of t values.

    Certified only when consecutive enclosures are disjoint in the right
    order; overlapping enclosures yield "inconclusive", never a negative
    claim.
    """
    pts = tuple(float(t) for t in points)
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError("grid points must be strictly increasing")
    encl = tuple(phi(Interval(t), q, steps) for t in pts)
    margins = tuple(b.lo - a.hi for a, b in zip(encl, encl[1:]))
    status = "certified" if all(m > 0.0 for m in margins) else "inconclusive"
    return PhiMonotoneReport(
        status=status,
        q=Fraction(q),
        steps=int(steps),
        points=pts,
        enclosures=encl,
        margins=margins,
    )
