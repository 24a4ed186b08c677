"""Closed interval arithmetic over binary64 with outward rounding.

Every operation returns an interval that contains the exact real result
for all points of the inputs.  Directed rounding is emulated by widening
each computed endpoint with ``math.nextafter``: one ulp for the IEEE
correctly-rounded operations (+, -, *, /, sqrt) and two ulps for libm
transcendentals, which are faithful but not always correctly rounded.

Endpoints are floats.  Overflow saturates to infinite endpoints instead
of raising; NaN never escapes (an indeterminate endpoint degrades to the
conservative infinity).  Float arguments to constructors and mixed
arithmetic are taken at face value, i.e. as the exact binary64 rational
they already are.
"""

from __future__ import annotations

import math
from decimal import Context, Decimal, ROUND_CEILING, ROUND_FLOOR
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Interval",
    "IntervalError",
    "DomainError",
    "DivisionByZeroInterval",
    "PI",
    "TWO_PI",
    "HALF_PI",
    "ZERO",
    "ONE",
]

_INF = math.inf


class IntervalError(ValueError):
    """Base class for interval arithmetic failures."""


class DomainError(IntervalError):
    """Input interval leaves the mathematical domain of the operation."""


class DivisionByZeroInterval(IntervalError):
    """Divisor interval contains zero."""


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _down2(x: float) -> float:
    return math.nextafter(math.nextafter(x, -_INF), -_INF)


def _up2(x: float) -> float:
    return math.nextafter(math.nextafter(x, _INF), _INF)


def _lo_guard(v: float) -> float:
    # NaN (inf - inf and friends) degrades to the conservative endpoint.
    return -_INF if v != v else _down(v)


def _hi_guard(v: float) -> float:
    return _INF if v != v else _up(v)


def _prod(x: float, y: float) -> float:
    # Endpoint product with the convention 0 * inf = 0, which is the
    # correct limit behaviour for interval bounds.
    if x == 0.0 or y == 0.0:
        return 0.0
    return x * y


class Interval:
    """A closed, possibly unbounded interval [lo, hi] of reals."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if lo != lo or hi != hi:
            raise IntervalError("NaN endpoint")
        if lo > hi:
            raise IntervalError(f"inverted endpoints: lo={lo!r} > hi={hi!r}")
        self.lo = lo
        self.hi = hi

    # -- constructors -------------------------------------------------

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "Interval":
        """Tightest float interval containing an exact rational."""
        f = float(fr)
        if math.isinf(f):
            return cls(_down(f), f) if f > 0 else cls(f, _up(f))
        exact = Fraction(f)
        lo = f if exact <= fr else _down(f)
        hi = f if exact >= fr else _up(f)
        return cls(lo, hi)

    @classmethod
    def hull(cls, items) -> "Interval":
        lo = _INF
        hi = -_INF
        for it in items:
            if isinstance(it, Interval):
                lo = min(lo, it.lo)
                hi = max(hi, it.hi)
            else:
                lo = min(lo, it)
                hi = max(hi, it)
        return cls(lo, hi)

    # -- predicates and measures --------------------------------------

    @property
    def width(self) -> float:
        w = self.hi - self.lo
        return _up(w) if math.isfinite(w) else _INF

    @property
    def mid(self) -> float:
        if math.isinf(self.lo) or math.isinf(self.hi):
            if math.isinf(self.lo) and math.isinf(self.hi):
                return 0.0
            return self.lo if math.isinf(self.hi) else self.hi
        return self.lo + 0.5 * (self.hi - self.lo)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def is_subset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, (int, float)):
            return Interval(float(x))
        if isinstance(x, Fraction):
            return Interval.from_fraction(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as Interval")

    def __add__(self, other) -> "Interval":
        o = self._coerce(other)
        return Interval(_lo_guard(self.lo + o.lo), _hi_guard(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        o = self._coerce(other)
        return Interval(_lo_guard(self.lo - o.hi), _hi_guard(self.hi - o.lo))

    def __rsub__(self, other) -> "Interval":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Interval":
        o = self._coerce(other)
        p1 = _prod(self.lo, o.lo)
        p2 = _prod(self.lo, o.hi)
        p3 = _prod(self.hi, o.lo)
        p4 = _prod(self.hi, o.hi)
        return Interval(
            _lo_guard(min(p1, p2, p3, p4)), _hi_guard(max(p1, p2, p3, p4))
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = self._coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise DivisionByZeroInterval(f"divisor {o} contains zero")
        q1 = self.lo / o.lo
        q2 = self.lo / o.hi
        q3 = self.hi / o.lo
        q4 = self.hi / o.hi
        return Interval(
            _lo_guard(min(q1, q2, q3, q4)), _hi_guard(max(q1, q2, q3, q4))
        )

    def __rtruediv__(self, other) -> "Interval":
        return self._coerce(other) / self

    def __abs__(self) -> "Interval":
        if self.lo >= 0.0:
            return Interval(self.lo, self.hi)
        if self.hi <= 0.0:
            return Interval(-self.hi, -self.lo)
        return Interval(0.0, max(-self.lo, self.hi))

    # -- elementary functions ------------------------------------------

    def exp(self) -> "Interval":
        try:
            lo = _down2(math.exp(self.lo))
        except OverflowError:
            lo = _down(_INF)
        try:
            hi = _up2(math.exp(self.hi))
        except OverflowError:
            hi = _INF
        return Interval(max(lo, 0.0), hi)

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise DomainError(f"sqrt of {self} with negative lower endpoint")
        lo = max(0.0, _down(math.sqrt(self.lo)))
        hi = _INF if math.isinf(self.hi) else _up(math.sqrt(self.hi))
        return Interval(lo, hi)

    def ln(self) -> "Interval":
        if self.lo < 0.0:
            raise DomainError(f"log of {self} with negative lower endpoint")
        if self.hi == 0.0:
            return Interval(-_INF, -_INF)
        lo = -_INF if self.lo == 0.0 else _down2(math.log(self.lo))
        hi = _INF if math.isinf(self.hi) else _up2(math.log(self.hi))
        return Interval(lo, hi)

    def pow_int(self, n: int) -> "Interval":
        """x^n for integer n, sharp on sign-crossing intervals."""
        if n != int(n):
            raise TypeError("pow_int needs an integer exponent")
        n = int(n)
        if n == 0:
            return ONE
        if n < 0:
            return ONE / self.pow_int(-n)
        if n == 1:
            return Interval(self.lo, self.hi)
        if n % 2 == 1 or self.lo >= 0.0:
            return Interval(
                max(0.0, _pow_ep_down(self.lo, n)) if self.lo >= 0.0
                else _pow_ep_down(self.lo, n),
                _pow_ep_up(self.hi, n),
            )
        if self.hi <= 0.0:
            return Interval(_pow_ep_down(self.hi, n), _pow_ep_up(self.lo, n))
        m = max(-self.lo, self.hi)
        return Interval(0.0, _pow_ep_up(m, n))

    def pow_real(self, q) -> "Interval":
        """x^q for rational q via exp(q log x); integer q falls back to pow_int.

        Requires lo >= 0 (lo > 0 when q < 0).  The zero endpoint is exact:
        0^q = 0 for q > 0.
        """
        qf = q if isinstance(q, Fraction) else Fraction(q)
        if qf.denominator == 1:
            return self.pow_int(qf.numerator)
        if qf > 0:
            if self.lo < 0.0:
                raise DomainError(f"{self} ** {qf}: negative base")
            if self.hi == 0.0:
                return ZERO
            lo = 0.0 if self.lo == 0.0 else _pow_pos(self.lo, qf, True)
            return Interval(lo, _pow_pos(self.hi, qf, False))
        if self.lo <= 0.0:
            raise DomainError(f"{self} ** {qf}: base must be positive")
        return Interval(_pow_pos(self.hi, qf, True), _pow_pos(self.lo, qf, False))

    def cos(self) -> "Interval":
        """Exact range of cos over the interval, outward-rounded.

        Arguments of any size are handled: each endpoint is reduced by a
        whole multiple of the rigorous two-pi enclosure, and every integer
        multiple of pi that may fall inside the interval contributes its
        extremum.
        """
        a, b = self.lo, self.hi
        if b - a >= 2.0 * _PI_HI or math.isinf(a) or math.isinf(b):
            return Interval(-1.0, 1.0)
        ca = _cos_point(a)
        cb = _cos_point(b)
        lo = min(ca.lo, cb.lo)
        hi = max(ca.hi, cb.hi)
        k0 = math.floor(a / _PI_HI) - 1
        k1 = math.ceil(b / _PI_LO) + 1
        for k in range(k0, k1 + 1):
            kp_lo, kp_hi = _mul_pi(k)
            if kp_hi >= a and kp_lo <= b:
                if k % 2 == 0:
                    hi = 1.0
                else:
                    lo = -1.0
        return Interval(max(lo, -1.0), min(hi, 1.0))

    def sin(self) -> "Interval":
        # sin x = cos(x - pi/2)
        return (self - HALF_PI).cos()

    # -- rendering ------------------------------------------------------

    def format_decimal(self, sig: int = 17) -> str:
        """Decimal "[lo, hi]" with endpoints rounded outward.

        The printed interval always contains the binary one: the lower
        endpoint is rounded toward -inf and the upper toward +inf at the
        requested number of significant digits.
        """
        return f"[{_dec_str(self.lo, ROUND_FLOOR, sig)}, {_dec_str(self.hi, ROUND_CEILING, sig)}]"

    def __str__(self) -> str:
        return self.format_decimal()

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"


def _pow_ep_down(x: float, n: int) -> float:
    try:
        return _down2(math.pow(x, n))
    except OverflowError:
        return _down(_INF) if x > 0 or n % 2 == 0 else -_INF


def _pow_ep_up(x: float, n: int) -> float:
    try:
        return _up2(math.pow(x, n))
    except OverflowError:
        return _INF if x > 0 or n % 2 == 0 else _up(-_INF)


@lru_cache(maxsize=256)
def _fraction_interval(num: int, den: int) -> Interval:
    return Interval.from_fraction(Fraction(num, den))


def _pow_pos(x: float, q: Fraction, lower: bool) -> float:
    # Enclosure endpoint of x^q for x > 0 via exp(q ln x).
    qi = _fraction_interval(q.numerator, q.denominator)
    r = (qi * Interval(x, x).ln()).exp()
    return r.lo if lower else r.hi


# Rigorous pi: math.pi < pi < nextafter(math.pi, inf).
_PI_LO = math.pi
_PI_HI = math.nextafter(math.pi, _INF)
_TWO_PI_LO = 2.0 * _PI_LO  # exact scalings by powers of two
_TWO_PI_HI = 2.0 * _PI_HI

PI = Interval(_PI_LO, _PI_HI)
TWO_PI = Interval(_TWO_PI_LO, _TWO_PI_HI)
HALF_PI = Interval(0.5 * _PI_LO, 0.5 * _PI_HI)
ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)


def _mul_pi(k: int) -> tuple[float, float]:
    # Enclosure of k*pi.
    if k >= 0:
        return _down(k * _PI_LO), _up(k * _PI_HI)
    return _down(k * _PI_HI), _up(k * _PI_LO)


def _cos_point(x: float) -> Interval:
    """Enclosure of cos at one exact float argument."""
    if abs(x) <= 3.2:
        c = math.cos(x)
        return Interval(max(-1.0, _down2(c)), min(1.0, _up2(c)))
    # Reduce by the nearest whole multiple of 2*pi, carrying the enclosure
    # width of n*2*pi into the remainder.
    n = round(x / _TWO_PI_LO)
    if n >= 0:
        np_lo, np_hi = _down(n * _TWO_PI_LO), _up(n * _TWO_PI_HI)
    else:
        np_lo, np_hi = _down(n * _TWO_PI_HI), _up(n * _TWO_PI_LO)
    rl = _down(x - np_hi)
    rh = _up(x - np_lo)
    m = rl + 0.5 * (rh - rl)
    c = math.cos(m)
    rad = _up(max(m - rl, rh - m))  # |cos'| <= 1
    return Interval(max(-1.0, _down2(c) - rad), min(1.0, _up2(c) + rad))


_DEC_FLOOR = {}
_DEC_CEIL = {}


def _dec_str(x: float, rounding, sig: int) -> str:
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    cache = _DEC_FLOOR if rounding is ROUND_FLOOR else _DEC_CEIL
    ctx = cache.get(sig)
    if ctx is None:
        ctx = Context(prec=sig, rounding=rounding)
        cache[sig] = ctx
    return str(ctx.plus(Decimal(x)))
