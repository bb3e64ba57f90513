"""Rigorous real-interval arithmetic on IEEE doubles.

Every operation returns an interval that certainly contains the exact
mathematical result for all points of the inputs.  Outward rounding is done
by nudging endpoints with ``math.nextafter``: one ulp for operations the
hardware rounds correctly (+, -, *, /, sqrt), two ulps for libm-backed
transcendentals (sin, cos, atan2, acos), whose platform error is below one
ulp in practice and documented below two.  All nudging goes through
``_down``/``_up`` so the rounding strategy lives in exactly one place.

Intervals are immutable value objects with ``lo``/``hi`` float endpoints.
Any NaN or infinity encountered aborts with :class:`RintError` — silent
propagation of invalid values is never acceptable in a verification run.

Comparison predicates come in two strengths: ``certainly_*`` (true only if
the relation holds for every pair of points) and ``possibly_*`` (true if it
holds for some pair).  Branch-and-bound code prunes on *certain* violation
and keeps everything else.
"""

from __future__ import annotations

import math

_INF = math.inf

# ulp counts for outward rounding: exact ops vs libm transcendentals
_ULPS_EXACT = 1
_ULPS_LIBM = 2


class RintError(ArithmeticError):
    """Raised when an interval operation cannot produce a valid enclosure."""


def _down(x: float, ulps: int = _ULPS_EXACT) -> float:
    for _ in range(ulps):
        x = math.nextafter(x, -_INF)
    return x


def _up(x: float, ulps: int = _ULPS_EXACT) -> float:
    for _ in range(ulps):
        x = math.nextafter(x, _INF)
    return x


def _check(x: float) -> float:
    if not math.isfinite(x):
        raise RintError(f"non-finite value in interval computation: {x!r}")
    return x


class Interval:
    """A closed interval [lo, hi] of reals, endpoints IEEE doubles."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        lo = _check(float(lo))
        hi = _check(float(hi))
        if lo > hi:
            raise RintError(f"inverted interval [{lo!r}, {hi!r}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    @staticmethod
    def around(x: float, ulps: int) -> "Interval":
        """Interval of +-ulps around a float (enclosure of a rounded value)."""
        return Interval(_down(x, ulps), _up(x, ulps))

    @staticmethod
    def hull(*xs: "Interval") -> "Interval":
        return Interval(min(x.lo for x in xs), max(x.hi for x in xs))

    # -- basic queries -------------------------------------------------------

    @property
    def width(self) -> float:
        return _up(self.hi - self.lo)

    @property
    def mid(self) -> float:
        m = 0.5 * (self.lo + self.hi)
        if not math.isfinite(m):
            m = self.lo + 0.5 * (self.hi - self.lo)
        # clamp: midpoint must lie inside the interval
        return min(max(m, self.lo), self.hi)

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        if not self.overlaps(other):
            raise RintError(f"empty intersection of {self} and {other}")
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Interval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    __hash__ = None  # mutable-free but identity-by-value comparisons only

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, (int, float)):
            return Interval.point(float(x))
        return NotImplemented

    def __add__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        for p in ps:
            _check(p)
        return Interval(_down(min(ps)), _up(max(ps)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.lo <= 0.0 <= o.hi:
            raise RintError(f"division by interval containing zero: {o}")
        ps = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        for p in ps:
            _check(p)
        return Interval(_down(min(ps)), _up(max(ps)))

    def __rtruediv__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def __abs__(self):
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return -self
        return Interval(0.0, max(-self.lo, self.hi))

    def sq(self) -> "Interval":
        """x**2, tight when the interval straddles zero."""
        a = abs(self)
        return Interval(_down(a.lo * a.lo), _up(a.hi * a.hi))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        if n == 0:
            return Interval.point(1.0)
        out = self
        for _ in range(n - 1):
            out = out * self
        if n % 2 == 0:
            return self.sq() if n == 2 else out.intersect_nonneg()
        return out

    def intersect_nonneg(self) -> "Interval":
        if self.hi < 0.0:
            raise RintError(f"certainly negative: {self}")
        return Interval(max(self.lo, 0.0), self.hi)

    # -- comparison predicates ----------------------------------------------

    def certainly_lt(self, other) -> bool:
        o = Interval._coerce(other)
        return self.hi < o.lo

    def certainly_le(self, other) -> bool:
        o = Interval._coerce(other)
        return self.hi <= o.lo

    def certainly_gt(self, other) -> bool:
        o = Interval._coerce(other)
        return self.lo > o.hi

    def certainly_ge(self, other) -> bool:
        o = Interval._coerce(other)
        return self.lo >= o.hi

    def possibly_lt(self, other) -> bool:
        o = Interval._coerce(other)
        return self.lo < o.hi

    def possibly_le(self, other) -> bool:
        o = Interval._coerce(other)
        return self.lo <= o.hi

    def possibly_gt(self, other) -> bool:
        o = Interval._coerce(other)
        return self.hi > o.lo

    def possibly_ge(self, other) -> bool:
        o = Interval._coerce(other)
        return self.hi >= o.lo


# -- elementary functions ----------------------------------------------------


def sqrt(x: Interval) -> Interval:
    """Square root; requires a certainly-nonnegative argument."""
    if x.lo < 0.0:
        raise RintError(f"sqrt of possibly-negative interval {x}")
    return Interval(_down(math.sqrt(x.lo)), _up(math.sqrt(x.hi)))


def sqrt_clamped(x: Interval) -> Interval:
    """Square root for quantities nonnegative by construction.

    The enclosure of such a quantity may still dip below zero near a
    degeneracy; the negative part carries no points of the true value set,
    so it is clamped away.  Certainly-negative input is an error.
    """
    return sqrt(x.intersect_nonneg())


_SIN_ARG_MAX = 8.0


def _libm_point(val: float) -> Interval:
    return Interval(_down(val, _ULPS_LIBM), _up(val, _ULPS_LIBM))


def sin(x: Interval) -> Interval:
    """Sine on arguments within [-8, 8] (domain-reduced by callers)."""
    if abs(x.lo) > _SIN_ARG_MAX or abs(x.hi) > _SIN_ARG_MAX:
        raise RintError(f"sin argument outside [-8, 8]: {x}")
    lo_v = _libm_point(math.sin(x.lo))
    hi_v = _libm_point(math.sin(x.hi))
    lo = min(lo_v.lo, hi_v.lo)
    hi = max(lo_v.hi, hi_v.hi)
    for k in (-2, -1, 0, 1, 2):
        peak = PI_HALF + TWO_PI * k
        if peak.overlaps(x):
            hi = 1.0
        trough = -PI_HALF + TWO_PI * k
        if trough.overlaps(x):
            lo = -1.0
    return Interval(max(lo, -1.0), min(hi, 1.0))


def cos(x: Interval) -> Interval:
    if abs(x.lo) > _SIN_ARG_MAX or abs(x.hi) > _SIN_ARG_MAX:
        raise RintError(f"cos argument outside [-8, 8]: {x}")
    lo_v = _libm_point(math.cos(x.lo))
    hi_v = _libm_point(math.cos(x.hi))
    lo = min(lo_v.lo, hi_v.lo)
    hi = max(lo_v.hi, hi_v.hi)
    for k in (-2, -1, 0, 1, 2):
        peak = TWO_PI * k
        if peak.overlaps(x):
            hi = 1.0
        trough = PI + TWO_PI * k
        if trough.overlaps(x):
            lo = -1.0
    return Interval(max(lo, -1.0), min(hi, 1.0))


def _atan2_corners(y: Interval, x: Interval) -> Interval:
    vals = (
        math.atan2(y.lo, x.lo),
        math.atan2(y.lo, x.hi),
        math.atan2(y.hi, x.lo),
        math.atan2(y.hi, x.hi),
    )
    return Interval(_down(min(vals), _ULPS_LIBM), _up(max(vals), _ULPS_LIBM))


def atan2(y: Interval, x: Interval) -> Interval:
    """Angle of the vector box (x, y); continuous-branch enclosure.

    The result is an enclosure of one continuous branch of the angle, so it
    may extend beyond (-pi, pi] when the box straddles the half-line of
    angle pi; callers treat angles modulo a full turn.  A box containing
    the origin has no bounded angle and raises.
    """
    if x.contains(0.0) and y.contains(0.0):
        raise RintError("atan2 of a box containing the origin")
    if y.lo <= 0.0 <= y.hi and x.hi < 0.0:
        # box straddles the discontinuity of atan2; rotate it a quarter
        # turn (x', y') = (y, -x), evaluate there, add the quarter turn back
        return _atan2_corners(-x, y) + PI_HALF
    return _atan2_corners(y, x)


def acos_clamped(x: Interval) -> Interval:
    """Arc cosine of a ratio that is in [-1, 1] by construction.

    Enclosure overhang beyond [-1, 1] is clamped; an argument certainly
    outside the domain raises (the configuration is impossible).
    """
    if x.hi < -1.0 or x.lo > 1.0:
        raise RintError(f"acos argument certainly outside [-1, 1]: {x}")
    lo_c = max(x.lo, -1.0)
    hi_c = min(x.hi, 1.0)
    out_lo = _down(math.acos(hi_c), _ULPS_LIBM)
    out_hi = _up(math.acos(lo_c), _ULPS_LIBM)
    return Interval(max(out_lo, 0.0), min(out_hi, PI.hi))


def imin(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), min(a.hi, b.hi))


def imax(a: Interval, b: Interval) -> Interval:
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


def reduce_mod(x: Interval, modulus: Interval) -> tuple[Interval, bool]:
    """Reduce x into [0, modulus), subtracting an integer multiple.

    Returns ``(reduced, wrapped)``.  When the reduction is unambiguous the
    first element is the reduced enclosure and ``wrapped`` is False; when x
    straddles a multiple of the modulus the full [0, modulus] interval is
    returned with ``wrapped`` True (the value set genuinely wraps around).
    """
    if x.width >= modulus.lo:
        return Interval(0.0, modulus.hi), True
    k = math.floor(x.mid / modulus.mid)
    red = x - modulus * k
    if red.lo >= 0.0 and red.hi <= modulus.hi:
        return red, False
    # try the neighbouring quotients before giving up
    for kk in (k - 1, k + 1):
        red = x - modulus * kk
        if red.lo >= 0.0 and red.hi <= modulus.hi:
            return red, False
    return Interval(0.0, modulus.hi), True


# -- shared constants ----------------------------------------------------
# pi enclosure: one ulp each side of the nearest double; everything else is
# derived through interval arithmetic from exact small integers.

PI = Interval(_down(math.pi), _up(math.pi))
TWO_PI = PI * 2
PI_HALF = PI / 2
PI_5 = PI / 5
TWO_PI_5 = PI * 2 / 5
THREE_PI_5 = PI * 3 / 5
THREE_PI_10 = PI * 3 / 10
FOUR_PI_5 = PI * 4 / 5
SEVEN_PI_5 = PI * 7 / 5

SQRT5 = sqrt(Interval.point(5.0))
#: circumradius-1 pentagon: apothem (inradius)
KAPPA = (1 + SQRT5) / 4
#: half edge length of the circumradius-1 pentagon
SIGMA = sqrt((10 - 2 * SQRT5)) / 4
TWO_SIGMA = SIGMA * 2
TWO_KAPPA = KAPPA * 2
#: golden ratio
PHI = (1 + SQRT5) / 2
#: area of the circumradius-1 regular pentagon
AREA_PENTAGON = 5 * KAPPA * SIGMA
#: critical triangle area: every triangle of an optimal packing attains it
A_CRIT = 3 * SIGMA * KAPPA * (1 + KAPPA) / 2
#: proven lower bound for any triangle area (exact float by convention)
A_MIN = 1.237
#: slack between the critical area and the global lower bound
EPS_N = A_CRIT - A_MIN
#: small discharging slack for near-critical accounting
EPS_M = 0.008
#: the optimal packing density (5 - sqrt 5)/3
DENSITY = (5 - SQRT5) / 3
