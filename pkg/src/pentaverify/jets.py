"""Univariate first- and second-order jets over rigorous intervals.

A :class:`Jet1` carries ``(f, d1)`` and a :class:`Jet2` carries
``(f, d1, d2)`` where ``d1``/``d2`` are the first/second derivatives (not
Taylor coefficients) with respect to a single curve parameter.  The
coefficients are :class:`~pentaverify.rint.Interval` values, so every
derivative that comes out of a jet evaluation is itself a rigorous
enclosure — this is what turns a chart-area evaluation into a certified
slope or curvature bound.

Plain numbers and intervals lift to constant jets automatically, so the
same geometric code runs unchanged on floats, intervals and jets.
"""

from __future__ import annotations

from . import rint
from .rint import Interval

_ZERO = Interval.point(0.0)
_ONE = Interval.point(1.0)


def _as_iv(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(float(x))


class Jet1:
    """Value and first derivative along one parameter."""

    __slots__ = ("f", "d1")

    def __init__(self, f, d1=0.0):
        self.f = _as_iv(f)
        self.d1 = _as_iv(d1)

    @staticmethod
    def var(x) -> "Jet1":
        """The parameter itself: derivative one."""
        return Jet1(x, 1.0)

    @staticmethod
    def const(x) -> "Jet1":
        return Jet1(x, 0.0)

    @staticmethod
    def _coerce(x):
        if isinstance(x, Jet1):
            return x
        if isinstance(x, (Interval, int, float)):
            return Jet1(x, 0.0)
        return NotImplemented

    def __repr__(self):
        return f"Jet1(f={self.f}, d1={self.d1})"

    def __add__(self, o):
        o = Jet1._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return Jet1(self.f + o.f, self.d1 + o.d1)

    __radd__ = __add__

    def __neg__(self):
        return Jet1(-self.f, -self.d1)

    def __sub__(self, o):
        o = Jet1._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return Jet1(self.f - o.f, self.d1 - o.d1)

    def __rsub__(self, o):
        return Jet1._coerce(o).__sub__(self)

    def __mul__(self, o):
        o = Jet1._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return Jet1(self.f * o.f, self.f * o.d1 + self.d1 * o.f)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Jet1._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        q = self.f / o.f
        return Jet1(q, (self.d1 - q * o.d1) / o.f)

    def __rtruediv__(self, o):
        return Jet1._coerce(o).__truediv__(self)

    def sq(self):
        return Jet1(self.f.sq(), 2 * self.f * self.d1)

    def sqrt(self):
        s = rint.sqrt_clamped(self.f)
        return Jet1(s, self.d1 / (2 * s))

    def sin(self):
        return Jet1(rint.sin(self.f), rint.cos(self.f) * self.d1)

    def cos(self):
        return Jet1(rint.cos(self.f), -rint.sin(self.f) * self.d1)


class Jet2:
    """Value, first and second derivative along one parameter."""

    __slots__ = ("f", "d1", "d2")

    def __init__(self, f, d1=0.0, d2=0.0):
        self.f = _as_iv(f)
        self.d1 = _as_iv(d1)
        self.d2 = _as_iv(d2)

    @staticmethod
    def var(x) -> "Jet2":
        return Jet2(x, 1.0, 0.0)

    @staticmethod
    def const(x) -> "Jet2":
        return Jet2(x, 0.0, 0.0)

    @staticmethod
    def _coerce(x):
        if isinstance(x, Jet2):
            return x
        if isinstance(x, (Interval, int, float)):
            return Jet2(x, 0.0, 0.0)
        return NotImplemented

    def __repr__(self):
        return f"Jet2(f={self.f}, d1={self.d1}, d2={self.d2})"

    def __add__(self, o):
        o = Jet2._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(self.f + o.f, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.f, -self.d1, -self.d2)

    def __sub__(self, o):
        o = Jet2._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(self.f - o.f, self.d1 - o.d1, self.d2 - o.d2)

    def __rsub__(self, o):
        return Jet2._coerce(o).__sub__(self)

    def __mul__(self, o):
        o = Jet2._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(
            self.f * o.f,
            self.f * o.d1 + self.d1 * o.f,
            self.f * o.d2 + 2 * self.d1 * o.d1 + self.d2 * o.f,
        )

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Jet2._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        q = self.f / o.f
        q1 = (self.d1 - q * o.d1) / o.f
        q2 = (self.d2 - 2 * q1 * o.d1 - q * o.d2) / o.f
        return Jet2(q, q1, q2)

    def __rtruediv__(self, o):
        return Jet2._coerce(o).__truediv__(self)

    def sq(self):
        return Jet2(self.f.sq(), 2 * self.f * self.d1,
                    2 * (self.d1.sq() + self.f * self.d2))

    def sqrt(self):
        s = rint.sqrt_clamped(self.f)
        s1 = self.d1 / (2 * s)
        s2 = (self.d2 - 2 * s1.sq()) / (2 * s)
        return Jet2(s, s1, s2)

    def sin(self):
        sf, cf = rint.sin(self.f), rint.cos(self.f)
        return Jet2(sf, cf * self.d1, cf * self.d2 - sf * self.d1.sq())

    def cos(self):
        sf, cf = rint.sin(self.f), rint.cos(self.f)
        return Jet2(cf, -sf * self.d1, -sf * self.d2 - cf * self.d1.sq())


def atan2(y, x):
    """Jet-aware planar angle; accepts Jet1 or Jet2 pairs (same order)."""
    if isinstance(y, Jet2) or isinstance(x, Jet2):
        y, x = Jet2._coerce(y), Jet2._coerce(x)
        r2 = x.f.sq() + y.f.sq()
        th = rint.atan2(y.f, x.f)
        t1 = (x.f * y.d1 - y.f * x.d1) / r2
        r2d = 2 * (x.f * x.d1 + y.f * y.d1)
        t2 = (x.f * y.d2 - y.f * x.d2) / r2 - t1 * r2d / r2
        return Jet2(th, t1, t2)
    y, x = Jet1._coerce(y), Jet1._coerce(x)
    r2 = x.f.sq() + y.f.sq()
    return Jet1(rint.atan2(y.f, x.f), (x.f * y.d1 - y.f * x.d1) / r2)
