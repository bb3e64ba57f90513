"""Scalar-type carriers for the shared geometric code.

The pentagon/chart constructions are written once against a tiny scalar
protocol: the four arithmetic operators plus ``sqrt``/``sin``/``cos``/
``atan2`` and a handful of named constants.  A :class:`Num` bundles those
for one scalar type:

* ``FLT``  — plain floats; fast, non-rigorous; used by the sampling oracle
  and for picking bisection points.
* ``RIG``  — rigorous intervals; every verified claim runs on this.
* ``JET1``/``JET2`` — interval jets; same constructions, with certified
  first/second derivatives along one parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

from . import jets, rint
from .rint import Interval


def _no_acos(x):
    raise NotImplementedError("acos is not defined for jet scalars")


@dataclass(frozen=True)
class Num:
    name: str
    const: Callable[[Any], Any]
    sqrt: Callable[[Any], Any]
    sin: Callable[[Any], Any]
    cos: Callable[[Any], Any]
    atan2: Callable[[Any, Any], Any]
    acos: Callable[[Any], Any] = _no_acos
    pi: Any = field(default=None)
    pi_5: Any = field(default=None)
    two_pi_5: Any = field(default=None)
    three_pi_10: Any = field(default=None)
    kappa: Any = field(default=None)
    sigma: Any = field(default=None)
    two_sigma: Any = field(default=None)

    def lifted(self, **consts) -> "Num":
        return Num(
            name=self.name,
            const=self.const,
            sqrt=self.sqrt,
            sin=self.sin,
            cos=self.cos,
            atan2=self.atan2,
            acos=self.acos,
            **{k: self.const(v) for k, v in consts.items()},
        )


_BASE_CONSTS = dict(
    pi=rint.PI,
    pi_5=rint.PI_5,
    two_pi_5=rint.TWO_PI_5,
    three_pi_10=rint.THREE_PI_10,
    kappa=rint.KAPPA,
    sigma=rint.SIGMA,
    two_sigma=rint.TWO_SIGMA,
)

_FLOAT_CONSTS = {k: v.mid for k, v in _BASE_CONSTS.items()}

FLT = Num(
    name="float",
    const=float,
    sqrt=lambda x: math.sqrt(x) if x > 0.0 else 0.0,
    sin=math.sin,
    cos=math.cos,
    atan2=math.atan2,
    acos=lambda x: math.acos(min(1.0, max(-1.0, x))),
).lifted(**_FLOAT_CONSTS)

RIG = Num(
    name="interval",
    const=lambda x: x if isinstance(x, Interval) else Interval.point(float(x)),
    sqrt=rint.sqrt_clamped,
    sin=rint.sin,
    cos=rint.cos,
    atan2=rint.atan2,
    acos=rint.acos_clamped,
).lifted(**_BASE_CONSTS)

JET1 = Num(
    name="jet1",
    const=jets.Jet1.const,
    sqrt=lambda x: jets.Jet1._coerce(x).sqrt(),
    sin=lambda x: jets.Jet1._coerce(x).sin(),
    cos=lambda x: jets.Jet1._coerce(x).cos(),
    atan2=jets.atan2,
).lifted(**_BASE_CONSTS)

JET2 = Num(
    name="jet2",
    const=jets.Jet2.const,
    sqrt=lambda x: jets.Jet2._coerce(x).sqrt(),
    sin=lambda x: jets.Jet2._coerce(x).sin(),
    cos=lambda x: jets.Jet2._coerce(x).cos(),
    atan2=jets.atan2,
).lifted(**_BASE_CONSTS)


def value_of(x) -> Interval | float:
    """Strip a jet down to its value part (identity for plain scalars)."""
    if isinstance(x, (jets.Jet1, jets.Jet2)):
        return x.f
    return x


def as_interval(x) -> Interval:
    x = value_of(x)
    if isinstance(x, Interval):
        return x
    return Interval.point(float(x))
