"""Scalar triangle functions on edge lengths and circumradius.

All lengths are in pentagon-circumradius units.  ``area``/``arc``/``eta``
work from edge triples; ``area_eta`` takes two edges plus the circumradius
and resolves the third edge to the *longer* chord solution, the choice the
cluster area bounds rely on (``areta_justified`` certifies when the shorter
solution is impossible for a triangle with all edges >= 2*kappa).

``numeric_battery`` evaluates, once and rigorously, the fixed scalar
inequalities the rest of the suite leans on.  Every line is an outward
rounded interval evaluation, emitted as a certificate record
``{"check": name, "lhs": [lo,hi], "rhs": [lo,hi], "verified": bool}``.
"""

from __future__ import annotations

from typing import Any

from . import rint
from .numerics import FLT, RIG, Num, as_interval, value_of
from .rint import Interval, RintError

__all__ = [
    "TriangleIndeterminate",
    "TriangleInfeasible",
    "area",
    "arc",
    "eta",
    "area_eta",
    "short_chord",
    "areta_justified",
    "obtuse_sign",
    "brahmagupta",
    "numeric_battery",
    "battery_verified",
]


class TriangleIndeterminate(RintError):
    """Triangle inequality cannot be decided at this width; split the box."""


class TriangleInfeasible(RintError):
    """No triangle with the given data exists."""


def _heron_factors(d1, d2, d3, nm: Num):
    """Kahan-ordered factors of 16*area^2, checked for certain positivity."""
    a, b, c = sorted((d1, d2, d3), key=lambda t: -value_of_mid(t))
    # a >= b >= c by midpoint; the product is symmetric, ordering only
    # improves enclosure tightness.
    f1 = a + (b + c)
    f2 = c - (a - b)
    f3 = c + (a - b)
    f4 = a + (b - c)
    for f in (f2, f3, f4):
        iv = as_interval(f)
        if iv.hi < 0.0:
            raise TriangleInfeasible("edge data violates the triangle inequality")
        if iv.lo <= 0.0:
            raise TriangleIndeterminate(
                "triangle inequality undecided at this width"
            )
    return f1, f2, f3, f4


def value_of_mid(x) -> float:
    v = value_of(x)
    return v.mid if isinstance(v, Interval) else v


def area(d1, d2, d3, nm: Num = RIG):
    """Euclidean area of the triangle with the given edge lengths.

    Raises :class:`TriangleIndeterminate` when the triangle inequality is
    not certain at the input width, :class:`TriangleInfeasible` when it
    certainly fails.
    """
    f1, f2, f3, f4 = _heron_factors(d1, d2, d3, nm)
    return nm.sqrt(f1 * f2 * f3 * f4) / 4


def arc(d1, d2, d3, nm: Num = RIG):
    """Angle opposite ``d3`` in the triangle with the given edge lengths."""
    _heron_factors(d1, d2, d3, nm)  # same existence check as area
    return nm.acos((d1 * d1 + d2 * d2 - d3 * d3) / (2 * d1 * d2))


def eta(d1, d2, d3, nm: Num = RIG):
    """Circumradius of the triangle with the given edge lengths."""
    return d1 * d2 * d3 / (4 * area(d1, d2, d3, nm))


def _asin(t, nm: Num):
    return nm.pi / 2 - nm.acos(t)


def _half_arcs(d1, d2, h, nm: Num):
    """Half central angles of the chords d1, d2 on a circle of radius h."""
    for d in (d1, d2):
        r = as_interval(d / (2 * h))
        if r.lo > 1.0:
            raise TriangleInfeasible("chord longer than the diameter")
        if r.hi > 1.0 and r.lo <= 1.0 and r.hi > 1.0 + 1e-9:
            raise TriangleIndeterminate("chord/diameter ratio undecided")
    return _asin(d1 / (2 * h), nm), _asin(d2 / (2 * h), nm)


def area_eta(d1, d2, h, nm: Num = RIG):
    """Area of the triangle with edges d1, d2 and circumradius h.

    Two such triangles exist in general; this returns the one whose third
    edge is the longer chord (see ``areta_justified`` for when the other
    is excluded).  Geometric infeasibility raises
    :class:`TriangleInfeasible`.
    """
    t1, t2 = _half_arcs(d1, d2, h, nm)
    d3 = 2 * h * nm.sin(t1 + t2)
    return area(d1, d2, d3, nm)


def short_chord(d1, d2, h, nm: Num = RIG):
    """Third edge of the *shorter*-chord triangle with edges d1, d2 on h."""
    t1, t2 = _half_arcs(d1, d2, h, nm)
    s = nm.sin(t1 - t2)
    if isinstance(s, Interval):
        return abs(s) * (2 * h)
    return abs(s * 2 * h)


def areta_justified(d1, d2, h) -> bool:
    """Certify that the short-third-edge alternative cannot occur.

    For ``2k <= d1 <= d2`` inscribed in circumradius ``h``, let ``theta``
    be the central angle of chord d1 plus that of chord 2k.  When theta is
    certainly >= pi, or d2 is certainly below the chord subtending theta,
    no second triangle with the same data has its third edge >= 2k, so the
    long-chord choice of ``area_eta`` is the only one available to a
    triangle whose edges all carry pentagons.  Uncertain data returns
    False (conservative).
    """
    d1, d2, h = as_interval(d1), as_interval(d2), as_interval(h)
    if not (d1.lo >= rint.TWO_KAPPA.lo and d2.lo >= d1.lo):
        return False
    try:
        theta = arc(h, h, d1) + arc(h, h, rint.TWO_KAPPA)
    except RintError:
        return False
    if theta.lo >= rint.PI.hi:
        return True
    return d2.hi < (2 * h * rint.sin(theta / 2)).lo


def obtuse_sign(d1, d2, d3) -> int:
    """Three-way obtuseness: +1 certainly obtuse, -1 certainly not, 0 unknown."""
    sq = [as_interval(d).sq() for d in (d1, d2, d3)]
    hi_all = True
    for i in range(3):
        t = sq[i] - sq[(i + 1) % 3] - sq[(i + 2) % 3]
        if t.lo > 0.0:
            return 1
        if t.hi > 0.0:
            hi_all = False
    return -1 if hi_all else 0


def brahmagupta(e1, e2, e3, e4, nm: Num = RIG):
    """Area of the cocircular quadrilateral with the given edge lengths.

    The value depends only on the multiset of edge lengths, not their
    cyclic order.
    """
    s = (e1 + e2 + e3 + e4) / 2
    prod = nm.const(1.0)
    for e in (e1, e2, e3, e4):
        f = s - e
        iv = as_interval(f)
        if iv.hi < 0.0:
            raise TriangleInfeasible("edge data admits no cocircular quadrilateral")
        if iv.lo <= 0.0:
            raise TriangleIndeterminate("quadrilateral feasibility undecided")
        prod = prod * f
    return nm.sqrt(prod)


# -- the one-shot numeric battery -------------------------------------------


def _line(check: str, lhs, rhs, ok=None) -> dict:
    lhs = as_interval(lhs)
    rhs = as_interval(rhs)
    if ok is None:
        ok = lhs.lo > rhs.hi
    return {
        "check": check,
        "lhs": [lhs.lo, lhs.hi],
        "rhs": [rhs.lo, rhs.hi],
        "verified": bool(ok),
    }


def _sweep(lo: Interval, hi: Interval, pieces: int) -> list[Interval]:
    """Cover [lo.lo, hi.hi] by overlapping closed slices."""
    a, b = lo.lo, hi.hi
    step = (b - a) / pieces
    cuts = [a + i * step for i in range(pieces)] + [b]
    return [Interval(cuts[i], cuts[i + 1]) for i in range(pieces)]


def numeric_battery() -> list[dict]:
    """Certify the fixed scalar inequalities used by the cluster bounds."""
    K = rint.KAPPA
    S = rint.SIGMA
    TWO_K = rint.TWO_KAPPA
    K8 = TWO_K * rint.sqrt(Interval.point(2.0))  # kappa * sqrt(8)
    ACRIT = rint.A_CRIT
    EN = rint.EPS_N
    EM = rint.EPS_M
    PI5 = rint.PI_5
    out: list[dict] = []

    def p(x: float) -> Interval:
        return Interval.point(x)

    # triangle area floors with two long edges
    out.append(_line("area(1.8,1.8,1.8) > acrit+0.112",
                     area(p(1.8), p(1.8), p(1.8)), ACRIT + 0.112))
    out.append(_line("area(1.8,1.8,1.72) > acrit+0.069",
                     area(p(1.8), p(1.8), p(1.72)), ACRIT + 0.069))
    out.append(_line("area(1.8,1.72,1.72) > acrit+3em",
                     area(p(1.8), p(1.72), p(1.72)), ACRIT + 3 * EM))
    out.append(_line("area(1.8,1.8,2k) > acrit+em",
                     area(p(1.8), p(1.8), TWO_K), ACRIT + EM))
    out.append(_line("area(k8,2k,1.72) > acrit+en",
                     area(K8, TWO_K, p(1.72)), ACRIT + EN))

    # floors for triangles flanked by one or two obtuse neighbours
    out.append(_line("area(2k,k8,k8) > 1.73",
                     area(TWO_K, K8, K8), p(1.73)))
    out.append(_line("area(1.72,k8,k8) > 1.73+en",
                     area(p(1.72), K8, K8), 1.73 + EN))
    out.append(_line("area_eta(2k,2k,1.7) > 1.08",
                     area_eta(TWO_K, TWO_K, p(1.7)), p(1.08)))
    out.append(_line("area_eta(2k,1.72,1.7) > 1.08+2en",
                     area_eta(TWO_K, p(1.72), p(1.7)), 1.08 + 2 * EN))
    out.append(_line("area_eta(2k,2k,2) > 0.968",
                     area_eta(TWO_K, TWO_K, p(2.0)), p(0.968)))
    out.append(_line("2k*sqrt(1.7^2-k^2) >= 2.41",
                     TWO_K * rint.sqrt(p(1.7).sq() - K.sq()), p(2.41)))
    out.append(_line("area(k8,k8,k8) > 2.2668",
                     area(K8, K8, K8), p(2.2668)))
    out.append(_line("area_eta(k8,k8,1.7) > 2.6",
                     area_eta(K8, K8, p(1.7)), p(2.6)))
    out.append(_line("area_eta(k8,k8,2) > 2.45",
                     area_eta(K8, K8, p(2.0)), p(2.45)))

    # cluster sums built from the floors above
    out.append(_line("1.73+2*1.08 > 3acrit",
                     p(1.73) + 2 * p(1.08), 3 * ACRIT))
    out.append(_line("2*0.968+2.41 > 3acrit+5en",
                     2 * p(0.968) + p(2.41), 3 * ACRIT + 5 * EN))
    out.append(_line("2.2668+3*1.08 > 4acrit+6en",
                     p(2.2668) + 3 * p(1.08), 4 * ACRIT + 6 * EN))
    out.append(_line("2.6+3*0.968 > 4acrit+6en",
                     p(2.6) + 3 * p(0.968), 4 * ACRIT + 6 * EN))
    out.append(_line("2*0.968+2.45 > 3acrit+5en",
                     2 * p(0.968) + p(2.45), 3 * ACRIT + 5 * EN))

    # cocircular quadrilateral extremes: nbar edges at 1.72, rest at 2k
    for nbar in (1, 2, 3, 4):
        edges = [p(1.72)] * nbar + [TWO_K] * (4 - nbar)
        out.append(_line(
            f"quad({nbar}x1.72,{4 - nbar}x2k) > 2acrit+{nbar}en",
            brahmagupta(*edges), 2 * ACRIT + nbar * EN,
        ))
    # circumradius-2 extreme: three short edges, fourth fills the circle
    fourth = 4 * rint.sin(3 * (rint.PI / 2 - rint.acos_clamped(K / 2)))
    out.append(_line("quad(2k,2k,2k,fill@eta2) > 2acrit+4en",
                     brahmagupta(TWO_K, TWO_K, TWO_K, fourth),
                     2 * ACRIT + 4 * EN))
    out.append(_line("fill@eta2 ~ 3.7951 (within 2e-4)",
                     abs(fourth - 3.7951), p(2e-4),
                     ok=abs(fourth - 3.7951).hi < 2e-4))
    # right-diagonal extremes: diagonal shrunk until one triangle is right
    legsets = {
        1: [(TWO_K, TWO_K), (TWO_K, p(1.72))],
        2: [(TWO_K, TWO_K), (TWO_K, p(1.72)), (p(1.72), p(1.72))],
        3: [(TWO_K, p(1.72)), (p(1.72), p(1.72))],
        4: [(p(1.72), p(1.72))],
    }
    for nbar, combos in legsets.items():
        for legs in combos:
            used = [1.72 if g is not TWO_K else 0 for g in legs].count(1.72)
            rest = [p(1.72)] * (nbar - used) + [TWO_K] * (2 - (nbar - used))
            diag = rint.sqrt(legs[0].sq() + legs[1].sq())
            total = legs[0] * legs[1] / 2 + area(rest[0], rest[1], diag)
            tag = ",".join("1.72" if g is not TWO_K else "2k" for g in legs)
            out.append(_line(
                f"quad_right(nbar={nbar},legs={tag}) > 2acrit+{nbar}en",
                total, 2 * ACRIT + nbar * EN,
            ))

    # obtuse-pair sweep over the shared diagonal
    x_max = TWO_K * rint.sqrt(4 - K.sq())
    out.append(_line("eta(2k,2k,xmax) contains 2",
                     eta(TWO_K, TWO_K, x_max), p(2.0),
                     ok=eta(TWO_K, TWO_K, x_max).contains(2.0)))
    out.append(_line("|xmax - 2.9594| < 2e-4",
                     abs(x_max - 2.9594), p(2e-4),
                     ok=abs(x_max - 2.9594).hi < 2e-4))
    slices = _sweep(K8, x_max, 64)
    sweep_ok = True
    lhs_hull = None
    for sl in slices:
        val = area(TWO_K, TWO_K, sl) + area_eta(TWO_K, sl, p(2.0))
        sweep_ok = sweep_ok and val.lo > (2 * ACRIT + 4 * EN).hi
        lhs_hull = val if lhs_hull is None else Interval.hull(lhs_hull, val)
    out.append(_line("area(2k,2k,x)+area_eta(2k,x,2) > 2acrit+4en on [k8,xmax]",
                     lhs_hull, 2 * ACRIT + 4 * EN, ok=sweep_ok))

    # midpoint pointer reach, small third edge, short-range pin bound
    out.append(_line("sqrt((2k)^2+sigma^2) > 1.72",
                     rint.sqrt(TWO_K.sq() + S.sq()), p(1.72)))
    out.append(_line("area(2.1,2k,2k) > acrit",
                     area(p(2.1), TWO_K, TWO_K), ACRIT))
    out.append(_line("2.1 < k8", p(2.1), K8, ok=K8.lo > 2.1))
    out.append(_line("area(1.8,1.8,1.63) > acrit+2em",
                     area(p(1.8), p(1.8), p(1.63)), ACRIT + 2 * EM))
    out.append(_line("acos(1.63-k) > pi/5-0.021",
                     rint.acos_clamped(1.63 - K), PI5 - 0.021))
    out.append(_line("2*(pi/5)+(4*pi/5-0.021) > pi",
                     2 * PI5 + (4 * PI5 - 0.021), rint.PI))
    out.append(_line("2sigma*(1/sin(2pi/5)-1) < 0.0605",
                     rint.TWO_SIGMA * (1 / rint.sin(rint.TWO_PI_5) - 1),
                     p(0.0605),
                     ok=(rint.TWO_SIGMA * (1 / rint.sin(rint.TWO_PI_5) - 1)).hi
                     < 0.0605))
    out.append(_line("amin+area(1.72,1.8,1.8) > 2acrit",
                     rint.A_MIN + area(p(1.72), p(1.8), p(1.8)), 2 * ACRIT))
    out.append(_line("area_eta(2k,k8,2)-2en > acrit",
                     area_eta(TWO_K, K8, p(2.0)) - 2 * EN, ACRIT))

    # long-chord justifications for every area_eta use above
    for d1, d2, h, tag in (
        (TWO_K, TWO_K, p(1.7), "(2k,2k,1.7)"),
        (TWO_K, p(1.72), p(1.7), "(2k,1.72,1.7)"),
        (TWO_K, TWO_K, p(2.0), "(2k,2k,2)"),
        (K8, K8, p(1.7), "(k8,k8,1.7)"),
        (K8, K8, p(2.0), "(k8,k8,2)"),
        (TWO_K, K8, p(2.0), "(2k,k8,2)"),
    ):
        ok = areta_justified(d1, d2, h)
        out.append(_line(f"areta_justified{tag}", p(1.0 if ok else 0.0),
                         p(0.0), ok=ok))
    out.append(_line("k8 < 4*sin(arc(2,2,2k))",
                     K8, 4 * rint.sin(arc(p(2.0), p(2.0), TWO_K)),
                     ok=K8.hi < (4 * rint.sin(arc(p(2.0), p(2.0), TWO_K))).lo))
    # sweep justification.  The sufficient chord test degenerates exactly
    # at x = xmax (2*eta*sin(theta/2) = 2k*sqrt(4-k^2) algebraically), so
    # it certifies all but the last sliver; there, the short-chord branch
    # is excluded because the third edge of the flattened triangle must be
    # its longest (the shared edge already is the neighbour's longest),
    # and the short chord certainly falls below the shared edge.
    just_ok = True
    for sl in _sweep(K8, p(2.9585), 32):
        just_ok = just_ok and areta_justified(TWO_K, sl, p(2.0))
    out.append(_line("areta_justified(2k,x,2) on [k8,2.9585]",
                     p(1.0 if just_ok else 0.0), p(0.0), ok=just_ok))
    sliver_ok = True
    worst = None
    for sl in _sweep(p(2.9585), x_max, 8):
        sc = short_chord(TWO_K, sl, p(2.0))
        sliver_ok = sliver_ok and sc.hi < sl.lo
        worst = sc if worst is None else Interval.hull(worst, sc)
    out.append(_line("short_chord(2k,x,2) < x on [2.9585,xmax]",
                     worst, Interval(2.9585, x_max.hi), ok=sliver_ok))

    return out


def battery_verified(lines: list[dict] | None = None) -> bool:
    if lines is None:
        lines = numeric_battery()
    return all(line["verified"] for line in lines)
