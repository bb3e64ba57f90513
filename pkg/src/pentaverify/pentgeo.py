"""Contact geometry of unit-circumradius regular pentagons.

A pentagon pose is (center, phase): vertex k sits at
``center + (cos(phase + k*2pi/5), sin(phase + k*2pi/5))``.  Vertices are
numbered counterclockwise; edge k joins vertex k to vertex k+1 and has
length ``2*sigma``; the apothem is ``kappa``.

A *contact* is a pointer/receptor incidence: a vertex of the pointer
pentagon rests on an (open) edge of the receptor pentagon.  Its canonical
frame: the receptor edge runs from endpoint ``w`` to endpoint ``u``,
``e = (u - w)/|u - w|``, ``n`` is the unit normal on the pointer's side,
the pointer vertex is ``v = w + x*e`` with ``x in [0, 2sigma]``, and the
pointer's trailing edge leaves ``v`` at angle ``lam in [0, 2pi/5]`` from
``e`` rotating toward ``n`` (its leading edge at ``lam + 3pi/5``).  At
``lam = 0`` the trailing edge lies flush along the receptor edge (the
sliding contact); at ``lam = 2pi/5`` the leading edge does.

``ell(x, lam)`` is the resulting center distance.  It satisfies the mirror
identity ``ell(x, lam) = ell(2sigma - x, 2pi/5 - lam)`` (same contact seen
from the other edge endpoint) — a frozen regression test.

All functions take a numerics carrier ``nm`` so they run identically on
floats, intervals and jets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from . import rint
from .numerics import FLT, RIG, Num, as_interval
from .rint import Interval, RintError

Vec = tuple[Any, Any]


# -- small planar-vector helpers (generic over the scalar type) -----------


def v_add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def v_sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def v_scale(a: Vec, s) -> Vec:
    return (a[0] * s, a[1] * s)


def v_dot(a: Vec, b: Vec):
    return a[0] * b[0] + a[1] * b[1]


def v_cross(a: Vec, b: Vec):
    return a[0] * b[1] - a[1] * b[0]


def v_left(a: Vec) -> Vec:
    """Rotate a quarter turn counterclockwise."""
    return (-a[1], a[0])


def v_right(a: Vec) -> Vec:
    return (a[1], -a[0])


def v_norm2(a: Vec):
    return a[0] * a[0] + a[1] * a[1]


def v_norm(a: Vec, nm: Num):
    return nm.sqrt(v_norm2(a))


def v_angle(a: Vec, nm: Num):
    return nm.atan2(a[1], a[0])


def dir_of(angle, nm: Num) -> Vec:
    return (nm.cos(angle), nm.sin(angle))


@dataclass
class Pose:
    """Pentagon placement: center coordinates and phase angle."""

    cx: Any
    cy: Any
    phase: Any

    @property
    def center(self) -> Vec:
        return (self.cx, self.cy)


def vertex(pose: Pose, k: int, nm: Num) -> Vec:
    ang = pose.phase + nm.two_pi_5 * (k % 5)
    return (pose.cx + nm.cos(ang), pose.cy + nm.sin(ang))


def vertices(pose: Pose, nm: Num) -> list[Vec]:
    return [vertex(pose, k, nm) for k in range(5)]


def center_dist(a: Pose, b: Pose, nm: Num):
    return v_norm(v_sub(b.center, a.center), nm)


# -- the contact primitive -------------------------------------------------


def ell(x, lam, nm: Num = RIG):
    """Center distance of a contact with edge coordinate x, incidence lam.

    Standard range ``lam in [0, 2pi/5]``.  The extended range
    ``lam in (2pi/5, 4pi/5]`` denotes the same pair with the roles of
    pointer and receptor swapped: it is evaluated as
    ``ell(2sigma - x, lam - 2pi/5)``; the two branches agree at the seam.
    Interval inputs spanning the seam return the hull of both branches.
    """
    seam = _seam_split(x, lam, nm)
    if seam is not None:
        parts = [ell(xs, ls, nm) for xs, ls, _ in seam]
        return parts[0] if len(parts) == 1 else Interval.hull(*parts)
    a = lam + nm.three_pi_10
    dx = x + nm.cos(a) - nm.sigma
    dy = nm.sin(a) + nm.kappa
    return nm.sqrt(dx * dx + dy * dy)


def _seam_split(x, lam, nm: Num):
    """Split extended-range contact coordinates at the lam = 2pi/5 seam.

    Returns None when ``lam`` is entirely standard (fast path), else a list
    of (x, lam, is_extended) pieces in standard coordinates covering the
    input.  Extended coordinates denote the same pair with the roles of
    pointer and receptor swapped.
    """
    if isinstance(lam, Interval):
        two_pi_5 = rint.TWO_PI_5
        if lam.hi <= two_pi_5.hi:
            return None
        if lam.lo > rint.FOUR_PI_5.hi or lam.lo < 0.0:
            raise RintError("contact incidence outside [0, 4pi/5]")
        x = as_interval(x)
        pieces = []
        if lam.lo <= two_pi_5.hi:
            pieces.append((x, Interval(lam.lo, two_pi_5.hi), False))
        lam_ext = Interval(max(lam.lo, two_pi_5.lo), lam.hi)
        pieces.append((rint.TWO_SIGMA - x, lam_ext - two_pi_5, True))
        return pieces
    if isinstance(lam, (float, int)):
        if lam <= FLT.two_pi_5:
            return None
        if lam > 4 * FLT.pi_5 + 1e-12 or lam < 0.0:
            raise RintError("contact incidence outside [0, 4pi/5]")
        return [(FLT.two_sigma - x, lam - FLT.two_pi_5, True)]
    return None  # jets: standard range only


@dataclass(frozen=True)
class ContactCoords:
    """Edge coordinate and incidence angle of a pointer/receptor contact."""

    x: Any
    lam: Any


@dataclass(frozen=True)
class ContactFrame:
    """Distance/inclination data of a contact.

    ``theta`` is the receptor-side inclination: the ccw angle from the
    center segment (receptor to pointer) to the receptor-center ray
    through the far endpoint of the contact edge (the endpoint x = 2sigma).
    ``theta_p`` is the signed pointer-side inclination: the ccw angle from
    the pointer-center ray through its touching vertex to the center
    segment (pointer to receptor).  On the standard coordinate range they
    satisfy ``theta + theta_p = lam`` exactly and fall in [0, 2pi/5] and
    [-pi/5, pi/5]; on the extended range the roles swap and the ranges
    shift to [pi/5, 3pi/5] and [0, 2pi/5].  ``h_sign`` is the sign of
    ``x - sigma`` (0 when undecided).
    """

    d: Any
    theta: Any
    theta_p: Any
    h_sign: int


def frame_of(c: ContactCoords, nm: Num = RIG) -> ContactFrame:
    """Distance and both inclinations of a contact configuration."""
    x, lam = c.x, c.lam
    seam = _seam_split(x, lam, nm)
    if seam is None:
        return _frame_std(x, lam, nm)
    out = []
    for xs, ls, is_ext in seam:
        f = _frame_std(xs, ls, nm)
        if is_ext:
            # role swap: the pointer-side inclination of the extended pair
            # is the receptor-side one of the standard pair, and vice versa
            # (shifted up one period to land in [pi/5, 3pi/5]).
            f = ContactFrame(f.d, f.theta_p + nm.two_pi_5, f.theta,
                             -f.h_sign)
        out.append(f)
    if len(out) == 1:
        return out[0]
    a, b = out
    return ContactFrame(
        Interval.hull(as_interval(a.d), as_interval(b.d)),
        Interval.hull(as_interval(a.theta), as_interval(b.theta)),
        Interval.hull(as_interval(a.theta_p), as_interval(b.theta_p)),
        a.h_sign if a.h_sign == b.h_sign else 0,
    )


def _frame_std(x, lam, nm: Num) -> ContactFrame:
    a = lam + nm.three_pi_10
    dx = x + nm.cos(a) - nm.sigma
    dy = nm.sin(a) + nm.kappa
    d = nm.sqrt(dx * dx + dy * dy)
    theta = nm.atan2(dy, dx) - nm.three_pi_10
    theta_p = lam - theta
    h = x - nm.sigma
    if isinstance(h, Interval):
        if h.certainly_gt(0.0):
            h_sign = 1
        elif h.certainly_lt(0.0):
            h_sign = -1
        else:
            h_sign = 0
    elif isinstance(h, float):
        h_sign = 0 if h == 0.0 else (1 if h > 0.0 else -1)
    else:
        h_sign = 0
    return ContactFrame(d, theta, theta_p, h_sign)


def contact_pair(w: Vec, e_hat: Vec, n_hat: Vec, x, lam, nm: Num = RIG):
    """Both poses of a contact in an ambient frame.

    ``w``/``e_hat``/``n_hat`` as in the module docstring.  Returns
    ``(pointer, receptor)`` poses.
    """
    v = v_add(w, v_scale(e_hat, x))
    a = lam + nm.three_pi_10
    off = v_add(v_scale(e_hat, nm.cos(a)), v_scale(n_hat, nm.sin(a)))
    c_p = v_add(v, off)
    phase_p = v_angle(v_sub(v, c_p), nm)
    c_r = v_add(w, v_sub(v_scale(e_hat, nm.sigma), v_scale(n_hat, nm.kappa)))
    phase_r = v_angle(v_sub(w, c_r), nm)
    return Pose(c_p[0], c_p[1], phase_p), Pose(c_r[0], c_r[1], phase_r)


def receptor_edge_frame(receptor: Pose, k: int, nm: Num = RIG):
    """Contact frame ``(w, e_hat, n_hat)`` of edge k of a placed receptor."""
    w = vertex(receptor, k, nm)
    u = vertex(receptor, k + 1, nm)
    e_hat = v_scale(v_sub(u, w), 1 / nm.two_sigma)
    n_hat = v_right(e_hat)  # outward normal of a counterclockwise polygon
    return w, e_hat, n_hat


def place_pointer_on_edge(receptor: Pose, k: int, x, lam, nm: Num = RIG) -> Pose:
    """Pointer pose for a contact on edge k of an already-placed receptor.

    x is measured from vertex k toward vertex k+1; the pointer sits on the
    outward side.
    """
    w, e_hat, n_hat = receptor_edge_frame(receptor, k, nm)
    pointer, _ = contact_pair(w, e_hat, n_hat, x, lam, nm)
    return pointer


def pointer_vertex_frame(pointer: Pose, j: int, x, lam, flank: int, nm: Num = RIG):
    """Contact frame of the receptor edge implied by a pointer-side contact.

    The pointer's vertex j touches the (free) receptor at edge coordinate x
    and incidence lam; ``flank=+1`` takes the pointer edge j->j+1 as the
    trailing edge, ``flank=-1`` the edge j->j-1 (the mirror configuration).
    Returns ``(w, e_hat, n_hat)``.
    """
    if flank not in (+1, -1):
        raise ValueError("flank must be +1 or -1")
    v = vertex(pointer, j, nm)
    other = vertex(pointer, j + 1, nm) if flank > 0 else vertex(pointer, j - 1, nm)
    t_hat = v_scale(v_sub(other, v), 1 / nm.two_sigma)
    c, s = nm.cos(lam), nm.sin(lam)
    # e = t rotated by -flank*lam;  n = e rotated a quarter turn flank-ward
    if flank > 0:
        e_hat = (t_hat[0] * c + t_hat[1] * s, -t_hat[0] * s + t_hat[1] * c)
        n_hat = v_left(e_hat)
    else:
        e_hat = (t_hat[0] * c - t_hat[1] * s, t_hat[0] * s + t_hat[1] * c)
        n_hat = v_right(e_hat)
    w = v_sub(v, v_scale(e_hat, x))
    return w, e_hat, n_hat


def place_receptor_at_vertex(
    pointer: Pose, j: int, x, lam, flank: int, nm: Num = RIG
) -> Pose:
    """Receptor pose for a contact at vertex j of an already-placed pointer."""
    w, e_hat, n_hat = pointer_vertex_frame(pointer, j, x, lam, flank, nm)
    c_r = v_add(w, v_sub(v_scale(e_hat, nm.sigma), v_scale(n_hat, nm.kappa)))
    phase_r = v_angle(v_sub(w, c_r), nm)
    return Pose(c_r[0], c_r[1], phase_r)


def contact_from(
    d: Interval, theta_p: Interval, h_sign: int
) -> tuple[Interval, Interval]:
    """Invert a contact from center distance and pointer vertex-ray angle.

    ``theta_p`` is the *signed* angle at the pointer center from the center
    segment to the ray through the touching vertex, ``|theta_p| <= pi/5``
    (the two signs are the two mirror configurations across the line from
    the vertex to the receptor center).  ``h_sign`` selects which half of
    the receptor edge carries the vertex (x = sigma + h).  Returns (x, lam)
    enclosures; the caller checks them against [0, 2sigma] x [0, 2pi/5] —
    an empty intersection means the data admits no contact.

    Raises :class:`~pentaverify.rint.RintError` when the inversion is
    indeterminate on the given enclosures (split and retry).
    """
    d = as_interval(d)
    theta_p = as_interval(theta_p)
    if h_sign not in (+1, -1):
        raise ValueError("h_sign must be +1 or -1")
    if theta_p.lo < 0.0 < theta_p.hi:
        raise RintError("contact_from: mirror side indeterminate (theta_p ~ 0)")
    kappa, sigma = rint.KAPPA, rint.SIGMA
    nu = abs(theta_p)
    r2 = d.sq() + 1 - 2 * d * rint.cos(nu)  # |c_R - v|^2
    h = rint.sqrt_clamped(r2 - kappa.sq())
    if h_sign < 0:
        h = -h
    x = sigma + h
    # pointer center direction p from the vertex:  p.q = tau  with
    # q = c_R - v, in the frame with the receptor edge along +x and the
    # receptor below.  The two circle intersections are base +- off; the
    # sign of cross(p, q) = -+u identifies them with the sign of theta_p.
    q = (-h, -kappa)
    tau = 1 - d * rint.cos(nu)
    u = rint.sqrt_clamped(r2 - tau.sq())
    base = v_scale(q, tau / r2)
    off = v_scale(v_left(q), u / r2)
    p = v_sub(base, off) if theta_p.lo >= 0.0 else v_add(base, off)
    lam = rint.atan2(p[1], p[0]) - rint.THREE_PI_10
    return x, lam


# -- convex overlap test (separating axes) ---------------------------------


def separation_gap(a: Pose, b: Pose, nm: Num = RIG):
    """Largest signed gap over the ten candidate separating axes.

    Positive: the pentagons are disjoint along some axis; negative: they
    certainly interpenetrate; an interval straddling zero means touching
    or undecided at this precision.
    """
    va = vertices(a, nm)
    vb = vertices(b, nm)
    best = None
    for poly, vsa, vsb in ((va, va, vb), (vb, vb, va)):
        for k in range(5):
            edge = v_sub(poly[(k + 1) % 5], poly[k])
            axis = v_left(edge)
            pa = [v_dot(p, axis) for p in vsa]
            pb = [v_dot(p, axis) for p in vsb]
            scale = v_norm(axis, nm)
            if isinstance(pa[0], Interval):
                min_a = Interval(min(p.lo for p in pa), min(p.hi for p in pa))
                max_a = Interval(max(p.lo for p in pa), max(p.hi for p in pa))
                min_b = Interval(min(p.lo for p in pb), min(p.hi for p in pb))
                max_b = Interval(max(p.lo for p in pb), max(p.hi for p in pb))
                gap = rint.imax(min_a - max_b, min_b - max_a) / scale
                best = gap if best is None else rint.imax(best, gap)
            else:
                gap = max(min(pa) - max(pb), min(pb) - max(pa)) / scale
                best = gap if best is None else max(best, gap)
    return best


def pair_feasible(a: Pose, b: Pose, nm: Num = RIG) -> str:
    """'disjoint', 'overlap', or 'touching' (possible contact) verdict."""
    gap = separation_gap(a, b, nm)
    if isinstance(gap, Interval):
        if gap.certainly_gt(0.0):
            return "disjoint"
        if gap.certainly_lt(0.0):
            return "overlap"
        return "touching"
    if gap > 1e-12:
        return "disjoint"
    if gap < -1e-12:
        return "overlap"
    return "touching"


# -- triangle measurements --------------------------------------------------


@dataclass
class TriangleMeasures:
    """Center-triangle quantities of three labelled poses A, B, C."""

    poses: dict
    edges: dict  # unordered pair -> center distance
    area_signed: Any  # cross(B-A, C-A)/2: positive for counterclockwise ABC
    arcs: dict  # label -> corner angle of the center triangle
    thetas: dict  # ordered pair (X, Y) -> vertex offset of X along X->Y

    def edge(self, x: str, y: str):
        return self.edges[frozenset((x, y))]

    def theta(self, x: str, y: str):
        return self.thetas[(x, y)]


def measure_triangle(pa: Pose, pb: Pose, pc: Pose, nm: Num = RIG,
                     with_arcs: bool = True,
                     with_thetas: bool = True) -> TriangleMeasures:
    poses = {"A": pa, "B": pb, "C": pc}
    labels = ("A", "B", "C")
    edges = {}
    for i in range(3):
        for j in range(i + 1, 3):
            x, y = labels[i], labels[j]
            edges[frozenset((x, y))] = center_dist(poses[x], poses[y], nm)
    area2 = v_cross(
        v_sub(pb.center, pa.center), v_sub(pc.center, pa.center)
    )
    area_signed = area2 / 2
    arcs = {}
    if with_arcs:
        for x in labels:
            y, z = (l for l in labels if l != x)
            a, b, c = edges[frozenset((y, z))], edges[frozenset((x, y))], edges[
                frozenset((x, z))
            ]
            arcs[x] = nm.acos((b * b + c * c - a * a) / (2 * b * c))
    thetas = {}
    if with_thetas:
        for x in labels:
            for y in labels:
                if x == y:
                    continue
                z = next(l for l in labels if l not in (x, y))
                thetas[(x, y)] = vertex_offset(
                    poses[x], poses[x].center, poses[y].center,
                    poses[z].center, nm,
                )
    return TriangleMeasures(poses, edges, area_signed, arcs, thetas)


# -- vertex offsets ---------------------------------------------------------


def vertex_offset(
    pose: Pose, seg_from: Vec, seg_to: Vec, opposite: Vec, nm: Num = RIG
):
    """Offset of the pentagon's vertex rays from a directed segment.

    Measured from the direction ``seg_from -> seg_to`` to the nearest
    vertex ray of ``pose``, reduced modulo 2pi/5 into [0, 2pi/5), with the
    positive sense pointing *away* from the reference point ``opposite``
    (for a triangle of centers: the third center).  This sign convention
    is mirror-invariant, which is what makes assembled keys comparable
    across reflected configurations.

    Interval path returns an Interval (possibly the full period when the
    box wraps); float path returns a float.
    """
    seg = v_sub(seg_to, seg_from)
    base = v_angle(seg, nm)
    raw = pose.phase - base
    side = v_cross(seg, v_sub(opposite, seg_from))
    if isinstance(raw, Interval):
        side_iv = as_interval(side)
        if side_iv.certainly_lt(0.0):
            t = raw
        elif side_iv.certainly_gt(0.0):
            t = -raw
        else:
            raise RintError("vertex_offset: triangle side indeterminate")
        red, _ = rint.reduce_mod(t, rint.TWO_PI_5)
        return red
    t = raw if side < 0 else -raw
    m = FLT.two_pi_5
    return t - math.floor(t / m) * m
