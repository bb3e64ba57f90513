"""Two-contact neighborhoods of one pentagon (wedge configuration spaces).

A *wedge* is a middle pentagon touching two outer pentagons, one contact
each.  Rotations are quotiented out by pinning the middle pentagon at the
origin with phase zero and the first contact at site index 0; the second
contact's site then ranges over all five.  Each contact comes in two
directions: the outer pentagon points into an edge of the middle one
("receptor" role, per middle edge), or the middle one points into the
outer at one of its vertices ("pointer" role, per middle vertex).  That
gives 2 x 10 = 20 cases.  The case list is closed under reflection
(``mirrored_combo``/``mirrored_coords`` realize the reflection as a map
between cases), and it covers every two-contact neighborhood; a wedge
whose contacts sit at two different sites appears once per choice of
which contact is listed first.

Wedge coordinates are ``(x1, lam1, x2, lam2)``: edge coordinate and
incidence angle of each contact, both in the pointer/receptor sense of
that contact.  Labels: ``A`` is the outer pentagon of contact 1, ``B``
the middle one, ``C`` the outer of contact 2.  All evaluation is generic
over the numerics carrier; interval coordinates yield rigorous enclosures
of every derived measurement over the whole coordinate box.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .numerics import RIG, Num, as_interval
from .pentgeo import (
    Pose,
    Vec,
    contact_pair,
    pair_feasible,
    pointer_vertex_frame,
    receptor_edge_frame,
    v_cross,
    v_dot,
    v_norm2,
    v_scale,
    v_sub,
)
from .rint import Interval, RintError

B_POSE = Pose(0.0, 0.0, 0.0)


# -- contact directions and their enumeration -------------------------------


@dataclass(frozen=True)
class ContactDir:
    """Direction of one contact between the middle and an outer pentagon.

    ``b_role == "receptor"``: the outer pentagon points into edge ``site``
    of the middle one.  ``b_role == "pointer"``: the middle pentagon
    points into the outer one at its own vertex ``site``.  Each direction
    is one connected two-parameter family; the pointer-side family is
    parameterized with the middle pentagon's edge site -> site+1 as the
    trailing edge (the opposite-flank parameterization of the same family
    is its image under ``mirrored_coords`` and is not enumerated).
    """

    b_role: str
    site: int

    def __post_init__(self):
        if self.b_role not in ("receptor", "pointer"):
            raise ValueError(f"bad contact role {self.b_role!r}")
        if not 0 <= self.site < 5:
            raise ValueError("site index out of range")

    @property
    def label(self) -> str:
        return f"{'rec' if self.b_role == 'receptor' else 'ptr'}{self.site}"


@dataclass(frozen=True)
class WedgeCombo:
    """One wedge case: directions of the two contacts."""

    c1: ContactDir
    c2: ContactDir

    @property
    def name(self) -> str:
        return f"{self.c1.label}|{self.c2.label}"


def _dirs(site: int) -> list[ContactDir]:
    return [ContactDir("receptor", site), ContactDir("pointer", site)]


def combos() -> list[WedgeCombo]:
    """All 20 wedge cases (first contact pinned to site 0)."""
    out = []
    for c1 in _dirs(0):
        for site in range(5):
            for c2 in _dirs(site):
                out.append(WedgeCombo(c1, c2))
    return out


_BY_NAME: dict[str, WedgeCombo] = {c.name: c for c in combos()}


def combo_named(name: str) -> WedgeCombo:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown wedge case {name!r}") from None


def _mirror_dir(cd: ContactDir) -> ContactDir:
    # reflection across the axis through the middle pentagon's vertex 0
    # sends vertex j to vertex -j and edge k to edge -k-1
    if cd.b_role == "receptor":
        return ContactDir("receptor", (4 - cd.site) % 5)
    return ContactDir("pointer", (5 - cd.site) % 5)


def mirrored_combo(combo: WedgeCombo) -> WedgeCombo:
    """Reflected wedge case, re-rotated so contact 1 sits at site 0.

    The reflected case evaluated at ``mirrored_coords(coords)`` is the
    mirror image of the original at ``coords``: distances, corner angles
    and contact measurements agree, signed areas negate.  The map is an
    involution on the case list.
    """
    m1, m2 = _mirror_dir(combo.c1), _mirror_dir(combo.c2)
    r = (-m1.site) % 5
    return WedgeCombo(
        ContactDir(m1.b_role, (m1.site + r) % 5),
        ContactDir(m2.b_role, (m2.site + r) % 5),
    )


def mirrored_coords(coords, nm: Num = RIG):
    """Coordinate image under reflection: each contact reverses its edge."""
    x1, l1, x2, l2 = coords
    return (
        nm.two_sigma - x1,
        nm.two_pi_5 - l1,
        nm.two_sigma - x2,
        nm.two_pi_5 - l2,
    )


# -- evaluation --------------------------------------------------------------

_EDGE_FRAMES: dict[tuple[int, int], tuple] = {}


def _b_edge_frame(site: int, nm: Num):
    key = (id(nm), site)
    hit = _EDGE_FRAMES.get(key)
    if hit is None:
        hit = receptor_edge_frame(B_POSE, site, nm)
        _EDGE_FRAMES[key] = hit
    return hit


def outer_contact(cd: ContactDir, x, lam, nm: Num = RIG):
    """Outer-pentagon pose and contact-edge record of one contact.

    The edge record ``(w, e_hat, n_mid)`` is the receptor edge carrying
    the contact, in world coordinates: the endpoint the edge coordinate
    is measured from, the unit direction, and the unit normal oriented
    toward the middle pentagon's side of the line.  For a vertex-to-
    vertex contact (x at either end) the record still names a
    well-defined line through the contact point.
    """
    if cd.b_role == "receptor":
        w, e_hat, n_hat = _b_edge_frame(cd.site, nm)
        outer, _ = contact_pair(w, e_hat, n_hat, x, lam, nm)
        n_mid = v_scale(n_hat, -1)  # frame normal points to the pointer (outer) side
    else:
        w, e_hat, n_hat = pointer_vertex_frame(B_POSE, cd.site, x, lam, +1, nm)
        _, outer = contact_pair(w, e_hat, n_hat, x, lam, nm)
        n_mid = n_hat  # here the middle pentagon is the pointer
    return outer, (w, e_hat, n_mid)


@dataclass
class Wedge:
    """Evaluated wedge: the three poses and both contact-edge records."""

    combo: WedgeCombo
    a: Pose
    b: Pose
    c: Pose
    edge1: tuple[Vec, Vec, Vec]
    edge2: tuple[Vec, Vec, Vec]


def eval_wedge(combo: WedgeCombo, coords, nm: Num = RIG) -> Wedge:
    x1, l1, x2, l2 = coords
    a, e1 = outer_contact(combo.c1, x1, l1, nm)
    c, e2 = outer_contact(combo.c2, x2, l2, nm)
    return Wedge(combo, a, B_POSE, c, e1, e2)


@dataclass
class WedgeData:
    """Center-triangle measurements of an evaluated wedge.

    Squared edge lengths (``q_*``), twice the signed center-triangle area
    (``cross2``, positive for counterclockwise A, B, C) and the corner
    dot products (negative: the corner angle is obtuse) are all square-
    root-free, so they stay tight on interval input.
    """

    wedge: Wedge
    q_ab: Any
    q_bc: Any
    q_ac: Any
    cross2: Any
    dots: dict[str, Any]


def wedge_data(combo: WedgeCombo, coords, nm: Num = RIG) -> WedgeData:
    w = eval_wedge(combo, coords, nm)
    ab = v_sub(w.b.center, w.a.center)
    ac = v_sub(w.c.center, w.a.center)
    bc = v_sub(w.c.center, w.b.center)
    return WedgeData(
        wedge=w,
        q_ab=v_norm2(ab),
        q_bc=v_norm2(bc),
        q_ac=v_norm2(ac),
        cross2=v_cross(ab, ac),
        dots={
            "A": v_dot(ab, ac),
            "B": v_dot((-ab[0], -ab[1]), bc),
            "C": v_dot((-ac[0], -ac[1]), (-bc[0], -bc[1])),
        },
    )


def certainly_obtuse(data: WedgeData) -> bool:
    """True if the center triangle certainly has an obtuse corner."""
    return any(as_interval(d).certainly_lt(0.0) for d in data.dots.values())


def certainly_nonobtuse(data: WedgeData) -> bool:
    return all(as_interval(d).certainly_ge(0.0) for d in data.dots.values())


def outer_state(data: WedgeData, nm: Num = RIG) -> str:
    """'disjoint', 'overlap' or 'touching' verdict for the two outer poses.

    Uses the squared center distance as a prefilter (closer than one
    apothem-to-apothem stack is a certain overlap, farther than two
    circumradii a certain miss) and falls back to the full separating-axis
    test only in between.
    """
    q = as_interval(data.q_ac)
    tk = as_interval(nm.kappa * 2)
    if q.certainly_lt(tk * tk):
        return "overlap"
    if q.certainly_gt(4.0):
        return "disjoint"
    return pair_feasible(data.wedge.a, data.wedge.c, nm)


# -- crossing-bound (squeeze) quantities -------------------------------------


def squeeze_margin(data: WedgeData, nm: Num = RIG):
    """Margin of the contact-line crossing bound; positive means it holds.

    In the frame with the A and C centers on the x-axis, each contact
    line crosses that axis (unless parallel); the bound says the A-to-C
    distance is less than the sum of the two crossing offsets cut at the
    height of B.  Cleared of divisions (both sides scale with the squared
    A-C distance, so no normalization is needed):

        q_ac * |s1| * |s2|  <  (|c1|*|s2| + |c2|*|s1|) * |cross2|

    with ``s_i = cross(AC, e_i)`` and ``c_i = dot(AC, e_i)`` taken against
    the raw A-to-C vector.  Returns right side minus left side.
    """
    w = data.wedge
    ac = v_sub(w.c.center, w.a.center)
    s1 = abs(v_cross(ac, w.edge1[1]))
    c1 = abs(v_dot(ac, w.edge1[1]))
    s2 = abs(v_cross(ac, w.edge2[1]))
    c2 = abs(v_dot(ac, w.edge2[1]))
    return (c1 * s2 + c2 * s1) * abs(data.cross2) - data.q_ac * (s1 * s2)


def blocking_margins(data: WedgeData, nm: Num = RIG):
    """Translational blocking margins of the two outer pentagons.

    ``m1 >= 0`` iff translating A straight toward C presses A across its
    contact line (the contact blocks the motion); ``m2 >= 0`` iff
    translating C straight toward A presses C across its own.  When
    either margin is certainly negative, that outer pentagon is free to
    move toward the other one without local obstruction, so the center
    distance |AC| is not locally minimal along its own axis.
    """
    w = data.wedge
    ac = v_sub(w.c.center, w.a.center)
    m1 = v_dot(ac, w.edge1[2])
    m2 = -(v_dot(ac, w.edge2[2]))
    return m1, m2


def slope_sigma(edge: tuple[Vec, Vec], axis: Vec, nm: Num = RIG):
    """|slope| of a contact-edge line measured against a reference axis.

    Raises when the line is perpendicular to the axis, or cannot be
    bounded away from perpendicular on an interval box (the slope is
    unbounded there); rigorous callers use the division-free
    ``squeeze_margin`` instead of dividing by this.
    """
    e = edge[1]
    run = v_dot(axis, e)
    rise = v_cross(axis, e)
    if as_interval(run).contains(0.0):
        raise RintError("slope_sigma: contact line (near-)perpendicular")
    return abs(rise / run)
