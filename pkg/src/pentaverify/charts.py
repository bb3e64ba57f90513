"""Coordinate charts for three mutually touching pentagons.

Three pentagons pairwise in contact ("3C" configurations) fall into a small
set of combinatorial kinds, classified by the digraph of who points into
whom and by which edges of the doubly-touched pentagon carry the contacts.
Each kind is parameterized by three coordinates (two incidence angles and
one edge coordinate) and realized geometrically by closing the inner
polygon bounded by the contact-carrying pentagon edges:

* ``pinwheel`` — cyclic digraph C->B->A->C; inner triangle.
* ``delta``    — B->A, B->C, A->C with both of B's pointer vertices on a
  shared receptor edge line; inner triangle with a full pentagon edge.
* ``lj``       — B->C, C->A, B->A; inner quadrilateral with one reflex
  corner at the doubly-receiving pentagon's vertex.
* ``tj``       — B->A, A->C, B->C; inner pentagon with two reflex corners.
* ``pint``     — A->B, B->C, C->A (cyclic, but threaded through two inner
  vertices); inner pentagon with two reflex corners.

Every kind is encoded as a declarative table: corner interior angles
(``2pi/5 - lam`` at a contact corner with incidence ``lam``, ``7pi/5`` at a
reflex inner vertex), side ownership and length sources (a coordinate, a
full edge ``2sigma``, or solved), and contact anchors.  One closure engine
consumes the table: it accumulates side directions from the interior
angles, solves the two unknown side lengths from the loop-closure linear
system, places the corners, and instantiates every contact with the shared
pose primitive.  The engine is generic over the numerics carrier, so the
same tables produce float, interval and jet evaluations.

Shared-edge reparameterizations: for dimer (edge-glued triangle pair)
analysis each kind is re-coordinatized as ``(alphabar, betabar, xbar)``
where ``(xbar, betabar)`` are the coordinates of one designated contact
(the glued edge) and ``alphabar`` is the remaining coordinate, shifted so
the flush boundary sits at 0.  Two of the eight systems are numerically
unstable near one end of their range (their closure determinant vanishes)
and carry the documented domain cut; the cut regions are covered by
separate refutations in standard coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

from . import pentgeo, rint
from .numerics import FLT, RIG, Num, as_interval
from .pentgeo import (
    Pose,
    TriangleMeasures,
    contact_pair,
    dir_of,
    measure_triangle,
    v_add,
    v_cross,
    v_left,
    v_right,
    v_scale,
    v_sub,
)
from .rint import Interval, RintError


class ChartIndeterminate(RintError):
    """The construction cannot be decided on this enclosure; split it."""


@dataclass(frozen=True)
class Contact:
    pointer: str
    receptor: str
    corner: int
    adj: str  # 'next' | 'prev': which side of the corner carries the edge
    lam: str  # 'alpha' | 'beta' | 'gamma'
    # distance from the corner to the region-side edge endpoint; None means
    # the adjacent polygon side (the chained case)
    xfrom: Callable | None = None


@dataclass(frozen=True)
class ChartSpec:
    name: str
    # ('c', angle-symbol) for a contact corner, ('w',) for a reflex vertex
    corners: tuple
    # (owner label, 'full' | 'var') per side; side i runs corner i -> i+1
    sides: tuple
    coord_names: tuple
    # indices into coords: (alpha, beta, x)
    perm: tuple
    angle_sum_k: int  # alpha + beta + gamma = k * pi/5
    known_side: int | None  # side index carrying the x coordinate
    contacts: tuple
    pose_src: dict
    orient: int
    domain: tuple  # ((lo, hi) per coordinate)
    # extra in-domain margins (certainly negative => outside the kind)
    extra: Callable = None


@dataclass
class Construction:
    corners: list
    dirs: list
    lengths: list
    poses: dict
    contact_info: list
    margins: list


@dataclass
class TriangleData:
    kind: str
    coords: tuple
    poses: dict
    measures: TriangleMeasures
    area: Any
    sides: list
    margins: list
    contacts: list

    def edge(self, x: str, y: str):
        return self.measures.edge(x, y)

    def theta(self, x: str, y: str):
        return self.measures.theta(x, y)

    def arc(self, x: str):
        return self.measures.arcs[x]


def _angles(spec: ChartSpec, coords, nm: Num):
    a = coords[spec.perm[0]]
    b = coords[spec.perm[1]]
    total = nm.pi_5 * spec.angle_sum_k
    return a, b, total - a - b


def construct(spec: ChartSpec, alpha, beta, gamma, known: dict, coords, nm: Num) -> Construction:
    sym = {"alpha": alpha, "beta": beta, "gamma": gamma}
    n = len(spec.corners)
    two_pi_5 = nm.two_pi_5
    interior = []
    for c in spec.corners:
        if c[0] == "w":
            interior.append(nm.pi_5 * 7)
        else:
            interior.append(two_pi_5 - sym[c[1]])
    # side directions from accumulated turning angles
    psi = nm.const(0.0)
    psis = [psi]
    for i in range(1, n):
        psi = psi + (nm.pi_5 * 5 - interior[i])
        psis.append(psi)
    dirs = [dir_of(p, nm) for p in psis]
    # side lengths: known coordinates, full edges, two solved by closure
    lengths: list = [None] * n
    for i, (_, tag) in enumerate(spec.sides):
        if tag == "full":
            lengths[i] = nm.two_sigma
    for i, val in known.items():
        lengths[i] = val
    unknown = [i for i in range(n) if lengths[i] is None]
    if len(unknown) != 2:
        raise AssertionError(f"{spec.name}: {len(unknown)} unknown sides")
    i, j = unknown
    kx = nm.const(0.0)
    ky = nm.const(0.0)
    for k in range(n):
        if lengths[k] is not None:
            kx = kx + lengths[k] * dirs[k][0]
            ky = ky + lengths[k] * dirs[k][1]
    det = v_cross(dirs[i], dirs[j])
    det_iv = as_interval(det)
    if det_iv.contains(0.0):
        raise ChartIndeterminate(f"{spec.name}: closure determinant ~ 0")
    rhs = (-kx, -ky)
    lengths[i] = v_cross(rhs, dirs[j]) / det
    lengths[j] = v_cross(dirs[i], rhs) / det
    # corner positions
    corners = [(nm.const(0.0), nm.const(0.0))]
    for k in range(n - 1):
        corners.append(v_add(corners[k], v_scale(dirs[k], lengths[k])))
    # contacts
    poses: dict = {}
    contact_info = []
    margins = [lengths[i], lengths[j]]
    for ct in spec.contacts:
        v = corners[ct.corner]
        if ct.adj == "next":
            u_hat = dirs[ct.corner]
            n_hat = v_left(u_hat)
            xfrom = lengths[ct.corner] if ct.xfrom is None else ct.xfrom(lengths, coords, nm)
        else:
            u_hat = v_scale(dirs[ct.corner - 1], -1)
            n_hat = v_right(u_hat)
            xfrom = lengths[ct.corner - 1] if ct.xfrom is None else ct.xfrom(lengths, coords, nm)
        lam = sym[ct.lam]
        w = v_add(v, v_scale(u_hat, xfrom))
        e_hat = v_scale(u_hat, -1)
        ptr, rec = contact_pair(w, e_hat, n_hat, xfrom, lam, nm)
        contact_info.append(
            dict(pointer=ct.pointer, receptor=ct.receptor, x=xfrom, lam=lam,
                 v=v, w=w, ptr=ptr, rec=rec)
        )
        margins.append(xfrom)
        margins.append(nm.two_sigma - xfrom)
        margins.append(lam)
        margins.append(nm.two_pi_5 - lam)
    for label, (ct_idx, role) in spec.pose_src.items():
        poses[label] = contact_info[ct_idx]["ptr" if role == "pointer" else "rec"]
    return Construction(corners, dirs, lengths, poses, contact_info, margins)


def _delta_ct0_xfrom(lengths, coords, nm):
    return nm.two_sigma - coords[0]


def _delta_ct1_xfrom(lengths, coords, nm):
    return coords[0] + lengths[0]


_PI5 = rint.PI_5.mid
_TWO_PI5 = rint.TWO_PI_5.mid
_TWO_SIG = rint.TWO_SIGMA.hi
#: pinned cap for the pint edge coordinate (2sigma*(1/sin(2pi/5) - 1) < cap)
PINT_X_CAP = 0.0605
#: cap for the delta edge coordinate, covering 2sigma - sigma/kappa
DELTA_X_CAP = 0.4491

CHARTS: dict[str, ChartSpec] = {}


def _register(spec: ChartSpec):
    CHARTS[spec.name] = spec
    return spec


_register(ChartSpec(
    name="pinwheel",
    corners=(("c", "gamma"), ("c", "beta"), ("c", "alpha")),
    sides=(("A", "var"), ("C", "var"), ("B", "var")),
    coord_names=("alpha", "beta", "x_gamma"),
    perm=(0, 1, 2),
    angle_sum_k=1,
    known_side=0,
    contacts=(
        Contact("B", "A", 0, "next", "gamma"),
        Contact("A", "C", 1, "next", "beta"),
        Contact("C", "B", 2, "next", "alpha"),
    ),
    pose_src={"A": (0, "receptor"), "B": (0, "pointer"), "C": (1, "receptor")},
    orient=-1,
    domain=((0.0, _PI5), (0.0, _PI5), (0.0, _TWO_SIG)),
    extra=lambda a, b, g, coords, nm: [g],
))

_register(ChartSpec(
    name="delta",
    corners=(("c", "alpha"), ("c", "beta"), ("c", "gamma")),
    sides=(("C", "var"), ("A", "var"), ("B", "full")),
    coord_names=("x_alpha", "alpha", "beta"),
    perm=(1, 2, 0),
    angle_sum_k=1,
    known_side=None,
    contacts=(
        Contact("B", "C", 0, "next", "alpha", _delta_ct0_xfrom),
        Contact("A", "C", 1, "prev", "beta", _delta_ct1_xfrom),
        Contact("B", "A", 2, "prev", "gamma"),
    ),
    pose_src={"C": (0, "receptor"), "B": (0, "pointer"), "A": (1, "pointer")},
    orient=1,
    domain=((0.0, DELTA_X_CAP), (0.0, _PI5), (0.0, _PI5)),
    extra=lambda a, b, g, coords, nm: [g, a - b],
))

_register(ChartSpec(
    name="lj",
    corners=(("c", "alpha"), ("c", "beta"), ("w",), ("c", "gamma")),
    sides=(("C", "var"), ("A", "var"), ("A", "var"), ("B", "full")),
    coord_names=("alpha", "beta", "x_alpha"),
    perm=(0, 1, 2),
    angle_sum_k=3,
    known_side=0,
    contacts=(
        Contact("B", "C", 0, "next", "alpha"),
        Contact("C", "A", 1, "next", "beta"),
        Contact("B", "A", 3, "prev", "gamma"),
    ),
    pose_src={"C": (0, "receptor"), "B": (0, "pointer"), "A": (1, "receptor")},
    orient=1,
    domain=((0.0, _TWO_PI5), (0.0, _TWO_PI5), (0.0, _TWO_SIG)),
    extra=lambda a, b, g, coords, nm: [g, nm.two_pi_5 - g],
))

_register(ChartSpec(
    name="tj",
    corners=(("c", "gamma"), ("w",), ("c", "beta"), ("w",), ("c", "alpha")),
    sides=(("A", "var"), ("A", "full"), ("C", "var"), ("C", "var"), ("B", "full")),
    coord_names=("alpha", "beta", "x_gamma"),
    perm=(0, 1, 2),
    angle_sum_k=5,
    known_side=0,
    contacts=(
        Contact("B", "A", 0, "next", "gamma"),
        Contact("A", "C", 2, "next", "beta"),
        Contact("B", "C", 4, "prev", "alpha"),
    ),
    pose_src={"A": (0, "receptor"), "B": (0, "pointer"), "C": (1, "receptor")},
    orient=-1,
    domain=((_PI5, _TWO_PI5), (_PI5, _TWO_PI5), (0.0, _TWO_SIG)),
    extra=lambda a, b, g, coords, nm: [g - nm.pi_5, nm.two_pi_5 - g],
))

_register(ChartSpec(
    name="pint",
    corners=(("c", "beta"), ("w",), ("c", "gamma"), ("c", "alpha"), ("w",)),
    sides=(("A", "var"), ("A", "full"), ("B", "var"), ("C", "var"), ("C", "full")),
    coord_names=("alpha", "beta", "x_alpha"),
    perm=(0, 1, 2),
    angle_sum_k=5,
    known_side=3,
    contacts=(
        Contact("C", "A", 0, "next", "beta"),
        Contact("A", "B", 2, "next", "gamma"),
        Contact("B", "C", 3, "next", "alpha"),
    ),
    pose_src={"A": (0, "receptor"), "C": (0, "pointer"), "B": (1, "receptor")},
    orient=1,
    domain=((_PI5, _TWO_PI5), (_PI5, _TWO_PI5), (0.0, PINT_X_CAP)),
    extra=lambda a, b, g, coords, nm: [
        g, nm.two_pi_5 - g,
        # pin relation: the edge coordinate is bounded by the angle spread
        nm.two_sigma * (nm.sin(a + nm.pi_5) - nm.sin(b + nm.pi_5))
        - coords[2] * nm.sin(nm.two_pi_5),
    ],
))


def pint_bound_check():
    """Rigorous check that PINT_X_CAP dominates the pin edge coordinate.

    Returns ``(value, ok)`` where value encloses ``2sigma*(1/sin(2pi/5)-1)``,
    the largest edge coordinate a pin contact admits, and ``ok`` says the
    cap certainly dominates it.
    """
    val = rint.TWO_SIGMA * (1 / rint.sin(rint.TWO_PI_5) - 1)
    return val, val.hi < PINT_X_CAP


CHART_NAMES = tuple(CHARTS)


def triangle_data(kind: str, coords, nm: Num = RIG, with_thetas: bool = True,
                  with_arcs: bool | None = None) -> TriangleData:
    """Build the three poses of a chart point and measure its triangle.

    ``with_thetas=False`` skips the per-corner rim offsets and
    ``with_arcs=False`` the corner angles; the subdivision prover does not
    need either, and both can fail to resolve on wide interval boxes
    (``with_arcs=None`` computes arcs whenever the carrier supports them).
    """
    spec = CHARTS[kind]
    alpha, beta, gamma = _angles(spec, coords, nm)
    known = {} if spec.known_side is None else {spec.known_side: coords[spec.perm[2]]}
    return _finish(spec, coords, alpha, beta, gamma, known, nm, with_thetas,
                   with_arcs)


def _finish(spec, coords, alpha, beta, gamma, known, nm, with_thetas=True,
            with_arcs=None) -> TriangleData:
    con = construct(spec, alpha, beta, gamma, known, coords, nm)
    if with_arcs is None:
        with_arcs = nm.name in ("float", "interval")
    meas = measure_triangle(
        con.poses["A"], con.poses["B"], con.poses["C"], nm,
        with_arcs=with_arcs,
        with_thetas=with_thetas,
    )
    area = meas.area_signed * spec.orient
    margins = list(con.margins)
    if spec.extra is not None:
        margins.extend(spec.extra(alpha, beta, gamma, coords, nm))
    contacts = [
        dict(pointer=c["pointer"], receptor=c["receptor"], x=c["x"], lam=c["lam"])
        for c in con.contact_info
    ]
    return TriangleData(
        kind=spec.name,
        coords=tuple(coords),
        poses=con.poses,
        measures=meas,
        area=area,
        sides=con.lengths,
        margins=margins,
        contacts=contacts,
    )


# -- shared-edge reparameterizations ---------------------------------------


@dataclass(frozen=True)
class SharedSpec:
    name: str
    kind: str
    # (alphabar, betabar, nm) -> (alpha, beta, gamma)
    angle_map: Callable
    side_idx: int
    shared_ct: int
    domain: tuple
    contains_balanced: bool  # whether the balanced (ice-ray) point lies here
    note: str = ""


def _pi5(nm):
    return nm.pi_5


SHARED: dict[str, SharedSpec] = {}


def _register_shared(spec: SharedSpec):
    SHARED[spec.name] = spec
    return spec


_register_shared(SharedSpec(
    name="pinwheel_s",
    kind="pinwheel",
    angle_map=lambda ab, bb, nm: (ab, bb, nm.pi_5 - ab - bb),
    side_idx=1,
    shared_ct=1,
    domain=((0.0, _PI5), (0.0, _PI5), (0.0, _TWO_SIG)),
    contains_balanced=True,
))

_register_shared(SharedSpec(
    name="lj1",
    kind="lj",
    angle_map=lambda ab, bb, nm: (nm.pi_5 + ab - bb, bb, nm.two_pi_5 - ab),
    side_idx=1,
    shared_ct=1,
    domain=((0.0, _TWO_PI5), (0.0, _TWO_PI5), (0.0, _TWO_SIG)),
    contains_balanced=True,
))

_register_shared(SharedSpec(
    name="lj2",
    kind="lj",
    angle_map=lambda ab, bb, nm: (bb, ab, nm.pi_5 * 3 - ab - bb),
    side_idx=0,
    shared_ct=0,
    domain=((0.0, _TWO_PI5), (0.0, _TWO_PI5), (0.0, _TWO_SIG)),
    contains_balanced=True,
))

_register_shared(SharedSpec(
    name="lj3",
    kind="lj",
    angle_map=lambda ab, bb, nm: (nm.pi_5 * 3 - ab - bb, ab, bb),
    side_idx=2,
    shared_ct=2,
    domain=((0.0, 0.9), (0.0, _TWO_PI5), (0.0, _TWO_SIG)),
    contains_balanced=False,
    note="closure determinant vanishes as alphabar -> 2pi/5; the cut "
         "region is covered by a standard-coordinate refutation",
))

_register_shared(SharedSpec(
    name="tj1",
    kind="tj",
    angle_map=lambda ab, bb, nm: (nm.pi_5 + ab, bb, nm.pi_5 * 4 - ab - bb),
    side_idx=2,
    shared_ct=1,
    domain=((0.0, _PI5), (1.0, _TWO_PI5), (0.0, _TWO_SIG)),
    contains_balanced=False,
    note="closure determinant vanishes as betabar -> pi/5; the cut region "
         "is covered by a standard-coordinate refutation",
))

_register_shared(SharedSpec(
    name="tj2",
    kind="tj",
    angle_map=lambda ab, bb, nm: (nm.pi_5 * 4 - ab - bb, nm.pi_5 + ab, bb),
    side_idx=0,
    shared_ct=0,
    domain=((0.0, _PI5), (_PI5, _TWO_PI5), (0.0, _TWO_SIG)),
    contains_balanced=False,
))

_register_shared(SharedSpec(
    name="tj3",
    kind="tj",
    angle_map=lambda ab, bb, nm: (bb, nm.two_pi_5 - ab, nm.pi_5 * 3 + ab - bb),
    side_idx=3,
    shared_ct=2,
    domain=((0.0, _PI5), (_PI5, _TWO_PI5), (0.0, _TWO_SIG)),
    contains_balanced=True,
))

_register_shared(SharedSpec(
    name="pint_s",
    kind="pint",
    angle_map=lambda ab, bb, nm: (bb, nm.pi_5 + ab, nm.pi_5 * 4 - ab - bb),
    side_idx=3,
    shared_ct=2,
    domain=((0.0, _PI5), (_PI5, _TWO_PI5), (0.0, PINT_X_CAP)),
    contains_balanced=False,
))

SHARED_NAMES = tuple(SHARED)
#: systems able to represent the balanced configuration with the glued
#: (longest) edge as their shared contact
BALANCED_SYSTEMS = tuple(s for s in SHARED_NAMES if SHARED[s].contains_balanced)


def shared_data(system: str, bar_coords, nm: Num = RIG, with_thetas: bool = True) -> TriangleData:
    """Evaluate a shared-edge system at (alphabar, betabar, xbar)."""
    sspec = SHARED[system]
    spec = CHARTS[sspec.kind]
    ab, bb, xb = bar_coords
    alpha, beta, gamma = sspec.angle_map(ab, bb, nm)
    data = _finish(spec, bar_coords, alpha, beta, gamma, {sspec.side_idx: xb}, nm,
                   with_thetas)
    return TriangleData(
        kind=system,
        coords=tuple(bar_coords),
        poses=data.poses,
        measures=data.measures,
        area=data.area,
        sides=data.sides,
        margins=data.margins,
        contacts=data.contacts,
    )


def shared_pair_labels(system: str) -> tuple[str, str]:
    """(pointer, receptor) labels of the system's glued contact."""
    sspec = SHARED[system]
    ct = CHARTS[sspec.kind].contacts[sspec.shared_ct]
    return ct.pointer, ct.receptor


# -- sampling helpers (float path, used by tests and oracles) --------------


def sample_coords(kind: str, rng) -> tuple:
    """A random in-domain standard-coordinate triple (floats)."""
    spec = CHARTS[kind]
    for _ in range(10000):
        coords = tuple(rng.uniform(lo, hi) for lo, hi in spec.domain)
        a, b, g = _angles(spec, coords, FLT)
        ok = g >= 0.0 and g <= FLT.two_pi_5
        if spec.name == "delta":
            ok = ok and coords[1] >= coords[2]
        if spec.name == "tj":
            ok = ok and g >= FLT.pi_5
        if not ok:
            continue
        try:
            td = triangle_data(kind, coords, FLT)
        except (RintError, ValueError):
            continue
        if all(m > 1e-9 for m in td.margins):
            return coords
    raise RuntimeError(f"could not sample {kind}")
