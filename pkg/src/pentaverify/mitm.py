"""Meet-in-the-middle assembly engine for multi-triangle area bounds.

Each calculation here bounds the total area of a small cluster of center
triangles: one *central* triangle plus one, two, or three *flank*
triangles, each flank sharing an edge (and the two pentagons at its
endpoints) with the central one.  Searching the full product
configuration space is hopeless (6 + 3k dimensions), so the engine works
in two halves that meet in a hash table:

* the flank configuration spaces are covered by boxes refined down to a
  pitch ``eps``; every surviving box is stored in a table keyed by a
  discretization of its shared-edge data (edge length and the two
  pentagon inclination offsets along the edge);
* central boxes are then scanned independently; each probes the table
  with its own shared-edge data, sign-flipped, and combines the matched
  flank area bounds with its own area enclosure.

A box pair can only describe a geometrically assembled cluster if the
shared-edge data agree exactly (the flip encodes the opposite
orientations of the common edge as seen from the two triangles), and the
key grids are arranged so that real-number agreement forces a key
collision.  Central boxes with no collision, or whose combined area
lower bound certainly exceeds the calc's cap, are refuted.  The rest
survive into the next round at half the pitch; only flank boxes that
took part in a surviving collision are carried along.  A calc is
verified when a round ends with no survivors.

All claims are refutations of a negated conclusion, as in
:mod:`pentaverify.prover`: the box constraints describe the
counterexample domain, and the engine shows it is empty.

Two constant profiles exist for every calc: ``desk`` (thresholds relaxed
by 0.05, short pitch schedule — minutes of work) and ``paper`` (exact
thresholds, pitch schedule descending to 0.00024 — tens of hours; run it
only deliberately).

Completeness notes baked into the encoding (functional summary):

* flank triangles are taken with their outer pentagon in double contact
  (the deformation arguments let every flank be normalized this way
  before any calc below applies), so each flank domain is the same
  twenty-case wedge family used by the single-triangle prover;
* the wedge case list is closed under reflection, and the shared-edge
  offsets are measured mirror-invariantly, so central cases may fix a
  chirality and endpoint labellings without losing configurations;
* a record is inserted under both endpoint orders of its shared edge,
  because the two triangles of a pair label the shared pentagons
  independently.
"""

from __future__ import annotations

import json
import math
import time
from array import array
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator

from . import o2c, pentgeo, rint
from .numerics import JET1, RIG, Num, as_interval
from .pentgeo import Pose, RintError, pair_feasible, v_cross, v_dot, v_norm2, v_sub
from .prover import Box, _mean_value_scalars
from .rint import Interval

__all__ = [
    "AssemblyKey",
    "PeripheralRecord",
    "PeripheralTable",
    "FlankFamily",
    "CentralCase",
    "MitmCalc",
    "MitmCertificate",
    "MemoryBudgetError",
    "MITM_CALC_NAMES",
    "build_calc",
    "build_table",
    "scan",
    "refine",
    "run_calc",
    "edge_assembly_data",
    "wrap_period",
    "flip_period",
    "DESK_SCHEDULE",
    "PAPER_SCHEDULE",
]


# -- profiles and shared constants -------------------------------------------

DESK_RELAX = 0.05
DESK_SCHEDULE = (0.16, 0.08, 0.04, 0.02)
#: full-scale schedule; the last pitch matches the sharpest one ever needed.
PAPER_SCHEDULE = (
    0.16, 0.08, 0.04, 0.02, 0.01, 0.005, 0.0025, 0.00125, 0.0006, 0.0003,
    0.00024,
)
DEFAULT_MEM_CAP = 1 << 22
#: key cells are this many box pitches wide; coarser keys keep the
#: per-box key multiplicity (and so the table) small, at the price of
#: more spurious collisions, which the next round resolves.
KEY_FACTOR = 4.0

_PERIOD = rint.TWO_PI_5
#: longest edge of a subcritical nonobtuse center triangle
_EDGE_TOP = (rint.KAPPA * rint.sqrt(Interval.point(8.0))).hi
_EDGE_BOT = (rint.KAPPA * 2).lo

FLAG_LONG_AB = 1  #: the A-B edge can tie the shared A-C edge in length
FLAG_LONG_BC = 2  #: the B-C edge can tie the shared A-C edge in length
FLAG_TRIPLE = 4  #: the two shared pentagons can touch each other


class MemoryBudgetError(RuntimeError):
    """A table outgrew its record budget; retry with a larger cap."""


def _sq_lo(v: float) -> float:
    return (Interval.point(v) ** 2).lo


def _sq_hi(v: float) -> float:
    return (Interval.point(v) ** 2).hi


def wrap_period(x) -> Interval:
    """Reduce an angle enclosure into [0, 2*pi/5] (full period on wrap)."""
    red, _ = rint.reduce_mod(as_interval(x), rint.TWO_PI_5)
    return red


def flip_period(x) -> Interval:
    """The assembly flip: the same offset as seen from the other triangle."""
    return wrap_period(-as_interval(x))


# -- key grid -----------------------------------------------------------------


@dataclass(frozen=True)
class AssemblyKey:
    """Grid cell of the discretized shared-edge data (d, offset, offset)."""

    kd: int
    kt: int
    ks: int


class KeyGrid:
    """floor(x/cell) indexing of shared-edge data.

    Both sides key each enclosure by the full floor range of its grid
    cells, so a real configuration lying in both a flank and a central
    box always produces a key collision: the true edge datum has one
    well-defined cell, and both ranges contain it.  Angle indices are
    taken modulo the period cell count so the seam at 0 == 2*pi/5
    matches up.  The cell is ``KEY_FACTOR`` box pitches wide, which keeps
    the number of cells a single box touches near one per axis.
    """

    def __init__(self, pitch: float, factor: float = KEY_FACTOR):
        if not pitch > 0.0:
            raise ValueError("pitch must be positive")
        self.pitch = pitch
        self.cell = pitch * factor
        self.n_theta = int(_PERIOD.hi / self.cell) + 1

    def _floor_range(self, lo: float, hi: float) -> range:
        return range(math.floor(lo / self.cell), math.floor(hi / self.cell) + 1)

    def d_indices(self, d: Interval) -> range:
        return self._floor_range(d.lo, d.hi)

    def theta_indices(self, t: Interval | None) -> list[int]:
        if t is None or t.width >= _PERIOD.lo:
            return list(range(self.n_theta))
        raw = self._floor_range(t.lo, t.hi)
        if len(raw) >= self.n_theta:
            return list(range(self.n_theta))
        return sorted({i % self.n_theta for i in raw})

    def keys(
        self, d: Interval, t1: Interval | None, t2: Interval | None
    ) -> Iterator[AssemblyKey]:
        for kd in self.d_indices(d):
            for kt in self.theta_indices(t1):
                for ks in self.theta_indices(t2):
                    yield AssemblyKey(kd, kt, ks)


def edge_assembly_data(px: Pose, py: Pose, opposite: Pose, nm: Num = RIG):
    """Shared-edge data (d, offset at x, offset at y) of one triangle side.

    ``opposite`` is the triangle's third pentagon; it fixes the sign
    convention so that the two triangles flanking the same edge measure
    negated offsets (mod 2*pi/5).  Offsets may come back as the full
    period when the enclosure genuinely wraps.
    """
    d = pentgeo.center_dist(px, py, nm)
    try:
        tx = pentgeo.vertex_offset(px, px.center, py.center, opposite.center, nm)
    except RintError:
        tx = None
    try:
        ty = pentgeo.vertex_offset(py, py.center, px.center, opposite.center, nm)
    except RintError:
        ty = None
    return as_interval(d), _opt_iv(tx), _opt_iv(ty)


def _opt_iv(x):
    return None if x is None else as_interval(x)


# -- table --------------------------------------------------------------------


@dataclass(slots=True)
class PeripheralRecord:
    """One flank box's entry under one grid key (reporting view)."""

    key: AssemblyKey
    area_lb: float
    source_box: Box
    flags: int


class PeripheralTable:
    """Flank boxes bucketed by assembly key.

    Each surviving flank box is stored once (box, area lower bound,
    flags); the buckets map every grid key the box's shared-edge data
    touch — in both endpoint orders — to its index.  The memory cap
    counts bucket entries, the quantity that actually grows with both
    the box count and the key multiplicity.
    """

    def __init__(self, pitch: float, mem_cap: int = DEFAULT_MEM_CAP):
        self.grid = KeyGrid(pitch)
        self.pitch = pitch
        self.mem_cap = mem_cap
        self.boxes: list[Box] = []
        self.area_lb = array("d")
        self.flags = array("B")
        self.buckets: dict[tuple[int, int, int], array] = {}
        self.n_entries = 0

    def insert_cell(
        self, box: Box, area_lb: float, flags: int,
        d: Interval, t1: Interval | None, t2: Interval | None,
    ) -> None:
        """Store one flank box under every touched key, both endpoint orders."""
        idx = len(self.boxes)
        self.boxes.append(box)
        self.area_lb.append(area_lb)
        self.flags.append(flags)
        seen: set[tuple[int, int, int]] = set()
        for a, b in ((t1, t2), (t2, t1)):
            for key in self.grid.keys(d, a, b):
                kt = (key.kd, key.kt, key.ks)
                if kt in seen:
                    continue
                seen.add(kt)
                if self.n_entries >= self.mem_cap:
                    raise MemoryBudgetError(
                        f"table exceeded {self.mem_cap} entries at pitch "
                        f"{self.pitch}"
                    )
                self.n_entries += 1
                bucket = self.buckets.get(kt)
                if bucket is None:
                    self.buckets[kt] = array("l", (idx,))
                else:
                    bucket.append(idx)

    def candidates(
        self, d: Interval, t1: Interval | None, t2: Interval | None
    ) -> list[int]:
        """Indices of flank boxes colliding with probed (flipped) edge data."""
        out: set[int] = set()
        for key in self.grid.keys(d, t1, t2):
            hit = self.buckets.get((key.kd, key.kt, key.ks))
            if hit:
                out.update(hit)
        return sorted(out)

    def iter_records(self) -> Iterator[PeripheralRecord]:
        for kt, bucket in sorted(self.buckets.items()):
            for idx in bucket:
                yield PeripheralRecord(
                    AssemblyKey(*kt), self.area_lb[idx], self.boxes[idx],
                    self.flags[idx],
                )

    @property
    def n_cells(self) -> int:
        return len(self.boxes)

    @property
    def n_records(self) -> int:
        return self.n_entries

    @property
    def n_keys(self) -> int:
        return len(self.buckets)


# -- cell evaluation ----------------------------------------------------------


@dataclass
class CellEval:
    """Interval measurements of one central or flank box."""

    poses: dict[str, Pose]
    q: dict[str, Any]  # "ab" / "bc" / "ac" -> squared edge enclosure
    dots: dict[str, Any]
    cross2: Any
    area: Interval
    overlap: bool  # some pentagon pair certainly overlaps
    touch_ac: bool  # the A and C pentagons possibly touch


_EDGE_PAIRS = {"ab": ("A", "B"), "bc": ("B", "C"), "ac": ("A", "C")}


def _triangle_scalars(pa: Pose, pb: Pose, pc: Pose) -> list:
    ab = v_sub(pb.center, pa.center)
    ac = v_sub(pc.center, pa.center)
    bc = v_sub(pc.center, pb.center)
    return [
        v_cross(ab, ac),
        v_norm2(ab),
        v_norm2(bc),
        v_norm2(ac),
        v_dot(ab, ac),
        v_dot((-ab[0], -ab[1]), bc),
        v_dot((-ac[0], -ac[1]), (-bc[0], -bc[1])),
    ]


def _pack_eval(poses: dict[str, Pose], scalars: list, signed_area: bool,
               overlap: bool, touch_ac: bool) -> CellEval:
    cross2, q_ab, q_bc, q_ac, da, db, dc = (as_interval(s) for s in scalars)
    area = cross2 / 2 if signed_area else abs(cross2) / 2
    return CellEval(
        poses=poses,
        q={"ab": q_ab, "bc": q_bc, "ac": q_ac},
        dots={"A": da, "B": db, "C": dc},
        cross2=cross2,
        area=area,
        overlap=overlap,
        touch_ac=touch_ac,
    )


def _wedge_poses(combo: o2c.WedgeCombo, coords, nm: Num) -> dict[str, Pose]:
    w = o2c.eval_wedge(combo, coords, nm)
    return {"A": w.a, "B": w.b, "C": w.c}


def _pair_poses(case: "CentralCase", coords, nm: Num) -> dict[str, Pose]:
    x, lam, d, ang, phi = coords
    cd = o2c.ContactDir(case.contact, 0)
    out, _ = o2c.outer_contact(cd, x, lam, nm)
    mid = o2c.B_POSE
    u = v_sub(mid.center, out.center)
    n = nm.sqrt(v_norm2(u))
    ux, uy = u[0] / n, u[1] / n
    ca, sa = nm.cos(ang), nm.sin(ang)
    dirx, diry = ux * ca - uy * sa, ux * sa + uy * ca
    free = Pose(out.cx + d * dirx, out.cy + d * diry, phi)
    raw = {"mid": mid, "out": out, "free": free}
    return {lbl: raw[role] for lbl, role in case.label_map.items()}


def _free_poses(coords, nm: Num) -> dict[str, Pose]:
    d_ab, d_ac, ang, phi_a, phi_b, phi_c = coords
    pa = Pose(0.0, 0.0, phi_a)
    pb = Pose(d_ab, 0.0 * d_ab, phi_b)
    pc = Pose(d_ac * nm.cos(ang), d_ac * nm.sin(ang), phi_c)
    return {"A": pa, "B": pb, "C": pc}


def _norm_pose(p: Pose) -> Pose:
    """Same pentagon, phase reduced into the symmetry period.

    Chart and wedge constructions accumulate phases beyond the range the
    trig enclosures accept; the pentagon itself only depends on the
    phase mod 2*pi/5.
    """
    ph = as_interval(p.phase)
    if 0.0 <= ph.lo and ph.hi <= 6.0:
        return p
    red, _ = rint.reduce_mod(ph, rint.TWO_PI_5)
    return Pose(p.cx, p.cy, red)


def _possibly_overlapping(pa: Pose, pb: Pose) -> tuple[bool, bool]:
    """(certainly overlap, possibly touching) with a cheap distance gate."""
    q = as_interval(v_norm2(v_sub(pb.center, pa.center)))
    if q.lo > 4.0:  # beyond twice the circumradius: certainly disjoint
        return False, False
    if q.hi < _sq_lo(_EDGE_BOT):  # closer than twice the apothem
        return True, False
    verdict = pair_feasible(_norm_pose(pa), _norm_pose(pb), RIG)
    return verdict == "overlap", verdict == "touching"


def eval_cell(case: "CentralCase", coords, use_mvf: bool = True) -> CellEval:
    """Measure one box of a central or flank case.

    Plain interval evaluation first; when requested, the seven core
    triangle scalars are re-derived in mean-value form and intersected,
    which keeps area and edge enclosures tight on pitch-sized boxes.
    """
    poses = case.poses(coords, RIG)
    order = (poses["A"], poses["B"], poses["C"])
    scalars = _triangle_scalars(*order)
    if use_mvf:
        try:
            def fn(cs, nm):
                ps = case.poses(cs, nm)
                return _triangle_scalars(ps["A"], ps["B"], ps["C"])

            tight = _mean_value_scalars(fn, tuple(as_interval(c) for c in coords))
            scalars = tight
        except (RintError, ZeroDivisionError, NotImplementedError):
            pass
    overlap = False
    touch_ac = False
    for pair in case.overlap_checks:
        x, y = pair
        bad, touch = _possibly_overlapping(poses[x], poses[y])
        overlap = overlap or bad
        if pair == ("A", "C"):
            touch_ac = touch
    return _pack_eval(poses, scalars, case.signed_area, overlap, touch_ac)


# -- prune predicates ---------------------------------------------------------
#
# A prune fires only when the box is CERTAINLY outside the counterexample
# domain.  Each prune is a small tagged tuple; unknown tags fail loudly.


def _alpha(ev: CellEval, edge: str) -> Interval | None:
    """Edge-incidence offset between the two pentagons across one edge.

    Measured as the orientation difference of the two pentagons mod
    2*pi/5, signed toward the triangle's side (so the adjacent triangle
    across the same edge measures the complementary value).  ``None``
    when the side is indeterminate on the box.
    """
    x, y = _EDGE_PAIRS[edge]
    z = next(l for l in "ABC" if l not in (x, y))
    px, py, pz = ev.poses[x], ev.poses[y], ev.poses[z]
    side = as_interval(
        v_cross(v_sub(py.center, px.center), v_sub(pz.center, px.center))
    )
    raw = as_interval(px.phase) - as_interval(py.phase)
    if side.certainly_gt(0.0):
        return wrap_period(raw)
    if side.certainly_lt(0.0):
        return wrap_period(-raw)
    return None


def _certainly_large(alpha: Interval | None) -> bool:
    return (
        alpha is not None
        and alpha.lo > rint.PI_5.hi
        and alpha.hi < rint.TWO_PI_5.lo
    )


def _prune_out(ev: CellEval, prune: tuple) -> bool:
    tag = prune[0]
    if tag == "nonobtuse":
        return any(as_interval(d).certainly_lt(0.0) for d in ev.dots.values())
    if tag == "feasible":
        return ev.overlap
    if tag == "chiral":
        return as_interval(ev.cross2).certainly_le(0.0)
    if tag == "qmin":  # edge must be able to reach at least v
        _, edge, v2lo = prune
        return as_interval(ev.q[edge]).hi < v2lo
    if tag == "qmax":  # edge must be able to stay at most v
        _, edge, v2hi = prune
        return as_interval(ev.q[edge]).lo > v2hi
    if tag == "qmax_all":
        _, v2hi = prune
        return any(as_interval(q).lo > v2hi for q in ev.q.values())
    if tag == "maxmin":  # max(e1, e2) must be able to reach v
        _, e1, e2, v2lo = prune
        return (
            as_interval(ev.q[e1]).hi < v2lo and as_interval(ev.q[e2]).hi < v2lo
        )
    if tag == "qpin":  # edge length pinned to v
        _, edge, v2lo, v2hi = prune
        q = as_interval(ev.q[edge])
        return q.hi < v2lo or q.lo > v2hi
    if tag == "iso":  # the two edges tie
        _, e1, e2 = prune
        gap = as_interval(ev.q[e1]) - as_interval(ev.q[e2])
        return gap.certainly_gt(0.0) or gap.certainly_lt(0.0)
    if tag == "third_le":  # e_small must be able to stay below e_big
        _, e_small, e_big = prune
        gap = as_interval(ev.q[e_small]) - as_interval(ev.q[e_big])
        return gap.certainly_gt(0.0)
    if tag == "q_longest":  # edge is the longest
        _, edge = prune
        qe = as_interval(ev.q[edge])
        return any(
            (qe - as_interval(q)).certainly_lt(0.0)
            for name, q in ev.q.items()
            if name != edge
        )
    if tag == "q_not_longest":  # some other edge matches or beats this one
        _, edge = prune
        qe = as_interval(ev.q[edge])
        return all(
            (qe - as_interval(q)).certainly_gt(0.0)
            for name, q in ev.q.items()
            if name != edge
        )
    if tag == "order":  # e1 <= e2 (symmetry reduction)
        _, e1, e2 = prune
        gap = as_interval(ev.q[e1]) - as_interval(ev.q[e2])
        return gap.certainly_gt(0.0)
    if tag == "notlarge":  # the incidence offset along edge is not large
        _, edge = prune
        return _certainly_large(_alpha(ev, edge))
    if tag == "exists_long_notlarge":
        # some listed edge is at least v long with a not-large offset
        _, edges, v2lo = prune
        for edge in edges:
            q = as_interval(ev.q[edge])
            if q.hi < v2lo:
                continue
            if _certainly_large(_alpha(ev, edge)):
                continue
            return False
        return True
    raise ValueError(f"unknown prune {tag!r}")


# -- case and calc specifications ---------------------------------------------


@dataclass(frozen=True)
class CentralCase:
    """One parameterized family of central (or flank) triangle boxes."""

    tag: str
    kind: str  # "wedge" | "pair" | "free"
    bounds: tuple[tuple[float, float], ...]
    prunes: tuple[tuple, ...]
    flanks: tuple[tuple[str, str], ...] = ()  # (edge, role)
    combo: str = ""  # wedge combo name
    contact: str = ""  # pair contact: middle-pentagon role
    label_map: Any = None  # pair: {"A": "out"|"mid"|"free", ...}
    signed_area: bool = False
    overlap_checks: tuple[tuple[str, str], ...] = (("A", "C"),)

    def poses(self, coords, nm: Num) -> dict[str, Pose]:
        if self.kind == "wedge":
            return _wedge_poses(o2c.combo_named(self.combo), coords, nm)
        if self.kind == "pair":
            return _pair_poses(self, coords, nm)
        if self.kind == "free":
            return _free_poses(coords, nm)
        raise ValueError(f"unknown case kind {self.kind!r}")

    def root_box(self) -> Box:
        return Box(
            coords=tuple(Interval(lo, hi) for lo, hi in self.bounds),
            depth=0,
            chart=self.tag,
        )


@dataclass(frozen=True)
class FlankFamily:
    """Constraints shared by every box of one flank role.

    The geometry is always the twenty-case wedge family: the flank's
    outer pentagon in double contact with the two pentagons it shares
    with the central triangle; the shared edge is the A-C side.
    """

    role: str
    statement: str
    area_cap: float  # drop boxes whose area certainly exceeds this
    shared_floor: float | None = None  # shared edge must reach at least this
    shared_longest: bool = True  # the shared edge is the flank's longest

    def cases(self) -> list[CentralCase]:
        prunes: list[tuple] = [("nonobtuse",), ("feasible",)]
        if self.shared_longest:
            prunes.append(("q_longest", "ac"))
        if self.shared_floor is not None:
            prunes.append(("qmin", "ac", _sq_lo(self.shared_floor)))
        wedge_hi = rint.TWO_SIGMA.hi
        per_hi = rint.TWO_PI_5.hi
        return [
            CentralCase(
                tag=f"{self.role}:{combo.name}",
                kind="wedge",
                combo=combo.name,
                bounds=((0.0, wedge_hi), (0.0, per_hi)) * 2,
                prunes=tuple(prunes),
            )
            for combo in o2c.combos()
        ]


@dataclass(frozen=True)
class MitmCalc:
    """One assembly inequality: central cases, flank families, area cap."""

    name: str
    statement: str
    profile: str
    central: tuple[CentralCase, ...]
    families: tuple[FlankFamily, ...]
    filters: Any  # role -> required flag mask (0: any record)
    cap: float  # survivor iff total area possibly <= cap
    schedule: tuple[float, ...]
    case_notes: str = ""

    def family(self, role: str) -> FlankFamily:
        for fam in self.families:
            if fam.role == role:
                return fam
        raise KeyError(f"no flank family {role!r} in {self.name}")


# -- box refinement -----------------------------------------------------------


def refine(boxes: Iterable[Box], pitch: float) -> list[Box]:
    """Split boxes until every coordinate is at most ``pitch`` wide."""
    out: list[Box] = []
    stack = list(boxes)
    while stack:
        box = stack.pop()
        widths = [c.width for c in box.coords]
        i = max(range(len(widths)), key=lambda k: widths[k])
        if widths[i] <= pitch:
            out.append(box)
            continue
        c = box.coords[i]
        m = c.mid
        for part in (Interval(c.lo, m), Interval(m, c.hi)):
            cs = list(box.coords)
            cs[i] = part
            stack.append(Box(tuple(cs), box.depth + 1, box.chart))
    out.reverse()
    return out


def _descend(
    case: CentralCase, pitch: float, frontier: list[Box] | None,
    counts: Counter, use_mvf: bool,
) -> Iterator[tuple[Box, CellEval]]:
    """Depth-first refinement of one case down to the pitch.

    Yields the surviving leaves with their evaluations; pruned boxes are
    tallied in ``counts``.  Boxes whose evaluation raises are split
    further, and kept as leaves once at pitch (never dropped).
    """
    if frontier is None:
        stack = [case.root_box()]
    else:
        stack = [b for b in frontier if b.chart == case.tag]
    stack.reverse()
    while stack:
        box = stack.pop()
        widths = [c.width for c in box.coords]
        at_pitch = max(widths) <= pitch
        ev = None
        try:
            ev = eval_cell(case, box.coords, use_mvf=use_mvf and at_pitch)
        except (RintError, ZeroDivisionError):
            ev = None
        if ev is not None:
            pruned = False
            for prune in case.prunes:
                try:
                    if _prune_out(ev, prune):
                        counts[prune[0]] += 1
                        pruned = True
                        break
                except (RintError, ZeroDivisionError):
                    continue
            if pruned:
                continue
        if at_pitch:
            if ev is None:
                try:
                    ev = eval_cell(case, box.coords, use_mvf=False)
                except (RintError, ZeroDivisionError):
                    ev = None
            if ev is None and max(widths) > pitch / 16.0:
                pass  # fall through and keep splitting: most failures are
                # guard conditions that resolve on narrower boxes
            else:
                if ev is None:
                    counts["opaque"] += 1
                    ev = _opaque_eval(case, box.coords)
                yield box, ev
                continue
        i = max(range(len(widths)), key=lambda k: widths[k])
        c = box.coords[i]
        m = c.mid
        if not (c.lo < m < c.hi):
            counts["atom"] += 1
            if ev is None:
                try:
                    ev = eval_cell(case, box.coords, use_mvf=False)
                except (RintError, ZeroDivisionError):
                    counts["opaque"] += 1
                    ev = _opaque_eval(case, box.coords)
            yield box, ev
            continue
        hi_half = Box(
            tuple(
                Interval(m, c.hi) if k == i else cc
                for k, cc in enumerate(box.coords)
            ),
            box.depth + 1,
            box.chart,
        )
        lo_half = Box(
            tuple(
                Interval(c.lo, m) if k == i else cc
                for k, cc in enumerate(box.coords)
            ),
            box.depth + 1,
            box.chart,
        )
        stack.append(hi_half)
        stack.append(lo_half)


# -- table build --------------------------------------------------------------


def _opaque_eval(case: "CentralCase", coords) -> CellEval:
    """Trivial enclosures for a box the evaluator cannot measure.

    Nothing can be pruned or refuted on such a box; every flag is set,
    the area lower bound is zero, and the shared-edge data cover their
    whole ranges (q capped by the triangle inequality on two pentagon
    diameters).
    """
    wide_q = Interval(0.0, 16.0)
    wide_dot = Interval(-16.0, 16.0)
    try:
        poses = case.poses(coords, RIG)
    except (RintError, ZeroDivisionError):
        origin = Pose(Interval(-4.0, 4.0), Interval(-4.0, 4.0),
                      Interval(0.0, rint.TWO_PI_5.hi))
        poses = {"A": origin, "B": origin, "C": origin}
    return CellEval(
        poses=poses,
        q={"ab": wide_q, "bc": wide_q, "ac": wide_q},
        dots={"A": wide_dot, "B": wide_dot, "C": wide_dot},
        cross2=wide_dot,
        area=Interval(0.0, 8.0),
        overlap=False,
        touch_ac=True,
    )


def _flank_flags(ev: CellEval) -> int:
    flags = 0
    gap_ab = as_interval(ev.q["ab"]) - as_interval(ev.q["ac"])
    if gap_ab.contains(0.0):
        flags |= FLAG_LONG_AB
    gap_bc = as_interval(ev.q["bc"]) - as_interval(ev.q["ac"])
    if gap_bc.contains(0.0):
        flags |= FLAG_LONG_BC
    if ev.touch_ac:
        flags |= FLAG_TRIPLE
    return flags


def build_table(
    family: FlankFamily,
    pitch: float,
    frontier: list[Box] | None = None,
    mem_cap: int = DEFAULT_MEM_CAP,
    use_mvf: bool = True,
    counts: Counter | None = None,
) -> PeripheralTable:
    """Cover one flank family with pitch-sized boxes and key the survivors."""
    table = PeripheralTable(pitch, mem_cap=mem_cap)
    counts = counts if counts is not None else Counter()
    for case in family.cases():
        for box, ev in _descend(case, pitch, frontier, counts, use_mvf):
            d, t1, t2 = edge_assembly_data(
                ev.poses["A"], ev.poses["C"], ev.poses["B"]
            )
            table.insert_cell(box, ev.area.lo, _flank_flags(ev), d, t1, t2)
    return table


#: whole-domain tables reused across calcs sharing a flank family
_TABLE_CACHE: dict = {}


def clear_table_cache() -> None:
    _TABLE_CACHE.clear()


# -- scan ---------------------------------------------------------------------


@dataclass
class ScanReport:
    """Outcome of one central sweep against one round's tables."""

    pitch: float
    central_cells: int = 0
    refuted_no_collision: int = 0
    refuted_area: int = 0
    pruned: Counter = field(default_factory=Counter)
    survivors: list[Box] = field(default_factory=list)
    touched: dict = field(default_factory=dict)  # role -> {id: Box}

    @property
    def verified(self) -> bool:
        return not self.survivors


def _probe_edge(ev: CellEval, edge: str):
    x, y = _EDGE_PAIRS[edge]
    z = next(l for l in "ABC" if l not in (x, y))
    d, tx, ty = edge_assembly_data(ev.poses[x], ev.poses[y], ev.poses[z])
    return d, _flip(tx), _flip(ty)


def _flip(t: Interval | None) -> Interval | None:
    return None if t is None else flip_period(t)


def scan(
    calc: MitmCalc,
    tables: dict[str, PeripheralTable],
    frontier: list[Box] | None = None,
    use_mvf: bool = True,
) -> ScanReport:
    """Sweep the central cases against the round's flank tables."""
    pitch = next(iter(tables.values())).pitch if tables else math.inf
    report = ScanReport(pitch=pitch)
    touched: dict[str, dict[int, Box]] = {fam.role: {} for fam in calc.families}
    for case in calc.central:
        for box, ev in _descend(case, pitch, frontier, report.pruned, use_mvf):
            report.central_cells += 1
            total_lo = ev.area.lo
            matches: list[tuple[str, list[int]]] = []
            dead = False
            for edge, role in case.flanks:
                table = tables[role]
                mask = calc.filters.get(role, 0)
                d, t1, t2 = _probe_edge(ev, edge)
                cands = [
                    i
                    for i in table.candidates(d, t1, t2)
                    if mask == 0 or (table.flags[i] & mask)
                ]
                if not cands:
                    dead = True
                    break
                total_lo += min(table.area_lb[i] for i in cands)
                matches.append((role, cands))
            if dead:
                report.refuted_no_collision += 1
                continue
            if total_lo > calc.cap:
                report.refuted_area += 1
                continue
            report.survivors.append(box)
            for role, cands in matches:
                table = tables[role]
                bucket = touched[role]
                for i in cands:
                    bucket.setdefault(i, table.boxes[i])
    report.touched = touched
    return report


# -- certificates and the round loop ------------------------------------------


@dataclass
class MitmCertificate:
    """Verdict of an assembly calc run, with per-round accounting."""

    name: str
    profile: str
    verified: bool
    cap: float
    schedule: tuple[float, ...]
    rounds: list[dict]
    survivors: list[dict]
    wall_time: float

    def to_json(self, indent: int | None = 2) -> str:
        payload = {
            "name": self.name,
            "profile": self.profile,
            "verified": self.verified,
            "cap": self.cap,
            "schedule": list(self.schedule),
            "rounds": self.rounds,
            "survivors": self.survivors,
            "wall_time": self.wall_time,
        }
        return json.dumps(payload, indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MitmCertificate":
        d = json.loads(text)
        return cls(
            name=d["name"],
            profile=d["profile"],
            verified=d["verified"],
            cap=d["cap"],
            schedule=tuple(d["schedule"]),
            rounds=d["rounds"],
            survivors=d["survivors"],
            wall_time=d["wall_time"],
        )


def run_calc(
    calc: "MitmCalc | str",
    profile: str = "desk",
    schedule: tuple[float, ...] | None = None,
    mem_cap: int = DEFAULT_MEM_CAP,
    use_mvf: bool = True,
    max_survivor_dump: int = 64,
    progress: Callable[[str], None] | None = None,
) -> MitmCertificate:
    """Run the full refine loop of one assembly calc."""
    if isinstance(calc, str):
        calc = build_calc(calc, profile=profile)
    sched = tuple(schedule if schedule is not None else calc.schedule)
    t0 = time.perf_counter()
    central_frontier: list[Box] | None = None
    flank_frontier: dict[str, list[Box] | None] = {
        fam.role: None for fam in calc.families
    }
    rounds: list[dict] = []
    survivors: list[Box] = []
    verified = False
    for pitch in sched:
        tables: dict[str, PeripheralTable] = {}
        build_counts: dict[str, Counter] = {}
        for fam in calc.families:
            cache_key = None
            if flank_frontier[fam.role] is None:
                cache_key = (fam, pitch, use_mvf, mem_cap)
                hit = _TABLE_CACHE.get(cache_key)
                if hit is not None:
                    tables[fam.role], build_counts[fam.role] = hit
                    continue
            counts: Counter = Counter()
            try:
                tables[fam.role] = build_table(
                    fam, pitch, frontier=flank_frontier[fam.role],
                    mem_cap=mem_cap, use_mvf=use_mvf, counts=counts,
                )
            except MemoryBudgetError as err:
                raise MemoryBudgetError(f"{calc.name}: {err}") from None
            build_counts[fam.role] = counts
            if cache_key is not None:
                _TABLE_CACHE[cache_key] = (tables[fam.role], counts)
        report = scan(calc, tables, frontier=central_frontier, use_mvf=use_mvf)
        rounds.append(
            {
                "pitch": pitch,
                "tables": {
                    role: {
                        "cells": t.n_cells,
                        "records": t.n_records,
                        "keys": t.n_keys,
                        "pruned": dict(sorted(build_counts[role].items())),
                    }
                    for role, t in tables.items()
                },
                "central_cells": report.central_cells,
                "refuted_no_collision": report.refuted_no_collision,
                "refuted_area": report.refuted_area,
                "central_pruned": dict(sorted(report.pruned.items())),
                "survivors": len(report.survivors),
            }
        )
        if progress is not None:
            progress(
                f"{calc.name} pitch={pitch}: "
                f"{report.central_cells} central cells, "
                f"{len(report.survivors)} survivors"
            )
        survivors = report.survivors
        if not survivors:
            verified = True
            break
        central_frontier = refine(survivors, pitch / 2)
        for fam in calc.families:
            carried = sorted(
                report.touched[fam.role].values(),
                key=lambda b: (b.chart, tuple(c.lo for c in b.coords)),
            )
            flank_frontier[fam.role] = refine(carried, pitch / 2)
    return MitmCertificate(
        name=calc.name,
        profile=calc.profile,
        verified=verified,
        cap=calc.cap,
        schedule=sched,
        rounds=rounds,
        survivors=[b.to_dict() for b in survivors[:max_survivor_dump]],
        wall_time=time.perf_counter() - t0,
    )


# -- calc registry ------------------------------------------------------------

_WEDGE_BOUNDS = ((0.0, rint.TWO_SIGMA.hi), (0.0, rint.TWO_PI_5.hi)) * 2
_PAIR_LABELS = {"A": "out", "B": "mid", "C": "free"}
# pair coords: (x, lam, d, ang, phi) — contact coordinate pair, then the
# free pentagon's distance from the contacted shared pentagon, the corner
# angle there, and its orientation.
_SIGMA_PIN = (rint.SIGMA.lo, rint.SIGMA.hi)
_LAM_LO_PIN = (0.0, 0.0)
_LAM_HI_PIN = (rint.TWO_PI_5.lo, rint.TWO_PI_5.hi)
_D_RANGE = (_EDGE_BOT, _EDGE_TOP)
_ANG_RANGE = (0.0, rint.PI_HALF.hi)
_PHI_RANGE = (0.0, rint.TWO_PI_5.hi)


def _wedge_centrals(
    tag: str, prunes: tuple[tuple, ...], flanks: tuple[tuple[str, str], ...]
) -> list[CentralCase]:
    return [
        CentralCase(
            tag=f"{tag}:{combo.name}",
            kind="wedge",
            combo=combo.name,
            bounds=_WEDGE_BOUNDS,
            prunes=prunes,
            flanks=flanks,
        )
        for combo in o2c.combos()
    ]


def _pair_central(
    tag: str, contact: str, x_pin, lam_pin,
    prunes: tuple[tuple, ...], flanks: tuple[tuple[str, str], ...],
) -> CentralCase:
    x_bounds = x_pin if x_pin is not None else (0.0, rint.TWO_SIGMA.hi)
    lam_bounds = lam_pin if lam_pin is not None else (0.0, rint.TWO_PI_5.hi)
    return CentralCase(
        tag=tag,
        kind="pair",
        contact=contact,
        label_map=_PAIR_LABELS,
        bounds=(x_bounds, lam_bounds, _D_RANGE, _ANG_RANGE, _PHI_RANGE),
        prunes=(("chiral",),) + prunes,
        flanks=flanks,
        signed_area=True,
        overlap_checks=(("A", "C"), ("B", "C")),
    )


def _mid_and_flush_cases(
    tag: str, extra: Callable[[str], tuple[tuple, ...]],
    flanks: tuple[tuple[str, str], ...],
) -> list[CentralCase]:
    """The primary-contact stances of the central outer pentagon.

    Midpoint-vertex contact in both roles (the shared pentagon's vertex
    at the midpoint of the outer one's edge, and vice versa), then the
    flush stance at both ends of its rotation range.
    """
    out = [
        _pair_central(
            f"{tag}:mid-rec", "receptor", _SIGMA_PIN, None, extra("mid"), flanks
        ),
        _pair_central(
            f"{tag}:mid-ptr", "pointer", _SIGMA_PIN, None, extra("mid"), flanks
        ),
        _pair_central(
            f"{tag}:flush-lo", "receptor", None, _LAM_LO_PIN, extra("flush"),
            flanks,
        ),
        _pair_central(
            f"{tag}:flush-hi", "receptor", None, _LAM_HI_PIN, extra("flush"),
            flanks,
        ),
    ]
    return out


_BASE_PRUNES: tuple[tuple, ...] = (("nonobtuse",), ("feasible",))


def _mate_family(cap_pad: float = 0.0) -> FlankFamily:
    return FlankFamily(
        role="mate",
        statement=(
            "flank triangle: outer pentagon in double contact, shared edge "
            "longest, area within the single-triangle cap"
        ),
        area_cap=(rint.A_CRIT + cap_pad).hi if cap_pad else rint.A_CRIT.hi,
    )


def _egress_family() -> FlankFamily:
    cap = rint.A_CRIT + Interval.point(rint.EPS_M) * 2
    return FlankFamily(
        role="egress",
        statement=(
            "egress-side flank: outer pentagon in double contact, shared "
            "edge at least 1.8 long, area at most the critical value plus "
            "twice the pair correction"
        ),
        area_cap=cap.hi,
        shared_floor=1.8,
        shared_longest=False,
    )


def _relaxed(profile: str, value: float, sign: int) -> float:
    """Move a threshold by the desk relaxation in the slack direction."""
    if profile == "desk":
        return value + sign * DESK_RELAX
    return value


def _cap(profile: str, base: Interval, relax: bool = True) -> float:
    cap = base.hi
    if relax and profile == "desk":
        cap = (base - DESK_RELAX).hi
    return cap


def _build_shared_short(profile: str) -> MitmCalc:
    """The shared edge of a mutually subcritical attached pair is short.

    Counterexample domain: flank attached across the central triangle's
    A-C edge, both nonobtuse, flank subcritical with the shared edge its
    longest, total area within twice the critical value, and the shared
    edge at least F long while the central triangle has another edge of
    length at least F (F = 1.8, desk 1.85).  Cases: central outer
    pentagon in double contact, or in a primary-contact stance with the
    stopping edge pinned at F.
    """
    F = _relaxed(profile, 1.8, +1)
    f2lo, f2hi = _sq_lo(F), _sq_hi(F)
    flanks = (("ac", "mate"),)
    shared_min: tuple = ("qmin", "ac", f2lo)
    central = _wedge_centrals(
        "o2c",
        _BASE_PRUNES + (shared_min, ("maxmin", "ab", "bc", f2lo)),
        flanks,
    )

    def extra(stance: str) -> tuple[tuple, ...]:
        pin_edge = "ab" if stance == "mid" else "bc"
        return _BASE_PRUNES + (shared_min, ("qpin", pin_edge, f2lo, f2hi))

    central += _mid_and_flush_cases("stop", extra, flanks)
    return MitmCalc(
        name="NKQNXUN",
        statement=(
            "attached subcritical pair within twice the critical area: the "
            f"shared edge is shorter than {F}"
        ),
        profile=profile,
        central=tuple(central),
        families=(_mate_family(),),
        filters={"mate": 0},
        cap=_cap(profile, rint.A_CRIT * 2, relax=False),
        schedule=DESK_SCHEDULE if profile == "desk" else PAPER_SCHEDULE,
        case_notes=(
            "central stances: double contact; midpoint-vertex contact with "
            "the contact edge pinned at the stopping length; flush contact "
            "with the far edge pinned at the stopping length (both flush "
            "orientations)"
        ),
    )


def _build_has_long_edge(profile: str) -> MitmCalc:
    """The target of a subcritical attachment has an edge longer than E.

    Counterexample domain: as above but with every central edge at most E
    (E = 1.8, desk 1.75).  Primary-contact stances stop at a two-longest
    tie instead of a pinned length, one case per tie pair.
    """
    E = _relaxed(profile, 1.8, -1)
    e2hi = _sq_hi(E)
    flanks = (("ac", "mate"),)
    edge_cap: tuple = ("qmax_all", e2hi)
    central = _wedge_centrals("o2c", _BASE_PRUNES + (edge_cap,), flanks)
    ties = (("ab", "bc"), ("ab", "ac"), ("bc", "ac"))
    for stance, contact, x_pin, lam_pin in (
        ("mid-rec", "receptor", _SIGMA_PIN, None),
        ("mid-ptr", "pointer", _SIGMA_PIN, None),
        ("flush-lo", "receptor", None, _LAM_LO_PIN),
        ("flush-hi", "receptor", None, _LAM_HI_PIN),
    ):
        for e1, e2 in ties:
            third = next(e for e in ("ab", "bc", "ac") if e not in (e1, e2))
            central.append(
                _pair_central(
                    f"{stance}:tie-{e1}-{e2}", contact, x_pin, lam_pin,
                    _BASE_PRUNES
                    + (edge_cap, ("iso", e1, e2), ("third_le", third, e1)),
                    flanks,
                )
            )
    return MitmCalc(
        name="RWWHLQT",
        statement=(
            "attached subcritical pair within twice the critical area: the "
            f"target triangle has an edge longer than {E}"
        ),
        profile=profile,
        central=tuple(central),
        families=(_mate_family(),),
        filters={"mate": 0},
        cap=_cap(profile, rint.A_CRIT * 2, relax=False),
        schedule=DESK_SCHEDULE if profile == "desk" else PAPER_SCHEDULE,
        case_notes=(
            "central stances: double contact; midpoint-vertex or flush "
            "contact deformed until two longest edges tie (one case per "
            "tie pair)"
        ),
    )


def _build_pair_area(profile: str) -> MitmCalc:
    """An attached pair with egressive target covers almost twice a_crit.

    Counterexample domain: central triangle in double contact with its
    longest edge away from the shared one, flank long-isosceles or with
    its shared pentagons touching, total area at most the cap.  The two
    previous facts prune the central boxes (shared edge short, some other
    edge long).
    """
    F_hi = _relaxed(profile, 1.8, +1)  # shared edge shorter than this
    E_lo = _relaxed(profile, 1.8, -1)  # longest edge beyond this
    central = _wedge_centrals(
        "o2c",
        _BASE_PRUNES
        + (
            ("q_not_longest", "ac"),
            ("qmax", "ac", _sq_hi(F_hi)),
            ("maxmin", "ab", "bc", _sq_lo(E_lo)),
        ),
        (("ac", "mate"),),
    )
    cap = rint.A_CRIT * 2 - Interval.point(rint.EPS_M)
    return MitmCalc(
        name="BXZBPJW",
        statement=(
            "attached subcritical pair with egressive target: total area "
            "reaches twice the critical value minus the pair correction"
        ),
        profile=profile,
        central=tuple(central),
        families=(_mate_family(),),
        filters={"mate": FLAG_LONG_AB | FLAG_LONG_BC | FLAG_TRIPLE},
        cap=_cap(profile, cap),
        schedule=DESK_SCHEDULE if profile == "desk" else PAPER_SCHEDULE,
        case_notes=(
            "flank squeezed until long-isosceles (either tie) or until its "
            "shared pentagons touch; central always reduces to double "
            "contact"
        ),
    )


def _build_mutual_not_iso(profile: str) -> MitmCalc:
    """A mutually attached pair's flank is not both long-isosceles and O2C.

    Counterexample domain: both triangles in double contact, mutually
    attached across the shared edge (it is the longest edge of both),
    flank long-isosceles, total area within twice the critical value.
    """
    central = _wedge_centrals(
        "o2c",
        _BASE_PRUNES + (("q_longest", "ac"),),
        (("ac", "mate"),),
    )
    return MitmCalc(
        name="KUGAKIK",
        statement=(
            "mutually attached pair within twice the critical area: the "
            "attaching triangle is not both long-isosceles and in outer "
            "double contact"
        ),
        profile=profile,
        central=tuple(central),
        families=(_mate_family(),),
        filters={"mate": FLAG_LONG_AB | FLAG_LONG_BC},
        cap=_cap(profile, rint.A_CRIT * 2),
        schedule=DESK_SCHEDULE if profile == "desk" else PAPER_SCHEDULE,
        case_notes="single central stance: double contact on both sides",
    )


def _build_triple_area(profile: str) -> MitmCalc:
    """Pair plus egress triangle: total area beyond three a_crit.

    Six central cases: the central triangle has two pentagons in contact
    (vertex-into-edge), and the assignment of its three edges to the
    attached flank and the egress flank ranges over the six ordered
    choices.
    """
    cap = rint.A_CRIT * 3 + Interval.point(rint.EPS_M)
    edges = ("ab", "bc", "ac")
    central = []
    for mate_edge in edges:
        for egress_edge in edges:
            if egress_edge == mate_edge:
                continue
            central.append(
                _pair_central(
                    f"perm:{mate_edge}-{egress_edge}", "receptor", None, None,
                    _BASE_PRUNES + (("q_longest", egress_edge),),
                    ((mate_edge, "mate"), (egress_edge, "egress")),
                )
            )
    return MitmCalc(
        name="JQMRXTH",
        statement=(
            "attached subcritical pair plus the egress-side neighbour: "
            "total area beyond three times the critical value plus the "
            "pair correction"
        ),
        profile=profile,
        central=tuple(central),
        families=(_mate_family(), _egress_family()),
        filters={"mate": 0, "egress": 0},
        cap=_cap(profile, cap),
        schedule=PAPER_SCHEDULE,
        case_notes=(
            "after squeezing, two central pentagons touch; six cases for "
            "the ordered assignment of flank edges"
        ),
    )


def _build_not_large(profile: str) -> MitmCalc:
    """A long non-shared central edge with a not-large incidence offset
    forces the pair total beyond two a_crit plus the pair correction.

    Five central cases: both triangles in double contact, or a
    vertex-into-edge contact with the long edge pinned and the shared
    edge ranging over the two non-contact choices.
    """
    F = _relaxed(profile, 1.8, -1)
    f2lo = _sq_lo(F)
    f2hi = _sq_hi(F)
    cap = rint.A_CRIT * 2 + Interval.point(rint.EPS_M)
    central = _wedge_centrals(
        "o2c",
        _BASE_PRUNES + (("exists_long_notlarge", ("ab", "bc"), f2lo),),
        (("ac", "mate"),),
    )
    for shared in ("ab", "bc"):
        for long_edge in ("ab", "bc", "ac"):
            if long_edge == shared:
                continue
            central.append(
                _pair_central(
                    f"contact:{shared}-long-{long_edge}", "receptor", None,
                    None,
                    _BASE_PRUNES
                    + (
                        ("qpin", long_edge, f2lo, f2hi),
                        ("q_longest", long_edge),
                        ("notlarge", long_edge),
                    ),
                    ((shared, "mate"),),
                )
            )
    return MitmCalc(
        name="FHBGHHY",
        statement=(
            "attachment with a long not-large non-shared edge: total area "
            "beyond twice the critical value plus the pair correction"
        ),
        profile=profile,
        central=tuple(central),
        families=(_mate_family(),),
        filters={"mate": 0},
        cap=_cap(profile, cap),
        schedule=PAPER_SCHEDULE,
        case_notes=(
            "five stances: double contact on both sides, or a "
            "vertex-into-edge contact with the long edge pinned (two "
            "shared-edge choices times two long-edge choices)"
        ),
    )


def _build_three_attach(profile: str) -> MitmCalc:
    """Two subcritical triangles attached to one target: beyond 3 a_crit."""
    cap = rint.A_CRIT * 3 + Interval.point(rint.EPS_M)
    central = []
    edges = ("ab", "bc", "ac")
    for free_edge in edges:
        taken = tuple(e for e in edges if e != free_edge)
        central.append(
            _pair_central(
                f"contact:free-{free_edge}", "receptor", None, None,
                _BASE_PRUNES,
                ((taken[0], "mate"), (taken[1], "mate")),
            )
        )
    central.append(
        CentralCase(
            tag="no-contact",
            kind="free",
            bounds=(
                _D_RANGE, _D_RANGE, _ANG_RANGE,
                _PHI_RANGE, _PHI_RANGE, _PHI_RANGE,
            ),
            prunes=_BASE_PRUNES + (("chiral",),),
            flanks=(("ab", "mate"), ("bc", "mate")),
            signed_area=True,
            overlap_checks=(("A", "B"), ("B", "C"), ("A", "C")),
        )
    )
    return MitmCalc(
        name="HUQEJAT",
        statement=(
            "two subcritical triangles attached to a common target: total "
            "area beyond three times the critical value plus the pair "
            "correction"
        ),
        profile=profile,
        central=tuple(central),
        families=(_mate_family(),),
        filters={"mate": 0},
        cap=_cap(profile, cap),
        schedule=PAPER_SCHEDULE,
        case_notes=(
            "four stances: two central pentagons touch (three shared-edge "
            "assignments), or no contact with both flanks squeezed to "
            "long-isosceles"
        ),
    )


def _build_four_attach(profile: str) -> MitmCalc:
    """Three subcritical triangles attached to one target: beyond 4 a_crit."""
    cap = rint.A_CRIT * 4
    central = (
        CentralCase(
            tag="s3",
            kind="free",
            bounds=(
                _D_RANGE, _D_RANGE, _ANG_RANGE,
                _PHI_RANGE, _PHI_RANGE, _PHI_RANGE,
            ),
            prunes=_BASE_PRUNES
            + (("chiral",), ("order", "ab", "bc"), ("order", "bc", "ac")),
            flanks=(("ab", "mate"), ("bc", "mate"), ("ac", "mate")),
            signed_area=True,
            overlap_checks=(("A", "B"), ("B", "C"), ("A", "C")),
        ),
    )
    return MitmCalc(
        name="QPJDYDB",
        statement=(
            "three subcritical triangles attached to a common target: "
            "total area beyond four times the critical value"
        ),
        profile=profile,
        central=central,
        families=(_mate_family(),),
        filters={"mate": 0},
        cap=_cap(profile, cap, relax=False),
        schedule=PAPER_SCHEDULE,
        case_notes=(
            "single stance with the edge ordering fixed as a symmetry "
            "reduction; all three edges carry flanks"
        ),
    )


_BUILDERS: dict[str, Callable[[str], MitmCalc]] = {
    "NKQNXUN": _build_shared_short,
    "RWWHLQT": _build_has_long_edge,
    "BXZBPJW": _build_pair_area,
    "KUGAKIK": _build_mutual_not_iso,
    "JQMRXTH": _build_triple_area,
    "FHBGHHY": _build_not_large,
    "HUQEJAT": _build_three_attach,
    "QPJDYDB": _build_four_attach,
}

MITM_CALC_NAMES = tuple(_BUILDERS)
#: the four calcs covered by the quick profile's acceptance run
DESK_CALC_NAMES = ("NKQNXUN", "RWWHLQT", "BXZBPJW", "KUGAKIK")


def build_calc(name: str, profile: str = "desk") -> MitmCalc:
    if profile not in ("desk", "paper"):
        raise ValueError(f"unknown profile {profile!r}")
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown assembly calc {name!r}") from None
    return builder(profile)
