"""Interval branch-and-bound engine and the desk-calculation registry.

Every calculation is stated in negated-conclusion form: the hypotheses
and the negation of the claim together make a constraint system, and the
engine certifies that system empty over a covering box by recursive
bisection.  A box is resolved when some constraint is *certainly*
violated on it (an out-of-domain prune fires) or, for calculations that
keep the claim as an explicit goal, when the goal inequality *certainly*
holds on it.  Boxes that resolve neither way are bisected along the
widest scaled dimension; a box already at atom width (or depth/cell
budget) lands in the certificate's failure list, so an unverified
certificate is a resumable frontier, never a silent pass.

Soundness rests on enclosure containment only: evaluation errors (an
indeterminate chart closure, an interval operation that cannot commit)
are treated as "cannot decide, split".  Certificates are deterministic
for a fixed spec and budget — traversal order, splitting points and all
counters are reproducible; only ``wall_time`` varies between runs.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from . import charts, jets, o2c, rint
from .charts import ChartIndeterminate
from .numerics import JET1, RIG, Num, as_interval
from .pentgeo import pair_feasible, v_cross, v_dot, v_sub
from .rint import Interval, RintError

#: angle dimensions are scaled so a full incidence range (2*pi/5) weighs
#: the same as a full edge-coordinate range (2*sigma)
ANGLE_SCALE = rint.TWO_SIGMA.mid / rint.TWO_PI_5.mid

_EVAL_ERRORS = (RintError, ChartIndeterminate, ZeroDivisionError)


# -- engine types ------------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    """Resource limits for one verification run.

    ``atom`` is the scaled width below which a box is no longer split;
    ``max_cells`` caps the number of boxes examined per worker task and
    turns the untouched remainder into resumable failures.
    """

    atom: float = 1e-6
    max_depth: int = 96
    threads: int = 1
    max_cells: int | None = None

    def to_dict(self) -> dict:
        return {
            "atom": self.atom,
            "max_depth": self.max_depth,
            "threads": self.threads,
            "max_cells": self.max_cells,
        }


@dataclass(frozen=True)
class Box:
    """A coordinate box tagged with the sub-case it belongs to."""

    coords: tuple[Interval, ...]
    depth: int = 0
    chart: str = ""

    def to_dict(self) -> dict:
        return {
            "chart": self.chart,
            "lo": [iv.lo for iv in self.coords],
            "hi": [iv.hi for iv in self.coords],
            "depth": self.depth,
        }

    @staticmethod
    def from_dict(d: dict) -> "Box":
        coords = tuple(Interval(l, h) for l, h in zip(d["lo"], d["hi"]))
        return Box(coords, d["depth"], d["chart"])


@dataclass(frozen=True)
class CaseSpec:
    """One sub-case: a covering box plus its evaluation and constraints.

    ``evaluate`` maps a coordinate box to a measurement object;
    ``prunes`` are (label, predicate) out-of-domain tests that return
    True only when the box certainly violates the labelled constraint;
    ``goal`` (optional) is a (label, predicate) pair that returns True
    only when the claimed inequality certainly holds on the whole box.
    Goal-free cases certify emptiness: every box must die by a prune.
    """

    chart: str
    lo: tuple[float, ...]
    hi: tuple[float, ...]
    scales: tuple[float, ...]
    evaluate: Callable[[tuple[Interval, ...]], Any]
    prunes: tuple[tuple[str, Callable[[Any], bool]], ...]
    goal: tuple[str, Callable[[Any], bool]] | None = None

    def root_box(self) -> Box:
        coords = tuple(Interval(l, h) for l, h in zip(self.lo, self.hi))
        return Box(coords, 0, self.chart)


@dataclass(frozen=True)
class CalcSpec:
    """A named calculation: a statement and the sub-cases covering it."""

    name: str
    statement: str
    cases: tuple[CaseSpec, ...]
    case_splits: str = ""

    def case_for(self, chart: str) -> CaseSpec:
        for c in self.cases:
            if c.chart == chart:
                return c
        raise KeyError(f"{self.name}: no sub-case tagged {chart!r}")


@dataclass
class Certificate:
    """Outcome of one verification run; ``verified`` iff no failures."""

    name: str
    verified: bool
    cells_processed: int
    max_depth_reached: int
    epsilon_final: float
    wall_time: float
    failures: list[dict] = field(default_factory=list)
    prune_counts: dict[str, int] = field(default_factory=dict)
    budget: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "verified": self.verified,
                "cells_processed": self.cells_processed,
                "max_depth_reached": self.max_depth_reached,
                "epsilon_final": self.epsilon_final,
                "wall_time": self.wall_time,
                "failures": self.failures,
                "prune_counts": self.prune_counts,
                "budget": self.budget,
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "Certificate":
        d = json.loads(text)
        return Certificate(
            name=d["name"],
            verified=d["verified"],
            cells_processed=d["cells_processed"],
            max_depth_reached=d["max_depth_reached"],
            epsilon_final=d["epsilon_final"],
            wall_time=d["wall_time"],
            failures=d["failures"],
            prune_counts=d["prune_counts"],
            budget=d["budget"],
        )


# -- bisection ---------------------------------------------------------------


def _scaled_widths(box: Box, scales) -> list[float]:
    return [(iv.hi - iv.lo) * s for iv, s in zip(box.coords, scales)]


def bisect(box: Box, scales=None) -> tuple[Box, Box]:
    """Split along the widest scaled dimension at the interval midpoint.

    The two children cover the parent exactly (they share the midpoint).
    Raises when no dimension can be split (already at roundoff width).
    """
    if scales is None:
        scales = (1.0,) * len(box.coords)
    widths = _scaled_widths(box, scales)
    d = widths.index(max(widths))
    iv = box.coords[d]
    m = iv.mid
    if not (iv.lo < m < iv.hi):
        raise ValueError("bisect: box at roundoff width")
    lo_half = box.coords[:d] + (Interval(iv.lo, m),) + box.coords[d + 1:]
    hi_half = box.coords[:d] + (Interval(m, iv.hi),) + box.coords[d + 1:]
    return (
        Box(lo_half, box.depth + 1, box.chart),
        Box(hi_half, box.depth + 1, box.chart),
    )


# -- the subdivision loop -----------------------------------------------------


def _apply(case: CaseSpec, view) -> tuple[str, str] | None:
    for label, pred in case.prunes:
        try:
            if pred(view):
                return "pruned", label
        except _EVAL_ERRORS:
            continue
    if case.goal is not None:
        try:
            if case.goal[1](view):
                return "verified", "goal:" + case.goal[0]
        except _EVAL_ERRORS:
            pass
    return None


def _classify(case: CaseSpec, coords) -> tuple[str, str]:
    """('pruned'|'verified'|'split', label) verdict for one box.

    Two evaluation phases: a direct interval pass first (cheap, and the
    only one that can run the separating-axis overlap test), then — only
    if that cannot resolve the box — a mean-value-form pass whose
    enclosures tighten quadratically with the box width.
    """
    try:
        view = case.evaluate(coords, False)
    except _EVAL_ERRORS:
        return "split", ""
    verdict = _apply(case, view)
    if verdict is not None:
        return verdict
    try:
        tight_view = case.evaluate(coords, True)
    except _EVAL_ERRORS:
        return "split", ""
    verdict = _apply(case, tight_view)
    if verdict is not None:
        return verdict
    return "split", ""


def _run_case(case: CaseSpec, boxes: list[Box], budget: Budget):
    """Exhaust a stack of boxes; deterministic depth-first traversal."""
    stack = list(reversed(boxes))
    cells = 0
    maxd = 0
    counts: Counter = Counter()
    fails: list[Box] = []
    while stack:
        box = stack.pop()
        if budget.max_cells is not None and cells >= budget.max_cells:
            counts["budget"] += 1
            fails.append(box)
            continue
        cells += 1
        if box.depth > maxd:
            maxd = box.depth
        status, label = _classify(case, box.coords)
        if status != "split":
            counts[label] += 1
            continue
        widths = _scaled_widths(box, case.scales)
        wmax = max(widths)
        if wmax <= budget.atom or box.depth >= budget.max_depth:
            counts["atom" if wmax <= budget.atom else "depth"] += 1
            fails.append(box)
            continue
        d = widths.index(wmax)
        iv = box.coords[d]
        m = iv.mid
        if not (iv.lo < m < iv.hi):
            counts["atom"] += 1
            fails.append(box)
            continue
        lo_half = box.coords[:d] + (Interval(iv.lo, m),) + box.coords[d + 1:]
        hi_half = box.coords[:d] + (Interval(m, iv.hi),) + box.coords[d + 1:]
        stack.append(Box(hi_half, box.depth + 1, box.chart))
        stack.append(Box(lo_half, box.depth + 1, box.chart))
    return cells, maxd, counts, fails


def _run_task(args):
    """Worker entry: everything crossing the process boundary is plain data."""
    calc_name, case_idx, raw_boxes, budget_tuple = args
    calc = CALCS[calc_name]
    case = calc.cases[case_idx]
    budget = Budget(*budget_tuple)
    boxes = [Box.from_dict(d) for d in raw_boxes]
    cells, maxd, counts, fails = _run_case(case, boxes, budget)
    return cells, maxd, dict(counts), [b.to_dict() for b in fails]


def _pre_split(case: CaseSpec, budget: Budget, want: int) -> list[Box]:
    """Deterministically cut the root box into at least ``want`` pieces."""
    boxes = [case.root_box()]
    while len(boxes) < want:
        widths = [max(_scaled_widths(b, case.scales)) for b in boxes]
        i = widths.index(max(widths))
        if widths[i] <= budget.atom:
            break
        try:
            h1, h2 = bisect(boxes[i], case.scales)
        except ValueError:
            break
        boxes[i:i + 1] = [h1, h2]
    return boxes


def verify(spec: CalcSpec, budget: Budget = Budget(),
           frontier: list[dict] | None = None) -> Certificate:
    """Run a calculation to a certificate under the given budget.

    ``frontier`` restarts from a previous certificate's failure list
    instead of the root boxes.  With ``threads > 1`` the root boxes are
    deterministically pre-split and distributed over worker processes;
    parallel runs require ``spec`` to be the registered calculation of
    that name (workers re-import the registry).
    """
    t0 = time.perf_counter()
    case_boxes: dict[int, list[Box]] = {}
    if frontier is None:
        for i in range(len(spec.cases)):
            case_boxes[i] = [spec.cases[i].root_box()]
    else:
        tag_to_idx = {c.chart: i for i, c in enumerate(spec.cases)}
        for d in frontier:
            idx = tag_to_idx.get(d["chart"])
            if idx is None:
                raise ValueError(
                    f"{spec.name}: frontier box tagged {d['chart']!r} "
                    "matches no sub-case")
            case_boxes.setdefault(idx, []).append(Box.from_dict(d))

    parallel = budget.threads > 1
    if parallel and CALCS.get(spec.name) is not spec:
        raise ValueError(
            "parallel verification needs a registered calculation "
            f"(got an unregistered spec named {spec.name!r})")

    if parallel:
        tasks = []
        for idx in sorted(case_boxes):
            case = spec.cases[idx]
            boxes = case_boxes[idx]
            if frontier is None:
                boxes = _pre_split(case, budget, budget.threads * 4)
            cap = budget.max_cells
            if cap is not None:
                cap = max(1, -(-cap // len(boxes)))
            for b in boxes:
                tasks.append((spec.name, idx, [b.to_dict()],
                              (budget.atom, budget.max_depth, 1, cap)))
        with ProcessPoolExecutor(max_workers=budget.threads) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = []
        sub = Budget(budget.atom, budget.max_depth, 1, budget.max_cells)
        for idx in sorted(case_boxes):
            cells, maxd, counts, fails = _run_case(
                spec.cases[idx], case_boxes[idx], sub)
            results.append((cells, maxd, counts,
                            [b.to_dict() for b in fails]))

    cells = 0
    maxd = 0
    counts: Counter = Counter()
    failures: list[dict] = []
    for (r_cells, r_maxd, r_counts, r_fails) in results:
        cells += r_cells
        maxd = max(maxd, r_maxd)
        counts.update(r_counts)
        failures.extend(r_fails)

    scales_by_tag = {c.chart: c.scales for c in spec.cases}
    eps = budget.atom
    for d in failures:
        scales = scales_by_tag[d["chart"]]
        w = max((h - l) * s for l, h, s in zip(d["lo"], d["hi"], scales))
        eps = max(eps, w)

    return Certificate(
        name=spec.name,
        verified=not failures,
        cells_processed=cells,
        max_depth_reached=maxd,
        epsilon_final=eps,
        wall_time=time.perf_counter() - t0,
        failures=failures,
        prune_counts=dict(sorted(counts.items())),
        budget=budget.to_dict(),
    )


def verify_calc(name: str, budget: Budget = Budget(),
                frontier: list[dict] | None = None) -> Certificate:
    """Verify a registered calculation by name (accepts prime aliases)."""
    return verify(CALCS[canonical_name(name)], budget, frontier)


def canonical_name(name: str) -> str:
    key = _ALIASES.get(name, name)
    if key not in CALCS:
        raise KeyError(name)
    return key


# -- crossing-bound slope ------------------------------------------------------


def slope_sigma(data: o2c.WedgeData, side: str, nm: Num = RIG):
    """|slope| of one contact line measured against the outer-center axis.

    ``side`` is ``"A"`` or ``"C"``: which outer pentagon's contact line
    to take.  The axis is the segment between the two outer centers, so
    this is the slope entering the crossing bound.  Raises when the line
    cannot be bounded away from perpendicular to the axis (the slope is
    unbounded there; the division-free margin form remains usable).
    """
    w = data.wedge
    if side == "A":
        edge = w.edge1
    elif side == "C":
        edge = w.edge2
    else:
        raise ValueError(f"side must be 'A' or 'C', got {side!r}")
    axis = v_sub(w.c.center, w.a.center)
    return o2c.slope_sigma(edge, axis, nm)


# -- measurement views ----------------------------------------------------------
#
# Prune and goal predicates consume small "views": a fixed set of interval
# scalars.  The same view is produced two ways — directly (phase one) or in
# mean-value form (phase two), where each scalar is re-enclosed as
#     f(m) + sum_i (d f / d x_i)(box) * (x_i - m_i)        intersected with
# the direct enclosure; the excess width shrinks quadratically with the box.

_EDGE_AB = frozenset(("A", "B"))
_EDGE_AC = frozenset(("A", "C"))
_EDGE_BC = frozenset(("B", "C"))


class ChartView:
    """Tightenable chart-triangle scalars plus the domain margins."""

    __slots__ = ("area", "edges", "dots", "margins")

    def __init__(self, area, edges, dots, margins):
        self.area = area
        self.edges = edges
        self.dots = dots
        self.margins = margins

    def edge(self, x: str, y: str):
        return self.edges[frozenset((x, y))]


class WedgeView:
    """Tightenable wedge scalars; ``wedge`` carries poses for the
    separating-axis test and is absent in the mean-value phase."""

    __slots__ = ("q_ab", "q_bc", "q_ac", "cross2", "dots",
                 "m1", "m2", "s1", "c1", "s2", "c2", "wedge")

    def __init__(self, q_ab, q_bc, q_ac, cross2, dots, m1, m2,
                 s1, c1, s2, c2, wedge):
        self.q_ab = q_ab
        self.q_bc = q_bc
        self.q_ac = q_ac
        self.cross2 = cross2
        self.dots = dots
        self.m1 = m1
        self.m2 = m2
        self.s1 = s1
        self.c1 = c1
        self.s2 = s2
        self.c2 = c2
        self.wedge = wedge


def _chart_scalars(td) -> list:
    pa = td.poses["A"].center
    pb = td.poses["B"].center
    pc = td.poses["C"].center
    ab = v_sub(pb, pa)
    ac = v_sub(pc, pa)
    bc = v_sub(pc, pb)
    ed = td.measures.edges
    return [
        td.area,
        ed[_EDGE_AB], ed[_EDGE_AC], ed[_EDGE_BC],
        v_dot(ab, ac),
        v_dot((-ab[0], -ab[1]), bc),
        v_dot(v_sub(pa, pc), v_sub(pb, pc)),
        *td.margins,
    ]


def _chart_view_from(scalars) -> ChartView:
    area, eab, eac, ebc, da, db, dc = scalars[:7]
    edges = {_EDGE_AB: eab, _EDGE_AC: eac, _EDGE_BC: ebc}
    return ChartView(area, edges, (da, db, dc), scalars[7:])


def _wedge_scalars(data) -> list:
    w = data.wedge
    ac = v_sub(w.c.center, w.a.center)
    m1, m2 = o2c.blocking_margins(data)
    return [
        data.q_ab, data.q_bc, data.q_ac, data.cross2,
        data.dots["A"], data.dots["B"], data.dots["C"],
        m1, m2,
        v_cross(ac, w.edge1[1]), v_dot(ac, w.edge1[1]),
        v_cross(ac, w.edge2[1]), v_dot(ac, w.edge2[1]),
    ]


def _wedge_view_from(scalars, wedge) -> WedgeView:
    q_ab, q_bc, q_ac, cross2, da, db, dc, m1, m2, s1, c1, s2, c2 = scalars
    return WedgeView(q_ab, q_bc, q_ac, cross2, (da, db, dc), m1, m2,
                     s1, c1, s2, c2, wedge)


def _mean_value_scalars(fn, coords) -> list:
    """Mean-value-form enclosures of ``fn``'s scalar list over the box.

    One centered pass at the box midpoint plus one directional-jet pass
    per non-degenerate coordinate; the result is intersected with the
    direct enclosure the jet passes carry along.
    """
    mids = tuple(Interval.point(c.mid) for c in coords)
    centered = [as_interval(v) for v in fn(mids, RIG)]
    direct = None
    for i, c in enumerate(coords):
        if not c.hi > c.lo:
            continue
        delta = c - Interval.point(c.mid)
        jet_coords = tuple(
            jets.Jet1(cc, 1.0 if j == i else 0.0)
            for j, cc in enumerate(coords)
        )
        vals = fn(jet_coords, JET1)
        if direct is None:
            direct = [as_interval(v) for v in vals]
        for k, v in enumerate(vals):
            if isinstance(v, jets.Jet1):
                centered[k] = centered[k] + v.d1 * delta
    if direct is not None:
        centered = [c.intersect(d) for c, d in zip(centered, direct)]
    return centered


# -- shared constraint predicates ---------------------------------------------

_I_HALF = Interval.point(0.5)
_I_172 = Interval.point(1.72)
_Q_172 = _I_172 * _I_172
_I_DELTA_FLOOR = Interval.point(1.5)
_A_MIN = Interval.point(rint.A_MIN)
_SQUEEZE_CAP = rint.A_CRIT + rint.EPS_N
_TWO_KAPPA = rint.KAPPA * 2
_Q_2K = _TWO_KAPPA * _TWO_KAPPA


def _p_domain(v: ChartView) -> bool:
    """Certainly outside the chart's own domain (some margin < 0)."""
    return any(m.certainly_lt(0.0) for m in v.margins)


def _p_obtuse(v) -> bool:
    """Center triangle certainly has an obtuse corner (negative dot)."""
    return any(d.certainly_lt(0.0) for d in v.dots)


def _p_edges_over_172(v: ChartView) -> bool:
    """Some center edge is certainly longer than 1.72."""
    return any(e.certainly_gt(_I_172) for e in v.edges.values())


def _g_area_gt(cap):
    def goal(v: ChartView) -> bool:
        return v.area.certainly_gt(cap)
    return goal


def _g_edge_dominates(win: tuple[str, str], lose: tuple[str, str]):
    def goal(v: ChartView) -> bool:
        return (v.edge(*win) - v.edge(*lose)).certainly_gt(0.0)
    return goal


def _w_area(v: WedgeView):
    return abs(v.cross2) * _I_HALF


def _wp_edges_over_172(v: WedgeView) -> bool:
    return any(
        q.certainly_gt(_Q_172) for q in (v.q_ab, v.q_bc, v.q_ac))


def _wp_area_over(cap):
    def pred(v: WedgeView) -> bool:
        return _w_area(v).certainly_gt(cap)
    return pred


def _wp_overlap(v: WedgeView) -> bool:
    if v.wedge is None:
        return False  # the separating-axis verdict is phase-one only
    if v.q_ac.certainly_lt(_Q_2K):
        return True
    if v.q_ac.certainly_gt(4.0):
        return False
    return pair_feasible(v.wedge.a, v.wedge.c, RIG) == "overlap"


def _wp_eq_gap(attr: str):
    """The required edge equality q_ab == q_<attr> certainly fails."""
    def pred(v: WedgeView) -> bool:
        return not (v.q_ab - getattr(v, attr)).contains(0.0)
    return pred


def _wp_third_over_ab(attr: str):
    """The remaining edge is certainly longer than the tied pair."""
    def pred(v: WedgeView) -> bool:
        return getattr(v, attr).certainly_gt(v.q_ab)
    return pred


def _wp_ac_not_longest(v: WedgeView) -> bool:
    return v.q_ac.certainly_lt(v.q_ab) or v.q_ac.certainly_lt(v.q_bc)


def _wp_unblocked(v: WedgeView) -> bool:
    return v.m1.certainly_lt(0.0) or v.m2.certainly_lt(0.0)


def _g_squeeze(v: WedgeView) -> bool:
    s1 = abs(v.s1)
    c1 = abs(v.c1)
    s2 = abs(v.s2)
    c2 = abs(v.c2)
    rhs = (c1 * s2 + c2 * s1) * abs(v.cross2)
    return (rhs - v.q_ac * (s1 * s2)).certainly_gt(0.0)


def _g_wedge_area_gt(cap):
    def goal(v: WedgeView) -> bool:
        return _w_area(v).certainly_gt(cap)
    return goal


# -- case builders ------------------------------------------------------------

_X_HI = rint.TWO_SIGMA.hi
_LAM_HI = rint.TWO_PI_5.hi
_LAM_PIN_LO = (0.0, 0.0)
_LAM_PIN_HI = (rint.TWO_PI_5.lo, rint.TWO_PI_5.hi)
_X_PIN_MID = (rint.SIGMA.lo, rint.SIGMA.hi)


def _eval_chart(kind):
    def scalars_fn(cs, nm):
        return _chart_scalars(charts.triangle_data(
            kind, cs, nm, with_thetas=False, with_arcs=False))

    def evaluate(coords, tight):
        if not tight:
            return _chart_view_from(scalars_fn(coords, RIG))
        return _chart_view_from(_mean_value_scalars(scalars_fn, coords))
    return evaluate


def _eval_wedge(combo_name):
    def scalars_fn(cs, nm):
        return _wedge_scalars(o2c.wedge_data(
            o2c.combo_named(combo_name), cs, nm))

    def evaluate(coords, tight):
        if not tight:
            data = o2c.wedge_data(o2c.combo_named(combo_name), coords, RIG)
            return _wedge_view_from(_wedge_scalars(data), data.wedge)
        return _wedge_view_from(
            _mean_value_scalars(scalars_fn, coords), None)
    return evaluate


def _chart_case(kind: str, prunes, goal, overrides: dict | None = None,
                tag: str | None = None) -> CaseSpec:
    spec = charts.CHARTS[kind]
    lo, hi, scales = [], [], []
    for name, (l, h) in zip(spec.coord_names, spec.domain):
        if overrides and name in overrides:
            l, h = overrides[name]
        # widen by one ulp so roundoff in the declared bounds can never
        # shave the true domain; the margin prunes trim the excess
        lo.append(min(l, math.nextafter(l, -math.inf)))
        hi.append(math.nextafter(h, math.inf))
        scales.append(1.0 if name.startswith("x") else ANGLE_SCALE)
    return CaseSpec(
        chart=tag or f"chart:{kind}",
        lo=tuple(lo),
        hi=tuple(hi),
        scales=tuple(scales),
        evaluate=_eval_chart(kind),
        prunes=tuple(prunes),
        goal=goal,
    )


def _wedge_case(combo_name: str, prunes, goal, tag: str,
                x1=(0.0, _X_HI), lam1=(0.0, _LAM_HI),
                x2=(0.0, _X_HI), lam2=(0.0, _LAM_HI)) -> CaseSpec:
    bounds = (x1, lam1, x2, lam2)
    return CaseSpec(
        chart=tag,
        lo=tuple(b[0] for b in bounds),
        hi=tuple(b[1] for b in bounds),
        scales=(1.0, ANGLE_SCALE, 1.0, ANGLE_SCALE),
        evaluate=_eval_wedge(combo_name),
        prunes=tuple(prunes),
        goal=goal,
    )


# -- the registry ---------------------------------------------------------------

CALCS: dict[str, CalcSpec] = {}

_ALIASES = {
    "iso_2C'": "iso_2Cp",
    "iso_2C′": "iso_2Cp",
}


def _register(calc: CalcSpec) -> None:
    if calc.name in CALCS:
        raise ValueError(f"duplicate calc {calc.name}")
    CALCS[calc.name] = calc


_STANDARD_KINDS = ("pinwheel", "delta", "lj", "tj", "pint")


def _build_lemma_delta() -> CalcSpec:
    case = _chart_case(
        "delta",
        prunes=[("domain", _p_domain)],
        goal=("area>1.5", _g_area_gt(_I_DELTA_FLOOR)),
    )
    return CalcSpec(
        name="lemma_delta",
        statement=(
            "Every center triangle in the narrow-strip (delta) chart has "
            "area greater than 1.5."),
        cases=(case,),
        case_splits="single chart domain (x_alpha, alpha, beta)",
    )


def _build_lemma_172() -> CalcSpec:
    cases = []
    for kind in _STANDARD_KINDS:
        cases.append(_chart_case(
            kind,
            prunes=[
                ("domain", _p_domain),
                ("edge>1.72", _p_edges_over_172),
                ("obtuse", _p_obtuse),
            ],
            goal=("area>a_crit", _g_area_gt(rint.A_CRIT)),
        ))
    wedge_prunes = [
        ("edge>1.72", _wp_edges_over_172),
        ("obtuse", _p_obtuse),
        ("overlap", _wp_overlap),
    ]
    for combo in o2c.combos():
        for p1, lam1 in (("0", _LAM_PIN_LO), ("1", _LAM_PIN_HI)):
            for p2, lam2 in (("0", _LAM_PIN_LO), ("1", _LAM_PIN_HI)):
                cases.append(_wedge_case(
                    combo.name,
                    prunes=wedge_prunes,
                    goal=("area>a_crit", _g_wedge_area_gt(rint.A_CRIT)),
                    tag=f"slider:{combo.name}:{p1}{p2}",
                    lam1=lam1,
                    lam2=lam2,
                ))
    return CalcSpec(
        name="lemma_172",
        statement=(
            "A center triangle with all three edges at most 1.72 is never "
            "subcritical: over the five chart kinds, and over every "
            "flush-contact (slider) wedge stratum, a nonobtuse triangle "
            "with edges at most 1.72 has area above the critical area."),
        cases=tuple(cases),
        case_splits=(
            "five chart kinds; plus 20 wedge direction pairs x 4 flush "
            "pinnings of the two incidence angles (free edge coordinates)"),
    )


def _build_lemma_a0() -> CalcSpec:
    cases = [
        _chart_case(
            kind,
            prunes=[("domain", _p_domain), ("obtuse", _p_obtuse)],
            goal=("area>a_min", _g_area_gt(_A_MIN)),
        )
        for kind in _STANDARD_KINDS
    ]
    return CalcSpec(
        name="lemma_a0",
        statement=(
            "Every nonobtuse center triangle over the five chart kinds has "
            "area greater than 1.237."),
        cases=tuple(cases),
        case_splits="five chart kinds, full domains",
    )


def _build_one_ljx() -> CalcSpec:
    case = _chart_case(
        "lj",
        prunes=[("domain", _p_domain), ("obtuse", _p_obtuse)],
        goal=("area>a_crit", _g_area_gt(rint.A_CRIT)),
        overrides={"beta": (0.9, charts.CHARTS["lj"].domain[1][1])},
    )
    return CalcSpec(
        name="one_ljx",
        statement=(
            "On the elbow (lj) chart with the second corner angle at least "
            "0.9, no nonobtuse center triangle is subcritical; the "
            "shared-edge reparameterization may therefore cut that "
            "coordinate at 0.9."),
        cases=(case,),
        case_splits="lj domain restricted to beta >= 0.9",
    )


def _build_one_tjx() -> CalcSpec:
    case = _chart_case(
        "tj",
        prunes=[("domain", _p_domain), ("obtuse", _p_obtuse)],
        goal=("area>a_crit", _g_area_gt(rint.A_CRIT)),
        overrides={"beta": (charts.CHARTS["tj"].domain[1][0], 1.0)},
    )
    return CalcSpec(
        name="one_tjx",
        statement=(
            "On the tee (tj) chart with the second corner angle at most "
            "1.0, no nonobtuse center triangle is subcritical; the "
            "shared-edge reparameterization may therefore cut that "
            "coordinate at 1.0."),
        cases=(case,),
        case_splits="tj domain restricted to beta <= 1.0",
    )


def _build_one_pintx() -> CalcSpec:
    cases = (
        _chart_case(
            "pint",
            prunes=[("domain", _p_domain)],
            goal=("BC>AB", _g_edge_dominates(("B", "C"), ("A", "B"))),
            tag="pint:over-AB",
        ),
        _chart_case(
            "pint",
            prunes=[("domain", _p_domain)],
            goal=("BC>AC", _g_edge_dominates(("B", "C"), ("A", "C"))),
            tag="pint:over-AC",
        ),
    )
    return CalcSpec(
        name="one_pintx",
        statement=(
            "On the pin (pint) chart the B-to-C center edge is strictly "
            "the longest edge of the triangle, over the whole domain."),
        cases=cases,
        case_splits="pint domain twice: B-C vs A-B, then B-C vs A-C",
    )


#: the two ways an isosceles triangle can tie its A-B edge with another
_ISO_VARIANTS = (
    ("bc", "q_bc", "q_ac"),  # |AB| == |BC|, |AC| no longer than them
    ("ac", "q_ac", "q_bc"),  # |AB| == |AC|, |BC| no longer than them
)


def _iso_prunes(eq_attr: str, third_attr: str):
    return [
        ("eq-gap", _wp_eq_gap(eq_attr)),
        ("third-longer", _wp_third_over_ab(third_attr)),
        ("obtuse", _p_obtuse),
        ("supercritical", _wp_area_over(rint.A_CRIT)),
        ("overlap", _wp_overlap),
    ]


def _build_iso_2C() -> CalcSpec:
    cases = []
    for combo in o2c.combos():
        if combo.c1.b_role != "receptor":
            continue  # every flush first contact is covered with A's
            # vertex on the middle edge, up to relabeling and mirror
        for vtag, eq_attr, third_attr in _ISO_VARIANTS:
            cases.append(_wedge_case(
                combo.name,
                prunes=_iso_prunes(eq_attr, third_attr),
                goal=None,
                tag=f"iso:{combo.name}:eq-{vtag}",
                lam1=_LAM_PIN_LO,
            ))
    return CalcSpec(
        name="iso_2C",
        statement=(
            "No wedge whose first contact is flush (slider) carries a "
            "nonobtuse subcritical center triangle in which the edge "
            "between the flush pair ties for longest with another edge, "
            "with the outer pentagons not overlapping."),
        cases=tuple(cases),
        case_splits=(
            "10 second-contact directions (first contact pinned flush at "
            "incidence 0, mirror-reduced) x 2 tie variants"),
    )


def _build_iso_2Cp() -> CalcSpec:
    cases = []
    for combo in o2c.combos():
        for vtag, eq_attr, third_attr in _ISO_VARIANTS:
            cases.append(_wedge_case(
                combo.name,
                prunes=_iso_prunes(eq_attr, third_attr),
                goal=None,
                tag=f"isop:{combo.name}:eq-{vtag}",
                x1=_X_PIN_MID,
            ))
    return CalcSpec(
        name="iso_2Cp",
        statement=(
            "No wedge whose first contact is a midpoint contact (the "
            "pointing vertex at the middle of the receiving edge, either "
            "direction) carries a nonobtuse subcritical center triangle "
            "in which the edge between that pair ties for longest with "
            "another edge, with the outer pentagons not overlapping."),
        cases=tuple(cases),
        case_splits=(
            "20 direction pairs (first contact's edge coordinate pinned "
            "to the midpoint, incidence free) x 2 tie variants"),
    )


def _build_squeeze_calc() -> CalcSpec:
    prunes = [
        ("obtuse", _p_obtuse),
        ("area>cap", _wp_area_over(_SQUEEZE_CAP)),
        ("AC-not-longest", _wp_ac_not_longest),
        ("slide-free", _wp_unblocked),
        ("overlap", _wp_overlap),
    ]
    cases = tuple(
        _wedge_case(
            combo.name,
            prunes=prunes,
            goal=("crossing-bound", _g_squeeze),
            tag=f"squeeze:{combo.name}",
        )
        for combo in o2c.combos()
    )
    return CalcSpec(
        name="squeeze_calc",
        statement=(
            "On every wedge whose outer-to-outer edge is a longest edge of "
            "a nonobtuse center triangle with area at most the critical "
            "area plus the standard slack, and whose outer pentagons are "
            "blocked (by their own contact lines) from sliding toward one "
            "another and do not overlap, the crossing bound holds: the "
            "outer-to-outer distance is strictly below the sum of the two "
            "contact-line crossing offsets cut at the middle pentagon's "
            "height (division-free form)."),
        cases=cases,
        case_splits="20 wedge direction pairs, full coordinate boxes",
    )


for _builder in (
    _build_lemma_delta,
    _build_lemma_172,
    _build_lemma_a0,
    _build_one_ljx,
    _build_one_tjx,
    _build_one_pintx,
    _build_iso_2C,
    _build_iso_2Cp,
    _build_squeeze_calc,
):
    _register(_builder())

CALC_NAMES = tuple(CALCS)
