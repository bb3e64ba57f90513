"""Independent floating-point oracle for geometry cross-checks.

Everything here is recomputed from plain ``math`` — no imports from the
rigorous modules — so that tests comparing oracle output against the
interval kernel actually exercise two separate code paths.  Accuracy is
double precision, good enough to flag any systematic disagreement.
"""

from __future__ import annotations

import math

KAPPA = math.cos(math.pi / 5)
SIGMA = math.sin(math.pi / 5)
TWO_SIGMA = 2 * SIGMA
TWO_PI_5 = 2 * math.pi / 5


def pent_vertices(cx: float, cy: float, phase: float) -> list[tuple[float, float]]:
    return [
        (cx + math.cos(phase + k * TWO_PI_5), cy + math.sin(phase + k * TWO_PI_5))
        for k in range(5)
    ]


def _axes(vs):
    for k in range(5):
        x0, y0 = vs[k]
        x1, y1 = vs[(k + 1) % 5]
        ex, ey = x1 - x0, y1 - y0
        n = math.hypot(ex, ey)
        yield (ey / n, -ex / n)


def sat_gap(va, vb) -> float:
    """Largest signed separation over the ten edge-normal axes."""
    best = -math.inf
    for vs in (va, vb):
        for ax, ay in _axes(vs):
            pa = [ax * x + ay * y for x, y in va]
            pb = [ax * x + ay * y for x, y in vb]
            gap = max(min(pb) - max(pa), min(pa) - max(pb))
            best = max(best, gap)
    return best


def overlap(pose_a, pose_b, tol: float = 0.0) -> bool:
    """True when the two pentagons certainly interpenetrate."""
    va = pent_vertices(*pose_a)
    vb = pent_vertices(*pose_b)
    return sat_gap(va, vb) < -tol


def detect_contacts(pose_a, pose_b, tol: float = 1e-7) -> list[dict]:
    """All vertex-on-edge incidences between two touching pentagons.

    Each record carries the roles and the recovered edge coordinate and
    incidence angle: ``{"pointer": 0|1, "vertex": j, "edge": k, "x": .,
    "lam": .}`` with x measured from edge-vertex k toward k+1 and lam the
    rotation away from the flush position.
    """
    found = []
    poses = (pose_a, pose_b)
    verts = [pent_vertices(*p) for p in poses]
    for ptr in (0, 1):
        rec = 1 - ptr
        pv = verts[ptr]
        rv = verts[rec]
        c_ptr = poses[ptr][:2]
        for j in range(5):
            vx, vy = pv[j]
            for k in range(5):
                wx, wy = rv[k]
                ux, uy = rv[(k + 1) % 5]
                ex, ey = (ux - wx) / TWO_SIGMA, (uy - wy) / TWO_SIGMA
                dx, dy = vx - wx, vy - wy
                along = dx * ex + dy * ey
                off = ex * dy - ey * dx  # distance off the edge line
                if abs(off) > tol or along < -tol or along > TWO_SIGMA + tol:
                    continue
                # incidence angle from the direction vertex -> pointer center,
                # expressed in the edge frame (outward normal = edge rotated
                # clockwise for a ccw receptor)
                nx, ny = ey, -ex
                px, py = c_ptr[0] - vx, c_ptr[1] - vy
                lam = math.atan2(px * nx + py * ny, px * ex + py * ey) \
                    - 3 * math.pi / 10
                if lam < -tol or lam > TWO_PI_5 + tol:
                    continue
                found.append({
                    "pointer": ptr,
                    "vertex": j,
                    "edge": k,
                    "x": min(max(along, 0.0), TWO_SIGMA),
                    "lam": min(max(lam, 0.0), TWO_PI_5),
                })
    return found


def classify_pair(pose_a, pose_b, tol: float = 1e-7) -> str:
    va = pent_vertices(*pose_a)
    vb = pent_vertices(*pose_b)
    gap = sat_gap(va, vb)
    if gap > tol:
        return "disjoint"
    if gap < -tol:
        return "overlap"
    return "touching"


def triangle_report(poses) -> dict:
    """Edge lengths, corner angles, and signed area of a center triangle."""
    (ax, ay), (bx, by), (cx, cy) = [p[:2] for p in poses]
    d_ab = math.hypot(bx - ax, by - ay)
    d_bc = math.hypot(cx - bx, cy - by)
    d_ca = math.hypot(ax - cx, ay - cy)
    area2 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)

    def ang(opp, s1, s2):
        t = (s1 * s1 + s2 * s2 - opp * opp) / (2 * s1 * s2)
        return math.acos(min(1.0, max(-1.0, t)))

    return {
        "edges": {"AB": d_ab, "BC": d_bc, "CA": d_ca},
        "angles": {
            "A": ang(d_bc, d_ab, d_ca),
            "B": ang(d_ca, d_ab, d_bc),
            "C": ang(d_ab, d_bc, d_ca),
        },
        "signed_area": area2 / 2,
        "obtuse": max(d_ab, d_bc, d_ca) ** 2
        > d_ab ** 2 + d_bc ** 2 + d_ca ** 2 - max(d_ab, d_bc, d_ca) ** 2,
    }


def heron(d1: float, d2: float, d3: float) -> float:
    a, b, c = sorted((d1, d2, d3), reverse=True)
    s = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    return math.sqrt(max(s, 0.0)) / 4
