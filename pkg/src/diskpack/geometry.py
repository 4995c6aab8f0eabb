"""Disk primitives and the metric relations between them.

Angles are radians everywhere in this package; conversion to degrees
happens only at the I/O and command-line surface.  An overlap angle is
the angle between the outward tangent rays of two meeting circles at a
boundary intersection point: 0 at external tangency, pi/2 when the
circles cross at right angles, approaching pi at the containment
boundary.  Valid labels live in [0, pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import (
    DegenerateTriangleError,
    InvalidConfigurationError,
    InvalidInputError,
    NoIntersectionError,
)

# Slack allowed on an arccos argument before the configuration is treated
# as genuinely invalid rather than roundoff on the boundary.
ACOS_SLACK = 1e-12


@dataclass(frozen=True)
class Disk:
    """A closed disk with an opaque id, center (cx, cy) and radius r > 0."""

    id: str
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.cx) and math.isfinite(self.cy) and math.isfinite(self.r)):
            raise InvalidInputError(f"disk {self.id!r}: center and radius must be finite")
        if self.r <= 0:
            raise InvalidInputError(f"disk {self.id!r}: radius must be positive, got {self.r!r}")

    @property
    def center(self) -> complex:
        return complex(self.cx, self.cy)


class PairKind(Enum):
    DISJOINT = "disjoint"
    TANGENT = "tangent"
    OVERLAPPING = "overlapping"
    CONTAINED = "contained"


@dataclass(frozen=True)
class PairRelation:
    """How two disks sit relative to each other.

    `angle` is the overlap angle in radians and is present exactly when
    the disks meet (tangent or overlapping); tangency reports 0.0.
    """

    kind: PairKind
    distance: float
    angle: Optional[float]


def center_distance(a: Disk, b: Disk) -> float:
    return math.hypot(a.cx - b.cx, a.cy - b.cy)


def _cos_overlap(a_r: float, b_r: float, d: float) -> float:
    # Law of cosines at an intersection point, flipped to the tangent rays.
    return (d * d - a_r * a_r - b_r * b_r) / (2.0 * a_r * b_r)


def pair_relation(a: Disk, b: Disk, tol: float = 1e-9) -> PairRelation:
    """Classify a pair of disks as disjoint, tangent, overlapping or contained.

    The four kinds partition all inputs for a fixed tol.  Contained wins
    first and claims d <= |a.r - b.r| + tol, so internal tangency and
    coincident disks count as contained; tangency claims the band
    |d - (a.r + b.r)| <= tol, disjoint needs clearance beyond it, and
    everything else overlaps, with angles strictly inside (0, pi).
    """
    if tol < 0:
        raise InvalidInputError(f"tol must be >= 0, got {tol!r}")
    d = center_distance(a, b)
    if d <= abs(a.r - b.r) + tol:
        return PairRelation(PairKind.CONTAINED, d, None)
    if abs(d - (a.r + b.r)) <= tol:
        return PairRelation(PairKind.TANGENT, d, 0.0)
    if d > a.r + b.r + tol:
        return PairRelation(PairKind.DISJOINT, d, None)
    # The branch guards above already certify a meeting, so clamp freely.
    u = max(-1.0, min(1.0, _cos_overlap(a.r, b.r, d)))
    return PairRelation(PairKind.OVERLAPPING, d, math.acos(u))


def overlap_angle(a: Disk, b: Disk) -> float:
    """Angle between the outward tangent rays where the two circles meet.

    The angle is the same at both intersection points.  Raises
    NoIntersectionError when the boundaries do not meet at all
    (beyond roundoff slack).
    """
    d = center_distance(a, b)
    u = _cos_overlap(a.r, b.r, d)
    if u > 1.0 + ACOS_SLACK or u < -1.0 - ACOS_SLACK:
        raise NoIntersectionError(
            f"circles {a.id!r} and {b.id!r} do not meet: center distance {d!r} "
            f"outside [{abs(a.r - b.r)!r}, {a.r + b.r!r}]"
        )
    return math.acos(max(-1.0, min(1.0, u)))


def edge_length(r_i: float, r_j: float, theta: float) -> float:
    """Center distance of two disks with radii r_i, r_j meeting at angle theta.

    Inverse of overlap_angle: theta 0 gives tangency at r_i + r_j, and the
    distance strictly decreases as theta grows on [0, pi).
    """
    if r_i <= 0 or r_j <= 0:
        raise InvalidInputError("radii must be positive")
    if not 0.0 <= theta < math.pi:
        raise InvalidInputError(f"overlap angle must lie in [0, pi), got {theta!r}")
    return math.sqrt(r_i * r_i + r_j * r_j + 2.0 * r_i * r_j * math.cos(theta))


def triangle_angle(l_opp: float, l_1: float, l_2: float) -> float:
    """Angle opposite l_opp in a triangle with side lengths (l_opp, l_1, l_2).

    Sides must satisfy the triangle inequality; violations beyond roundoff
    slack raise DegenerateTriangleError.
    """
    if l_opp <= 0 or l_1 <= 0 or l_2 <= 0:
        raise DegenerateTriangleError(f"side lengths must be positive: {(l_opp, l_1, l_2)!r}")
    u = (l_1 * l_1 + l_2 * l_2 - l_opp * l_opp) / (2.0 * l_1 * l_2)
    if u > 1.0 + ACOS_SLACK or u < -1.0 - ACOS_SLACK:
        raise DegenerateTriangleError(
            f"side lengths {(l_opp, l_1, l_2)!r} violate the triangle inequality"
        )
    return math.acos(max(-1.0, min(1.0, u)))


def boundary_meeting_points(a: Disk, b: Disk, tol: float = 1e-9) -> list[complex]:
    """Points where the two boundary circles meet, as complex numbers.

    Two points for crossing circles, one for (near-)tangency, none when the
    circles clear each other by more than tol.  Concentric circles yield none.
    """
    d = center_distance(a, b)
    if d == 0.0:
        return []
    if d > a.r + b.r + tol or d < abs(a.r - b.r) - tol:
        return []
    ex = (b.center - a.center) / d
    x = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d)
    h2 = a.r * a.r - x * x
    h = math.sqrt(h2) if h2 > 0.0 else 0.0
    base = a.center + x * ex
    if h == 0.0:
        return [base]
    off = complex(-ex.imag, ex.real) * h
    return [base + off, base - off]


def _membership_residual(p: complex, disks) -> float:
    return max(abs(p - d.center) - d.r for d in disks)


def triple_intersects(a: Disk, b: Disk, c: Disk, tol: float = 1e-9) -> tuple[bool, Optional[complex]]:
    """Decide whether the three closed disks share a common point.

    Returns (True, witness) with a common point, or (False, None).  Assumes
    no disk of the triple contains another (raises InvalidConfigurationError
    otherwise).  Under that assumption a nonempty triple intersection always
    contains a point where two of the boundary circles meet, so testing those
    meeting points against the third disk (inflated by tol) decides the
    question exactly.
    """
    trio = (a, b, c)
    for i in range(3):
        for j in range(i + 1, 3):
            if pair_relation(trio[i], trio[j], tol).kind is PairKind.CONTAINED:
                raise InvalidConfigurationError(
                    f"disk {trio[i].id!r} and disk {trio[j].id!r} are nested; "
                    "triple intersection is only defined for configurations"
                )
    best: Optional[complex] = None
    best_res = math.inf
    for x, y, other in ((a, b, c), (a, c, b), (b, c, a)):
        for p in boundary_meeting_points(x, y, tol):
            res = abs(p - other.center) - other.r
            if res < best_res:
                best_res = res
                best = p
    if best is None or best_res > tol:
        return False, None
    # The meeting point sits on two of the boundaries, so its residual is ~0.
    # When the common region has interior, walking toward the centroid finds a
    # strictly interior witness; keep whichever point sits deepest.
    centroid = (a.center + b.center + c.center) / 3.0
    witness = best
    witness_res = _membership_residual(best, trio)
    for t in (0.5, 0.25, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001):
        q = best + t * (centroid - best)
        q_res = _membership_residual(q, trio)
        if q_res < witness_res:
            witness_res = q_res
            witness = q
    return True, witness
