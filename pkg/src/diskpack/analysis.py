"""Analysis of disk sets: contact structure, thinness, similarity, rigidity.

A disk set qualifies as a configuration when no disk is contained in
another; operations that need that property check it and raise
InvalidConfigurationError when it fails.  The rigidity probe is numerical
evidence (a first-order Jacobian rank computation), never a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateNormalizationError,
    InvalidConfigurationError,
    InvalidInputError,
)
from .geometry import (
    Disk,
    PairKind,
    overlap_angle,
    pair_relation,
    triple_intersects,
)
from .graph import Graph, LabeledContactGraph, edge_key


@dataclass(frozen=True)
class DiskSet:
    """An ordered collection of disks with unique ids."""

    disks: tuple[Disk, ...]

    def __post_init__(self):
        seen = set()
        for d in self.disks:
            if d.id in seen:
                raise InvalidInputError(f"duplicate disk id {d.id!r}")
            seen.add(d.id)

    def __len__(self) -> int:
        return len(self.disks)

    def __iter__(self):
        return iter(self.disks)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.disks)

    def by_id(self, disk_id: str) -> Disk:
        for d in self.disks:
            if d.id == disk_id:
                return d
        raise InvalidInputError(f"no disk with id {disk_id!r}")


def _check_no_containment(ds: DiskSet, tol: float) -> None:
    disks = ds.disks
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            if pair_relation(disks[i], disks[j], tol).kind is PairKind.CONTAINED:
                raise InvalidConfigurationError(
                    f"disk {disks[i].id!r} and disk {disks[j].id!r} are nested; not a configuration"
                )


def extract_contact_graph(ds: DiskSet, tol: float = 1e-9) -> LabeledContactGraph:
    """Read the contact graph off a configuration.

    Tangent pairs become edges labeled 0, overlapping pairs edges labeled
    with their overlap angle; disjoint pairs contribute nothing.  A nested
    pair raises InvalidConfigurationError.
    """
    disks = ds.disks
    edges = []
    labels = {}
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            rel = pair_relation(disks[i], disks[j], tol)
            if rel.kind is PairKind.CONTAINED:
                raise InvalidConfigurationError(
                    f"disk {disks[i].id!r} and disk {disks[j].id!r} are nested; not a configuration"
                )
            if rel.kind in (PairKind.TANGENT, PairKind.OVERLAPPING):
                k = edge_key(disks[i].id, disks[j].id)
                edges.append(k)
                labels[k] = rel.angle if rel.kind is PairKind.OVERLAPPING else 0.0
    edges.sort()
    return LabeledContactGraph(Graph(ds.ids, tuple(edges)), labels)


@dataclass(frozen=True)
class Defect:
    """One way a disk set fails to realize a labeled graph.

    kind 'angle-mismatch': a labeled edge realized at the wrong angle or not
    realized as a contact at all; 'spurious-contact': a non-adjacent pair
    that touches or overlaps; 'nested-pair': one disk inside another.
    """

    kind: str
    ids: tuple[str, str]
    detail: str


@dataclass(frozen=True)
class RealizationReport:
    ok: bool
    defects: tuple[Defect, ...]


def verify_realization(ds: DiskSet, lg: LabeledContactGraph, tol: float = 1e-9) -> RealizationReport:
    """Check that the disks realize the labeled graph, defect by defect.

    tol bounds both the length slack used to classify contacts and the
    allowed angle deviation in radians on labeled edges.
    """
    if set(ds.ids) != set(lg.graph.vertices):
        raise InvalidInputError("disk ids and graph vertices must coincide")
    keys = lg.graph.edge_keys()
    disks = sorted(ds.disks, key=lambda d: d.id)
    defects = []
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            a, b = disks[i], disks[j]
            k = edge_key(a.id, b.id)
            rel = pair_relation(a, b, tol)
            if rel.kind is PairKind.CONTAINED:
                defects.append(Defect("nested-pair", k, f"center distance {rel.distance!r}"))
            elif k in keys:
                want = lg.labels[k]
                if rel.angle is None:
                    defects.append(
                        Defect("angle-mismatch", k, f"edge labeled {want!r} rad but the disks do not meet")
                    )
                elif abs(rel.angle - want) > tol:
                    defects.append(
                        Defect("angle-mismatch", k, f"labeled {want!r} rad, realized {rel.angle!r} rad")
                    )
            elif rel.kind in (PairKind.TANGENT, PairKind.OVERLAPPING):
                defects.append(
                    Defect("spurious-contact", k, f"unlabeled pair meets ({rel.kind.value}, distance {rel.distance!r})")
                )
    return RealizationReport(not defects, tuple(defects))


@dataclass(frozen=True)
class ThinnessViolation:
    ids: tuple[str, str, str]
    witness: complex


@dataclass(frozen=True)
class ThinnessReport:
    thin: bool
    violations: tuple[ThinnessViolation, ...]


def is_thin(ds: DiskSet, tol: float = 1e-9) -> ThinnessReport:
    """Decide whether no three disks share a common point.

    Only triples whose pairs all meet can share a point, so those are the
    only ones probed.  Violations come back with a witness point.
    """
    _check_no_containment(ds, tol)
    disks = ds.disks
    n = len(disks)
    meets = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            kind = pair_relation(disks[i], disks[j], tol).kind
            meets[i][j] = kind in (PairKind.TANGENT, PairKind.OVERLAPPING)
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            if not meets[i][j]:
                continue
            for k in range(j + 1, n):
                if not (meets[i][k] and meets[j][k]):
                    continue
                hit, witness = triple_intersects(disks[i], disks[j], disks[k], tol)
                if hit:
                    violations.append(
                        ThinnessViolation((disks[i].id, disks[j].id, disks[k].id), witness)
                    )
    return ThinnessReport(not violations, tuple(violations))


@dataclass(frozen=True)
class SimilarityTransform:
    """p -> scale * rot(rotation) * (mirror p across the x axis if reflect) + translation.

    scale is positive, rotation is radians, translation a complex offset.
    Radii map to scale * r.
    """

    scale: float
    rotation: float
    reflect: bool
    translation: complex

    def __post_init__(self):
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise InvalidInputError(f"scale must be positive, got {self.scale!r}")

    def apply_point(self, p: complex) -> complex:
        q = p.conjugate() if self.reflect else p
        return self.scale * complex(math.cos(self.rotation), math.sin(self.rotation)) * q + self.translation

    def apply_disk(self, d: Disk) -> Disk:
        c = self.apply_point(d.center)
        return Disk(d.id, c.real, c.imag, self.scale * d.r)

    def apply(self, ds: DiskSet) -> DiskSet:
        return DiskSet(tuple(self.apply_disk(d) for d in ds))

    def inverse(self) -> "SimilarityTransform":
        rot = complex(math.cos(self.rotation), math.sin(self.rotation))
        if self.reflect:
            # q = s*rot*conj(p) + t  =>  p = conj(q - t) * rot / s ... rotation stays put
            t = -(self.translation.conjugate()) * rot / self.scale
            return SimilarityTransform(1.0 / self.scale, self.rotation, True, t)
        t = -self.translation / (self.scale * rot)
        return SimilarityTransform(1.0 / self.scale, -self.rotation, False, t)


def normalize(ds: DiskSet) -> tuple[DiskSet, SimilarityTransform]:
    """Canonical placement: lowest id at the origin with radius 1, second
    lowest on the positive x axis, third lowest (if any) at y >= 0.

    Returns the normalized set and the transform that achieved it.  Raises
    DegenerateNormalizationError when the first two disks are concentric.
    """
    if len(ds) < 2:
        raise InvalidInputError("normalization needs at least two disks")
    order = sorted(ds.disks, key=lambda d: d.id)
    first, second = order[0], order[1]
    offset = second.center - first.center
    if offset == 0:
        raise DegenerateNormalizationError(
            f"disks {first.id!r} and {second.id!r} are concentric; no canonical direction"
        )
    scale = 1.0 / first.r
    rotation = -math.atan2(offset.imag, offset.real)
    candidate = SimilarityTransform(scale, rotation, False, 0j)
    # translation: send the first center to the origin after scale+rotation
    shift = -candidate.apply_point(first.center)
    candidate = SimilarityTransform(scale, rotation, False, shift)
    if len(order) > 2 and candidate.apply_point(order[2].center).imag < 0.0:
        #  conj first, then rotate by -rotation, lands the second disk on +x too
        reflected = SimilarityTransform(scale, -rotation, True, 0j)
        shift = -reflected.apply_point(first.center)
        candidate = SimilarityTransform(scale, -rotation, True, shift)
    return candidate.apply(ds), candidate


def are_similar(
    a: DiskSet,
    b: DiskSet,
    correspondence: Mapping[str, str],
    tol: float = 1e-9,
) -> Optional[SimilarityTransform]:
    """Fit a similarity sending a onto b along the given id bijection.

    Returns the transform when every mapped center and radius lands within
    tol, else None.  Both reflections are tried.
    """
    if sorted(correspondence) != sorted(a.ids) or sorted(correspondence.values()) != sorted(b.ids):
        raise InvalidInputError("correspondence must be a bijection between the two id sets")
    src = [a.by_id(i) for i in sorted(a.ids)]
    dst = [b.by_id(correspondence[d.id]) for d in src]
    ra = np.array([d.r for d in src])
    rb = np.array([d.r for d in dst])
    scale = float(np.dot(ra, rb) / np.dot(ra, ra))
    if scale <= 0:
        return None
    za = np.array([complex(d.cx, d.cy) for d in src])
    zb = np.array([complex(d.cx, d.cy) for d in dst])
    for reflect in (False, True):
        z = za.conj() if reflect else za
        zm = z.mean()
        wm = zb.mean()
        corr = np.sum((zb - wm) * np.conj(z - zm))
        rotation = float(np.angle(corr)) if corr != 0 else 0.0
        rot = complex(math.cos(rotation), math.sin(rotation))
        translation = complex(wm - scale * rot * zm)
        t = SimilarityTransform(scale, rotation, reflect, translation)
        center_err = max(abs(t.apply_point(complex(d.cx, d.cy)) - complex(e.cx, e.cy)) for d, e in zip(src, dst))
        radius_err = float(np.max(np.abs(scale * ra - rb)))
        if center_err <= tol and radius_err <= tol:
            return t
    return None


@dataclass(frozen=True)
class RigidityReport:
    """First-order flexibility probe of a realization.

    flex_dimension counts null directions beyond the 4 similarity motions
    when nothing is pinned, or all null directions otherwise.  Evidence,
    not proof: rank decisions live on the rank_tol threshold.
    """

    flex_dimension: int
    rank: int
    unknown_count: int
    constraint_count: int
    singular_values: tuple[float, ...]
    pinned: tuple[str, ...]


def rigidity_jacobian(ds: DiskSet, lg: LabeledContactGraph, pinned: Iterable[str] = ()) -> tuple[np.ndarray, tuple[str, ...]]:
    """Jacobian of the edge constraints |ci-cj|^2 = ri^2 + rj^2 + 2 ri rj cos(theta)
    over the (cx, cy, r) coordinates of every unpinned disk.

    Returns (matrix, free ids); rows follow sorted edge keys.
    """
    pinned = frozenset(pinned)
    unknown_ids = tuple(i for i in sorted(ds.ids) if i not in pinned)
    for p in pinned:
        if p not in set(ds.ids):
            raise InvalidInputError(f"pinned id {p!r} is not in the disk set")
    col = {i: 3 * k for k, i in enumerate(unknown_ids)}
    edges = sorted(lg.graph.edge_keys())
    jac = np.zeros((len(edges), 3 * len(unknown_ids)))
    for row, (u, v) in enumerate(edges):
        du, dv = ds.by_id(u), ds.by_id(v)
        ct = math.cos(lg.labels[(u, v)])
        dx, dy = du.cx - dv.cx, du.cy - dv.cy
        if u in col:
            jac[row, col[u]] = 2.0 * dx
            jac[row, col[u] + 1] = 2.0 * dy
            jac[row, col[u] + 2] = -2.0 * (du.r + dv.r * ct)
        if v in col:
            jac[row, col[v]] = -2.0 * dx
            jac[row, col[v] + 1] = -2.0 * dy
            jac[row, col[v] + 2] = -2.0 * (dv.r + du.r * ct)
    return jac, unknown_ids


def rigidity_index(
    ds: DiskSet,
    lg: LabeledContactGraph,
    pinned: Iterable[str] = (),
    rank_tol: float = 1e-8,
) -> RigidityReport:
    """Count first-order flexes of the realization, beyond similarities.

    The realization must actually verify against lg (within 1e-6); the
    Jacobian null space is measured by SVD with a relative rank threshold.
    """
    pinned = frozenset(pinned)
    check = verify_realization(ds, lg, 1e-6)
    if not check.ok:
        raise InvalidInputError(
            f"disks do not realize the labeled graph ({len(check.defects)} defects); rigidity undefined"
        )
    jac, unknown_ids = rigidity_jacobian(ds, lg, pinned)
    n_unknowns = jac.shape[1]
    n_constraints = jac.shape[0]
    if n_constraints == 0 or n_unknowns == 0:
        sv: tuple[float, ...] = ()
        rank = 0
    else:
        s = np.linalg.svd(jac, compute_uv=False)
        sv = tuple(float(x) for x in s)
        rank = int(np.sum(s > rank_tol * s[0])) if s[0] > 0 else 0
    null_dim = n_unknowns - rank
    flex = null_dim - (4 if not pinned else 0)
    return RigidityReport(flex, rank, n_unknowns, n_constraints, sv, tuple(sorted(pinned)))


def similarity_velocity_fields(ds: DiskSet, unknown_ids: Sequence[str]) -> np.ndarray:
    """The four infinitesimal similarity motions as vectors over (cx, cy, r).

    Columns: x translation, y translation, rotation about the origin,
    scaling about the origin.  These span the tangent space of the
    similarity group acting on the configuration.
    """
    n = len(unknown_ids)
    fields = np.zeros((3 * n, 4))
    for k, i in enumerate(unknown_ids):
        d = ds.by_id(i)
        fields[3 * k, 0] = 1.0
        fields[3 * k + 1, 1] = 1.0
        fields[3 * k, 2] = -d.cy
        fields[3 * k + 1, 2] = d.cx
        fields[3 * k, 3] = d.cx
        fields[3 * k + 1, 3] = d.cy
        fields[3 * k + 2, 3] = d.r
    return fields
