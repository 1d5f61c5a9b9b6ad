"""Deterministic triangulation of star-shaped planar domains.

Meshes come from a mapped polar grid: rings at radius fractions j/M along
N rays, scaled by the boundary radius function of the domain, with a
triangle fan at the center.  Refinement is a uniform 4-way split with new
boundary midpoints re-projected onto the exact boundary curve.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CONFIG, NumericsConfig
from .geometry import (Curvature, DomainError, RadialWeight, SpaceForm,
                       conformal_factor, poincare_distance)


class MeshQualityError(ValueError):
    """Triangle quality below the configured floor (increase M, N)."""


@dataclass(frozen=True, eq=False)
class Domain2D:
    """Planar star-shaped domain spec, translated by ``center_offset``.

    The offset moves the domain relative to the weight origin; the weight
    itself always stays anchored at the coordinate origin.
    """

    kind: str                       # disk | ellipse | perturbed_disk | polygon
    radius: float = 1.0
    a: float = 1.0
    b: float = 1.0
    eps: float = 0.0
    k: int = 0
    vertices_local: np.ndarray | None = field(default=None, repr=False)
    center_offset: tuple[float, float] = (0.0, 0.0)

    # -- constructors -------------------------------------------------
    @staticmethod
    def disk(radius: float, center: tuple[float, float] = (0.0, 0.0)) -> "Domain2D":
        if radius <= 0:
            raise DomainError("disk radius must be positive")
        return Domain2D(kind="disk", radius=float(radius),
                        center_offset=(float(center[0]), float(center[1])))

    @staticmethod
    def ellipse(a: float, b: float,
                center: tuple[float, float] = (0.0, 0.0)) -> "Domain2D":
        if a <= 0 or b <= 0:
            raise DomainError("ellipse semi-axes must be positive")
        return Domain2D(kind="ellipse", a=float(a), b=float(b),
                        center_offset=(float(center[0]), float(center[1])))

    @staticmethod
    def perturbed_disk(radius: float, eps: float, k: int,
                       center: tuple[float, float] = (0.0, 0.0)) -> "Domain2D":
        if radius <= 0:
            raise DomainError("radius must be positive")
        if k < 1:
            raise DomainError("perturbation frequency k must be >= 1")
        if abs(eps) * k >= 1.0:
            raise DomainError(
                f"|eps|*k = {abs(eps) * k:g} >= 1 breaks star-shapedness")
        return Domain2D(kind="perturbed_disk", radius=float(radius),
                        eps=float(eps), k=int(k),
                        center_offset=(float(center[0]), float(center[1])))

    @staticmethod
    def polygon(vertices, center: tuple[float, float] = (0.0, 0.0)) -> "Domain2D":
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
            raise DomainError("polygon needs at least 3 (x, y) vertices")
        centroid = verts.mean(axis=0)
        rel = verts - centroid
        ang = np.arctan2(rel[:, 1], rel[:, 0])
        wraps = np.sum(np.diff(np.concatenate([ang, ang[:1]])) < 0)
        cross = rel[:, 0] * np.roll(rel[:, 1], -1) - rel[:, 1] * np.roll(rel[:, 0], -1)
        if wraps != 1 or np.any(cross <= 0):
            raise DomainError("polygon must be star-shaped (CCW) about its centroid")
        return Domain2D(kind="polygon", vertices_local=verts,
                        center_offset=(float(center[0]), float(center[1])))

    # -- geometry -----------------------------------------------------
    @property
    def center(self) -> np.ndarray:
        off = np.asarray(self.center_offset, dtype=float)
        if self.kind == "polygon":
            return self.vertices_local.mean(axis=0) + off
        return off

    @property
    def is_curved(self) -> bool:
        return self.kind != "polygon"

    def boundary_radius(self, theta) -> np.ndarray:
        """Distance from the domain center to the boundary along angle theta."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if self.kind == "disk":
            return np.full_like(theta, self.radius)
        if self.kind == "ellipse":
            if self.a == self.b:
                return np.full_like(theta, self.a)
            return self.a * self.b / np.sqrt(
                (self.b * np.cos(theta)) ** 2 + (self.a * np.sin(theta)) ** 2)
        if self.kind == "perturbed_disk":
            return self.radius * (1.0 + self.eps * np.cos(self.k * theta))
        # polygon: ray/edge intersection from the centroid
        centroid = self.vertices_local.mean(axis=0)
        v1 = self.vertices_local - centroid
        v2 = np.roll(self.vertices_local, -1, axis=0) - centroid
        e = v2 - v1
        d = np.stack([np.cos(theta), np.sin(theta)], axis=-1)   # (m, 2)
        denom = d[:, None, 0] * e[None, :, 1] - d[:, None, 1] * e[None, :, 0]
        num_s = v1[None, :, 0] * e[None, :, 1] - v1[None, :, 1] * e[None, :, 0]
        num_u = v1[None, :, 0] * d[:, None, 1] - v1[None, :, 1] * d[:, None, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            s = num_s / denom
            u = num_u / denom
        valid = (np.abs(denom) > 1e-14) & (s > 0) & (u >= -1e-12) & (u <= 1 + 1e-12)
        s = np.where(valid, s, np.inf)
        r = s.min(axis=1)
        if np.any(~np.isfinite(r)):
            raise DomainError("polygon radial function undefined for some angle")
        return r

    @property
    def label(self) -> str:
        off = "" if self.center_offset == (0.0, 0.0) else \
            f"@({self.center_offset[0]:g},{self.center_offset[1]:g})"
        if self.kind == "disk":
            return f"disk(R={self.radius:g}){off}"
        if self.kind == "ellipse":
            return f"ellipse(a={self.a:g},b={self.b:g}){off}"
        if self.kind == "perturbed_disk":
            return f"pdisk(R={self.radius:g},eps={self.eps:g},k={self.k}){off}"
        return f"polygon[{len(self.vertices_local)}]{off}"

    def is_centered_ball(self, tol: float = 0.0) -> bool:
        if self.center_offset != (0.0, 0.0):
            return False
        if self.kind == "disk":
            return True
        if self.kind == "ellipse":
            return abs(self.a - self.b) <= tol
        if self.kind == "perturbed_disk":
            return abs(self.eps) <= tol
        return False


@dataclass(eq=False)
class TriMesh:
    """Planar triangulation with an oriented boundary-edge loop."""

    vertices: np.ndarray          # (V, 2)
    triangles: np.ndarray         # (T, 3) int, positive orientation
    boundary_edges: np.ndarray    # (B, 2) int, CCW loop
    h: float                      # maximum edge length
    domain: Domain2D | None = None

    @property
    def boundary_nodes(self) -> np.ndarray:
        return np.unique(self.boundary_edges)

    def min_angle_deg(self) -> float:
        p = self.vertices[self.triangles]
        angles = []
        for i in range(3):
            u = p[:, (i + 1) % 3] - p[:, i]
            v = p[:, (i + 2) % 3] - p[:, i]
            cosang = np.sum(u * v, axis=1) / (
                np.linalg.norm(u, axis=1) * np.linalg.norm(v, axis=1))
            angles.append(np.degrees(np.arccos(np.clip(cosang, -1.0, 1.0))))
        return float(np.min(angles))

    def signed_areas(self) -> np.ndarray:
        p = self.vertices[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])


def _validate(mesh: TriMesh, min_angle_deg: float):
    if np.any(mesh.signed_areas() <= 0):
        raise MeshQualityError("mesh contains non-positively-oriented triangles")
    ang = mesh.min_angle_deg()
    if ang < min_angle_deg:
        raise MeshQualityError(
            f"minimum triangle angle {ang:.3f} deg below floor "
            f"{min_angle_deg:g} deg (increase rings/sectors or lower the floor)")


def generate_mesh(dom: Domain2D, rings: int, sectors: int,
                  config: NumericsConfig = DEFAULT_CONFIG) -> TriMesh:
    """Mapped polar mesh: 1 + rings*sectors vertices, deterministic layout."""
    M, N = int(rings), int(sectors)
    if M < 2:
        raise DomainError("need at least 2 rings")
    if N < 8:
        raise DomainError("need at least 8 sectors")
    thetas = 2.0 * math.pi * np.arange(N) / N
    rad = dom.boundary_radius(thetas)
    center = dom.center

    verts = np.empty((1 + M * N, 2))
    verts[0] = center
    dirs = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    for j in range(1, M + 1):
        verts[1 + (j - 1) * N: 1 + j * N] = center + (j / M) * rad[:, None] * dirs

    def idx(j, l):
        return 1 + (j - 1) * N + (l % N)

    tris = []
    for l in range(N):
        tris.append((0, idx(1, l), idx(1, l + 1)))
    for j in range(1, M):
        for l in range(N):
            a, b = idx(j, l), idx(j + 1, l)
            c, d = idx(j + 1, l + 1), idx(j, l + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    triangles = np.array(tris, dtype=np.int64)
    boundary = np.array([(idx(M, l), idx(M, l + 1)) for l in range(N)],
                        dtype=np.int64)

    mesh = TriMesh(vertices=verts, triangles=triangles, boundary_edges=boundary,
                   h=_max_edge(verts, triangles), domain=dom)
    _validate(mesh, config.min_angle_deg)
    return mesh


def _max_edge(verts: np.ndarray, triangles: np.ndarray) -> float:
    p = verts[triangles]
    lengths = [np.linalg.norm(p[:, (i + 1) % 3] - p[:, i], axis=1) for i in range(3)]
    return float(np.max(lengths))


def split_topology(mesh: TriMesh):
    """Uniform 4-way split of the mesh topology.

    Returns (vertices, triangles, boundary_edges, edge->midpoint index map);
    midpoint vertices are appended after the original ones in deterministic
    order and boundary midpoints are not yet projected.
    """
    verts = list(map(tuple, mesh.vertices))
    mid_index: dict[tuple[int, int], int] = {}

    def midpoint(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        if key not in mid_index:
            mid_index[key] = len(verts)
            pa, pb = mesh.vertices[a], mesh.vertices[b]
            verts.append(((pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0))
        return mid_index[key]

    new_tris = []
    for a, b, c in mesh.triangles:
        mab, mbc, mca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        new_tris.extend([(a, mab, mca), (b, mbc, mab), (c, mca, mbc),
                         (mab, mbc, mca)])
    new_boundary = []
    for a, b in mesh.boundary_edges:
        m = midpoint(a, b)
        new_boundary.extend([(a, m), (m, b)])

    return (np.array(verts, dtype=float),
            np.array(new_tris, dtype=np.int64),
            np.array(new_boundary, dtype=np.int64),
            mid_index)


def refine(mesh: TriMesh, config: NumericsConfig = DEFAULT_CONFIG) -> TriMesh:
    """4-way refinement with boundary midpoints snapped to the exact curve."""
    verts, tris, boundary, mid_index = split_topology(mesh)

    # Re-projection is exact (a no-op) on straight boundary pieces and
    # restores corner/curvature geometry otherwise.
    dom = mesh.domain
    if dom is not None:
        center = dom.center
        for a, b in mesh.boundary_edges:
            key = (a, b) if a < b else (b, a)
            m = mid_index[key]
            d = verts[m] - center
            theta = math.atan2(d[1], d[0])
            r = dom.boundary_radius(theta)[0]
            verts[m] = center + r * np.array([math.cos(theta), math.sin(theta)])

    out = TriMesh(vertices=verts, triangles=tris, boundary_edges=boundary,
                  h=_max_edge(verts, tris), domain=dom)
    _validate(out, config.min_angle_deg)
    return out


def mesh_levels(dom: Domain2D, rings: int, sectors: int, levels: int,
                config: NumericsConfig = DEFAULT_CONFIG) -> list[TriMesh]:
    meshes = [generate_mesh(dom, rings, sectors, config)]
    for _ in range(levels - 1):
        meshes.append(refine(meshes[-1], config))
    return meshes


# ---------------------------------------------------------------------------
# weighted quadrature on meshes
# ---------------------------------------------------------------------------

def _weight_at(form: SpaceForm, w: RadialWeight, pts: np.ndarray) -> np.ndarray:
    """exp(-phi(t(x))) at Euclidean chart points, t = model distance to origin."""
    if form.curvature is Curvature.HYPERBOLIC:
        t = poincare_distance(pts)
    else:
        t = np.linalg.norm(pts, axis=-1)
    return np.exp(-w.phi(t))


def _dist_at(form: SpaceForm, pts: np.ndarray) -> np.ndarray:
    if form.curvature is Curvature.HYPERBOLIC:
        return poincare_distance(pts)
    return np.linalg.norm(pts, axis=-1)


def integrate_weighted(mesh: TriMesh, form: SpaceForm, w: RadialWeight,
                       fn=None) -> float:
    """int_Omega fn(t(x)) dmu with the 3-point edge-midpoint triangle rule.

    ``fn`` maps distance values to integrand values (default 1).  For the
    hyperbolic model the area element carries the conformal factor squared.
    """
    if form.dim != 2:
        raise DomainError("mesh quadrature is 2-D only")
    p = mesh.vertices[mesh.triangles]
    areas = mesh.signed_areas()
    mids = np.stack([(p[:, 0] + p[:, 1]) / 2.0,
                     (p[:, 1] + p[:, 2]) / 2.0,
                     (p[:, 2] + p[:, 0]) / 2.0], axis=1)   # (T, 3, 2)
    t = _dist_at(form, mids)
    vals = np.exp(-w.phi(t))
    if fn is not None:
        vals = vals * fn(t)
    if form.curvature is Curvature.HYPERBOLIC:
        vals = vals * conformal_factor(mids) ** 2
    return float(np.sum(areas / 3.0 * np.sum(vals, axis=1)))


_GAUSS2 = (-1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0))


def boundary_gauss_points(mesh: TriMesh):
    """2-point Gauss nodes and Euclidean weights on each boundary edge."""
    a = mesh.vertices[mesh.boundary_edges[:, 0]]
    b = mesh.vertices[mesh.boundary_edges[:, 1]]
    mid = (a + b) / 2.0
    half = (b - a) / 2.0
    pts = np.stack([mid + g * half for g in _GAUSS2], axis=1)  # (B, 2, 2)
    lengths = np.linalg.norm(b - a, axis=1)
    wts = np.stack([lengths / 2.0, lengths / 2.0], axis=1)     # (B, 2)
    return pts, wts


def integrate_boundary_weighted(mesh: TriMesh, form: SpaceForm, w: RadialWeight,
                                fn=None) -> float:
    """int_{boundary} fn(t(x)) dmu-hat with 2-point Gauss per edge."""
    if form.dim != 2:
        raise DomainError("mesh quadrature is 2-D only")
    pts, wts = boundary_gauss_points(mesh)
    t = _dist_at(form, pts)
    vals = np.exp(-w.phi(t))
    if fn is not None:
        vals = vals * fn(t)
    if form.curvature is Curvature.HYPERBOLIC:
        vals = vals * conformal_factor(pts)
    return float(np.sum(wts * vals))


def mesh_measures(mesh: TriMesh, form: SpaceForm,
                  w: RadialWeight) -> tuple[float, float]:
    """(weighted area, weighted boundary length) of the meshed domain."""
    return (integrate_weighted(mesh, form, w),
            integrate_boundary_weighted(mesh, form, w))


# ---------------------------------------------------------------------------
# plain-text export / import
# ---------------------------------------------------------------------------

def save_mesh(mesh: TriMesh, path):
    with open(path, "w") as fh:
        fh.write(f"{len(mesh.vertices)} {len(mesh.triangles)} "
                 f"{len(mesh.boundary_edges)}\n")
        for x, y in mesh.vertices:
            fh.write(f"{float(x)!r} {float(y)!r}\n")
        for i, j, k in mesh.triangles:
            fh.write(f"{i} {j} {k}\n")
        for i, j in mesh.boundary_edges:
            fh.write(f"{i} {j}\n")


def load_mesh(path) -> TriMesh:
    with open(path) as fh:
        tokens = fh.read().split("\n")
    nv, nt, nb = map(int, tokens[0].split())
    verts = np.array([[float(v) for v in tokens[1 + i].split()]
                      for i in range(nv)])
    tris = np.array([[int(v) for v in tokens[1 + nv + i].split()]
                     for i in range(nt)], dtype=np.int64)
    bnd = np.array([[int(v) for v in tokens[1 + nv + nt + i].split()]
                    for i in range(nb)], dtype=np.int64)
    return TriMesh(vertices=verts, triangles=tris, boundary_edges=bnd,
                   h=_max_edge(verts, tris), domain=None)
