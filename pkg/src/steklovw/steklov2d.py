"""Weighted P1 finite elements for the planar Steklov problem.

The weak form pairs the weighted Dirichlet energy against the weighted
boundary mass.  In the hyperbolic (Poincare-disk) model the 2-D Dirichlet
energy is conformally invariant, so the stiffness keeps Euclidean
gradients with the weight factor, while the boundary mass picks up the
conformal length factor.  The Dirichlet-to-Neumann matrix is the boundary
Schur complement of the stiffness; the small dense pencil on boundary
nodes is solved directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .config import DEFAULT_CONFIG, NumericsConfig
from .geometry import (Curvature, DomainError, RadialWeight, SpaceForm,
                       conformal_factor)
from .mesh2d import (TriMesh, _dist_at, boundary_gauss_points, mesh_levels,
                     Domain2D)
from .spectrum import SteklovSpectrum


class FactorizationError(RuntimeError):
    """Sparse factorization of the interior block failed."""


@dataclass
class AssembledSystem:
    """Stiffness over all nodes plus boundary mass and boundary index list."""

    stiffness: sp.csr_matrix
    boundary_mass: sp.csr_matrix
    boundary_index: np.ndarray


def tri_geometry(mesh: TriMesh):
    """Per-triangle areas and P1 hat-function gradients, vectorized."""
    p = mesh.vertices[mesh.triangles]            # (T, 3, 2)
    d1 = p[:, 1] - p[:, 0]
    d2 = p[:, 2] - p[:, 0]
    det = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    if np.any(det <= 0):
        raise DomainError("degenerate or misoriented triangle in mesh")
    areas = 0.5 * det
    # gradient of hat i is perp(opposite edge) / (2 area)
    grads = np.empty((len(areas), 3, 2))
    for i in range(3):
        e = p[:, (i + 2) % 3] - p[:, (i + 1) % 3]
        grads[:, i, 0] = -e[:, 1]
        grads[:, i, 1] = e[:, 0]
    grads /= (2.0 * areas)[:, None, None]
    return areas, grads


def _stiffness_weight(mesh: TriMesh, form: SpaceForm, w: RadialWeight,
                      rule: str) -> np.ndarray:
    p = mesh.vertices[mesh.triangles]
    if rule == "centroid":
        pts = p.mean(axis=1)                      # (T, 2)
        t = _dist_at(form, pts)
        return np.exp(-w.phi(t))
    if rule == "midpoints":
        mids = np.stack([(p[:, 0] + p[:, 1]) / 2.0,
                         (p[:, 1] + p[:, 2]) / 2.0,
                         (p[:, 2] + p[:, 0]) / 2.0], axis=1)
        t = _dist_at(form, mids)
        return np.mean(np.exp(-w.phi(t)), axis=1)
    raise DomainError(f"unknown stiffness weight rule {rule!r}")


def assemble(mesh: TriMesh, form: SpaceForm, w: RadialWeight,
             config: NumericsConfig = DEFAULT_CONFIG) -> AssembledSystem:
    """Assemble weighted stiffness K and boundary mass M_b on a 2-D mesh."""
    if form.dim != 2:
        raise DomainError("steklov2d assembles 2-D problems only")
    if form.curvature is Curvature.SPHERICAL_CAP:
        raise DomainError("spherical-cap FEM is not supported")
    if form.curvature is Curvature.HYPERBOLIC:
        rmax = float(np.max(np.linalg.norm(mesh.vertices, axis=1)))
        if rmax > 1.0 - config.hyperbolic_margin:
            raise DomainError(
                f"hyperbolic mesh reaches |x| = {rmax:.4f}; must stay below "
                f"1 - {config.hyperbolic_margin:g}")

    nv = len(mesh.vertices)
    areas, grads = tri_geometry(mesh)
    wq = _stiffness_weight(mesh, form, w, config.stiffness_weight_rule)

    # local 3x3 blocks: wq * area * grads grads^T
    local = np.einsum("t,tia,tja->tij", wq * areas, grads, grads)
    tri = mesh.triangles
    rows = np.repeat(tri, 3, axis=1).ravel()
    cols = np.tile(tri, (1, 3)).ravel()
    K = sp.coo_matrix((local.ravel(), (rows, cols)), shape=(nv, nv)).tocsr()

    # boundary mass: 2-point Gauss per edge, weight (and conformal factor)
    pts, wts = boundary_gauss_points(mesh)       # (B,2,2), (B,2)
    t = _dist_at(form, pts)
    f = np.exp(-w.phi(t))
    if form.curvature is Curvature.HYPERBOLIC:
        f = f * conformal_factor(pts)
    xi = np.array([-1.0, 1.0]) / np.sqrt(3.0)
    shape = np.stack([(1.0 - xi) / 2.0, (1.0 + xi) / 2.0], axis=1)  # (2 gauss, 2 nodes)
    # local edge mass: sum_g wts_g f_g N_g N_g^T
    locm = np.einsum("bg,gi,gj->bij", wts * f, shape, shape)
    be = mesh.boundary_edges
    rows = np.repeat(be, 2, axis=1).ravel()
    cols = np.tile(be, (1, 2)).ravel()
    Mb = sp.coo_matrix((locm.ravel(), (rows, cols)), shape=(nv, nv)).tocsr()

    return AssembledSystem(stiffness=K, boundary_mass=Mb,
                           boundary_index=np.unique(be))


def dtn_reduce(sys: AssembledSystem) -> tuple[np.ndarray, np.ndarray]:
    """Boundary Schur complement S = K_bb - K_bi K_ii^{-1} K_ib and mass."""
    nv = sys.stiffness.shape[0]
    b = sys.boundary_index
    mask = np.ones(nv, dtype=bool)
    mask[b] = False
    i = np.nonzero(mask)[0]

    K = sys.stiffness.tocsc()
    K_bb = K[np.ix_(b, b)].toarray()
    if len(i):
        K_ii = K[np.ix_(i, i)].tocsc()
        K_ib = K[np.ix_(i, b)].toarray()
        try:
            lu = spla.splu(K_ii)
        except RuntimeError as exc:
            raise FactorizationError(
                f"interior stiffness factorization failed: {exc}") from exc
        X = lu.solve(K_ib)
        S = K_bb - K[np.ix_(b, i)].toarray() @ X
    else:
        S = K_bb
    S = 0.5 * (S + S.T)
    Mb = sys.boundary_mass[np.ix_(b, b)].toarray()
    Mb = 0.5 * (Mb + Mb.T)
    return S, Mb


def solve_spectrum(schur: np.ndarray, mass: np.ndarray, k: int,
                   metadata: dict | None = None) -> SteklovSpectrum:
    """k+1 smallest eigenpairs of S u = sigma M u (mass-orthonormal)."""
    nb = schur.shape[0]
    if k + 1 > nb:
        raise DomainError(f"requested {k + 1} eigenvalues from a {nb}-node boundary")
    try:
        vals, vecs = sla.eigh(schur, mass)
    except sla.LinAlgError as exc:
        raise FactorizationError(
            f"boundary mass not positive definite: {exc}") from exc
    vals = vals[:k + 1]
    vecs = vecs[:, :k + 1]
    return SteklovSpectrum(eigenvalues=vals, boundary_eigenvectors=vecs,
                           metadata=dict(metadata or {}))


def domain_spectrum(mesh: TriMesh, form: SpaceForm, w: RadialWeight, k: int,
                    config: NumericsConfig = DEFAULT_CONFIG) -> SteklovSpectrum:
    """Assemble, reduce and solve one mesh; attaches mesh/weight metadata."""
    sys = assemble(mesh, form, w, config)
    S, Mb = dtn_reduce(sys)
    meta = {
        "h": mesh.h,
        "curvature": form.curvature.label,
        "n": form.dim,
        "weight": w.label,
        "vertices": len(mesh.vertices),
        "boundary_nodes": len(sys.boundary_index),
    }
    if mesh.domain is not None:
        meta["domain"] = mesh.domain.label
    return solve_spectrum(S, Mb, k, metadata=meta)


def spectra_at_levels(dom: Domain2D, form: SpaceForm, w: RadialWeight, k: int,
                      rings: int, sectors: int, levels: int,
                      config: NumericsConfig = DEFAULT_CONFIG
                      ) -> tuple[list[TriMesh], list[SteklovSpectrum]]:
    """Spectra on a uniform refinement hierarchy (coarse to fine)."""
    meshes = mesh_levels(dom, rings, sectors, levels, config)
    return meshes, [domain_spectrum(m, form, w, k, config) for m in meshes]
