r"""Discretized Hankel operator on the Paley-Wiener space of the disc.

The operator maps a spectral density on the unit disc to

    (H f_hat)(eta) = integral_D f_hat(xi) phi_hat(xi + eta) d(xi),

so a quadrature rule {(xi_k, w_k)} on the disc induces the dense matrix

    M[i, k] = sqrt(w_i) * phi_hat(xi_k + eta_i) * sqrt(w_k)

whose largest singular value estimates the L2(D) -> L2(D) operator norm
(the symmetric weight scaling turns quadrature-weighted L2 into plain
l2).  Since phi_hat >= 0 the matrix is elementwise nonnegative and, for
shared row/column grids, symmetric, so plain power iteration with an
all-ones start converges to sigma_max.

Component kernels keep only the grid nodes that can interact with one
translated bump: a node z has a nonzero row or column entry only when
|c_j - z| < 1 + r, so the restriction drops exactly the identically zero
rows and columns of the full-grid matrix and leaves every singular value
unchanged.  The restricted grids of different components are congruent
by an exact grid rotation (the angular node count is a multiple of n).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from ._backend import core
from .errors import (
    ContractError,
    ConvergenceError,
    DomainError,
    ResolutionError,
    ResourceError,
)
from .fourier import (
    DiscRegion,
    LensRegion,
    PlanarGrid,
    _disc_radial_rule,
    bump_profile_eval,
    disc_angular_count,
    gauss_legendre,
)
from .symbols import SymbolSpec

TWO_PI = 2.0 * math.pi

_DEFAULT_MEMORY_BUDGET = 3_200_000_000  # bytes for one dense kernel matrix
_POWER_ITERATION_CAP = 100_000
_FULL_KERNEL_MAX_N = 8


@dataclass(frozen=True, eq=False)
class HankelKernel:
    """Weight-symmetrized dense discretization of the Hankel operator.

    row_ids / col_ids are flat indices into the underlying full-disc
    polar grid (ring * n_angular + angle), kept so kernels restricted to
    different components can be compared node for node.
    """

    matrix: np.ndarray
    row_grid: PlanarGrid
    col_grid: PlanarGrid
    row_ids: np.ndarray
    col_ids: np.ndarray
    spec: SymbolSpec
    component: int | None
    h: float

    def __post_init__(self):
        self.matrix.setflags(write=False)
        self.row_ids.setflags(write=False)
        self.col_ids.setflags(write=False)

    @property
    def shape(self):
        return self.matrix.shape


def _memory_budget(explicit=None) -> int:
    if explicit is not None:
        return int(explicit)
    return int(os.environ.get("PWHANKEL_MEMORY_BUDGET", _DEFAULT_MEMORY_BUDGET))


def _restricted_disc_nodes(spec: SymbolSpec, h: float, center=None):
    """Full-disc polar grid at resolution h (angular count a multiple of
    n), optionally restricted to {z : |center - z| < 1 + support_radius}.

    Returns (x, y, w, flat_ids).
    """
    rho, w_rho = _disc_radial_rule(1.0, h)
    n_ang = disc_angular_count(1.0, h, multiple=spec.n)
    d_theta = TWO_PI / n_ang
    theta = d_theta * np.arange(n_ang)
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    reach = None
    if center is not None:
        cx, cy = center
        reach2 = (1.0 + spec.r * spec.profile.transition_upper) ** 2
    xs, ys, ws, ids = [], [], [], []
    for i, (rr, wr) in enumerate(zip(rho, w_rho)):
        x = rr * cos_t
        y = rr * sin_t
        if center is None:
            keep = slice(None)
            kept_ids = i * n_ang + np.arange(n_ang)
        else:
            mask = (x - cx) ** 2 + (y - cy) ** 2 < reach2
            if not mask.any():
                continue
            keep = mask
            kept_ids = i * n_ang + np.nonzero(mask)[0]
        xs.append(x[keep])
        ys.append(y[keep])
        ws.append(np.full(xs[-1].shape[0], wr * rr * d_theta))
        ids.append(kept_ids)
    return (
        np.ascontiguousarray(np.concatenate(xs)),
        np.ascontiguousarray(np.concatenate(ys)),
        np.ascontiguousarray(np.concatenate(ws)),
        np.ascontiguousarray(np.concatenate(ids)),
    )


def build_kernel(
    spec: SymbolSpec,
    component: int | None = None,
    h: float | None = None,
    memory_budget: int | None = None,
) -> HankelKernel:
    """Assemble the dense kernel matrix for the full symbol or one
    component.

    The resolution h (default r/8) must satisfy h <= r/4; the kernel
    varies on scale r and coarser grids cannot resolve it.  Full-symbol
    kernels use the whole disc grid and are limited to n <= 8; component
    kernels restrict the same grid to the interaction region of c_j.
    """
    r = spec.r
    if h is None:
        h = r / 8.0
    if h <= 0 or h > r / 4.0 * (1.0 + 1e-12):
        raise ResolutionError(
            f"h = {h} too coarse: kernel varies on scale r = {r}, need h <= r/4"
        )
    if component is not None:
        if not 1 <= component <= spec.n:
            raise DomainError(f"component must lie in 1..{spec.n}, got {component}")
        center = spec.centers[component - 1]
        x, y, w, ids = _restricted_disc_nodes(spec, h, center=center)
        region = LensRegion(center=center, reach=1.0 + r * spec.profile.transition_upper)
        centers_used = np.asarray([center], dtype=np.float64)
    else:
        if spec.n > _FULL_KERNEL_MAX_N:
            raise ResourceError(
                f"full-symbol kernel for n = {spec.n} exceeds the dense budget; "
                "use component kernels (the decomposition is orthogonal)",
            )
        x, y, w, ids = _restricted_disc_nodes(spec, h, center=None)
        region = DiscRegion(radius=1.0)
        centers_used = spec.centers_array
    n_nodes = x.shape[0]
    required = 8 * n_nodes * n_nodes
    budget = _memory_budget(memory_budget)
    if required > budget:
        raise ResourceError(
            f"kernel matrix needs {required} bytes for {n_nodes} x {n_nodes} "
            f"nodes, budget is {budget}",
            required=required,
            available=budget,
        )
    sqw = np.sqrt(w)
    matrix = core.hankel_matrix(
        x,
        y,
        sqw,
        x,
        y,
        sqw,
        centers_used,
        r,
        spec.profile.transition_lower,
        spec.profile.transition_upper,
    )
    grid = PlanarGrid(np.column_stack([x, y]), w, region, h)
    return HankelKernel(
        matrix=matrix,
        row_grid=grid,
        col_grid=grid,
        row_ids=ids,
        col_ids=ids,
        spec=spec,
        component=component,
        h=h,
    )


def operator_norm(kernel: HankelKernel, tol: float = 1e-9):
    """Largest singular value by power iteration.

    Deterministic all-ones start (positive overlap with the Perron
    vector of the nonnegative symmetric matrix); converged when two
    successive Rayleigh quotients agree to relative tol.  Returns
    (sigma_max, iterations); raises ConvergenceError at the iteration
    cap with the last estimate attached.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    m = kernel.matrix
    n = m.shape[0]
    v = np.full(n, 1.0 / math.sqrt(n))
    lam_prev = -1.0
    for it in range(1, _POWER_ITERATION_CAP + 1):
        w = m @ v
        lam = float(v @ w)
        norm_w = float(np.linalg.norm(w))
        if norm_w == 0.0:
            return 0.0, it
        v = w / norm_w
        if it > 1 and abs(lam - lam_prev) <= tol * max(abs(lam), 1e-300):
            return lam, it
        lam_prev = lam
    raise ConvergenceError(
        f"power iteration did not converge in {_POWER_ITERATION_CAP} iterations",
        last_estimate=lam_prev,
        iterations=_POWER_ITERATION_CAP,
    )


def apply(kernel: HankelKernel, fhat: np.ndarray) -> np.ndarray:
    """Discrete image of a spectral sample vector on the column grid.

    Input and output are raw samples; quadrature weights are handled
    internally (weighted L2 norms correspond to sqrt(w)-scaled l2).
    """
    fhat = np.asarray(fhat, dtype=np.float64)
    if fhat.shape != (kernel.col_grid.size,):
        raise ContractError(
            f"sample vector has shape {fhat.shape}, column grid has "
            f"{kernel.col_grid.size} nodes"
        )
    col_sqw = np.sqrt(kernel.col_grid.weights)
    row_sqw = np.sqrt(kernel.row_grid.weights)
    return (kernel.matrix @ (col_sqw * fhat)) / row_sqw


def _smooth_random_field(rng: np.random.Generator):
    """Random smooth spectral density: Gaussian blobs spread over the
    disc, wide enough to load the near-boundary columns of the kernels."""
    k = 3
    amps = rng.uniform(0.5, 1.5, size=k)
    radii = rng.uniform(0.0, 0.7, size=k)
    angles = rng.uniform(0.0, TWO_PI, size=k)
    zx = radii * np.cos(angles)
    zy = radii * np.sin(angles)
    widths = rng.uniform(0.15, 0.45, size=k)

    def field(x, y):
        out = np.zeros_like(x)
        for a, cx, cy, s in zip(amps, zx, zy, widths):
            out += a * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2.0 * s * s))
        return out

    return field


def cross_orthogonality(
    spec: SymbolSpec,
    j: int,
    k: int,
    trials: int = 10,
    h: float | None = None,
    seed: int = 2024,
) -> float:
    """Largest relative inner product between component images.

    Applies the kernels of components j and k to random smooth spectral
    densities on the shared disc grid and returns the max over trials of
    |<H_j f, H_k f>| / (||H_j f|| ||H_k f||), with 0/0 counted as 0.
    The inner product is taken over the union of the two row regions;
    rows outside a component's region are identically zero by the exact
    support of the profile, so the restriction is bookkeeping, not an
    assumption.
    """
    if j == k:
        raise DomainError("need two distinct components")
    ker_j = build_kernel(spec, component=j, h=h)
    ker_k = build_kernel(spec, component=k, h=h)
    # map both row sets into their common-grid intersection
    common, idx_j, idx_k = np.intersect1d(
        ker_j.row_ids, ker_k.row_ids, assume_unique=True, return_indices=True
    )
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        field = _smooth_random_field(rng)
        images = []
        for ker in (ker_j, ker_k):
            nodes = ker.col_grid.nodes
            fhat = field(nodes[:, 0], nodes[:, 1])
            images.append(ker.matrix @ (np.sqrt(ker.col_grid.weights) * fhat))
        gj, gk = images  # sqrt(w)-scaled images, plain l2 = weighted L2
        num = float(gj[idx_j] @ gk[idx_k]) if common.size else 0.0
        den = float(np.linalg.norm(gj) * np.linalg.norm(gk))
        ratio = 0.0 if den == 0.0 else abs(num) / den
        worst = max(worst, ratio)
    return worst


def hs_norm_direct(kernel: HankelKernel) -> float:
    """Frobenius norm of the weighted kernel matrix (discrete
    Hilbert-Schmidt norm)."""
    return float(np.linalg.norm(kernel.matrix))


def _support_weighted_integral(spec: SymbolSpec, j: int, weight_fn) -> float:
    """integral over the support disc of component j of
    psi(|w - c_j| / r)^2 * weight_fn(|w|), by polar quadrature around c_j
    (Gauss-Legendre radially, periodic trapezoid in angle)."""
    cx, cy = spec.centers[j - 1]
    sup = spec.r * spec.profile.transition_upper
    n_t, n_beta = 96, 384
    t, w_t = gauss_legendre(n_t, 0.0, sup)
    beta = TWO_PI * np.arange(n_beta) / n_beta
    d_beta = TWO_PI / n_beta
    psi2 = bump_profile_eval(spec.profile, t / spec.r) ** 2
    x = cx + np.outer(t, np.cos(beta))
    y = cy + np.outer(t, np.sin(beta))
    mag = np.hypot(x, y)
    vals = weight_fn(mag)
    return float(((w_t * psi2 * t) @ vals).sum() * d_beta)


def _lens_area_clamped(d: np.ndarray) -> np.ndarray:
    d = np.clip(d, 0.0, 2.0)
    return 2.0 * np.arccos(d / 2.0) - (d / 2.0) * np.sqrt(4.0 - d * d)


def hs_lens_sq_component(spec: SymbolSpec, j: int = 1) -> float:
    """Squared Hilbert-Schmidt norm of one component via the change of
    variables w = xi + eta: integral |phi_hat_j(w)|^2 * lens_area(|w|)."""
    return _support_weighted_integral(spec, j, _lens_area_clamped)


def hs_norm_lens(spec: SymbolSpec) -> float:
    """Hilbert-Schmidt norm of the full symbol from the low dimensional
    lens-area integral (independent of any kernel discretization)."""
    total = sum(hs_lens_sq_component(spec, j) for j in range(1, spec.n + 1))
    return math.sqrt(total)


def peng_integral_component(spec: SymbolSpec, j: int = 1) -> float:
    """integral over one support disc of |phi_hat_j|^2 (2 - |w|)^{3/2}."""
    return _support_weighted_integral(
        spec, j, lambda d: np.maximum(2.0 - d, 0.0) ** 1.5
    )


def peng_integral(spec: SymbolSpec) -> float:
    """Weighted spectral integral whose finiteness characterizes the
    Hilbert-Schmidt class for these operators."""
    return sum(peng_integral_component(spec, j) for j in range(1, spec.n + 1))


# ---------------------------------------------------------------------------
# serialization


def kernel_metadata(kernel: HankelKernel) -> dict:
    """JSON-ready description of a built kernel (grids, resolution,
    provenance); the matrix itself is dumped separately."""
    return {
        "rows": int(kernel.shape[0]),
        "cols": int(kernel.shape[1]),
        "h": kernel.h,
        "component": kernel.component,
        "region": repr(kernel.row_grid.region),
        "row_weight_total": kernel.row_grid.total_weight(),
        "col_weight_total": kernel.col_grid.total_weight(),
        "symbol": json.loads(kernel.spec.to_json()),
    }


def dump_matrix(kernel: HankelKernel, path) -> None:
    """Write the dense matrix as two little-endian uint64 dimensions
    followed by row-major little-endian float64 entries."""
    with open(path, "wb") as fh:
        np.asarray(kernel.shape, dtype="<u8").tofile(fh)
        kernel.matrix.astype("<f8", copy=False).tofile(fh)


def load_matrix(path) -> np.ndarray:
    """Read a matrix written by dump_matrix."""
    with open(path, "rb") as fh:
        dims = np.fromfile(fh, dtype="<u8", count=2)
        data = np.fromfile(fh, dtype="<f8")
    return data.reshape(int(dims[0]), int(dims[1]))
