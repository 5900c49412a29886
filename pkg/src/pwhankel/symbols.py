r"""The counterexample symbol family and its test function.

A symbol is determined by (n, r): n radial bumps of spectral radius r,
translated to distance 2 - r from the origin at the n-th roots of unity,

    phi_hat(xi) = sum_j psi(|xi - c_j| / r),   c_j = (2-r) e^{i theta_j}.

In physical space each translate is a modulated copy of the same radial
bump, so the natural test function f = phi evaluates as

    f(x) = r^2 b(r|x|) * sum_j exp(2*pi*i c_j . x),

and ||f||_1 reduces to a radial integral of |b(r s)| against the angular
L^1 mass of the phase sum, which has 2n-fold symmetry.  The quadrature
here integrates one mirror half-sector, resolves the fastest angular
oscillation with a fixed number of points per period, and grows the
radial cutoff until a rigorous tail bound drops below tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._backend import core
from .errors import ContractError, DomainError, ResourceError
from .fourier import (
    DEFAULT_PROFILE,
    DiscRegion,
    RadialProfile,
    _bump_for,
    bump_profile_eval,
    disc_quadrature,
    profile_moment,
    tail_mass,
)
from .geometry import admissible_radius

TWO_PI = 2.0 * math.pi

# angular quadrature schedule for the phase-sum integrals
_MIN_ANGULAR_NODES = 16
_PTS_PER_OSCILLATION = 8.0
_DEFAULT_NODE_BUDGET = 2_000_000_000


def _regular_centers(n: int, r: float) -> tuple[tuple[float, float], ...]:
    theta = TWO_PI * np.arange(n) / n
    d = 2.0 - r
    return tuple((d * math.cos(t), d * math.sin(t)) for t in theta)


@dataclass(frozen=True)
class SymbolSpec:
    """(n, r, centers, profile) fully determining the symbol and test
    function.  Constructed via build_symbol for admissible radii;
    deliberately inadmissible instances may be built directly for
    negative controls and then skip validate()."""

    n: int
    r: float
    centers: tuple[tuple[float, float], ...]
    profile: RadialProfile = DEFAULT_PROFILE

    def validate(self) -> None:
        d = 2.0 - self.r
        sup = self.r * self.profile.transition_upper
        for cx, cy in self.centers:
            if abs(math.hypot(cx, cy) - d) > 1e-12:
                raise DomainError("center does not sit at distance 2 - r")
        if d - sup < 1.0 - 1e-12 or d + sup > 2.0 + 1e-12:
            raise DomainError("bump support leaves the admissible annulus")
        pts = np.asarray(self.centers)
        for i in range(self.n):
            for k in range(i + 1, self.n):
                if np.hypot(*(pts[i] - pts[k])) <= 2.0 * sup:
                    raise DomainError("bump supports are not pairwise disjoint")

    @property
    def centers_array(self) -> np.ndarray:
        return np.asarray(self.centers, dtype=np.float64)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "r": self.r,
                "centers": [list(c) for c in self.centers],
                "profile": {
                    "transition_lower": self.profile.transition_lower,
                    "transition_upper": self.profile.transition_upper,
                },
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "SymbolSpec":
        data = json.loads(text)
        return SymbolSpec(
            n=int(data["n"]),
            r=float(data["r"]),
            centers=tuple(tuple(c) for c in data["centers"]),
            profile=RadialProfile(
                transition_lower=data["profile"]["transition_lower"],
                transition_upper=data["profile"]["transition_upper"],
            ),
        )


def build_symbol(n: int, profile: RadialProfile = DEFAULT_PROFILE) -> SymbolSpec:
    """Symbol with the admissible radius and n equally spaced centers."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    r = admissible_radius(n)
    spec = SymbolSpec(n=n, r=r, centers=_regular_centers(n, r), profile=profile)
    spec.validate()
    return spec


def phi_hat_eval(spec: SymbolSpec, xi):
    """Spectral side of the symbol at xi ((2,) point or (N, 2) array)."""
    arr = np.asarray(xi, dtype=np.float64)
    single = arr.ndim == 1
    pts = np.atleast_2d(arr)
    out = core.phi_hat_sum(
        np.ascontiguousarray(pts[:, 0]),
        np.ascontiguousarray(pts[:, 1]),
        spec.centers_array,
        spec.r,
        spec.profile.transition_lower,
        spec.profile.transition_upper,
    )
    return float(out[0]) if single else out


class BhatNorms(NamedTuple):
    l1: float
    l2sq: float


def bhat_norms(r: float, profile: RadialProfile = DEFAULT_PROFILE) -> BhatNorms:
    """L1 norm and squared L2 norm of the scale-r spectral bump:
    2*pi*r^2 * integral psi^p(t) t dt for p = 1, 2."""
    if not 0.0 < r < 0.5:
        raise DomainError(f"scale must lie in (0, 1/2), got {r}")
    scale = TWO_PI * r * r
    return BhatNorms(
        l1=scale * profile_moment(profile, 1),
        l2sq=scale * profile_moment(profile, 2),
    )


def f_spatial_eval(spec: SymbolSpec, x):
    """Physical-space test function f(x) = r^2 b(r|x|) sum_j e^{2 pi i c_j.x}."""
    arr = np.asarray(x, dtype=np.float64)
    single = arr.ndim == 1
    pts = np.atleast_2d(arr)
    s = np.hypot(pts[:, 0], pts[:, 1])
    envelope = spec.r**2 * _bump_for(spec.profile).values(spec.r * s)
    c = spec.centers_array
    phases = np.exp(TWO_PI * 1j * (pts @ c.T))
    out = envelope * phases.sum(axis=1)
    return complex(out[0]) if single else out


def _check_regular(spec: SymbolSpec) -> None:
    expected = np.asarray(_regular_centers(spec.n, spec.r))
    if not np.allclose(expected, spec.centers_array, atol=1e-12):
        raise ContractError(
            "radial quadrature of f requires the regular equally spaced family"
        )


class FL1Norm(NamedTuple):
    value: float  # quadrature plus tail bound, upper biased
    error_estimate: float  # the tail bound
    radius: float  # final radial cutoff
    shells: int  # number of radial shells integrated


def _phase_l1_segment(spec: SymbolSpec, s, power: int) -> np.ndarray:
    return core.phase_sector_lp(
        np.ascontiguousarray(s),
        spec.n,
        2.0 - spec.r,
        power,
        _MIN_ANGULAR_NODES,
        _PTS_PER_OSCILLATION,
    )


def _segment_node_count(spec: SymbolSpec, s) -> int:
    half = math.pi / spec.n
    m = np.maximum(
        _MIN_ANGULAR_NODES,
        np.ceil(_PTS_PER_OSCILLATION * (2.0 - spec.r) * s * half),
    )
    return int(np.sum(m + 1))


def f_l1_norm(
    spec: SymbolSpec,
    tol: float = 1e-3,
    max_nodes: int = _DEFAULT_NODE_BUDGET,
) -> FL1Norm:
    """||f||_1 by polar quadrature with a rigorous tail bound.

    Integrates r^2 |b(r s)| * (angular L1 of the phase sum) * s over
    midpoint shells of spacing min(0.02, 1/(8(2-r))), starting at radial
    cutoff 4/r and doubling it until n * tail_mass(r * R) <= tol * value.
    The returned value includes the tail bound (upper biased); the tail
    bound is also reported as the error estimate.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    _check_regular(spec)
    r = spec.r
    bump = _bump_for(spec.profile)
    ds = min(0.02, 1.0 / (8.0 * (2.0 - r)))
    radius = 4.0 / r
    integral = 0.0
    shells_done = 0
    nodes_used = 0
    while True:
        total_shells = int(math.ceil(radius / ds))
        m = np.arange(shells_done, total_shells)
        if m.size:
            s = (m + 0.5) * ds
            nodes_used += _segment_node_count(spec, s)
            if nodes_used > max_nodes:
                raise ResourceError(
                    "angular node budget exhausted before reaching tolerance",
                    required=nodes_used,
                    available=max_nodes,
                    partial=integral,
                )
            g = _phase_l1_segment(spec, s, power=1)
            babs = np.abs(bump.values(r * s))
            integral += float(np.sum(r * r * babs * g * s) * ds)
            shells_done = total_shells
        tm = tail_mass(spec.profile, r * radius)
        tail = spec.n * (tm.value + tm.truncation_error)
        if tail <= tol * (integral + tail):
            return FL1Norm(integral + tail, tail, radius, shells_done)
        radius *= 2.0
        if radius > 2**14 / r:
            raise ResourceError(
                "radial cutoff grew unreasonably without meeting tolerance",
                partial=integral,
            )


def f_l2sq_spatial(spec: SymbolSpec, radius_factor: float = 8.0) -> float:
    """Spatial integral of |f|^2 over |x| <= radius_factor / r plus a tail
    bound; the integrand |b|^2 |phase sum|^2 is smooth so the fixed-factor
    cutoff is ample for percent-level checks."""
    _check_regular(spec)
    r = spec.r
    bump = _bump_for(spec.profile)
    ds = min(0.02, 1.0 / (8.0 * (2.0 - r)))
    radius = radius_factor / r
    m = np.arange(int(math.ceil(radius / ds)))
    s = (m + 0.5) * ds
    g2 = _phase_l1_segment(spec, s, power=2)
    b = bump.values(r * s)
    integral = float(np.sum(r**4 * b * b * g2 * s) * ds)
    # tail: |f|^2 <= n^2 r^4 b(r s)^2, bounded via sup |b| times the L1 tail
    y = r * radius
    probe = np.abs(bump.values(np.linspace(y, y + 40.0, 400)))
    sup_b = float(probe.max())
    tail = spec.n**2 * r * r * sup_b * tail_mass(spec.profile, y).value
    return integral + tail


def inner_product_frequency(spec: SymbolSpec, h_factor: float = 16.0) -> float:
    """<f_hat, phi_hat> = integral phi_hat^2 by planar quadrature over the
    support discs; independent of the one dimensional profile moments."""
    sup = spec.r * spec.profile.transition_upper
    total = 0.0
    for c in spec.centers:
        grid = disc_quadrature(DiscRegion(radius=sup, center=c), h=spec.r / h_factor)
        vals = phi_hat_eval(spec, grid.nodes)
        total += float(np.sum(grid.weights * vals * vals))
    return total
