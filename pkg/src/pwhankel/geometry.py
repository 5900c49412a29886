"""Disc-lens geometry: circle intersection angles, angular intervals,
lens areas, and certified pairwise disjointness of the output spectral
regions of the translated-bump symbols.

For a point w with sqrt(2) <= |w| <= 2 the unit circles around 0 and w
meet at angles theta(+-) = arg(w) +- arccos(|w|/2), and every point of
the lens D(w) (intersection of the two open discs) has its argument
inside that arc.  A bump supported in B((2-r) e^{i theta_j}, r) therefore
produces output spectrum inside an angular interval around theta_j whose
half-width is the maximum of

    f(w) = |arg(w) - theta_j| + arccos(|w|/2)

over the closed support disc.  The gradient of f has a nonvanishing
azimuthal component throughout the annulus, so the maximum sits on the
boundary circle and a one dimensional search certifies it.  The coarser
closed-form bound arccos(1-r) + arcsin(r/(2-r)) (sum of the separate
maxima) is exposed for the sqrt(r) comparison tests but is too loose to
separate neighbouring intervals for n in {4, 5, 6}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, NoIntersectionError, RegimeError

SQRT2 = math.sqrt(2.0)
R0 = 1.0 - 1.0 / SQRT2  # largest radius keeping |w| >= sqrt(2) on the support
TWO_PI = 2.0 * math.pi

# safety pad added to the numerically maximized half-width so the
# certified interval is a superset despite optimizer tolerance
_CERT_PAD = 1e-9


def normalize_angle(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    a = math.fmod(a, TWO_PI)
    if a > math.pi:
        a -= TWO_PI
    elif a <= -math.pi:
        a += TWO_PI
    return a


@dataclass(frozen=True)
class AngularInterval:
    """Arc (center - half_width, center + half_width) on the circle."""

    center: float
    half_width: float

    def __post_init__(self):
        if self.half_width < 0:
            raise DomainError("half_width must be nonnegative")

    def contains(self, angle: float) -> bool:
        return abs(normalize_angle(angle - self.center)) < self.half_width

    def gap_to(self, other: "AngularInterval") -> float:
        """Angular gap between the two arcs (negative means overlap)."""
        sep = abs(normalize_angle(other.center - self.center))
        return sep - self.half_width - other.half_width


def circle_intersection_angles(w) -> tuple[float, float]:
    """Angles where the unit circle meets the unit circle centered at w.

    Valid for sqrt(2) <= |w| <= 2; below sqrt(2) the sector containment
    used downstream fails (RegimeError), above 2 the circles are disjoint
    (NoIntersectionError).  Returns (theta_minus, theta_plus) centered at
    arg(w), not wrapped.
    """
    wx, wy = float(w[0]), float(w[1])
    mag = math.hypot(wx, wy)
    if mag > 2.0:
        raise NoIntersectionError(f"|w| = {mag} > 2: circles do not meet")
    if mag < SQRT2:
        raise RegimeError(f"|w| = {mag} < sqrt(2): outside the sector regime")
    arg = math.atan2(wy, wx)
    arc = math.acos(min(1.0, mag / 2.0))
    return arg - arc, arg + arc


def lens_area(d: float) -> float:
    """Area of the intersection of two unit discs at center distance d."""
    if not 0.0 <= d <= 2.0:
        raise DomainError(f"center distance must lie in [0, 2], got {d}")
    return 2.0 * math.acos(d / 2.0) - (d / 2.0) * math.sqrt(4.0 - d * d)


def admissible_radius(n: int) -> float:
    """Bump radius min(1 - 1/sqrt(2), (2/n)^2) keeping the n translated
    supports' output regions certifiably disjoint."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    return min(R0, (2.0 / n) ** 2)


def closed_form_half_width(r: float) -> float:
    """Sum-of-maxima bound arccos(1-r) + arcsin(r/(2-r)) on the angular
    half-width; always an upper bound for the certified one."""
    if not 0.0 < r <= R0:
        raise RegimeError(f"need 0 < r <= {R0:.12f}, got {r}")
    return math.acos(1.0 - r) + math.asin(r / (2.0 - r))


def _extremal_angle_value(beta: float, r: float) -> float:
    # f(beta) on the boundary circle w = (2-r) + r e^{i beta}
    wx = (2.0 - r) + r * math.cos(beta)
    wy = r * math.sin(beta)
    mag = math.hypot(wx, wy)
    return math.atan2(wy, wx) + math.acos(min(1.0, mag / 2.0))


@lru_cache(maxsize=256)
def certified_half_width(r: float) -> float:
    """Certified angular half-width of the output spectral interval for a
    bump of radius r at center distance 2 - r.

    Maximizes |arg(w) - theta_j| + arccos(|w|/2) over the boundary of the
    support disc (dense scan plus bounded local refinement), then pads by
    a fixed epsilon.  Always <= closed_form_half_width(r).
    """
    if not 0.0 < r <= R0:
        raise RegimeError(f"need 0 < r <= {R0:.12f}, got {r}")
    betas = np.linspace(0.0, math.pi, 2049)
    vals = np.array([_extremal_angle_value(b, r) for b in betas])
    k = int(np.argmax(vals))
    lo = betas[max(0, k - 1)]
    hi = betas[min(len(betas) - 1, k + 1)]
    res = minimize_scalar(
        lambda b: -_extremal_angle_value(b, r),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-13},
    )
    best = max(float(vals[k]), -float(res.fun))
    return best + _CERT_PAD


def component_interval(n: int, r: float, j: int) -> AngularInterval:
    """Certified superset interval for the output spectrum of component j
    (1-based), centered at theta_j = 2*pi*(j-1)/n."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if not 1 <= j <= n:
        raise DomainError(f"component index must lie in 1..{n}, got {j}")
    if not 0.0 < r <= R0:
        raise RegimeError(
            f"need 0 < r <= {R0:.12f} so |w| >= sqrt(2) on the support, got {r}"
        )
    center = TWO_PI * (j - 1) / n
    return AngularInterval(center=center, half_width=certified_half_width(r))


def certify_disjoint(n: int, r: float | None = None) -> tuple[bool, float]:
    """Check that consecutive certified intervals are disjoint mod 2*pi.

    Uses r = admissible_radius(n) unless an explicit radius is given
    (deliberately inadmissible radii serve as negative controls).
    Returns (disjoint, minimum angular gap); disjointness of the angular
    intervals certifies disjointness of the planar output regions.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if r is None:
        r = admissible_radius(n)
    hw = certified_half_width(r)
    min_gap = TWO_PI / n - 2.0 * hw
    return min_gap > 0.0, min_gap
