r"""Quantitative bounds: the closed-form upper bound pi r^2, the duality
lower bound for the bounded-symbol infimum, empirical tail constants of
the physical-space bump, and the n-scaling sweep.

For each n the sweep records the computed operator norm of one component
kernel, the inner product <f_hat, phi_hat> = n ||b_hat_r||_2^2, the
quadrature value of ||f||_1 with its tail bound, and the quotient

    ratio(n) = (n ||b_hat_r||_2^2 / ||f||_1) / sigma_max,

which lower-bounds the best constant relating the bounded-symbol
infimum to the operator norm.  The least squares slope of log(ratio)
against log(n) is the desk-scale signature of the divergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PWHankelError
from .fourier import DEFAULT_PROFILE, RadialProfile, tail_mass
from .geometry import admissible_radius
from .hankel import build_kernel, operator_norm
from .symbols import bhat_norms, build_symbol, f_l1_norm

_DEFAULT_TAIL_RHOS = (1.0, 2.0, 4.0, 8.0, 16.0)

# exact wire schema expected by downstream consumers of the sweep output
CSV_HEADER = (
    "n,r,upper_paper,upper_computed,inner_product,f_l1,f_l1_err,"
    "lower_duality,paper_lower,ratio,error"
)


@dataclass(frozen=True)
class TailBound:
    """Empirical decay constant: tail(rho) <= a_kappa / rho^(kappa-1) for
    every recorded sample (the constant is the max over the samples, so
    the bound holds by construction)."""

    kappa: float
    a_kappa: float
    rho_samples: tuple[tuple[float, float], ...]


def estimate_tail_constant(
    kappa: float,
    rhos=_DEFAULT_TAIL_RHOS,
    profile: RadialProfile = DEFAULT_PROFILE,
) -> TailBound:
    """Empirical tail constant a_kappa = max over sampled rho of
    tail_mass(rho) * rho^(kappa - 1)."""
    if kappa < 1.0:
        raise DomainError(f"need kappa >= 1, got {kappa}")
    samples = []
    a = 0.0
    for rho in rhos:
        mass = tail_mass(profile, rho).value
        samples.append((float(rho), mass))
        a = max(a, mass * rho ** (kappa - 1.0))
    return TailBound(kappa=kappa, a_kappa=a, rho_samples=tuple(samples))


def closed_form_lower_bound(n: int, kappa: float, tail: TailBound) -> float:
    """The analytic lower bound pi r^2 n^(1/2 - 1/(2 kappa)) / (4 (pi + a_kappa))
    for the bounded-symbol infimum, with r = admissible_radius(n)."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if kappa < 1.0:
        raise DomainError(f"need kappa >= 1, got {kappa}")
    r = admissible_radius(n)
    exponent = 0.5 - 1.0 / (2.0 * kappa)
    return math.pi * r * r * n**exponent / (4.0 * (math.pi + tail.a_kappa))


def duality_lower_bound(n: int, tol: float = 1e-3) -> float:
    """Lower bound for the bounded-symbol infimum via the test function:
    (n ||b_hat_r||_2^2) / ||f||_1, with the upper-biased ||f||_1 estimate
    so the quotient stays a valid lower bound up to the quadrature error
    of the numerator."""
    spec = build_symbol(n)
    numerator = n * bhat_norms(spec.r, spec.profile).l2sq
    fl1 = f_l1_norm(spec, tol)
    return numerator / (fl1.value + fl1.error_estimate)


@dataclass(frozen=True)
class BoundsReport:
    """Per-n record of the scaling sweep.  upper_closed_form is pi r^2;
    lower_closed_form is the analytic kappa-formula with the empirical
    tail constant."""

    n: int
    r: float
    upper_closed_form: float = math.nan
    upper_computed: float = math.nan
    inner_product: float = math.nan
    f_l1: float = math.nan
    f_l1_err: float = math.nan
    lower_duality: float = math.nan
    lower_closed_form: float = math.nan
    ratio: float = math.nan
    error: str = ""


def compute_report(
    n: int,
    h: float | None = None,
    tol: float = 1e-3,
    kappa: float = 4.0,
    tail: TailBound | None = None,
) -> BoundsReport:
    """Full per-n pipeline: component kernel norm, profile norms, test
    function L1 norm, duality quotient."""
    spec = build_symbol(n)
    r = spec.r
    if tail is None:
        tail = estimate_tail_constant(kappa, profile=spec.profile)
    kernel = build_kernel(spec, component=1, h=h)
    sigma, _ = operator_norm(kernel)
    del kernel
    norms = bhat_norms(r, spec.profile)
    inner = n * norms.l2sq
    fl1 = f_l1_norm(spec, tol)
    lower = inner / (fl1.value + fl1.error_estimate)
    return BoundsReport(
        n=n,
        r=r,
        upper_closed_form=math.pi * r * r,
        upper_computed=sigma,
        inner_product=inner,
        f_l1=fl1.value,
        f_l1_err=fl1.error_estimate,
        lower_duality=lower,
        lower_closed_form=closed_form_lower_bound(n, kappa, tail),
        ratio=lower / sigma,
    )


@dataclass(frozen=True)
class ScalingResult:
    reports: tuple[BoundsReport, ...]
    slope: float | None
    kappa: float
    a_kappa: float
    tol: float
    profile: RadialProfile = field(default=DEFAULT_PROFILE)


def scaling_experiment(
    n_list,
    h: float | None = None,
    tol: float = 1e-3,
    kappa: float = 4.0,
    profile: RadialProfile = DEFAULT_PROFILE,
    workers: int = 1,
) -> ScalingResult:
    """Run the per-n pipeline over an ascending list of n and fit the
    log-log slope of ratio against n.

    Per-n failures are recorded in the report's error field without
    aborting the sweep; the slope is fit over the successful rows and is
    None when fewer than two are available.  With workers > 1 the
    independent per-n reports run on a thread pool and are merged back in
    n order, so the result is identical to the sequential one."""
    n_list = list(n_list)
    if not n_list:
        raise DomainError("n_list must not be empty")
    if any(n < 2 for n in n_list):
        raise DomainError("every n must be >= 2")
    if sorted(n_list) != n_list:
        raise DomainError("n_list must be ascending")
    tail = estimate_tail_constant(kappa, profile=profile)

    def one(n: int) -> BoundsReport:
        r = admissible_radius(n)
        try:
            if h is not None and h > r / 8.0 * (1.0 + 1e-12):
                raise DomainError(f"h = {h} exceeds r/8 = {r / 8.0} for n = {n}")
            return compute_report(n, h=h, tol=tol, kappa=kappa, tail=tail)
        except PWHankelError as exc:
            return BoundsReport(n=n, r=r, error=str(exc))

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(one, n_list))
    else:
        reports = [one(n) for n in n_list]
    good = [
        rep
        for rep in reports
        if not rep.error and math.isfinite(rep.ratio) and rep.ratio > 0
    ]
    slope = None
    if len(good) >= 2:
        x = np.log([rep.n for rep in good])
        y = np.log([rep.ratio for rep in good])
        slope = float(np.polyfit(x, y, 1)[0])
    return ScalingResult(
        reports=tuple(reports),
        slope=slope,
        kappa=kappa,
        a_kappa=tail.a_kappa,
        tol=tol,
        profile=profile,
    )


# ---------------------------------------------------------------------------
# wire formats


def _fmt(x: float) -> str:
    return repr(float(x))


def reports_to_csv(reports) -> str:
    lines = [CSV_HEADER]
    for rep in reports:
        lines.append(
            ",".join(
                [
                    str(rep.n),
                    _fmt(rep.r),
                    _fmt(rep.upper_closed_form),
                    _fmt(rep.upper_computed),
                    _fmt(rep.inner_product),
                    _fmt(rep.f_l1),
                    _fmt(rep.f_l1_err),
                    _fmt(rep.lower_duality),
                    _fmt(rep.lower_closed_form),
                    _fmt(rep.ratio),
                    rep.error.replace(",", ";"),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _jsonable(x: float):
    return float(x) if math.isfinite(x) else None


def result_to_json_dict(result: ScalingResult, h, tol, seed) -> dict:
    """JSON document with the same per-row fields as the CSV plus run
    provenance (profile parameters, resolution, tolerances, kappa and the
    empirical tail constant)."""
    return {
        "provenance": {
            "profile": {
                "transition_lower": result.profile.transition_lower,
                "transition_upper": result.profile.transition_upper,
            },
            "h": h,
            "tol": tol,
            "kappa": result.kappa,
            "a_kappa": result.a_kappa,
            "seed": seed,
        },
        "slope": result.slope,
        "reports": [
            {
                "n": rep.n,
                "r": rep.r,
                "upper_paper": _jsonable(rep.upper_closed_form),
                "upper_computed": _jsonable(rep.upper_computed),
                "inner_product": _jsonable(rep.inner_product),
                "f_l1": _jsonable(rep.f_l1),
                "f_l1_err": _jsonable(rep.f_l1_err),
                "lower_duality": _jsonable(rep.lower_duality),
                "paper_lower": _jsonable(rep.lower_closed_form),
                "ratio": _jsonable(rep.ratio),
                "error": rep.error,
            }
            for rep in result.reports
        ],
    }
