"""Command line driver.

Subcommands: geometry, norm, scaling, hs.  Exit codes: 0 success,
2 certification failure, 3 numerical or resource failure, 4 partial
sweep failure, 64 usage error.  Outputs (tables on stdout, CSV/JSON/SVG
files under --out-dir) are deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bounds as bounds_mod
from .errors import (
    ConvergenceError,
    DomainError,
    PWHankelError,
    RegimeError,
    ResolutionError,
    ResourceError,
)
from .geometry import R0, admissible_radius, certify_disjoint, certified_half_width
from .hankel import build_kernel, hs_norm_direct, hs_norm_lens, operator_norm, peng_integral
from .symbols import bhat_norms, build_symbol

EXIT_OK = 0
EXIT_CERTIFICATION = 2
EXIT_NUMERICAL = 3
EXIT_PARTIAL = 4
EXIT_USAGE = 64

_NUMERICAL_ERRORS = (ResolutionError, ResourceError, ConvergenceError)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract wants 64
    def error(self, message):
        raise _UsageError(message)


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    n_list: tuple[int, ...] | None = None
    h_spec: str = "r/8"
    tol: float = 1e-3
    kappa: float = 4.0
    seed: int = 1234
    out_dir: Path | None = None
    extended: bool = False
    r_scale: float = 1.0

    def validate(self):
        if self.tol <= 0:
            raise _UsageError("tolerances must be strictly positive")
        if self.kappa < 1:
            raise _UsageError("kappa must be >= 1")
        if self.n is not None and self.n < 2:
            raise _UsageError("n must be >= 2")
        if self.n_list is not None:
            if not self.n_list:
                raise _UsageError("empty n range")
            if any(n < 2 for n in self.n_list):
                raise _UsageError("every n must be >= 2")


def _parse_n_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    try:
        if ":" in text:
            lo_s, hi_s = text.split(":", 1)
            lo, hi = int(lo_s), int(hi_s)
            values = tuple(range(lo, hi + 1))
        else:
            values = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"cannot parse n list {text!r}") from exc
    return values


def _resolve_h(h_spec: str, r: float) -> float:
    spec = h_spec.strip().lower().replace(" ", "")
    if spec.startswith("r/"):
        try:
            return r / float(spec[2:])
        except ValueError as exc:
            raise _UsageError(f"cannot parse resolution {h_spec!r}") from exc
    try:
        return float(spec)
    except ValueError as exc:
        raise _UsageError(f"cannot parse resolution {h_spec!r}") from exc


def _write_json(out_dir: Path | None, name: str, payload: dict) -> None:
    if out_dir is None:
        return
    out_dir.mkdir(parents=True, exist_ok=True)
    text = json.dumps(payload, sort_keys=True, indent=2)
    (out_dir / name).write_text(text + "\n")


# ---------------------------------------------------------------------------
# geometry


def cmd_geometry(config: RunConfig) -> int:
    rows = []
    all_ok = True
    for n in config.n_list:
        r = min(R0, config.r_scale * (2.0 / n) ** 2)
        try:
            ok, gap = certify_disjoint(n, r)
            hw = certified_half_width(r)
        except RegimeError as exc:
            print(f"n={n}: certification unavailable: {exc}")
            all_ok = False
            continue
        rows.append({"n": n, "r": r, "half_width": hw, "gap": gap, "disjoint": ok})
        if not ok:
            all_ok = False
    print(f"{'n':>4} {'r':>12} {'half-width':>14} {'gap':>14}  status")
    for row in rows:
        status = "ok" if row["disjoint"] else "OVERLAP"
        print(
            f"{row['n']:>4} {row['r']:>12.8f} {row['half_width']:>14.10f} "
            f"{row['gap']:>14.10f}  {status}"
        )
    _write_json(config.out_dir, "geometry.json", {"rows": rows, "all_disjoint": all_ok})
    if not all_ok:
        bad = [row["n"] for row in rows if not row["disjoint"]]
        print(f"certification FAILED for n = {bad}", file=sys.stderr)
        return EXIT_CERTIFICATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# norm


def cmd_norm(config: RunConfig) -> int:
    spec = build_symbol(config.n)
    r = spec.r
    h = _resolve_h(config.h_spec, r)
    if h > r / 8.0 * (1.0 + 1e-12):
        raise ResolutionError(f"h = {h} exceeds the required r/8 = {r / 8.0}")
    kernel = build_kernel(spec, component=1, h=h)
    sigma, iterations = operator_norm(kernel, tol=min(config.tol, 1e-9))
    del kernel
    norms = bhat_norms(r, spec.profile)
    upper = math.pi * r * r
    ladder = {}
    for divisor in (4, 8, 16):
        ker = build_kernel(spec, component=1, h=r / divisor)
        ladder[f"r/{divisor}"], _ = operator_norm(ker, tol=min(config.tol, 1e-9))
        del ker
    print(f"n = {config.n}, r = {r:.10f}, h = {h:.3e}")
    print(f"sigma_max        = {sigma:.12f}  ({iterations} iterations)")
    print(f"pi r^2           = {upper:.12f}")
    print(f"||b_hat_r||_1    = {norms.l1:.12f}")
    print("refinement ladder:")
    for key, value in ladder.items():
        print(f"  h = {key:>5}: sigma = {value:.12f}")
    _write_json(
        config.out_dir,
        "norm.json",
        {
            "n": config.n,
            "r": r,
            "h": h,
            "sigma_max": sigma,
            "iterations": iterations,
            "upper_pi_r_sq": upper,
            "bhat_l1": norms.l1,
            "ladder": ladder,
        },
    )
    if sigma > upper * 1.05:
        print("sigma_max exceeds pi r^2 beyond discretization slack", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# scaling


def _svg_scaling_plot(ns, ratios, slope) -> str:
    width, height, margin = 640, 480, 70
    xs = [math.log10(n) for n in ns]
    ys = [math.log10(rho) for rho in ratios]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def px(x):
        return margin + (x - x_lo) / x_span * (width - 2 * margin)

    def py(y):
        return height - margin - (y - y_lo) / y_span * (height - 2 * margin)

    pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    circles = "".join(
        f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="4" fill="black"/>'
        for x, y in zip(xs, ys)
    )
    ticks = "".join(
        f'<text x="{px(x):.2f}" y="{height - margin + 20}" font-size="12" '
        f'text-anchor="middle">{n}</text>'
        for x, n in zip(xs, ns)
    )
    y_ticks = "".join(
        f'<text x="{margin - 8}" y="{py(y):.2f}" font-size="12" '
        f'text-anchor="end">{rho:.3g}</text>'
        for y, rho in zip(ys, ratios)
    )
    slope_text = "slope undefined" if slope is None else f"fitted slope = {slope:.4f}"
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
        f'<rect width="{width}" height="{height}" fill="white"/>'
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>'
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>'
        f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>'
        f"{circles}{ticks}{y_ticks}"
        f'<text x="{width / 2:.0f}" y="{height - 20}" font-size="14" '
        f'text-anchor="middle">n (log scale)</text>'
        f'<text x="{width / 2:.0f}" y="{margin - 30}" font-size="14" '
        f'text-anchor="middle">lower/upper ratio vs n, {slope_text}</text>'
        "</svg>\n"
    )


def cmd_scaling(config: RunConfig) -> int:
    if any(n > 32 for n in config.n_list):
        raise _UsageError("n > 32 is not supported")
    if not config.extended and any(n > 16 for n in config.n_list):
        raise _UsageError("n > 16 requires --extended")
    if list(config.n_list) != sorted(config.n_list):
        raise _UsageError("n list must be ascending")
    h = None
    if config.h_spec.strip().lower().replace(" ", "") != "r/8":
        # per-n default is r/8; an absolute resolution applies to every n
        h = _resolve_h(config.h_spec, admissible_radius(max(config.n_list)))
    workers = int(os.environ.get("PWHANKEL_WORKERS", "1"))
    result = bounds_mod.scaling_experiment(
        list(config.n_list),
        h=h,
        tol=config.tol,
        kappa=config.kappa,
        workers=workers,
    )
    csv_text = bounds_mod.reports_to_csv(result.reports)
    print(csv_text, end="")
    if result.slope is not None:
        print(f"fitted log-log slope: {result.slope:.6f}")
    else:
        print("fitted log-log slope: undefined (fewer than two valid points)")
    if config.out_dir is not None:
        config.out_dir.mkdir(parents=True, exist_ok=True)
        (config.out_dir / "scaling.csv").write_text(csv_text)
        payload = bounds_mod.result_to_json_dict(
            result, h=config.h_spec, tol=config.tol, seed=config.seed
        )
        (config.out_dir / "scaling.json").write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n"
        )
        good = [rep for rep in result.reports if not rep.error]
        if good:
            svg = _svg_scaling_plot(
                [rep.n for rep in good], [rep.ratio for rep in good], result.slope
            )
            (config.out_dir / "scaling.svg").write_text(svg)
    if any(rep.error for rep in result.reports):
        return EXIT_PARTIAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# hs


def cmd_hs(config: RunConfig) -> int:
    spec = build_symbol(config.n)
    r = spec.r
    kernel = build_kernel(spec, component=1, h=r / 8.0)
    # restricted component grids drop only identically zero rows/columns,
    # so the full-symbol Frobenius norm is sqrt(n) times the component one
    direct = math.sqrt(spec.n) * hs_norm_direct(kernel)
    del kernel
    lens = hs_norm_lens(spec)
    peng = peng_integral(spec)
    print(f"n = {config.n}, r = {r:.10f}")
    print(f"hs_norm_direct = {direct:.12f}")
    print(f"hs_norm_lens   = {lens:.12f}")
    print(f"peng_integral  = {peng:.12e}")
    print(f"direct/lens    = {direct / lens:.8f}")
    print(f"peng/lens^2    = {peng / lens**2:.8f}")
    _write_json(
        config.out_dir,
        "hs.json",
        {
            "n": config.n,
            "r": r,
            "hs_norm_direct": direct,
            "hs_norm_lens": lens,
            "peng_integral": peng,
            "ratio_direct_lens": direct / lens,
            "ratio_peng_lens_sq": peng / lens**2,
        },
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> _Parser:
    parser = _Parser(prog="pwhankel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--h", dest="h_spec", default="r/8",
                       help="grid resolution: 'r/8' style or an absolute value")
        p.add_argument("--tol", type=float, default=1e-3)
        p.add_argument("--kappa", type=float, default=4.0)
        p.add_argument("--seed", type=int, default=1234)
        p.add_argument("--out-dir", type=Path, default=None)
        p.add_argument("--extended", action="store_true",
                       help="allow n up to 32 in sweeps")

    p_geo = sub.add_parser("geometry", help="certify disjointness of the output regions")
    p_geo.add_argument("--n-list", default="2:64",
                       help="comma list or lo:hi range of n values")
    p_geo.add_argument("--r-scale", type=float, default=1.0,
                       help="scale factor on the (2/n)^2 radius (negative control)")
    add_common(p_geo)

    p_norm = sub.add_parser("norm", help="operator norm of one component kernel")
    p_norm.add_argument("--n", type=int, required=True)
    add_common(p_norm)

    p_scal = sub.add_parser("scaling", help="n sweep of lower/upper bound ratio")
    p_scal.add_argument("--n-list", required=True)
    add_common(p_scal)

    p_hs = sub.add_parser("hs", help="Hilbert-Schmidt norms and the weighted integral")
    p_hs.add_argument("--n", type=int, required=True)
    add_common(p_hs)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig(
            command=args.command,
            n=getattr(args, "n", None),
            n_list=_parse_n_list(args.n_list) if hasattr(args, "n_list") else None,
            h_spec=args.h_spec,
            tol=args.tol,
            kappa=args.kappa,
            seed=args.seed,
            out_dir=args.out_dir,
            extended=args.extended,
            r_scale=getattr(args, "r_scale", 1.0),
        )
        config.validate()
        handler = {
            "geometry": cmd_geometry,
            "norm": cmd_norm,
            "scaling": cmd_scaling,
            "hs": cmd_hs,
        }[config.command]
        return handler(config)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PWHankelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
