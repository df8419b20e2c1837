"""Command-line front end.

Subcommands: render (classification rasters to PNG/JSON), orbit (single
seed trace as CSV), periodic (Newton search for periodic points),
singularities (window-truncated singular set), and verify
(commute / julia-eq / translate / sectors reports). Verify subcommands
exit 0 exactly when their thresholds are met.
"""

from __future__ import annotations

import csv
import json
import sys

import click

from .fndef import fn_from_source
from .orbits import OrbitConfig, classify_orbit, iterate_orbit
from .periodic import FindDiagnostics, find_periodic, multiplier_transport
from .raster import RunConfig, export_json, export_png, render
from .singular import Rect, iterated_singular_set, singular_set
from .sphere import XComplex, chordal
from .verify import (baker_sectors, check_commutation, julia_equality,
                     translation_invariance)

DEFAULT_MIN_AGREEMENT = 0.97
DEFAULT_COMMUTE_TOL = 1e-6


def _parse_window(text: str) -> Rect:
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 4:
        raise click.BadParameter("window must be re_min,re_max,im_min,im_max")
    return Rect(*parts)


def _parse_res(text: str):
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise click.BadParameter("resolution must look like 600x600")


def _parse_complex(text: str) -> complex:
    if "," in text:
        re, im = text.split(",")
        return complex(float(re), float(im))
    return complex(float(text), 0.0)


def _write_json(path: str | None, doc: dict):
    blob = json.dumps(doc, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(blob + "\n")
    else:
        click.echo(blob)


def _cnum(z: complex):
    return [z.real, z.imag]


@click.group()
@click.version_option(package_name="dynlab")
def main():
    """Iteration, classification and verification for meromorphic maps."""


@main.command("render")
@click.option("--fn", "fn_src", help="map expression in z")
@click.option("--window", "window_s", help="re_min,re_max,im_min,im_max")
@click.option("--res", "res_s", default="300x300", show_default=True)
@click.option("--max-iter", type=int, default=None)
@click.option("--period", "period_s", default=None,
              help="declared translation period, re[,im]")
@click.option("--config", "config_path", type=click.Path(exists=True),
              help="run configuration JSON (overrides other flags)")
@click.option("--refine-max-iter", type=int, default=None,
              help="second-pass budget for unresolved pixels")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--out", "out_png", type=click.Path(), help="PNG output path")
@click.option("--json", "out_json", type=click.Path(),
              help="raster JSON output path")
def render_cmd(fn_src, window_s, res_s, max_iter, period_s, config_path,
               refine_max_iter, threads, out_png, out_json):
    """Classify every pixel of a window and export the raster."""
    if config_path:
        with open(config_path) as fh:
            cfg = RunConfig.from_dict(json.load(fh))
    else:
        if not fn_src or not window_s:
            raise click.UsageError("--fn and --window (or --config) required")
        orbit = OrbitConfig(max_iter=max_iter) if max_iter else OrbitConfig()
        cfg = RunConfig(
            fn_src=fn_src, window=_parse_window(window_s),
            resolution=_parse_res(res_s), orbit=orbit,
            period=_parse_complex(period_s) if period_s else None)
    try:
        raster = render(cfg, threads=threads, refine_max_iter=refine_max_iter)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    if out_png:
        export_png(raster, out_png, max_iter=cfg.orbit.max_iter)
    if out_json:
        export_json(raster, out_json, config=cfg)
    if not out_png and not out_json:
        import numpy as np
        counts = np.bincount(raster.kind, minlength=7)
        from .raster import KIND_NAMES
        for k, c in enumerate(counts):
            if c:
                click.echo(f"{KIND_NAMES[k]}: {int(c)}")


@main.command("orbit")
@click.option("--fn", "fn_src", required=True)
@click.option("--seed", "seed_s", required=True, help="re[,im]")
@click.option("--window", "window_s", default=None,
              help="window for the singular set (defaults to seed +/- 8)")
@click.option("--max-iter", type=int, default=400, show_default=True)
@click.option("--period", "period_s", default=None)
@click.option("--out", "out_csv", type=click.Path(), help="CSV output path")
@click.option("--json", "out_json", type=click.Path(),
              help="outcome JSON output path")
def orbit_cmd(fn_src, seed_s, window_s, max_iter, period_s, out_csv,
              out_json):
    """Trace one orbit and classify its long-run behavior."""
    seed = _parse_complex(seed_s)
    period = _parse_complex(period_s) if period_s else None
    f = fn_from_source(fn_src, period=period)
    window = (_parse_window(window_s) if window_s else
              Rect(seed.real - 8, seed.real + 8, seed.imag - 8,
                   seed.imag + 8))
    try:
        sing = singular_set(f, window)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    cfg = OrbitConfig(max_iter=max_iter)
    orbit = iterate_orbit(f, seed, cfg)
    outcome = classify_orbit(f, seed, sing if len(sing) else None, cfg,
                             period=period)

    rows = []
    for n, z in enumerate(orbit):
        if not z.is_finite:
            break
        d = (min(chordal(z, XComplex.finite(p)) for p in sing.points)
             if len(sing) else float("nan"))
        rows.append((n, z.value.real, z.value.imag, d))
    writer_target = open(out_csv, "w", newline="") if out_csv else sys.stdout
    try:
        w = csv.writer(writer_target)
        w.writerow(["n", "re", "im", "chordal_to_nearest_singularity"])
        w.writerows(rows)
    finally:
        if out_csv:
            writer_target.close()
    if out_json:
        t = outcome.target
        _write_json(out_json, {
            "kind": outcome.kind.name,
            "target": ("inf" if t is not None and t.is_infinity else
                       _cnum(t.value) if t is not None else None),
            "period": outcome.period,
            "multiplier": (_cnum(outcome.multiplier)
                           if outcome.multiplier is not None else None),
            "iterations": outcome.iterations,
            "band_trace": list(outcome.band_trace),
            "final_chordal_residual": outcome.final_chordal_residual,
        })


@main.command("periodic")
@click.option("--fn", "fn_src", required=True)
@click.option("--window", "window_s", required=True)
@click.option("--period", "period_order", type=int, default=1,
              show_default=True, help="cycle length p")
@click.option("--grid", type=int, default=30, show_default=True)
@click.option("--json", "out_json", type=click.Path())
def periodic_cmd(fn_src, window_s, period_order, grid, out_json):
    """Find and classify periodic points by Newton's method."""
    f = fn_from_source(fn_src)
    window = _parse_window(window_s)
    try:
        sing = singular_set(f, window)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    diag = FindDiagnostics()
    pts = find_periodic(f, period_order, window, grid=grid,
                        sing=sing if len(sing) else None, diagnostics=diag)
    doc = {
        "fn": fn_src,
        "period": period_order,
        "points": [{
            "z": _cnum(p.z), "period": p.period,
            "multiplier": _cnum(p.multiplier), "kind": p.kind,
            "residual": p.residual} for p in pts],
        "diagnostics": {"seeds": diag.seeds, "converged": diag.converged,
                        "kept": diag.kept},
    }
    _write_json(out_json, doc)


@main.command("singularities")
@click.option("--fn", "fn_src", required=True)
@click.option("--window", "window_s", required=True)
@click.option("--depth", type=int, default=1, show_default=True)
@click.option("--grid", type=int, default=50, show_default=True)
@click.option("--json", "out_json", type=click.Path())
def singularities_cmd(fn_src, window_s, depth, grid, out_json):
    """Window-truncated singular set, optionally with Newton preimages."""
    f = fn_from_source(fn_src)
    window = _parse_window(window_s)
    try:
        sing = iterated_singular_set(f, window, depth, grid=grid)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _write_json(out_json, {
        "fn": fn_src, "depth": depth,
        "points": [_cnum(p) for p in sing.points],
        "includes_infinity": sing.includes_infinity,
    })


@main.group("verify")
def verify_group():
    """Numerical verification reports; exit 0 iff thresholds met."""


def _finish(out_json, doc, passed: bool):
    doc["passed"] = bool(passed)
    _write_json(out_json, doc)
    sys.exit(0 if passed else 1)


@verify_group.command("commute")
@click.option("--fn", "fn_src", required=True)
@click.option("--shift", "shift_s", required=True,
              help="c for the partner g = f + c, re[,im]")
@click.option("--window", "window_s", required=True)
@click.option("--samples", type=int, default=200, show_default=True)
@click.option("--seed-rng", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=DEFAULT_COMMUTE_TOL,
              show_default=True)
@click.option("--json", "out_json", type=click.Path())
def commute_cmd(fn_src, shift_s, window_s, samples, seed_rng, tol, out_json):
    f = fn_from_source(fn_src)
    g = f.shifted(_parse_complex(shift_s))
    window = _parse_window(window_s)
    sing = singular_set(f, window)
    try:
        rep = check_commutation(f, g, samples, window,
                                sing if len(sing) else None, seed=seed_rng)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _finish(out_json, {
        "check": "commute", "fn": fn_src, "shift": _cnum(g.period or 0j),
        "max_residual": rep.max_residual, "used": rep.used,
        "skipped": rep.skipped, "tol": tol,
    }, rep.max_residual < tol)


def _raster_cfg(fn_src, window_s, res_s, max_iter, period):
    orbit = OrbitConfig(max_iter=max_iter) if max_iter else OrbitConfig()
    return RunConfig(fn_src=fn_src, window=_parse_window(window_s),
                     resolution=_parse_res(res_s), orbit=orbit,
                     period=period)


@verify_group.command("julia-eq")
@click.option("--fn", "fn_src", required=True)
@click.option("--shift", "shift_s", required=True)
@click.option("--window", "window_s", required=True)
@click.option("--res", "res_s", default="600x600", show_default=True)
@click.option("--max-iter", type=int, default=None)
@click.option("--refine-max-iter", type=int, default=None)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--min-agreement", type=float, default=DEFAULT_MIN_AGREEMENT,
              show_default=True)
@click.option("--json", "out_json", type=click.Path())
def julia_eq_cmd(fn_src, shift_s, window_s, res_s, max_iter, refine_max_iter,
                 threads, min_agreement, out_json):
    shift = _parse_complex(shift_s)
    cfg = _raster_cfg(fn_src, window_s, res_s, max_iter, shift)
    try:
        f = fn_from_source(fn_src, period=shift)
        g = f.shifted(shift)
        rep = julia_equality(f, g, cfg, threads=threads,
                             refine_max_iter=refine_max_iter)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _finish(out_json, {
        "check": "julia-eq", "fn": fn_src, "shift": _cnum(shift),
        "total_pixels": rep.total_pixels,
        "compared_pixels": rep.compared_pixels,
        "agreement_fraction": rep.agreement_fraction,
        "min_agreement": min_agreement, "params": rep.params,
    }, rep.agreement_fraction >= min_agreement)


@verify_group.command("translate")
@click.option("--fn", "fn_src", required=True)
@click.option("--period", "period_s", required=True,
              help="translation period P, re[,im]")
@click.option("--window", "window_s", required=True)
@click.option("--res", "res_s", default="600x600", show_default=True)
@click.option("--max-iter", type=int, default=None)
@click.option("--refine-max-iter", type=int, default=None)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--min-agreement", type=float, default=DEFAULT_MIN_AGREEMENT,
              show_default=True)
@click.option("--json", "out_json", type=click.Path())
def translate_cmd(fn_src, period_s, window_s, res_s, max_iter,
                  refine_max_iter, threads, min_agreement, out_json):
    P = _parse_complex(period_s)
    cfg = _raster_cfg(fn_src, window_s, res_s, max_iter, P)
    try:
        f = fn_from_source(fn_src, period=P)
        rep = translation_invariance(f, P, cfg, threads=threads,
                                     refine_max_iter=refine_max_iter)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _finish(out_json, {
        "check": "translate", "fn": fn_src, "period": _cnum(P),
        "total_pixels": rep.total_pixels,
        "compared_pixels": rep.compared_pixels,
        "agreement_fraction": rep.agreement_fraction,
        "min_agreement": min_agreement, "params": rep.params,
    }, rep.agreement_fraction >= min_agreement)


@verify_group.command("sectors")
@click.option("--fn", "fn_src", required=True)
@click.option("--pole", "pole_s", default="0,0", show_default=True)
@click.option("--order", "order_p", type=int, required=True,
              help="expected number of Baker families p")
@click.option("--annulus", "annulus_s", default="0.01,0.1",
              show_default=True, help="r_min,r_max around the pole")
@click.option("--samples", type=int, default=4000, show_default=True)
@click.option("--seed-rng", type=int, default=0, show_default=True)
@click.option("--max-iter", type=int, default=None)
@click.option("--json", "out_json", type=click.Path())
def sectors_cmd(fn_src, pole_s, order_p, annulus_s, samples, seed_rng,
                max_iter, out_json):
    f = fn_from_source(fn_src)
    pole = _parse_complex(pole_s)
    r_min, r_max = (float(x) for x in annulus_s.split(","))
    cfg = OrbitConfig(max_iter=max_iter) if max_iter else OrbitConfig()
    try:
        rep = baker_sectors(f, pole, order_p, (r_min, r_max), samples,
                            cfg=cfg, seed=seed_rng)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    import math
    width_ok = all(c[1] <= 2 * math.pi / order_p + 0.2 for c in rep.clusters)
    _finish(out_json, {
        "check": "sectors", "fn": fn_src, "pole": _cnum(pole),
        "order_expected": order_p,
        "clusters": [{"angle_center": c[0], "angular_width": c[1],
                      "sample_count": c[2]} for c in rep.clusters],
        "annulus": [r_min, r_max], "kept_samples": rep.kept_samples,
    }, len(rep.clusters) == order_p and width_ok)


if __name__ == "__main__":
    main()
