"""Periodic points via Newton's method on f^p(z) - z, multiplier
classification, and the multiplier-transport check for translated pairs
g = f + c."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fndef import FnDef
from .singular import DEDUP_TOL, Rect, SingularSet
from .sphere import XComplex, chordal

RESIDUAL_TOL = 1e-9
NEWTON_MAX_STEPS = 60
INDIFFERENT_BAND = 1e-6
MIN_PERIOD_TOL = 1e-6
MAX_PERIOD = 4
CRITICAL_TOL = 1e-9


@dataclass(frozen=True)
class PeriodicPoint:
    z: complex
    period: int
    multiplier: complex
    kind: str          # "Attracting" | "Repelling" | "Indifferent" | "Parabolic"
    residual: float


@dataclass
class FindDiagnostics:
    seeds: int = 0
    converged: int = 0
    kept: int = 0


@dataclass(frozen=True)
class TransportCheck:
    point: PeriodicPoint
    w: complex | None
    periodicity_residual: float | None
    multiplier_residual: float | None
    skipped: bool
    reason: str | None = None


def _orbit(f: FnDef, z: complex, p: int):
    """[z, f(z), ..., f^{p-1}(z)] and f^p(z), or None on a non-finite step."""
    pts = [z]
    w = z
    for _ in range(p):
        w = f(w)
        if w is None:
            return None, None
        pts.append(w)
    return pts[:-1], pts[-1]


def _cycle_multiplier(f: FnDef, orbit_pts):
    m = 1.0 + 0.0j
    for w in orbit_pts:
        d = f.d(w)
        if d is None:
            return None
        m *= d
    return m


def _newton_periodic(f: FnDef, p: int, seed: complex,
                     max_steps: int = NEWTON_MAX_STEPS):
    """Damped Newton on F(z) = f^p(z) - z; F' = prod f'(z_i) - 1.

    No early residual-based stop: degenerate (parabolic) roots need the
    full step-convergence run to push |F'| residue far below the
    classification bands.
    """
    z = seed
    orbit_pts, fz = _orbit(f, z, p)
    if fz is None:
        return None
    res = abs(fz - z)
    for _ in range(max_steps):
        m = _cycle_multiplier(f, orbit_pts)
        if m is None:
            return None
        dF = m - 1.0
        if dF == 0:
            break
        step = (fz - z) / dF
        scale = 1.0
        for _ in range(20):
            znew = z - scale * step
            new_orbit, fnew = _orbit(f, znew, p)
            if fnew is not None:
                rnew = abs(fnew - znew)
                if rnew <= res or res == 0.0:
                    break
            scale *= 0.5
        else:
            return None
        if znew == z:
            break
        z, orbit_pts, fz, res = znew, new_orbit, fnew, rnew
        if abs(step) * scale < 1e-14 * (1.0 + abs(z)):
            break
    return z if res < RESIDUAL_TOL else None


def classify_multiplier(m: complex) -> str:
    if abs(m - 1.0) < INDIFFERENT_BAND:
        return "Parabolic"
    if abs(abs(m) - 1.0) < INDIFFERENT_BAND:
        return "Indifferent"
    return "Attracting" if abs(m) < 1.0 else "Repelling"


def _minimal_period(f: FnDef, z: complex, p: int) -> bool:
    w = z
    for _ in range(1, p):
        w = f(w)
        if w is None:
            return False
        if abs(w - z) <= MIN_PERIOD_TOL:
            return False
    return True


def _seed_points(window: Rect, grid: int, sing: SingularSet | None):
    dx = window.width / grid
    dy = window.height / grid
    seeds = []
    for i in range(grid):
        for j in range(grid):
            seeds.append(complex(window.re_min + (j + 0.5) * dx,
                                 window.im_min + (i + 0.5) * dy))
    # repelling points of the supported families cluster around the
    # singular set; ring the singular points with extra seeds
    if sing is not None:
        for s in sing.points:
            for r in (0.05, 0.2):
                for k in range(8):
                    a = 2.0 * math.pi * (k + 0.5) / 8.0
                    seeds.append(s + r * complex(math.cos(a), math.sin(a)))
    return seeds


def find_periodic(f: FnDef, period: int, window: Rect, grid: int = 30,
                  sing: SingularSet | None = None,
                  diagnostics: FindDiagnostics | None = None):
    """All period-`period` points of f found from a seed sweep of the window.

    Returned points have minimal period, residual |f^p(z)-z| < 1e-9, and
    are deduplicated and sorted by (re, im). The sweep is a uniform grid
    plus rings around singular points; there is no guarantee of
    exhaustiveness.
    """
    if not 1 <= period <= MAX_PERIOD:
        raise ValueError(f"period must be in 1..{MAX_PERIOD}")
    diag = diagnostics if diagnostics is not None else FindDiagnostics()
    roots = []
    for seed in _seed_points(window, grid, sing):
        diag.seeds += 1
        z = _newton_periodic(f, period, seed)
        if z is None:
            continue
        diag.converged += 1
        if not window.contains(z, pad=DEDUP_TOL):
            continue
        roots.append(z)
    kept: list[complex] = []
    for z in sorted(roots, key=lambda w: (w.real, w.imag)):
        if all(abs(z - w) > DEDUP_TOL for w in kept):
            kept.append(z)
    out = []
    for z in kept:
        if not _minimal_period(f, z, period):
            continue
        orbit_pts, fz = _orbit(f, z, period)
        if fz is None:
            continue
        m = _cycle_multiplier(f, orbit_pts)
        if m is None:
            continue
        out.append(PeriodicPoint(z=z, period=period, multiplier=m,
                                 kind=classify_multiplier(m),
                                 residual=abs(fz - z)))
    diag.kept = len(out)
    return out


def multiplier_transport(f: FnDef, c: complex, pts,
                         sing: SingularSet | None = None,
                         eps_sing: float = 1e-3):
    """Check that w = f(z0) + c is periodic for f with the same multiplier.

    For each periodic point z0 of f (period p), the translated partner
    g = f + c maps z0 to w; when f and g commute, w must again be
    periodic of period dividing p with (f^p)'(w) = (f^p)'(z0). Points
    whose image lands within eps_sing of a singular point, or where
    g'(z0) vanishes to within 1e-9, are skipped with a reason.
    """
    checks = []
    for pt in pts:
        p = pt.period
        fz = f(pt.z)
        if fz is None:
            checks.append(TransportCheck(pt, None, None, None, True,
                                         "f undefined at point"))
            continue
        w = fz + c
        if sing is not None and len(sing) > 0:
            d = min(chordal(XComplex.finite(w), XComplex.finite(s))
                    for s in sing.points)
            if d < eps_sing:
                checks.append(TransportCheck(pt, w, None, None, True,
                                             "image near singular point"))
                continue
        gprime = f.d(pt.z)  # g' = f' since g = f + c
        if gprime is None or abs(gprime) < CRITICAL_TOL:
            checks.append(TransportCheck(pt, w, None, None, True,
                                         "critical point of g"))
            continue
        orbit_w, fpw = _orbit(f, w, p)
        if fpw is None:
            checks.append(TransportCheck(pt, w, None, None, True,
                                         "orbit of image left the plane"))
            continue
        mw = _cycle_multiplier(f, orbit_w)
        if mw is None:
            checks.append(TransportCheck(pt, w, None, None, True,
                                         "derivative undefined along image "
                                         "orbit"))
            continue
        checks.append(TransportCheck(
            pt, w, abs(fpw - w), abs(mw - pt.multiplier), False))
    return checks
