"""Numerical verification harnesses.

Four checks: commutation of a map with its shifted partner, pixelwise
equality of Julia masks for commuting pairs, translation invariance of
classification rasters, and the angular sector structure of finite
Baker-point families around a pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernel
from .fndef import FnDef
from .orbits import OrbitConfig, OrbitKind, PreparedFn
from .quasi import halton_pairs
from .raster import ClassRaster, RunConfig, render
from .singular import Rect, SingularSet, singular_set
from .sphere import XComplex, chordal

COMMUTE_TOL = 1e-6
SECTOR_MIN_SAMPLES = 20
TARGET_SHIFT_TOL = 1e-6
_SAFE_DIST_FACTOR = 10.0


class NoValidSamplesError(ValueError):
    pass


class InsufficientSamplesError(ValueError):
    pass


class ShiftConfigError(ValueError):
    """P is not an axis-aligned whole number of pixels."""


@dataclass(frozen=True)
class CommutationReport:
    max_residual: float
    used: int
    skipped: int

    def __float__(self):
        return self.max_residual


@dataclass
class AgreementReport:
    total_pixels: int
    compared_pixels: int
    agreement_fraction: float
    disagreement_map: np.ndarray | None
    params: str


@dataclass
class SectorReport:
    pole: complex
    order_expected: int
    clusters: list          # (angle_center, angular_width, sample_count)
    annulus: tuple
    kept_samples: int = 0
    shrink_stable: bool | None = None


def check_commutation(f: FnDef, g: FnDef, samples: int, window: Rect,
                      sing: SingularSet | None = None,
                      seed: int = 0) -> CommutationReport:
    """Max |f(g(z)) - g(f(z))| over quasi-random points of the window.

    Points within 10x eps_sing (chordal) of a singular point are not
    drawn; samples where either composite leaves the plane are skipped.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    safe = _SAFE_DIST_FACTOR * OrbitConfig().eps_sing
    worst = 0.0
    used = 0
    skipped = 0
    for u, v in halton_pairs(samples, seed):
        z = complex(window.re_min + u * window.width,
                    window.im_min + v * window.height)
        if sing is not None and len(sing) > 0:
            zx = XComplex.finite(z)
            if min(chordal(zx, XComplex.finite(p))
                   for p in sing.points) <= safe:
                skipped += 1
                continue
        gz = g(z)
        fz = f(z)
        fgz = f(gz) if gz is not None else None
        gfz = g(fz) if fz is not None else None
        if fgz is None or gfz is None:
            skipped += 1
            continue
        used += 1
        worst = max(worst, abs(fgz - gfz))
    if used == 0:
        raise NoValidSamplesError("no valid samples for commutation check")
    return CommutationReport(max_residual=worst, used=used, skipped=skipped)


def julia_mask(raster: ClassRaster) -> np.ndarray:
    """Boolean (height, width) mask of Julia-candidate pixels.

    A pixel is a candidate iff it is Unresolved or its 4-neighborhood
    holds at least two distinct (kind, target) labels.
    """
    h, w = raster.height, raster.width
    lab = raster.labels().reshape(h, w)
    pad = np.pad(lab, 1, mode="edge")
    differs = ((pad[:-2, 1:-1] != lab) | (pad[2:, 1:-1] != lab) |
               (pad[1:-1, :-2] != lab) | (pad[1:-1, 2:] != lab))
    return (raster.kind_grid() == int(OrbitKind.Unresolved)) | differs


def _mask_boundary(mask: np.ndarray) -> np.ndarray:
    pad = np.pad(mask, 1, mode="edge")
    return ((pad[:-2, 1:-1] != mask) | (pad[2:, 1:-1] != mask) |
            (pad[1:-1, :-2] != mask) | (pad[1:-1, 2:] != mask))


def _dilate1(mask: np.ndarray) -> np.ndarray:
    pad = np.pad(mask, 1, mode="constant")
    out = np.zeros_like(mask)
    for di in (0, 1, 2):
        for dj in (0, 1, 2):
            out |= pad[di:di + mask.shape[0], dj:dj + mask.shape[1]]
    return out


def julia_equality(f: FnDef, g: FnDef, raster_cfg: RunConfig,
                   sing: SingularSet | None = None, threads: int = 1,
                   precheck: bool = True,
                   refine_max_iter: int | None = None) -> AgreementReport:
    """Agreement fraction of the Julia masks of f and g on one grid.

    Pixels within one pixel of either mask's boundary are excluded, so
    hairline misregistration of the masks does not count against
    agreement. Identical rasters give exactly 1.0.
    """
    if precheck:
        rep = check_commutation(f, g, 100, raster_cfg.window, sing)
        if rep.max_residual >= COMMUTE_TOL:
            raise ValueError(
                f"maps do not commute: residual {rep.max_residual:.3e}")
    cfg_f = replace(raster_cfg, fn_src=f.label, period=f.period)
    cfg_g = replace(raster_cfg, fn_src=g.label, period=g.period)
    rf = render(cfg_f, threads=threads, sing=sing, f=f,
                refine_max_iter=refine_max_iter)
    rg = render(cfg_g, threads=threads, sing=sing, f=g,
                refine_max_iter=refine_max_iter)
    mf = julia_mask(rf)
    mg = julia_mask(rg)
    excluded = _dilate1(_mask_boundary(mf) | _mask_boundary(mg))
    compared = ~excluded
    n_comp = int(compared.sum())
    agree = float((mf[compared] == mg[compared]).mean()) if n_comp else 0.0
    return AgreementReport(
        total_pixels=rf.width * rf.height,
        compared_pixels=n_comp,
        agreement_fraction=agree,
        disagreement_map=(mf != mg) & compared,
        params=(f"julia_equality f={f.label!r} g={g.label!r} "
                f"res={raster_cfg.resolution}"))


def _pixel_shift(window: Rect, resolution: tuple, P: complex):
    """(dj, di) integer pixel shift realizing z -> z + P, or raise."""
    w, h = resolution
    dx = window.width / w
    dy = window.height / h
    if P == 0:
        raise ShiftConfigError("P must be nonzero")
    if P.imag == 0.0:
        s = P.real / dx
        if abs(s - round(s)) > 1e-9 * max(1.0, abs(s)):
            raise ShiftConfigError(
                f"P={P} is {s:.6f} pixels along re; must be whole")
        return int(round(s)), 0
    if P.real == 0.0:
        s = P.imag / dy
        if abs(s - round(s)) > 1e-9 * max(1.0, abs(s)):
            raise ShiftConfigError(
                f"P={P} is {s:.6f} pixels along im; must be whole")
        return 0, int(round(s))
    raise ShiftConfigError(f"P={P} is not axis-aligned")


def _legend_arrays(raster: ClassRaster):
    """Legend flattened to (class, re, im) arrays indexed by target id.

    class: 0 = no target, 1 = finite, 2 = infinity.
    """
    n = max(raster.legend) + 1
    cls = np.zeros(n, dtype=np.int8)
    tre = np.zeros(n)
    tim = np.zeros(n)
    for tid, v in raster.legend.items():
        if v is None:
            cls[tid] = 0
        elif v == "inf":
            cls[tid] = 2
        else:
            cls[tid] = 1
            tre[tid] = v.real
            tim[tid] = v.imag
    return cls, tre, tim


def translation_invariance(f: FnDef, P: complex, raster_cfg: RunConfig,
                           sing: SingularSet | None = None,
                           threads: int = 1,
                           tol: float = TARGET_SHIFT_TOL,
                           refine_max_iter: int | None = None
                           ) -> AgreementReport:
    """Compare a raster with itself shifted by P.

    A pixel at z matches the pixel at z + P when the kinds agree and
    the targets agree up to relabeling by the shift: a finite target e
    at z corresponds to e + P at z + P. The strip that shifts out of
    the window is excluded.
    """
    dj, di = _pixel_shift(raster_cfg.window, raster_cfg.resolution, P)
    raster = render(raster_cfg, threads=threads, sing=sing, f=f,
                    refine_max_iter=refine_max_iter)
    h, w = raster.height, raster.width
    kind = raster.kind_grid()
    tid = raster.target_id.reshape(h, w)
    cls, lre, lim = _legend_arrays(raster)

    i0, i1 = max(0, -di), min(h, h - di)
    j0, j1 = max(0, -dj), min(w, w - dj)
    if i0 >= i1 or j0 >= j1:
        raise ShiftConfigError("P shifts the whole window out of frame")
    a = np.s_[i0:i1, j0:j1]
    b = np.s_[i0 + di:i1 + di, j0 + dj:j1 + dj]

    match = kind[a] == kind[b]
    ca, cb = cls[tid[a]], cls[tid[b]]
    match &= ca == cb
    fin = match & (ca == 1)
    if fin.any():
        d_re = lre[tid[b]] - lre[tid[a]] - P.real
        d_im = lim[tid[b]] - lim[tid[a]] - P.imag
        off = np.hypot(d_re, d_im) > tol
        match &= ~(fin & off)
    n_comp = match.size
    agree = float(match.mean())
    dis = np.zeros((h, w), dtype=bool)
    dis[a] = ~match
    return AgreementReport(
        total_pixels=w * h,
        compared_pixels=n_comp,
        agreement_fraction=agree,
        disagreement_map=dis,
        params=(f"translation_invariance f={f.label!r} P={P} "
                f"shift=({dj},{di})px res={raster_cfg.resolution}"))


def _classify_seeds(f: FnDef, sing: SingularSet | None, cfg: OrbitConfig,
                    seeds):
    prep = PreparedFn(f, sing, cfg)
    ka = prep.kernel_args()
    out = []
    for z in seeds:
        out.append(kernel.classify_point(
            prep.body.ops, prep.body.consts,
            prep.deriv.ops, prep.deriv.consts,
            z.real, z.imag, prep.sing_re, prep.sing_im, len(prep.sing_re),
            **ka))
    return out


def _cluster_angles(angles: np.ndarray, gap: float):
    """Gap-based clustering on the circle; clusters as index lists."""
    order = np.argsort(angles, kind="stable")
    srt = angles[order]
    breaks = np.nonzero(np.diff(srt) > gap)[0] + 1
    groups = np.split(order, breaks)
    if len(groups) > 1 and (srt[0] + 2.0 * math.pi - srt[-1]) <= gap:
        groups[0] = np.concatenate([groups[-1], groups[0]])
        groups.pop()
    return groups


def baker_sectors(f: FnDef, pole: complex, p: int,
                  annulus: tuple, samples: int,
                  sing: SingularSet | None = None,
                  cfg: OrbitConfig | None = None, seed: int = 0,
                  check_shrink: bool = False) -> SectorReport:
    """Angular clusters of finite-Baker seeds around a pole.

    Samples the annulus uniformly by area, keeps seeds classified
    BakerFinite with the pole as target, and clusters their angles with
    splits at gaps wider than 2*pi/(4p).
    """
    r_min, r_max = annulus
    if not (0.0 < r_min < r_max):
        raise ValueError("annulus radii must satisfy 0 < r_min < r_max")
    if p < 1:
        raise ValueError("expected order p must be >= 1")
    cfg = cfg or OrbitConfig()
    if sing is None:
        pad = 2.0 * math.pi + 1.0
        sing = singular_set(f, Rect(pole.real - pad, pole.real + pad,
                                    pole.imag - pad, pole.imag + pad))
    if min((abs(q - pole) for q in sing.points), default=math.inf) > 1e-9:
        raise ValueError(f"{pole} is not a singular point of {f.label!r}")
    others = [abs(q - pole) for q in sing.points if abs(q - pole) > 1e-9]
    if others and min(others) <= r_max:
        raise ValueError("annulus contains another singular point")

    seeds = []
    for u, v in halton_pairs(samples, seed):
        r = math.sqrt(r_min * r_min + u * (r_max * r_max - r_min * r_min))
        theta = 2.0 * math.pi * v
        seeds.append(pole + r * complex(math.cos(theta), math.sin(theta)))

    kept = []
    for z, res in zip(seeds, _classify_seeds(f, sing, cfg, seeds)):
        kind, tclass, tre, tim = res[0], res[1], res[2], res[3]
        if kind != int(OrbitKind.BakerFinite):
            continue
        if tclass != 1 or abs(complex(tre, tim) - pole) > 1e-9:
            continue
        kept.append(math.atan2(z.imag - pole.imag, z.real - pole.real)
                    % (2.0 * math.pi))
    if len(kept) < SECTOR_MIN_SAMPLES:
        raise InsufficientSamplesError(
            f"only {len(kept)} Baker-classified samples (need "
            f"{SECTOR_MIN_SAMPLES})")

    angles = np.array(kept)
    gap = 2.0 * math.pi / (4.0 * p)
    clusters = []
    for grp in _cluster_angles(angles, gap):
        a = angles[grp]
        if a.max() - a.min() > math.pi:  # wrapped cluster: recenter
            a = np.where(a < math.pi, a + 2.0 * math.pi, a)
        center = float((a.min() + a.max()) / 2.0) % (2.0 * math.pi)
        clusters.append((center, float(a.max() - a.min()), len(grp)))
    clusters.sort()

    stable = None
    if check_shrink:
        try:
            sub = baker_sectors(f, pole, p,
                                (r_min, r_min + (r_max - r_min) / 2.0),
                                samples, sing=sing, cfg=cfg, seed=seed)
            stable = len(sub.clusters) == len(clusters)
        except InsufficientSamplesError:
            stable = False
    return SectorReport(pole=pole, order_expected=p, clusters=clusters,
                        annulus=(r_min, r_max), kept_samples=len(kept),
                        shrink_stable=stable)
