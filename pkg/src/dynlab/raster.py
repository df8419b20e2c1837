"""Grid classification rasters: rendering, target legends, PNG/JSON export.

A ClassRaster assigns every pixel center a kind code, a small target id
(index into a legend of limit points), and an iteration count. Pixels
are pure functions of the run configuration, so renders are
deterministic and independent of the worker-thread schedule.
"""

from __future__ import annotations

import colorsys
import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .fndef import FnDef, fn_from_source
from .kernel import _ref as K
from .orbits import OrbitConfig, PreparedFn
from .singular import NoSingularityRuleError, Rect, SingularSet, singular_set

SCHEMA_VERSION = "dynlab-raster/1"
TARGET_MERGE_TOL = 1e-6
MIN_RESOLUTION = 16

KIND_NAMES = {
    0: "Unresolved", 1: "EscapeInfinity", 2: "BakerFinite",
    3: "AttractingCycle", 4: "ParabolicSuspect", 5: "Wandering",
    6: "SingularHit",
}

# palette base (hue, saturation, value) per kind code
PALETTE = {
    0: (0.0, 0.0, 0.05),     # Unresolved: near-black
    1: (0.60, 0.85, 0.95),   # EscapeInfinity: blue
    2: (0.33, 0.80, 0.85),   # BakerFinite: green
    3: (0.08, 0.85, 0.95),   # AttractingCycle: orange
    4: (0.83, 0.70, 0.90),   # ParabolicSuspect: magenta
    5: (0.00, 0.85, 0.95),   # Wandering: red
    6: (0.15, 0.10, 0.85),   # SingularHit: pale gray-yellow
}


@dataclass(frozen=True)
class RunConfig:
    fn_src: str
    window: Rect
    resolution: tuple          # (width, height)
    orbit: OrbitConfig = OrbitConfig()
    period: complex | None = None
    palette: str = "classic"
    outputs: tuple = ()        # runtime-only; not serialized

    def __post_init__(self):
        w, h = self.resolution
        if w < MIN_RESOLUTION or h < MIN_RESOLUTION:
            raise ValueError(f"resolution below {MIN_RESOLUTION}x"
                             f"{MIN_RESOLUTION}")

    def to_dict(self) -> dict:
        win = self.window
        o = self.orbit
        return {
            "version": SCHEMA_VERSION,
            "fn": self.fn_src,
            "window": [float(win.re_min), float(win.re_max),
                       float(win.im_min), float(win.im_max)],
            "resolution": [int(self.resolution[0]), int(self.resolution[1])],
            "orbit": {
                "max_iter": int(o.max_iter),
                "escape_radius": float(o.escape_radius),
                "eps_sing": float(o.eps_sing),
                "eps_cycle": float(o.eps_cycle),
                "p_max": int(o.p_max),
                "confirm_steps": int(o.confirm_steps),
            },
            "period": ([float(self.period.real), float(self.period.imag)]
                       if self.period is not None else None),
            "palette": self.palette,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        if d.get("version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported config version {d.get('version')}")
        o = d["orbit"]
        per = d.get("period")
        return cls(
            fn_src=d["fn"],
            window=Rect(*[float(x) for x in d["window"]]),
            resolution=(int(d["resolution"][0]), int(d["resolution"][1])),
            orbit=OrbitConfig(
                max_iter=int(o["max_iter"]),
                escape_radius=float(o["escape_radius"]),
                eps_sing=float(o["eps_sing"]),
                eps_cycle=float(o["eps_cycle"]),
                p_max=int(o["p_max"]),
                confirm_steps=int(o["confirm_steps"])),
            period=complex(per[0], per[1]) if per is not None else None,
            palette=d.get("palette", "classic"))

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True,
                          separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class ClassRaster:
    width: int
    height: int
    window: Rect
    kind: np.ndarray       # uint8, flat, row-major
    target_id: np.ndarray  # int32; 0 = no target
    iterations: np.ndarray  # int32
    legend: dict           # target_id -> complex | "inf" | None
    config_hash: str

    def labels(self) -> np.ndarray:
        """(kind, target_id) fused into one int32 label per pixel."""
        return (self.kind.astype(np.int32) << 20) | self.target_id

    def kind_grid(self) -> np.ndarray:
        return self.kind.reshape(self.height, self.width)


def _render_arrays(cfg: RunConfig, prep: PreparedFn, threads: int):
    w, h = cfg.resolution
    n = w * h
    out_kind = np.zeros(n, dtype=np.uint8)
    out_tclass = np.zeros(n, dtype=np.int8)
    out_tre = np.zeros(n, dtype=np.float64)
    out_tim = np.zeros(n, dtype=np.float64)
    out_tsing = np.zeros(n, dtype=np.int32)
    out_iters = np.zeros(n, dtype=np.int32)
    out_resid = np.zeros(n, dtype=np.float64)
    win = cfg.window
    kargs = prep.kernel_args()

    def run_rows(r0: int, r1: int):
        kernel.classify_grid(
            prep.body.ops, prep.body.consts,
            prep.deriv.ops, prep.deriv.consts,
            win.re_min, win.re_max, win.im_min, win.im_max, w, h,
            prep.sing_re, prep.sing_im, len(prep.sing_re),
            kargs["max_iter"], kargs["escape_radius"], kargs["eps_sing"],
            kargs["eps_cycle"], kargs["p_max"], kargs["confirm_steps"],
            kargs["slow_confirm"], kargs["capture_radius"],
            kargs["has_period"], kargs["pre"], kargs["pim"],
            r0, r1,
            out_kind, out_tclass, out_tre, out_tim, out_tsing,
            out_iters, out_resid)

    if threads <= 1:
        run_rows(0, h)
    else:
        chunk = max(1, -(-h // (threads * 4)))
        spans = [(r, min(r + chunk, h)) for r in range(0, h, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda s: run_rows(*s), spans))
    return out_kind, out_tclass, out_tre, out_tim, out_iters


def _snap_wandering(kind, tclass, tre, tim, sing: SingularSet | None):
    """Snap wandering quotient-orbit endpoints to nearby singular points so
    a whole drifting domain shares one target instead of one per pixel."""
    idx = np.nonzero(kind == K.K_WANDERING)[0]
    if len(idx) == 0:
        return
    if sing is None or len(sing) == 0:
        tclass[idx] = K.T_NONE
        return
    pts = np.array([[p.real, p.imag] for p in sing.points])
    cap = sing.capture_radius()
    for i in idx:
        d = np.hypot(pts[:, 0] - tre[i], pts[:, 1] - tim[i])
        j = int(np.argmin(d))
        # euclidean comparison is adequate here: snapping only applies at
        # small distances where chordal and euclidean agree to first order
        if d[j] < cap:
            tre[i] = pts[j, 0]
            tim[i] = pts[j, 1]
        else:
            tclass[i] = K.T_NONE
            tre[i] = 0.0
            tim[i] = 0.0


def _assign_target_ids(kind, tclass, tre, tim):
    """Group per-pixel targets into small ids with a stable legend.

    Finite targets are gap-clustered along re then im at TARGET_MERGE_TOL;
    ids are allocated in sorted (kind, target) order so legends do not
    depend on row order or thread schedule. Id 0 is 'no target'.
    """
    n = len(kind)
    target_id = np.zeros(n, dtype=np.int32)
    legend: dict = {0: None}
    next_id = 1
    for kd in sorted(set(int(k) for k in np.unique(kind))):
        sel = kind == kd
        inf_sel = sel & (tclass == K.T_INF)
        if inf_sel.any():
            legend[next_id] = "inf"
            target_id[inf_sel] = next_id
            next_id += 1
        fin = np.nonzero(sel & (tclass == K.T_FINITE))[0]
        if len(fin) == 0:
            continue
        order = fin[np.lexsort((tim[fin], tre[fin]))]
        re_s = tre[order]
        im_s = tim[order]
        # split on re gaps, then on im gaps within each re run
        re_breaks = np.nonzero(np.diff(re_s) > TARGET_MERGE_TOL)[0] + 1
        for seg in np.split(np.arange(len(order)), re_breaks):
            seg = seg[np.argsort(im_s[seg], kind="stable")]
            im_breaks = np.nonzero(np.diff(im_s[seg]) >
                                   TARGET_MERGE_TOL)[0] + 1
            for sub in np.split(seg, im_breaks):
                pix = order[sub]
                rep = complex(float(np.median(tre[pix])),
                              float(np.median(tim[pix])))
                legend[next_id] = rep
                target_id[pix] = next_id
                next_id += 1
    return target_id, legend


def _refine_unresolved(cfg: RunConfig, prep: PreparedFn, refine_max_iter,
                       kind, tclass, tre, tim, iters):
    """Re-run still-unresolved pixels with a larger iteration budget.

    Slowly escaping orbits (drift at rate e^{-Re z}) can need orders of
    magnitude more iterations than the rest of the frame; refining only
    the unresolved pixels keeps renders cheap. Deterministic and
    independent of the thread schedule (single pass, fixed order).
    """
    idx = np.nonzero(kind == K.K_UNRESOLVED)[0]
    if len(idx) == 0:
        return
    w, h = cfg.resolution
    win = cfg.window
    dx = win.width / w
    dy = win.height / h
    kargs = dict(prep.kernel_args(), max_iter=int(refine_max_iter))
    for i in idx:
        zr = win.re_min + (i % w + 0.5) * dx
        zi = win.im_min + (i // w + 0.5) * dy
        res = kernel.classify_point(
            prep.body.ops, prep.body.consts,
            prep.deriv.ops, prep.deriv.consts, zr, zi,
            prep.sing_re, prep.sing_im, len(prep.sing_re), **kargs)
        kind[i] = res[0]
        tclass[i] = res[1]
        tre[i] = res[2]
        tim[i] = res[3]
        iters[i] = res[9]


def render(cfg: RunConfig, threads: int = 1,
           sing: SingularSet | None = None,
           f: FnDef | None = None,
           refine_max_iter: int | None = None) -> ClassRaster:
    """Classify every pixel center of the configured window.

    With refine_max_iter, pixels left Unresolved by the configured
    budget are re-classified once with the larger budget.
    """
    if f is None:
        f = fn_from_source(cfg.fn_src, period=cfg.period,
                           validate_period=False)
    if sing is None:
        sing = singular_set(f, cfg.window)
    prep = PreparedFn(f, sing if len(sing) else None, cfg.orbit,
                      period=cfg.period)
    kind, tclass, tre, tim, iters = _render_arrays(cfg, prep, threads)
    if refine_max_iter is not None and refine_max_iter > cfg.orbit.max_iter:
        _refine_unresolved(cfg, prep, refine_max_iter,
                           kind, tclass, tre, tim, iters)
    _snap_wandering(kind, tclass, tre, tim, sing)
    target_id, legend = _assign_target_ids(kind, tclass, tre, tim)
    w, h = cfg.resolution
    return ClassRaster(width=w, height=h, window=cfg.window,
                       kind=kind, target_id=target_id, iterations=iters,
                       legend=legend, config_hash=cfg.config_hash())


def _rgb_for(kd: int, tid: int, iters: int, max_iter: int):
    hue, sat, val = PALETTE.get(kd, (0.0, 0.0, 0.5))
    # shade by target id (deterministic scramble), brighten fast resolution
    sat = max(0.0, sat - 0.30 * ((tid * 0.381966) % 1.0))
    ramp = 1.0 - 0.55 * min(1.0, iters / max(1, max_iter))
    r, g, b = colorsys.hsv_to_rgb(hue, sat, val * (0.45 + 0.55 * ramp))
    return (int(r * 255), int(g * 255), int(b * 255))


def export_png(raster: ClassRaster, path, max_iter: int = 400) -> None:
    from PIL import Image

    cache: dict = {}
    w, h = raster.width, raster.height
    img = np.zeros((h, w, 3), dtype=np.uint8)
    kind = raster.kind_grid()
    tid = raster.target_id.reshape(h, w)
    its = raster.iterations.reshape(h, w)
    # quantize the iteration ramp so color lookups stay cacheable
    itq = np.minimum(31, (its * 32) // max(1, max_iter + 1))
    for key in {(int(a), int(b), int(c))
                for a, b, c in zip(kind.ravel(), tid.ravel(), itq.ravel())}:
        cache[key] = _rgb_for(key[0], key[1],
                              key[2] * max(1, max_iter) // 32, max_iter)
    flat = img.reshape(-1, 3)
    keys = (kind.astype(np.int64).ravel() << 40) | \
        (tid.astype(np.int64).ravel() << 8) | itq.astype(np.int64).ravel()
    uniq, inv = np.unique(keys, return_inverse=True)
    lut = np.zeros((len(uniq), 3), dtype=np.uint8)
    for i, u in enumerate(uniq):
        lut[i] = cache[(int(u >> 40), int((u >> 8) & 0xFFFFFFFF),
                        int(u & 0xFF))]
    flat[:] = lut[inv]
    # image rows run top-down; raster rows run bottom-up (im increasing)
    Image.fromarray(img[::-1], mode="RGB").save(path, format="PNG")


def export_json(raster: ClassRaster, path,
                config: RunConfig | None = None) -> None:
    win = raster.window
    legend = {}
    for tid, v in raster.legend.items():
        if v is None:
            legend[str(tid)] = None
        elif v == "inf":
            legend[str(tid)] = "inf"
        else:
            legend[str(tid)] = [v.real, v.imag]
    doc = {
        "version": SCHEMA_VERSION,
        "width": raster.width,
        "height": raster.height,
        "window": [win.re_min, win.re_max, win.im_min, win.im_max],
        "cells": [[int(k), int(t), int(i)] for k, t, i in
                  zip(raster.kind, raster.target_id, raster.iterations)],
        "legend": legend,
        "config_hash": raster.config_hash,
    }
    if config is not None:
        doc["config"] = config.to_dict()
    with open(path, "w") as fh:
        json.dump(doc, fh, separators=(",", ":"))


def import_json(path) -> ClassRaster:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported raster version {doc.get('version')}")
    cells = np.array(doc["cells"], dtype=np.int64)
    legend = {}
    for tid, v in doc["legend"].items():
        if v is None:
            legend[int(tid)] = None
        elif v == "inf":
            legend[int(tid)] = "inf"
        else:
            legend[int(tid)] = complex(v[0], v[1])
    return ClassRaster(
        width=int(doc["width"]), height=int(doc["height"]),
        window=Rect(*[float(x) for x in doc["window"]]),
        kind=cells[:, 0].astype(np.uint8),
        target_id=cells[:, 1].astype(np.int32),
        iterations=cells[:, 2].astype(np.int32),
        legend=legend, config_hash=doc["config_hash"])
