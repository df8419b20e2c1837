"""Orbit iteration and long-run classification of a single seed.

Grid rendering uses the same kernel; see raster.py.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernel
from .fndef import FnDef
from .kernel import _ref as K
from .program import Program, compile_expr
from .singular import SingularSet
from .sphere import XComplex, chordal


class OrbitKind(enum.IntEnum):
    Unresolved = K.K_UNRESOLVED
    EscapeInfinity = K.K_ESCAPE
    BakerFinite = K.K_BAKER
    AttractingCycle = K.K_ATTRACTING
    ParabolicSuspect = K.K_PARABOLIC
    Wandering = K.K_WANDERING
    SingularHit = K.K_SINGULAR_HIT


@dataclass(frozen=True)
class OrbitConfig:
    max_iter: int = 400
    escape_radius: float = 1e8
    eps_sing: float = 1e-3
    eps_cycle: float = 1e-9
    p_max: int = 6
    confirm_steps: int = 5

    def __post_init__(self):
        if min(self.max_iter, self.confirm_steps, self.p_max) <= 0 or \
                min(self.escape_radius, self.eps_sing, self.eps_cycle) <= 0:
            raise ValueError("all orbit-config fields must be positive")
        if self.p_max > 8:
            raise ValueError("p_max capped at 8")

    @property
    def slow_confirm(self) -> int:
        # streak length required for trend-based (non-decisive)
        # classification at max_iter
        return 5 * self.confirm_steps


@dataclass(frozen=True)
class OrbitOutcome:
    kind: OrbitKind
    target: XComplex | None
    period: int | None
    multiplier: complex | None
    iterations: int
    band_trace: tuple
    final_chordal_residual: float


class SeedNearSingularityError(ValueError):
    pass


@dataclass
class PreparedFn:
    """Function + context compiled for the kernels."""
    f: FnDef
    sing: SingularSet | None
    cfg: OrbitConfig
    period: complex | None = None
    body: Program = field(init=False)
    deriv: Program = field(init=False)

    def __post_init__(self):
        self.body = compile_expr(self.f.body)
        self.deriv = compile_expr(self.f.derivative)
        if self.period is None:
            self.period = self.f.period
        sing = self.sing
        pts = list(sing.points) if sing is not None else []
        self.sing_re = np.array([p.real for p in pts], dtype=np.float64)
        self.sing_im = np.array([p.imag for p in pts], dtype=np.float64)
        self.capture = sing.capture_radius() if sing is not None else 0.35

    def kernel_args(self):
        cfg = self.cfg
        P = self.period
        return dict(
            max_iter=cfg.max_iter, escape_radius=cfg.escape_radius,
            eps_sing=cfg.eps_sing, eps_cycle=cfg.eps_cycle,
            p_max=cfg.p_max, confirm_steps=cfg.confirm_steps,
            slow_confirm=cfg.slow_confirm, capture_radius=self.capture,
            has_period=1 if P is not None else 0,
            pre=P.real if P is not None else 0.0,
            pim=P.imag if P is not None else 0.0)


def iterate_orbit(f: FnDef, seed: complex, cfg: OrbitConfig | None = None):
    """The orbit (seed, f(seed), ...) until undefined, infinity, or max_iter.

    Returns a list of XComplex starting with the seed; a trailing
    non-finite element records how the orbit left the plane.
    """
    cfg = cfg or OrbitConfig()
    prog = compile_expr(f.body)
    ops = [(int(o[0]), int(o[1])) for o in prog.ops]
    consts = [(float(c[0]), float(c[1])) for c in prog.consts]
    z = complex(seed)
    orbit = [XComplex.finite(z)]
    zr, zi = z.real, z.imag
    for _ in range(cfg.max_iter):
        re, im, st = K.eval_program(ops, consts, zr, zi)
        if st == K.ST_UNDEF:
            orbit.append(XComplex.UNDEFINED)
            break
        if st == K.ST_INF:
            orbit.append(XComplex.INFINITY)
            break
        orbit.append(XComplex.finite(complex(re, im)))
        zr, zi = re, im
    return orbit


def band_index(z: complex, P: complex) -> int:
    """Integer coordinate of z along the translation direction P."""
    if P == 0:
        raise ValueError("P must be nonzero")
    x = (z.real * P.real + z.imag * P.imag) / (P.real ** 2 + P.imag ** 2)
    return int(math.floor(x + 0.5))


def _as_lists(prog: Program):
    return ([(int(o[0]), int(o[1])) for o in prog.ops],
            [(float(c[0]), float(c[1])) for c in prog.consts])


def classify_orbit(f: FnDef, seed: complex, sing: SingularSet | None,
                   cfg: OrbitConfig | None = None,
                   period: complex | None = None,
                   strict_seed: bool = False) -> OrbitOutcome:
    """Classify the long-run behavior of the orbit of `seed`.

    With strict_seed, a seed already within eps_sing of a singular point
    raises instead of returning an immediate SingularHit.
    """
    cfg = cfg or OrbitConfig()
    prep = PreparedFn(f, sing, cfg, period=period)
    z = complex(seed)
    if strict_seed and sing is not None and len(sing) > 0:
        for p in sing.points:
            if chordal(XComplex.finite(z), XComplex.finite(p)) < cfg.eps_sing:
                raise SeedNearSingularityError(
                    f"seed {z} within eps_sing of singular point {p}")
    out_band = None
    if prep.period is not None:
        out_band = np.zeros(cfg.max_iter + 1, dtype=np.int64)
    res = kernel.classify_point(
        prep.body.ops, prep.body.consts, prep.deriv.ops, prep.deriv.consts,
        z.real, z.imag,
        prep.sing_re, prep.sing_im, len(prep.sing_re),
        out_band=out_band, **prep.kernel_args())
    (kind, tclass, tre, tim, _sidx, per, mre, mim, has_mult,
     iterations, residual) = res
    if tclass == K.T_FINITE:
        target = XComplex.finite(complex(tre, tim))
    elif tclass == K.T_INF:
        target = XComplex.INFINITY
    else:
        target = None
    trace = ()
    if out_band is not None:
        trace = tuple(int(b) for b in out_band[:iterations + 1])
    return OrbitOutcome(
        kind=OrbitKind(int(kind)),
        target=target,
        period=int(per) if per else None,
        multiplier=complex(mre, mim) if has_mult else None,
        iterations=int(iterations),
        band_trace=trace,
        final_chordal_residual=float(residual))
