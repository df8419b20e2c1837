"""Window-truncated singular sets and iterated preimages.

Finite essential singularities of the supported map families are known
in closed form (zeros of sin at k*pi, solutions of 1-exp(z)=0 at
2*pi*i*k, zeros of z^k at 0). Deeper levels of the singular hierarchy
are found by Newton preimage solving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .expr.ast import (Const, Div, Exp, ExprNode, Mul, Neg, Pow, Sin, Sub,
                       Var, Add, Cos)
from .fndef import FnDef

DEDUP_TOL = 1e-6
RESIDUAL_TOL = 1e-9
NEWTON_MAX_STEPS = 60


class NoSingularityRuleError(ValueError):
    """The map is outside the families with closed-form singular sets."""


@dataclass(frozen=True)
class Rect:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("degenerate window")

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (self.re_min - pad <= z.real <= self.re_max + pad and
                self.im_min - pad <= z.imag <= self.im_max + pad)

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min


@dataclass(frozen=True)
class SingularSet:
    points: tuple          # finite essential singularities in the window
    includes_infinity: bool
    window: Rect
    source: str

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def nearest(self, z: complex):
        """(point, euclidean distance) of the nearest finite member."""
        best, bd = None, math.inf
        for p in self.points:
            d = abs(z - p)
            if d < bd:
                best, bd = p, d
        return best, bd

    def capture_radius(self) -> float:
        """Chordal radius inside which a stalled orbit is attributed to a
        singular point: half the minimal chordal spacing, capped."""
        from .sphere import XComplex, chordal
        cap = 0.35
        pts = [XComplex.finite(p) for p in self.points]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                cap = min(cap, 0.5 * chordal(pts[i], pts[j]))
        return cap


def _lattice_in_window(window: Rect, step: complex, origin: complex = 0j):
    # points origin + k*step inside the window
    pts = []
    k = 0
    while True:
        z = origin + k * step
        if not window.contains(z):
            break
        pts.append(z)
        k += 1
    k = -1
    while True:
        z = origin + k * step
        if not window.contains(z):
            break
        pts.append(z)
        k -= 1
    return pts


def _is_one_minus_exp(e: ExprNode) -> bool:
    return (isinstance(e, Sub) and isinstance(e.left, Const) and
            e.left.value == 1 and isinstance(e.right, Exp) and
            isinstance(e.right.operand, Var))


def _denominator_zeros(d: ExprNode, window: Rect):
    """Closed-form zeros of a denominator expression inside the window."""
    if isinstance(d, Const):
        if d.value == 0:
            raise NoSingularityRuleError("constant zero denominator")
        return []
    if isinstance(d, Var):
        return [0j] if window.contains(0j) else []
    if isinstance(d, Pow) and isinstance(d.base, Var) and d.exponent > 0:
        return [0j] if window.contains(0j) else []
    if isinstance(d, Sin) and isinstance(d.operand, Var):
        return _lattice_in_window(window, complex(math.pi))
    if _is_one_minus_exp(d):
        return _lattice_in_window(window, complex(0.0, 2.0 * math.pi))
    raise NoSingularityRuleError(
        f"no singularity rule for denominator {d!r}")


def _collect_denominators(e: ExprNode, out: list):
    if isinstance(e, Div):
        out.append(e.right)
        _collect_denominators(e.left, out)
        _collect_denominators(e.right, out)
        return
    if isinstance(e, Pow):
        if e.exponent < 0:
            out.append(e.base)
        _collect_denominators(e.base, out)
        return
    if isinstance(e, (Add, Sub, Mul)):
        _collect_denominators(e.left, out)
        _collect_denominators(e.right, out)
        return
    if isinstance(e, Neg):
        _collect_denominators(e.operand, out)
        return
    if isinstance(e, (Exp, Sin, Cos, Const, Var)):
        if isinstance(e, (Exp, Sin, Cos)):
            _collect_denominators(e.operand, out)
        return
    raise TypeError(f"not an ExprNode: {e!r}")


def _dedup(points, tol: float = DEDUP_TOL):
    pts = sorted(points, key=lambda z: (z.real, z.imag))
    kept = []
    for z in pts:
        if all(abs(z - w) > tol for w in kept):
            kept.append(z)
    return kept


def singular_set(f: FnDef, window: Rect) -> SingularSet:
    """Finite essential singularities of f inside the window.

    Entire maps yield no finite points (only infinity). Maps whose
    denominators fall outside the closed-form rules raise
    NoSingularityRuleError.
    """
    dens: list = []
    _collect_denominators(f.body, dens)
    points: list = []
    if not dens:
        return SingularSet((), True, window, "entire")
    sources = []
    for d in dens:
        points.extend(_denominator_zeros(d, window))
        sources.append(type(d).__name__)
    points = _dedup(points)
    return SingularSet(tuple(points), True, window,
                       "poles of " + ",".join(sorted(set(sources))))


def newton_root(f: FnDef, target: complex, seed: complex,
                max_steps: int = NEWTON_MAX_STEPS):
    """Damped Newton iteration on f(z) - target. Returns z or None."""
    z = seed
    fz = f(z)
    if fz is None:
        return None
    res = abs(fz - target)
    for _ in range(max_steps):
        dz = f.d(z)
        if dz is None or dz == 0:
            return None
        step = (fz - target) / dz
        scale = 1.0
        for _ in range(20):
            znew = z - scale * step
            fnew = f(znew)
            if fnew is not None:
                rnew = abs(fnew - target)
                if rnew <= res or res == 0.0:
                    break
            scale *= 0.5
        else:
            return None
        if znew == z:
            break
        z, fz, res = znew, fnew, rnew
        if abs(step) * scale < 1e-14 * (1.0 + abs(z)):
            break
    return z if res < RESIDUAL_TOL else None


@dataclass
class PreimageDiagnostics:
    seeds: int = 0
    converged: int = 0
    kept: int = 0


def preimages(f: FnDef, target: complex, window: Rect,
              grid: int = 50, diagnostics: PreimageDiagnostics | None = None):
    """Solutions of f(w) = target in the window, by Newton from a seed grid.

    Non-convergent seeds are dropped silently; counts go to diagnostics.
    """
    diag = diagnostics if diagnostics is not None else PreimageDiagnostics()
    roots = []
    dx = window.width / grid
    dy = window.height / grid
    for i in range(grid):
        for j in range(grid):
            seed = complex(window.re_min + (j + 0.5) * dx,
                           window.im_min + (i + 0.5) * dy)
            diag.seeds += 1
            z = newton_root(f, target, seed)
            if z is None:
                continue
            diag.converged += 1
            if window.contains(z, pad=DEDUP_TOL):
                roots.append(z)
    kept = _dedup(roots)
    diag.kept = len(kept)
    return kept


def iterated_singular_set(f: FnDef, window: Rect, depth: int,
                          grid: int = 50) -> SingularSet:
    """A_1 = singular_set; A_{k+1} adds preimages of every finite member."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if depth > 3:
        raise ValueError("depth capped at 3 (combinatorial growth)")
    base = singular_set(f, window)
    points = list(base.points)
    current = list(base.points)
    for _ in range(depth - 1):
        new_points = []
        for target in current:
            new_points.extend(preimages(f, target, window, grid=grid))
        fresh = [z for z in _dedup(new_points)
                 if all(abs(z - w) > DEDUP_TOL for w in points)]
        points.extend(fresh)
        current = fresh
    return SingularSet(tuple(_dedup(points)), base.includes_infinity,
                       window, base.source + f" (depth {depth})")
