"""Function definitions: body, cached symbolic derivative, declared period.

A declared translation period P asserts f(z+P) = f(z) + P; it is spot
checked numerically at construction on well-conditioned samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .expr.ast import ExprNode, to_source
from .expr.deriv import differentiate
from .expr.evaluate import evaluate_c
from .expr.parser import parse
from .quasi import halton_in_rect

PERIOD_TOL = 1e-10
_VALIDATION_SAMPLES = 100
_MIN_VALID = 20
# skip samples whose derivative is large: rounding in f(z+P) is amplified
# by |f'| and would drown the identity being checked
_COND_BOUND = 1e3


class PeriodValidationError(ValueError):
    pass


@dataclass(frozen=True)
class FnDef:
    body: ExprNode
    derivative: ExprNode = field(init=False)
    period: complex | None = None
    label: str = ""
    validate_period: bool = True

    def __post_init__(self):
        object.__setattr__(self, "derivative", differentiate(self.body))
        if not self.label:
            object.__setattr__(self, "label", to_source(self.body))
        if self.period is not None:
            object.__setattr__(self, "period", complex(self.period))
            if self.period == 0:
                raise PeriodValidationError("period must be nonzero")
            if self.validate_period:
                self._check_period()

    def _check_period(self):
        P = self.period
        checked = 0
        worst = 0.0
        for z in halton_in_rect(_VALIDATION_SAMPLES, -3.0, 3.0, -3.0, 3.0,
                                seed=7):
            fz = evaluate_c(self.body, z)
            fzp = evaluate_c(self.body, z + P)
            dz = evaluate_c(self.derivative, z)
            if fz is None or fzp is None or dz is None:
                continue
            if abs(dz) > _COND_BOUND or abs(fz) > _COND_BOUND:
                continue
            checked += 1
            worst = max(worst, abs(fzp - fz - P))
        if checked < _MIN_VALID:
            raise PeriodValidationError(
                f"period check for {self.label!r}: only {checked} usable "
                f"samples")
        if worst > PERIOD_TOL:
            raise PeriodValidationError(
                f"declared period {P} fails for {self.label!r}: "
                f"max residual {worst:.3e}")

    def __call__(self, z):
        """Evaluate the body at finite z; None when the value leaves C."""
        return evaluate_c(self.body, z)

    def d(self, z):
        """Evaluate the derivative at finite z."""
        return evaluate_c(self.derivative, z)

    def shifted(self, c: complex, label: str = "") -> "FnDef":
        """The commuting partner f + c (same declared period)."""
        from .expr.ast import Add, Const
        return FnDef(Add(self.body, Const(complex(c))), period=self.period,
                     label=label or f"{self.label} + {c}",
                     validate_period=False)


def fn_from_source(src: str, period: complex | None = None,
                   label: str = "", validate_period: bool = True) -> FnDef:
    return FnDef(parse(src), period=period, label=label or src,
                 validate_period=validate_period)
