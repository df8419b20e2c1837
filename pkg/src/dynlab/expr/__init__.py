from .ast import (Add, Const, Cos, Div, Exp, ExprNode, Mul, Neg, Pow, Sin,
                  Sub, Var, to_source)
from .deriv import differentiate
from .evaluate import evaluate, evaluate_c
from .parser import (ExprError, ExprSyntaxError, UnknownIdentifierError,
                     parse)

__all__ = [
    "Add", "Const", "Cos", "Div", "Exp", "ExprNode", "Mul", "Neg", "Pow",
    "Sin", "Sub", "Var", "to_source", "differentiate", "evaluate",
    "evaluate_c", "parse", "ExprError", "ExprSyntaxError",
    "UnknownIdentifierError",
]
