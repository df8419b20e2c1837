"""Compilation of expression trees to a flat stack program.

The orbit kernels (pure Python and the compiled extension) both execute
this bytecode, so a function is compiled once and evaluated millions of
times without touching the tree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .expr.ast import (Add, Const, Cos, Div, Exp, ExprNode, Mul, Neg, Pow,
                       Sin, Sub, Var)

OP_PUSH_Z = 0
OP_PUSH_CONST = 1
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_DIV = 5
OP_NEG = 6
OP_POWI = 7
OP_EXP = 8
OP_SIN = 9
OP_COS = 10


@dataclass(frozen=True)
class Program:
    ops: np.ndarray       # int32, shape (n, 2): (opcode, arg)
    consts: np.ndarray    # float64, shape (m, 2): (re, im)
    stack_size: int


def compile_expr(e: ExprNode) -> Program:
    ops: list[tuple[int, int]] = []
    consts: list[complex] = []

    def const_index(c: complex) -> int:
        for i, v in enumerate(consts):
            if v == c:
                return i
        consts.append(c)
        return len(consts) - 1

    def emit(node: ExprNode) -> int:
        # returns stack depth needed by this subtree
        if isinstance(node, Var):
            ops.append((OP_PUSH_Z, 0))
            return 1
        if isinstance(node, Const):
            ops.append((OP_PUSH_CONST, const_index(node.value)))
            return 1
        if isinstance(node, (Add, Sub, Mul, Div)):
            dl = emit(node.left)
            dr = emit(node.right)
            code = {Add: OP_ADD, Sub: OP_SUB, Mul: OP_MUL,
                    Div: OP_DIV}[type(node)]
            ops.append((code, 0))
            return max(dl, 1 + dr)
        if isinstance(node, Neg):
            d = emit(node.operand)
            ops.append((OP_NEG, 0))
            return d
        if isinstance(node, Pow):
            d = emit(node.base)
            ops.append((OP_POWI, node.exponent))
            return d
        if isinstance(node, (Exp, Sin, Cos)):
            d = emit(node.operand)
            code = {Exp: OP_EXP, Sin: OP_SIN, Cos: OP_COS}[type(node)]
            ops.append((code, 0))
            return d
        raise TypeError(f"not an ExprNode: {node!r}")

    depth = emit(e)
    op_arr = np.array(ops, dtype=np.int32).reshape(len(ops), 2)
    if consts:
        const_arr = np.array([[c.real, c.imag] for c in consts],
                             dtype=np.float64)
    else:
        const_arr = np.zeros((0, 2), dtype=np.float64)
    return Program(op_arr, const_arr, depth)
