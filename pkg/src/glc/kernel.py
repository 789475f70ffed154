"""Truth-table evaluation of compiled formulas, compiled or pure Python.

A program is a postfix list of (opcode, argument) pairs:

    VAR v      push variable v
    NVAR v     push the negation of variable v
    CONST b    push constant b
    AND, OR    pop two, push the result

Frame i assigns variable j the bit (i >> (nvars - 1 - j)) & 1, so frames are
enumerated in lexicographic order of the variable list.
"""
from __future__ import annotations

import os

VAR, NVAR, CONST, AND, OR = 0, 1, 2, 3, 4


def _column(p: int, nframes: int) -> int:
    """Bitset of frames whose index has bit p set."""
    half = 1 << p
    col = ((1 << half) - 1) << half
    width = half << 1
    while width < nframes:
        col |= col << width
        width <<= 1
    return col & ((1 << nframes) - 1)


def truth_table_py(program, nvars: int) -> int:
    if nvars < 0 or nvars > 30:
        raise ValueError("nvars out of range")
    nframes = 1 << nvars
    full = (1 << nframes) - 1
    cols = {}
    stack = []
    for op, arg in program:
        if op == VAR or op == NVAR:
            if not 0 <= arg < nvars:
                raise ValueError("variable index out of range")
            col = cols.get(arg)
            if col is None:
                col = cols[arg] = _column(nvars - 1 - arg, nframes)
            stack.append(col if op == VAR else full ^ col)
        elif op == CONST:
            stack.append(full if arg else 0)
        elif op == AND or op == OR:
            if len(stack) < 2:
                raise ValueError("stack underflow")
            b = stack.pop()
            a = stack.pop()
            stack.append(a & b if op == AND else a | b)
        else:
            raise ValueError("unknown opcode")
    if len(stack) != 1:
        raise ValueError("program must leave exactly one value")
    return stack[0]


try:
    from ._kernel import truth_table as truth_table_compiled
except ImportError:  # extension not built
    truth_table_compiled = None

if truth_table_compiled is not None and not os.environ.get("GLC_PURE_PYTHON"):
    truth_table = truth_table_compiled
    BACKEND = "compiled"
else:
    truth_table = truth_table_py
    BACKEND = "python"
