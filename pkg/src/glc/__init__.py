"""Solver toolkit for gradual classical logic."""
from .formula import (BOT, TOP, And, Atom, Formula, Gtr, Not, Or, SElem, atom, complement,
                      lit)
from .syntax import parse_infix, parse_prefix, to_infix, to_prefix

__all__ = [
    "BOT", "TOP", "And", "Atom", "Formula", "Gtr", "Not", "Or", "SElem", "atom",
    "complement", "lit", "parse_infix", "parse_prefix", "to_infix", "to_prefix",
]
