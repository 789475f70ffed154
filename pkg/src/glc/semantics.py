"""Synchronized valuation frames, evaluation and the brute-force oracle."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import kernel
from .errors import DepthError, NotNormalError, ResourceError
from .formula import (And, Atom, Formula, Or, SElem, is_unit_chain_expansion, max_object_level,
                      pairs_of, unit_chain)
from .reducer import normalize

DEFAULT_BUDGET_BITS = 24


def budget_bits(default: int = DEFAULT_BUDGET_BITS) -> int:
    raw = os.environ.get("GLC_BUDGET_BITS")
    return int(raw) if raw else default


@dataclass(frozen=True)
class Frame:
    """Per-level assignment: levels[k] is the set of pairs whose plain literal is 1."""

    pairs: tuple[str, ...]
    levels: tuple[frozenset, ...]

    @property
    def depth(self) -> int:
        return len(self.levels)

    def to_json(self) -> dict:
        return {f"level_{k}": {p: int(p in lv) for p in self.pairs}
                for k, lv in enumerate(self.levels)}


def local_I(f: Frame, level: int, s: SElem) -> int:
    if s.kind == "top":
        return 1
    if s.kind == "bot":
        return 0
    if level >= f.depth:
        raise DepthError(f"level {level} outside a frame of depth {f.depth}")
    v = s.name in f.levels[level]
    return int(v != s.complemented)


def global_J(f: Frame, elems: Sequence[SElem]) -> int:
    if len(elems) > f.depth:
        raise DepthError(f"chain of length {len(elems)} exceeds frame depth {f.depth}")
    for i, s in enumerate(elems):
        if not local_I(f, i, s):
            return 0
    return 1


def _eval(f: Frame, node: Formula) -> int:
    t = type(node)
    if t is And:
        return _eval(f, node.left) & _eval(f, node.right)
    if t is Or:
        return _eval(f, node.left) | _eval(f, node.right)
    if t is Atom:
        return local_I(f, 0, node.elem)
    return global_J(f, unit_chain(node))


def evaluate(f: Frame, F: Formula) -> int:
    if not is_unit_chain_expansion(F):
        raise NotNormalError(f"evaluate needs unit-chain expansion: {F}")
    if max_object_level(F) >= f.depth:
        raise DepthError("formula deeper than frame")
    return _eval(f, F)


def evaluate_full(f: Frame, F: Formula) -> int:
    return evaluate(f, normalize(F))


# -- frame spaces -----------------------------------------------------------

def space_of(normal_forms: Sequence[Formula]) -> tuple[tuple[str, ...], int]:
    """Sorted pairs and depth covering every given normal form."""
    pairs = set()
    depth = 1
    for n in normal_forms:
        pairs |= pairs_of(n)
        depth = max(depth, max_object_level(n) + 1)
    return tuple(sorted(pairs)), depth


def frame_variables(pairs: Sequence[str], depth: int) -> list[tuple[int, str]]:
    return [(k, p) for k in range(depth) for p in pairs]


def frame_at(index: int, pairs: Sequence[str], depth: int) -> Frame:
    n = len(pairs) * depth
    levels = []
    for k in range(depth):
        on = frozenset(p for j, p in enumerate(pairs)
                       if (index >> (n - 1 - (k * len(pairs) + j))) & 1)
        levels.append(on)
    return Frame(tuple(pairs), tuple(levels))


def enumerate_frames(pairs: Sequence[str], depth: int) -> Iterator[Frame]:
    for i in range(1 << (len(pairs) * depth)):
        yield frame_at(i, pairs, depth)


def frame_space(F: Formula) -> Iterator[Frame]:
    pairs, depth = space_of([normalize(F)])
    return enumerate_frames(pairs, depth)


# -- compiled evaluation ------------------------------------------------------

def compile_normal(n: Formula, index: dict) -> list[tuple[int, int]]:
    """Postfix program for a normal form; index maps (level, pair) to a variable."""
    prog = []

    def emit(node):
        t = type(node)
        if t is And or t is Or:
            emit(node.left)
            emit(node.right)
            prog.append((kernel.AND if t is And else kernel.OR, 0))
            return
        elems = unit_chain(node)
        for k, s in enumerate(elems):
            if s.kind == "top":
                prog.append((kernel.CONST, 1))
            elif s.kind == "bot":
                prog.append((kernel.CONST, 0))
            else:
                prog.append((kernel.NVAR if s.complemented else kernel.VAR, index[(k, s.name)]))
            if k:
                prog.append((kernel.AND, 0))

    emit(n)
    return prog


def check_budget(bits: int, budget: int) -> None:
    if bits > budget:
        raise ResourceError(f"enumeration needs {bits} bits, budget is {budget}")


def truth_tables(formulas: Sequence[Formula], budget: int | None = None):
    """Truth tables of the normal forms over their shared frame space."""
    normals = [normalize(F) for F in formulas]
    pairs, depth = space_of(normals)
    bits = len(pairs) * depth
    check_budget(bits, budget_bits() if budget is None else budget)
    index = {v: j for j, v in enumerate(frame_variables(pairs, depth))}
    tables = [kernel.truth_table(compile_normal(n, index), bits) for n in normals]
    return tables, pairs, depth


@dataclass(frozen=True)
class OracleResult:
    result: int
    frames_checked: int
    witness: Frame | None  # counterexample for validity, model for satisfiability


def _first_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def brute_valid_full(F: Formula, budget: int | None = None) -> OracleResult:
    (table,), pairs, depth = truth_tables([F], budget)
    nframes = 1 << (len(pairs) * depth)
    missing = ((1 << nframes) - 1) ^ table
    if missing:
        return OracleResult(0, nframes, frame_at(_first_bit(missing), pairs, depth))
    return OracleResult(1, nframes, None)


def brute_sat_full(F: Formula, budget: int | None = None) -> OracleResult:
    (table,), pairs, depth = truth_tables([F], budget)
    nframes = 1 << (len(pairs) * depth)
    if table:
        return OracleResult(1, nframes, frame_at(_first_bit(table), pairs, depth))
    return OracleResult(0, nframes, None)


def brute_valid(F: Formula, budget: int | None = None) -> int:
    return brute_valid_full(F, budget).result


def brute_sat(F: Formula, budget: int | None = None) -> int:
    return brute_sat_full(F, budget).result


def value_equal(*formulas: Formula, budget: int | None = None) -> bool:
    """All formulas' normal forms agree on every frame of their joint space."""
    tables, _, _ = truth_tables(formulas, budget)
    return all(t == tables[0] for t in tables)
