"""Level-wise validity procedures: a strict one that drops finished chains,
and a sound one that recurses on residual formulas.

Both work on the normal form. A LevelInterp assigns one bit per complement
pair at a single object level; by the synchronization condition a frame is
just one LevelInterp per level.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping

from .errors import NotNormalError
from .formula import (TOP, And, Atom, Formula, Not, Or, SElem, chain_formula,
                      is_unit_chain_expansion, leaves, max_object_level, pairs_of, unit_chain)
from .reducer import normalize
from .semantics import budget_bits, check_budget


@dataclass(frozen=True)
class LevelInterp:
    level: int
    bits: Mapping[str, int]

    def value(self, s: SElem) -> int:
        if s.kind == "top":
            return 1
        if s.kind == "bot":
            return 0
        return int(bool(self.bits.get(s.name, 0)) != s.complemented)


def level_interps(level: int, pairs) -> list[LevelInterp]:
    pairs = sorted(pairs)
    return [LevelInterp(level, dict(zip(pairs, bits)))
            for bits in itertools.product((0, 1), repeat=len(pairs))]


def _require_normal(f: Formula) -> None:
    if not is_unit_chain_expansion(f):
        raise NotNormalError(f"not in unit-chain expansion: {f}")


def _map_leaves(f: Formula, fn) -> Formula:
    t = type(f)
    if t is And or t is Or:
        return t(_map_leaves(f.left, fn), _map_leaves(f.right, fn))
    return fn(f)


def squash(f: Formula, level: int) -> Formula:
    """Truncate every chain reaching past `level` to its elements 0..level."""
    _require_normal(f)

    def cut(leaf):
        elems = unit_chain(leaf)
        if len(elems) - 1 >= level:
            return chain_formula(elems[: level + 1])
        return leaf

    return _map_leaves(f, cut)


def count_distinct(f: Formula) -> int:
    return len(pairs_of(f))


def _eval_at(f: Formula, interp: LevelInterp) -> int:
    """Value of a squashed formula; elements below the level count as satisfied
    only when they are top (the rewrite step puts top there)."""
    t = type(f)
    if t is And:
        return _eval_at(f.left, interp) & _eval_at(f.right, interp)
    if t is Or:
        return _eval_at(f.left, interp) | _eval_at(f.right, interp)
    elems = unit_chain(f)
    if len(elems) <= interp.level:
        # chain ended at an earlier level; its remaining elements are all top
        return int(all(s == TOP for s in elems))
    for s in elems[: interp.level]:
        if s != TOP:
            # literal below the current level: only reachable at level 0
            return 0
    return interp.value(elems[interp.level])


def sat_check(f: Formula, interp: LevelInterp) -> bool:
    """True when the squashed formula is falsified by `interp`."""
    return _eval_at(squash(f, interp.level), interp) == 0


EMPTY = None


def rewrite_strict(f: Formula, interp: LevelInterp, level: int):
    """Drop leaves finished at this level, then drop or top-mark each chain by
    its element at `level`. Returns EMPTY when nothing survives."""
    _require_normal(f)

    def prune(node):
        t = type(node)
        if t is And or t is Or:
            a, b = prune(node.left), prune(node.right)
            if a is EMPTY:
                return b
            if b is EMPTY:
                return a
            return t(a, b)
        elems = unit_chain(node)
        if len(elems) == 1 or len(elems) - 1 <= level:
            return EMPTY
        if interp.value(elems[level]) == 0:
            return EMPTY
        return chain_formula(elems[:level] + (TOP,) + elems[level + 1:])

    return prune(f)


@dataclass
class Stats:
    frames_checked: int = 0
    depth: int = 0
    empty_skips: int = 0
    log: list = field(default_factory=list)


def _strict(fa: Formula, level: int, stats: Stats) -> int:
    stats.depth = max(stats.depth, level + 1)
    fb = squash(fa, level)
    has_chains = any(type(x) is not Atom for x in leaves(fa))
    for interp in level_interps(level, pairs_of(fb)):
        stats.frames_checked += 1
        if sat_check(fb, interp):
            return 0
        if not has_chains:
            continue
        rewritten = rewrite_strict(fa, interp, level)
        if rewritten is EMPTY:
            stats.empty_skips += 1
            stats.log.append({"level": level, "interp": dict(interp.bits)})
            continue
        if _strict(rewritten, level + 1, stats) == 0:
            return 0
    return 1


def valid_paper_strict_stats(F: Formula, budget: int | None = None):
    n = normalize(F)
    check_budget(len(pairs_of(n)) * (max_object_level(n) + 1),
                 budget_bits() if budget is None else budget)
    stats = Stats()
    return _strict(n, 0, stats), stats


def valid_paper_strict(F: Formula, budget: int | None = None) -> int:
    return valid_paper_strict_stats(F, budget)[0]


# -- sound residual procedure --------------------------------------------------
# Residuals are nested tuples: ("&", a, b), ("|", a, b), a tuple of SElem for a
# chain suffix whose first element sits at the current level, or 0 / 1.

def _residual(f: Formula):
    t = type(f)
    if t is And:
        return ("&", _residual(f.left), _residual(f.right))
    if t is Or:
        return ("|", _residual(f.left), _residual(f.right))
    return ("leaf", unit_chain(f))


def _substitute(r, interp: LevelInterp):
    kind = r[0]
    if kind == "leaf":
        elems = r[1]
        if not interp.value(elems[0]):
            return 0
        if len(elems) == 1:
            return 1
        return ("leaf", elems[1:])
    a = _substitute(r[1], interp)
    if kind == "&":
        if a == 0:
            return 0
        b = _substitute(r[2], interp)
        if b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        return ("&", a, b)
    if a == 1:
        return 1
    b = _substitute(r[2], interp)
    if b == 1:
        return 1
    if a == 0:
        return b
    if b == 0:
        return a
    return ("|", a, b)


def _current_pairs(r, out: set) -> set:
    if r in (0, 1):
        return out
    if r[0] == "leaf":
        s = r[1][0]
        if s.is_literal:
            out.add(s.name)
        return out
    _current_pairs(r[1], out)
    _current_pairs(r[2], out)
    return out


def _sound(r, level: int, stats: Stats, pairs, depth: int, exhaustive: bool) -> int:
    stats.depth = max(stats.depth, level + 1)
    scope = pairs if exhaustive else _current_pairs(r, set())
    verdict = 1
    for interp in level_interps(level, scope):
        sub = r if r in (0, 1) else _substitute(r, interp)
        if exhaustive and level + 1 < depth:
            if _sound(sub, level + 1, stats, pairs, depth, exhaustive) == 0:
                verdict = 0
            continue
        stats.frames_checked += 1
        if sub == 0:
            if not exhaustive:
                return 0
            verdict = 0
        elif sub != 1:
            if _sound(sub, level + 1, stats, pairs, depth, exhaustive) == 0:
                if not exhaustive:
                    return 0
                verdict = 0
    return verdict


def valid_sound_stats(F: Formula, exhaustive: bool = False, budget: int | None = None):
    """Validity with statistics. exhaustive=True visits every frame of the
    frame space level by level instead of stopping at decided residuals."""
    n = normalize(F)
    pairs = tuple(sorted(pairs_of(n)))
    depth = max_object_level(n) + 1
    check_budget(len(pairs) * depth, budget_bits() if budget is None else budget)
    stats = Stats()
    return _sound(_residual(n), 0, stats, pairs, depth, exhaustive), stats


def valid_sound(F: Formula, budget: int | None = None) -> int:
    return valid_sound_stats(F, budget=budget)[0]


def satisfiable(F: Formula, budget: int | None = None) -> int:
    return 1 - valid_sound(normalize(Not(F)), budget)


def satisfiable_stats(F: Formula, budget: int | None = None):
    result, stats = valid_sound_stats(normalize(Not(F)), budget=budget)
    return 1 - result, stats


def divergence_record(F: Formula) -> dict:
    from .semantics import brute_valid

    return {"formula": str(F), "strict_result": valid_paper_strict(F),
            "oracle_result": brute_valid(F)}


def append_divergences(path, records) -> int:
    """Append records whose two results differ; returns how many were written."""
    n = 0
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            if rec["strict_result"] != rec["oracle_result"]:
                fh.write(json.dumps(rec) + "\n")
                n += 1
    return n
