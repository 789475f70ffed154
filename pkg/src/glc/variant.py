"""Variant calculus without synchronization: unit graph chains, their
reduction rules, canonical graph terms and context-indexed valuations."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from . import kernel
from .errors import MissingQueryPoint, NotNormalError, ResourceError, RuleError, VariantError
from .formula import (And, Atom, Formula, Gtr, Not, Or, SElem, complement, conj, disj,
                      has_topbot, leaves, replace_at, subterm)
from .reducer import ReductionStep, Strategy, LEFTMOST
from .semantics import budget_bits

DEFAULT_VARIANT_BUDGET_BITS = 22

VARIANT_RULES = ("VNeg1", "VNeg2", "VNeg3", "VNeg4", "VGtr3", "VGtr4", "VGtr5",
                 "ObjDist1", "ObjDist2")


def _no_topbot(f: Formula) -> None:
    if has_topbot(f):
        raise VariantError("the variant calculus has no top/bot")


def conjuncts(f: Formula) -> list[Formula]:
    if type(f) is And:
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def disjuncts(f: Formula) -> list[Formula]:
    if type(f) is Or:
        return disjuncts(f.left) + disjuncts(f.right)
    return [f]


def _is_literal(f: Formula) -> bool:
    return type(f) is Atom and f.elem.is_literal


def _is_graph_unit(f: Formula) -> bool:
    return _is_literal(f) or _ugc(f)


def _ugc(f: Formula) -> bool:
    if type(f) is not Gtr:
        return False
    left, right = f.left, f.right
    if _is_literal(left) and (_is_literal(right) or (type(right) is Gtr and _ugc_unit(right))):
        return True
    if not _is_literal(right):
        return False
    if type(left) is Gtr:
        return _ugc(left)
    if type(left) is And:
        return all(_is_graph_unit(c) for c in conjuncts(left))
    return False


def _ugc_unit(f: Formula) -> bool:
    """Right-nested chain of literals."""
    while type(f) is Gtr:
        if not _is_literal(f.left):
            return False
        f = f.right
    return _is_literal(f)


def is_unit_graph_chain(f: Formula) -> bool:
    _no_topbot(f)
    return _ugc(f)


def _expansion(f: Formula) -> bool:
    t = type(f)
    if t is Atom:
        return f.elem.is_literal
    if t is Not:
        return False
    if t is Gtr:
        return _ugc(f)
    return _expansion(f.left) and _expansion(f.right)


def is_unit_graph_expansion(f: Formula) -> bool:
    _no_topbot(f)
    return _expansion(f)


# -- rules ---------------------------------------------------------------------

def _conjunctive_units(f: Formula) -> bool:
    return all(_is_graph_unit(c) for c in conjuncts(f))


def variant_matching_rules(f: Formula, in_head: bool = False) -> list[str]:
    """Rules matching at the root of `f`; in_head marks nodes reached from the
    object of a gtr through conjunctions and disjunctions only."""
    t = type(f)
    if t is Not:
        c = f.child
        ct = type(c)
        if ct is Atom:
            return ["VNeg1"]
        if ct is And:
            return ["VNeg2"]
        if ct is Or:
            return ["VNeg3"]
        if ct is Gtr and _conjunctive_units(c.left):
            return ["VNeg4"]
        return []
    if t is Gtr:
        out = []
        if type(f.left) is Or and all(_conjunctive_units(d) for d in disjuncts(f.left)):
            out.append("VGtr3")
        if type(f.right) is And:
            out.append("VGtr4")
        elif type(f.right) is Or:
            out.append("VGtr5")
        return out
    if t is And and in_head:
        out = []
        if type(f.right) is Or:
            out.append("ObjDist1")
        if type(f.left) is Or:
            out.append("ObjDist2")
        return out
    return []


def nonempty_subsets(n: int) -> list[tuple[int, ...]]:
    """Index subsets ordered by size, then lexicographically."""
    return [c for k in range(1, n + 1) for c in itertools.combinations(range(n), k)]


def _negate_conjuncts(h: Formula) -> Formula:
    """Disjunction of the negated conjuncts, keeping the shape of the conjunction."""
    if type(h) is And:
        return Or(_negate_conjuncts(h.left), _negate_conjuncts(h.right))
    return Not(h)


def apply_variant_rule(rule: str, f: Formula, in_head: bool = False) -> Formula:
    if rule not in variant_matching_rules(f, in_head):
        raise RuleError(f"{rule} does not match {f}")
    if rule == "VNeg1":
        return Atom(complement(f.child.elem))
    if rule == "VNeg2":
        return Or(Not(f.child.left), Not(f.child.right))
    if rule == "VNeg3":
        return And(Not(f.child.left), Not(f.child.right))
    if rule == "VNeg4":
        head, rest = f.child.left, f.child.right
        return Or(_negate_conjuncts(head), Gtr(head, Not(rest)))
    if rule == "VGtr3":
        ds = disjuncts(f.left)
        return disj(*[Gtr(conj(*[ds[j] for j in idx]), f.right)
                      for idx in nonempty_subsets(len(ds))])
    if rule == "VGtr4":
        return And(Gtr(f.left, f.right.left), Gtr(f.left, f.right.right))
    if rule == "VGtr5":
        return Or(Gtr(f.left, f.right.left), Gtr(f.left, f.right.right))
    if rule == "ObjDist1":
        f1, f2, f3 = f.left, f.right.left, f.right.right
        return Or(And(f1, f2), And(f1, f3))
    f1, f2, f3 = f.left.left, f.left.right, f.right
    return Or(And(f1, f3), And(f2, f3))


def _positions_with_head(f: Formula, prefix=(), in_head=False):
    """Post-order (position, in_head) pairs."""
    t = type(f)
    if t is Not:
        yield from _positions_with_head(f.child, prefix + ("child",), False)
    elif t is Gtr:
        yield from _positions_with_head(f.left, prefix + ("left",), True)
        yield from _positions_with_head(f.right, prefix + ("right",), False)
    elif t is not Atom:
        yield from _positions_with_head(f.left, prefix + ("left",), in_head)
        yield from _positions_with_head(f.right, prefix + ("right",), in_head)
    yield prefix, in_head


def head_context(f: Formula, pos) -> bool:
    in_head = False
    for step in pos:
        t = type(f)
        if t is Gtr:
            in_head = step == "left"
        elif t is Not:
            in_head = False
        f = getattr(f, step)
    return in_head


def variant_redexes(f: Formula) -> list[tuple[tuple, str]]:
    _no_topbot(f)
    out = []
    for pos, in_head in _positions_with_head(f):
        for rule in variant_matching_rules(subterm(f, pos), in_head):
            out.append((pos, rule))
    return out


def variant_step(f: Formula, position, rule: str) -> Formula:
    position = tuple(position)
    new = apply_variant_rule(rule, subterm(f, position), head_context(f, position))
    return replace_at(f, position, new)


@lru_cache(maxsize=1 << 17)
def _vnf(f: Formula, in_head: bool) -> Formula:
    t = type(f)
    if t is Atom:
        return f
    if t is Not:
        g = Not(_vnf(f.child, False))
    elif t is Gtr:
        g = Gtr(_vnf(f.left, True), _vnf(f.right, False))
    else:
        g = t(_vnf(f.left, in_head), _vnf(f.right, in_head))
    rules = variant_matching_rules(g, in_head)
    if not rules:
        return g
    return _vnf(apply_variant_rule(rules[0], g, in_head), in_head)


def variant_normalize(f: Formula, strategy: Strategy = LEFTMOST, trace: bool = False):
    """Normal form in unit graph expansion; raises VariantError when the
    rules get stuck outside it."""
    _no_topbot(f)
    steps = []
    if strategy.kind == "leftmost" and not trace:
        g = _vnf(f, False)
    else:
        rng = random.Random(strategy.seed) if strategy.kind == "random" else None
        g = f
        while True:
            found = variant_redexes(g)
            if not found:
                break
            pos, rule = found[0] if rng is None else rng.choice(found)
            h = variant_step(g, pos, rule)
            steps.append(ReductionStep(rule, pos, g, h))
            g = h
    if not _expansion(g):
        raise VariantError(f"no variant rule applies, but not in unit graph expansion: {g}")
    return (g, steps) if trace else g


def _rr2(f: Formula) -> Formula:
    t = type(f)
    if t is Atom:
        return Atom(complement(f.elem))
    if t is And:
        return Or(_rr2(f.left), _rr2(f.right))
    if t is Or:
        return And(_rr2(f.left), _rr2(f.right))
    return Or(_rr2(f.left), Gtr(f.left, _rr2(f.right)))


def recursive_reduce2(f: Formula) -> Formula:
    if not is_unit_graph_expansion(f):
        raise NotNormalError(f"not in unit graph expansion: {f}")
    return variant_normalize(_rr2(f))


# -- graph terms ---------------------------------------------------------------

class GraphTerm:
    __slots__ = ()


@dataclass(frozen=True)
class Lit(GraphTerm):
    elem: SElem

    def render(self) -> str:
        return str(self.elem)


@dataclass(frozen=True)
class TSet(GraphTerm):
    members: frozenset

    def render(self) -> str:
        return "set{" + ",".join(sorted(m.render() for m in self.members)) + "}"


@dataclass(frozen=True)
class TSeq(GraphTerm):
    items: tuple

    def render(self) -> str:
        return "seq[" + ",".join(i.render() for i in self.items) + "]"


def map_term(g: Formula) -> GraphTerm:
    t = type(g)
    if t is Atom:
        if not g.elem.is_literal:
            raise VariantError("the variant calculus has no top/bot")
        return TSeq((Lit(g.elem),))
    if t is And:
        return TSet(frozenset((map_term(g.left), map_term(g.right))))
    if t is Gtr:
        return TSeq((map_term(g.left), map_term(g.right)))
    raise VariantError(f"cannot map {g}")


def _size(t: GraphTerm) -> int:
    if type(t) is Lit:
        return 1
    if type(t) is TSet:
        return 1 + sum(_size(m) for m in t.members)
    return 1 + sum(_size(i) for i in t.items)


def compress(t: GraphTerm) -> GraphTerm:
    """Canonical representative: nested and singleton sets flattened, doubly
    wrapped sequence items unwrapped, a trailing sequence spliced in."""
    if type(t) is Lit:
        return t
    if type(t) is TSet:
        members = set()
        for m in t.members:
            c = compress(m)
            if type(c) is TSet:
                members |= c.members
            else:
                members.add(c)
        if len(members) == 1:
            return next(iter(members))
        return TSet(frozenset(members))
    items = []
    for x in t.items:
        c = compress(x)
        while type(c) is TSeq and len(c.items) == 1:
            c = c.items[0]
        items.append(c)
    while type(items[-1]) is TSeq:
        last = items.pop()
        items.extend(last.items)
    if len(items) == 1 and type(items[0]) is TSeq:
        return items[0]
    return TSeq(tuple(items))


def render_context(ctx: tuple) -> str:
    return "[" + ",".join(x.render() for x in ctx) + "]"


# -- valuation -----------------------------------------------------------------

QueryPoint = tuple  # (context tuple, pair name)


def _j_points(ctx: tuple, t: GraphTerm, out: list) -> None:
    """Append (query point, complemented) for each conjunct of J(ctx, t)."""
    if type(t) is Lit:
        out.append(((ctx, t.elem.name), t.elem.complemented))
    elif type(t) is TSet:
        for m in sorted(t.members, key=lambda m: m.render()):
            _j_points(ctx, m, out)
    else:
        for i, item in enumerate(t.items):
            _j_points(ctx + t.items[:i], item, out)


def leaf_conjuncts(g: Formula) -> list:
    """J of a literal or unit graph chain as a list of signed query points."""
    out = []
    _j_points((), compress(map_term(g)), out)
    return out


def _query_key(qp):
    ctx, pair = qp
    return (len(ctx), render_context(ctx), pair)


def query_points_of_normal(n: Formula) -> list:
    pts = set()
    for leaf in leaves(n):
        for qp, _ in leaf_conjuncts(leaf):
            pts.add(qp)
    return sorted(pts, key=_query_key)


def variant_query_points(F: Formula) -> list:
    return query_points_of_normal(variant_normalize(F))


def variant_evaluate(frame: Mapping, F: Formula) -> int:
    """Value of a formula in unit graph expansion under a map from query
    points to the bit of the plain literal."""
    if not is_unit_graph_expansion(F):
        raise NotNormalError(f"not in unit graph expansion: {F}")

    def ev(node):
        t = type(node)
        if t is And:
            return ev(node.left) & ev(node.right)
        if t is Or:
            return ev(node.left) | ev(node.right)
        for qp, neg in leaf_conjuncts(node):
            if qp not in frame:
                raise MissingQueryPoint(f"no assignment for {render_context(qp[0])}, {qp[1]}")
            if int(frame[qp]) == int(neg):
                return 0
        return 1

    return ev(F)


def compile_variant(n: Formula, index: dict) -> list:
    prog = []

    def emit(node):
        t = type(node)
        if t is And or t is Or:
            emit(node.left)
            emit(node.right)
            prog.append((kernel.AND if t is And else kernel.OR, 0))
            return
        for k, (qp, neg) in enumerate(leaf_conjuncts(node)):
            prog.append((kernel.NVAR if neg else kernel.VAR, index[qp]))
            if k:
                prog.append((kernel.AND, 0))

    emit(n)
    return prog


def variant_truth_tables(formulas, budget: int | None = None):
    normals = [variant_normalize(F) for F in formulas]
    pts = sorted({qp for n in normals for qp in query_points_of_normal(n)}, key=_query_key)
    limit = budget_bits(DEFAULT_VARIANT_BUDGET_BITS) if budget is None else budget
    if len(pts) > limit:
        raise ResourceError(f"enumeration needs {len(pts)} bits, budget is {limit}")
    index = {qp: j for j, qp in enumerate(pts)}
    tables = [kernel.truth_table(compile_variant(n, index), len(pts)) for n in normals]
    return tables, pts


def variant_frame_at(index: int, pts) -> dict:
    n = len(pts)
    return {qp: (index >> (n - 1 - j)) & 1 for j, qp in enumerate(pts)}


def frame_to_json(frame: Mapping) -> list:
    return [{"context": render_context(ctx), "literal": pair, "bit": int(bit)}
            for (ctx, pair), bit in sorted(frame.items(), key=lambda kv: _query_key(kv[0]))]


@dataclass(frozen=True)
class VariantResult:
    result: int
    frames_checked: int
    witness: dict | None


def variant_brute_valid_full(F: Formula, budget: int | None = None) -> VariantResult:
    (table,), pts = variant_truth_tables([F], budget)
    nframes = 1 << len(pts)
    missing = ((1 << nframes) - 1) ^ table
    if missing:
        i = (missing & -missing).bit_length() - 1
        return VariantResult(0, nframes, variant_frame_at(i, pts))
    return VariantResult(1, nframes, None)


def variant_brute_sat_full(F: Formula, budget: int | None = None) -> VariantResult:
    (table,), pts = variant_truth_tables([F], budget)
    nframes = 1 << len(pts)
    if table:
        i = (table & -table).bit_length() - 1
        return VariantResult(1, nframes, variant_frame_at(i, pts))
    return VariantResult(0, nframes, None)


def variant_brute_valid(F: Formula, budget: int | None = None) -> int:
    return variant_brute_valid_full(F, budget).result


def variant_brute_sat(F: Formula, budget: int | None = None) -> int:
    return variant_brute_sat_full(F, budget).result


def variant_value_equal(*formulas: Formula, budget: int | None = None) -> bool:
    tables, _ = variant_truth_tables(formulas, budget)
    return all(t == tables[0] for t in tables)
