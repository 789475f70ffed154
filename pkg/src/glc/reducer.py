"""Base reduction calculus: redexes, single steps, normalization, recursive_reduce."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotNormalError, RuleError
from .formula import (And, Atom, Formula, Gtr, Not, Or, chain_formula, complement,
                      is_unit_chain_expansion, positions, replace_at, subterm, unit_chain)

RULES = ("Neg1", "Neg2", "Neg3", "Neg4", "Gtr1", "Gtr2", "Gtr3", "Gtr4", "Gtr5")

Position = tuple  # of "left" | "right" | "child"


@dataclass(frozen=True)
class ReductionStep:
    rule: str
    position: Position
    before: Formula
    after: Formula

    def to_json(self) -> dict:
        return {"rule": self.rule, "position": ".".join(self.position),
                "before": str(self.before), "after": str(self.after)}


@dataclass(frozen=True)
class Strategy:
    kind: str = "leftmost"
    seed: int = 0

    @classmethod
    def random(cls, seed: int) -> "Strategy":
        return cls("random", seed)


LEFTMOST = Strategy()


def matching_rules(f: Formula) -> list[str]:
    """Rules whose left-hand side matches `f` at its root, in rule order."""
    t = type(f)
    if t is Not:
        c = type(f.child)
        if c is Atom:
            return ["Neg1"]
        if c is And:
            return ["Neg2"]
        if c is Or:
            return ["Neg3"]
        if c is Gtr and type(f.child.left) is Atom:
            return ["Neg4"]
        return []
    if t is Gtr:
        out = []
        lt = type(f.left)
        if lt is Gtr:
            out.append("Gtr1")
        elif lt is And:
            out.append("Gtr2")
        elif lt is Or:
            out.append("Gtr3")
        rt = type(f.right)
        if rt is And:
            out.append("Gtr4")
        elif rt is Or:
            out.append("Gtr5")
        return out
    return []


def apply_rule(rule: str, f: Formula) -> Formula:
    """Rewrite `f` at its root with `rule`."""
    if rule not in matching_rules(f):
        raise RuleError(f"{rule} does not match {f}")
    if rule == "Neg1":
        return Atom(complement(f.child.elem))
    if rule == "Neg2":
        return Or(Not(f.child.left), Not(f.child.right))
    if rule == "Neg3":
        return And(Not(f.child.left), Not(f.child.right))
    if rule == "Neg4":
        s, rest = f.child.left, f.child.right
        return Or(Atom(complement(s.elem)), Gtr(s, Not(rest)))
    a, c = f.left, f.right
    if rule == "Gtr1":
        f1, f2 = a.left, a.right
        return And(Gtr(f1, c), Or(Gtr(f1, f2), Gtr(f1, Gtr(f2, c))))
    if rule == "Gtr2":
        return And(Gtr(a.left, c), Gtr(a.right, c))
    if rule == "Gtr3":
        return Or(Gtr(a.left, c), Gtr(a.right, c))
    if rule == "Gtr4":
        return And(Gtr(a, c.left), Gtr(a, c.right))
    return Or(Gtr(a, c.left), Gtr(a, c.right))


def redexes(f: Formula) -> list[tuple[Position, str]]:
    """All (position, rule) redexes in leftmost-innermost order."""
    out = []
    for pos in positions(f):
        for rule in matching_rules(subterm(f, pos)):
            out.append((pos, rule))
    return out


def step(f: Formula, position: Position, rule: str) -> Formula:
    return replace_at(f, tuple(position), apply_rule(rule, subterm(f, tuple(position))))


@lru_cache(maxsize=1 << 18)
def _nf(f: Formula) -> Formula:
    t = type(f)
    if t is Atom:
        return f
    if t is Not:
        g = Not(_nf(f.child))
    else:
        g = t(_nf(f.left), _nf(f.right))
    rules = matching_rules(g)
    if not rules:
        return g
    return _nf(apply_rule(rules[0], g))


def normalize(f: Formula, strategy: Strategy = LEFTMOST, trace: bool = False):
    """Normal form of `f`; with trace=True returns (normal form, steps)."""
    if strategy.kind == "leftmost" and not trace:
        return _nf(f)
    rng = random.Random(strategy.seed) if strategy.kind == "random" else None
    steps = []
    while True:
        found = redexes(f)
        if not found:
            break
        pos, rule = found[0] if rng is None else rng.choice(found)
        g = step(f, pos, rule)
        steps.append(ReductionStep(rule, pos, f, g))
        f = g
    return (f, steps) if trace else f


def replay(f: Formula, steps) -> Formula:
    for s in steps:
        if s.before != f:
            raise RuleError("trace does not start from the given formula")
        f = step(f, s.position, s.rule)
        if f != s.after:
            raise RuleError("trace step does not reproduce its result")
    return f


def _rr(f: Formula) -> Formula:
    t = type(f)
    if t is Atom:
        return Atom(complement(f.elem))
    if t is And:
        return Or(_rr(f.left), _rr(f.right))
    if t is Or:
        return And(_rr(f.left), _rr(f.right))
    elems = unit_chain(f)
    head = Atom(elems[0])
    return Or(Atom(complement(elems[0])), Gtr(head, _rr(chain_formula(elems[1:]))))


def recursive_reduce(f: Formula) -> Formula:
    """Normal form of the negation of a normal formula, built without negation."""
    if not is_unit_chain_expansion(f):
        raise NotNormalError(f"not in unit-chain expansion: {f}")
    return normalize(_rr(f))


def negate_normalize(f: Formula) -> Formula:
    if not is_unit_chain_expansion(f):
        raise NotNormalError(f"not in unit-chain expansion: {f}")
    return normalize(Not(f))
