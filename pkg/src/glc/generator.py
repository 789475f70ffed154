"""Seeded random formula generators."""
from __future__ import annotations

import random
import string

from .formula import BOT, TOP, And, Atom, Formula, Gtr, Not, Or, lit


def pool_names(n: int) -> list[str]:
    letters = string.ascii_lowercase
    if n <= len(letters):
        return list(letters[:n])
    return [f"p{i}" for i in range(n)]


def _leaf(rng: random.Random, names: list[str], allow_topbot: bool) -> Atom:
    if allow_topbot and rng.random() < 0.12:
        return Atom(TOP if rng.random() < 0.5 else BOT)
    return Atom(lit(rng.choice(names), rng.random() < 0.5))


def _literal(rng: random.Random, names: list[str]) -> Atom:
    return Atom(lit(rng.choice(names), rng.random() < 0.5))


def _build(rng, budget, names, allow_topbot, gtr=True):
    """Random formula with f_len <= budget."""
    if budget <= 2 or rng.random() < 0.15:
        return _leaf(rng, names, allow_topbot)
    ops = ["not", "and", "or", "gtr"] if gtr else ["not", "and", "or"]
    op = rng.choice(ops)
    if op == "not":
        return Not(_build(rng, budget - 1, names, allow_topbot, gtr))
    rest = budget - 1
    left_budget = rng.randint(1, rest - 1)
    left = _build(rng, left_budget, names, allow_topbot, gtr)
    right = _build(rng, rest - left_budget, names, allow_topbot, gtr)
    return {"and": And, "or": Or, "gtr": Gtr}[op](left, right)


def generate(seed: int, size_budget: int, literal_pool: int, allow_topbot: bool = True) -> Formula:
    """Deterministic random formula with f_len <= size_budget."""
    if size_budget < 1 or literal_pool < 1:
        raise ValueError("size_budget and literal_pool must be positive")
    rng = random.Random(seed)
    return _build(rng, size_budget, pool_names(literal_pool), allow_topbot)


# The variant calculus has no rule for a gtr whose object is compound and
# whose attribute is itself a gtr, so the variant generator only emits
# attributes that are gtr-free, or whose gtrs all have literal objects when
# the enclosing object is a literal. Objects are kept small and free of
# negation: a negated chain inside an object expands into a disjunction whose
# subset expansion grows doubly exponentially.

def _literal_headed(rng, budget, names):
    """Formula whose every gtr has a literal object."""
    if budget <= 2 or rng.random() < 0.15:
        return _literal(rng, names)
    op = rng.choice(["not", "and", "or", "gtr"])
    if op == "not":
        return Not(_literal_headed(rng, budget - 1, names))
    if op == "gtr":
        return Gtr(_literal(rng, names), _literal_headed(rng, budget - 2, names))
    rest = budget - 1
    left_budget = rng.randint(1, rest - 1)
    cls = And if op == "and" else Or
    return cls(_literal_headed(rng, left_budget, names),
               _literal_headed(rng, rest - left_budget, names))


def _object(rng, budget, names):
    """Negation-free object built from literals and small chains."""
    if budget <= 2 or rng.random() < 0.3:
        return _literal(rng, names)
    op = rng.choice(["and", "or", "gtr"])
    rest = budget - 1
    left_budget = rng.randint(1, rest - 1)
    if op == "gtr":
        return Gtr(_literal(rng, names), _literal(rng, names))
    cls = And if op == "and" else Or
    return cls(_object(rng, left_budget, names), _object(rng, rest - left_budget, names))


def _variant_build(rng, budget, names):
    if budget <= 2 or rng.random() < 0.15:
        return _literal(rng, names)
    op = rng.choice(["not", "and", "or", "gtr"])
    if op == "not":
        return Not(_variant_build(rng, budget - 1, names))
    rest = budget - 1
    left_budget = rng.randint(1, rest - 1)
    if op == "gtr":
        left_budget = min(left_budget, 5)
        left = _object(rng, left_budget, names)
        if type(left) is Atom:
            right = _literal_headed(rng, rest - left_budget, names)
        else:
            right = _build(rng, rest - left_budget, names, False, gtr=False)
        return Gtr(left, right)
    cls = And if op == "and" else Or
    return cls(_variant_build(rng, left_budget, names),
               _variant_build(rng, rest - left_budget, names))


def generate_variant(seed: int, size_budget: int, literal_pool: int) -> Formula:
    """Top/bot-free formula inside the fragment the variant calculus normalizes."""
    if size_budget < 1 or literal_pool < 1:
        raise ValueError("size_budget and literal_pool must be positive")
    rng = random.Random(seed)
    return _variant_build(rng, size_budget, pool_names(literal_pool))


def _graph_chain(rng, budget, names):
    """A literal or unit graph chain with f_len <= budget."""
    if budget < 3 or rng.random() < 0.25:
        return _literal(rng, names)
    shape = rng.choice(["unit", "extend", "conj"])
    if shape == "unit":
        n = max(2, min((budget + 1) // 2, rng.randint(2, 4)))
        elems = [_literal(rng, names) for _ in range(n)]
        acc = elems[-1]
        for e in reversed(elems[:-1]):
            acc = Gtr(e, acc)
        return acc
    if shape == "extend":
        return Gtr(_graph_chain(rng, budget - 2, names), _literal(rng, names))
    rest = budget - 3
    if rest < 2:
        return Gtr(And(_literal(rng, names), _literal(rng, names)), _literal(rng, names))
    k = rng.randint(1, rest - 1)
    x1 = _graph_chain(rng, k, names)
    x2 = _graph_chain(rng, rest - k, names)
    return Gtr(And(x1, x2), _literal(rng, names))


def generate_graph_chain(seed: int, size_budget: int, literal_pool: int) -> Formula:
    rng = random.Random(seed)
    return _graph_chain(rng, size_budget, pool_names(literal_pool))


def generate_object(seed: int, size_budget: int, literal_pool: int) -> Formula:
    """Negation-free formula safe as the object of a variant gtr."""
    rng = random.Random(seed)
    return _object(rng, size_budget, pool_names(literal_pool))


def generate_attribute(seed: int, size_budget: int, literal_pool: int) -> Formula:
    """Gtr-free, top/bot-free formula safe as the attribute of any variant gtr."""
    rng = random.Random(seed)
    return _build(rng, size_budget, pool_names(literal_pool), False, gtr=False)
