"""Size-measure harness: template pairs for each reduction rule and laws,
random instantiation over a parameter grid, and live trace checks."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .formula import Atom, Formula, Not, SElem, f_size, lit, measure, size_context, subterm
from .generator import generate, generate_graph_chain
from .syntax import parse_prefix

GRID = tuple((d, l, flag) for d, l in ((0, 0), (1, 1), (2, 3)) for flag in (True, False))


@dataclass(frozen=True)
class TestPair:
    id: int
    left: str
    right: str
    relation: str  # ">=" or "="
    calculus: str  # "base" or "variant"
    graph_letters: frozenset = frozenset()  # letters instantiated by graph chains

    __test__ = False  # not a pytest class

    def letters(self) -> list[str]:
        return sorted({c for c in self.left + self.right if c.isupper()})

    def has_atom(self) -> bool:
        return "s" in (self.left + self.right).replace("'", "")


_SHARED = {
    1: ("!s", "s", ">="),
    2: ("!*(A)(B)", "+(!A)(!B)", ">="),
    3: ("!+(A)(B)", "*(!A)(!B)", ">="),
    8: ("%(A)(*(B)(C))", "*(%(A)(B))(%(A)(C))", ">="),
    9: ("%(A)(+(B)(C))", "+(%(A)(B))(%(A)(C))", ">="),
    10: ("*(A)(B)", "*(B)(A)", "="),
    11: ("+(A)(B)", "+(B)(A)", "="),
    12: ("*(*(A)(B))(C)", "*(A)(*(B)(C))", "="),
    13: ("+(+(A)(B))(C)", "+(A)(+(B)(C))", "="),
}

_BASE_ONLY = {
    4: ("!%(s)(A)", "+(s')(%(s)(!A))", ">="),
    5: ("%(%(A)(B))(C)", "*(%(A)(C))(+(%(A)(B))(%(A)(%(B)(C))))", ">="),
    6: ("%(*(A)(B))(C)", "*(%(A)(C))(%(B)(C))", ">="),
    7: ("%(+(A)(B))(C)", "+(%(A)(C))(%(B)(C))", ">="),
}

# The two longest right-hand templates are rebuilt from the rules they
# exercise: negation of a gtr with a conjunctive object, and the subset
# expansion of a three-way disjunctive object.
_VARIANT_ONLY = {
    400: ("!%(*(A)(*(B)(C)))(D)",
          "+(+(!A)(+(!B)(!C)))(%(*(A)(*(B)(C)))(!D))", ">="),
    500: ("%(+(A)(+(B)(C)))(D)",
          "+(%(A)(D))(+(%(B)(D))(+(%(C)(D))(+(%(*(A)(B))(D))(+(%(*(A)(C))(D))"
          "(+(%(*(B)(C))(D))(%(*(A)(*(B)(C)))(D)))))))", ">="),
    800: ("%(*(A)(+(B)(C)))(D)", "%(+(*(A)(B))(*(A)(C)))(D)", ">="),
    900: ("%(*(+(A)(B))(C))(D)", "%(+(*(A)(C))(*(B)(C)))(D)", ">="),
}

_BASE_ORDER = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13)
_VARIANT_ORDER = (1, 2, 3, 400, 500, 8, 9, 800, 900, 10, 11, 12, 13)
_GRAPH_LETTERS = {400: frozenset("ABC"), 500: frozenset("ABC")}


def builtin_pairs(calculus: str = "base") -> list[TestPair]:
    if calculus == "base":
        table = {**_SHARED, **_BASE_ONLY}
        order = _BASE_ORDER
    elif calculus == "variant":
        table = {**_SHARED, **_VARIANT_ONLY}
        order = _VARIANT_ORDER
    else:
        raise ValueError(f"unknown calculus {calculus!r}")
    return [TestPair(i, table[i][0], table[i][1], table[i][2], calculus,
                     _GRAPH_LETTERS.get(i, frozenset()) if calculus == "variant" else frozenset())
            for i in order]


def pair_by_id(calculus: str, pair_id: int) -> TestPair:
    for p in builtin_pairs(calculus):
        if p.id == pair_id:
            return p
    raise KeyError(pair_id)


def rename_atom(f: Formula, name: str, elem: SElem) -> Formula:
    """Replace the pair `name` by the literal `elem`, keeping polarity."""
    t = type(f)
    if t is Atom:
        s = f.elem
        if s.is_literal and s.name == name:
            return Atom(lit(elem.name, elem.complemented != s.complemented))
        return f
    if t is Not:
        return Not(rename_atom(f.child, name, elem))
    return t(rename_atom(f.left, name, elem), rename_atom(f.right, name, elem))


def instantiate(p: TestPair, inst: Mapping[str, Formula]) -> tuple[Formula, Formula]:
    """Both sides with capital letters bound and `s` renamed to inst['s']."""
    bindings = {k: v for k, v in inst.items() if k.isupper()}
    left = parse_prefix(p.left, bindings)
    right = parse_prefix(p.right, bindings)
    if "s" in inst:
        elem = inst["s"].elem if isinstance(inst["s"], Atom) else inst["s"]
        left, right = rename_atom(left, "s", elem), rename_atom(right, "s", elem)
    return left, right


def random_instantiation(p: TestPair, seed: int, size_budget: int = 6,
                         literal_pool: int = 3) -> dict:
    rng = random.Random(seed)
    inst = {}
    if p.has_atom():
        inst["s"] = Atom(lit(rng.choice("abc"[:literal_pool]), rng.random() < 0.5))
    for letter in p.letters():
        sub_seed = rng.getrandbits(32)
        if letter in p.graph_letters:
            inst[letter] = generate_graph_chain(sub_seed, size_budget, literal_pool)
        else:
            inst[letter] = generate(sub_seed, size_budget, literal_pool,
                                    allow_topbot=p.calculus == "base")
    return inst


def compare(relation: str, left: Fraction, right: Fraction) -> bool:
    return left >= right if relation == ">=" else left == right


def check_pair(p: TestPair, inst: Mapping[str, Formula], d: int, l: int, flag: bool) -> bool:
    left, right = instantiate(p, inst)
    return compare(p.relation, f_size(d, l, flag, left), f_size(d, l, flag, right))


def run_suite(calculus: str, seeds: int, grid=GRID, base_seed: int = 0,
              pairs=None) -> list[dict]:
    """One record per pair, seed and grid point."""
    records = []
    for p in pairs if pairs is not None else builtin_pairs(calculus):
        for k in range(seeds):
            seed = base_seed + k
            left, right = instantiate(p, random_instantiation(p, seed))
            for d, l, flag in grid:
                ls, rs = f_size(d, l, flag, left), f_size(d, l, flag, right)
                records.append({"pair_id": p.id, "calculus": calculus, "seed": seed,
                                "d": d, "l": l, "flag": flag, "left_size": str(ls),
                                "right_size": str(rs), "pass": compare(p.relation, ls, rs)})
    return records


def report_lines(records) -> str:
    return "".join(json.dumps(r) + "\n" for r in records)


# -- live traces -----------------------------------------------------------

def position_context(f: Formula, pos, d: int = 0, l: int = 0, flag: bool = True):
    """Size parameters in force at `pos` when sizing `f` from (d, l, flag)."""
    for step in pos:
        d, l, flag = size_context(d, l, flag, f)
        f = getattr(f, step)
    return d, l, flag


def step_decreases(step, variant: bool = False, root=(0, 0, True)) -> bool:
    """The rewritten subterm's measure, sized in the context it occupies,
    is lexicographically smaller after the step than before."""
    d, l, flag = position_context(step.before, step.position, *root)
    old = subterm(step.before, step.position)
    new = subterm(step.after, step.position)
    return measure(new, variant, d, l, flag) < measure(old, variant, d, l, flag)


def trace_violations(steps, variant: bool = False, root=(0, 0, True)) -> list:
    return [s for s in steps if not step_decreases(s, variant, root)]
