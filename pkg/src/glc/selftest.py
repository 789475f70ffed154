"""Embedded golden vectors and the frame-count scaling table."""
from __future__ import annotations

import time
from fractions import Fraction

from .decider import (LevelInterp, count_distinct, rewrite_strict, satisfiable, squash,
                      valid_paper_strict, valid_sound, valid_sound_stats)
from .formula import Gtr, Or, atom, chain_formula, disj, f_size, inverse_counters, lit
from .measure import instantiate, pair_by_id
from .reducer import normalize, recursive_reduce
from .semantics import brute_sat, brute_valid, space_of
from .syntax import parse_infix, to_prefix
from .variant import (compress, map_term, recursive_reduce2, variant_brute_valid,
                      variant_evaluate, variant_normalize, variant_value_equal, TSeq, TSet, Lit)


def equivalence(a: str, b: str):
    """Mutual implication of two infix formulas."""
    return parse_infix(f"(({a}) -> ({b})) & (({b}) -> ({a}))")


def _p(text):
    return parse_infix(text)


def _nf(text):
    return str(normalize(_p(text)))


def _vnf(text):
    return str(variant_normalize(_p(text)))


def _distributivity_witness():
    hat, brooch = lit("hat"), lit("brooch")
    seq = lambda *xs: TSeq(tuple(xs))
    frame = {
        ((), "hat"): 1,
        ((), "brooch"): 1,
        ((Lit(hat),), "green"): 1,
        ((Lit(brooch),), "green"): 1,
        ((TSet(frozenset({seq(Lit(hat)), seq(Lit(brooch))})),), "green"): 0,
    }
    split = variant_evaluate(frame, _p("(hat > green) & (brooch > green)"))
    joint = variant_evaluate(frame, _p("hat & brooch > green"))
    return split, joint


def _pair_sizes(calculus, pair_id, inst, d=1, l=1, flag=False):
    left, right = instantiate(pair_by_id(calculus, pair_id), inst)
    return f_size(d, l, flag, left), f_size(d, l, flag, right)


def _pair_counters(calculus, pair_id):
    p = pair_by_id(calculus, pair_id)
    left, right = instantiate(p, {k: atom(k.lower()) for k in p.letters()})
    return inverse_counters(left), inverse_counters(right)


GOLDEN = [
    # syntax
    ("infix gtr with negated attribute", lambda: repr(_p("hat > ~yellow")),
     "Gtr(Atom(hat), Not(Atom(yellow)))"),
    ("gtr is right associative", lambda: _p("a > b > c") == Gtr(atom("a"), Gtr(atom("b"), atom("c"))), True),
    ("prefix printing", lambda: to_prefix(_p("~(a & b)")), "!*(a)(b)"),
    # reduction
    ("negated conjunction", lambda: _nf("~(a & b)"), "a' | b'"),
    ("negated gtr", lambda: _nf("~(hat > yellow)"), "hat' | (hat > yellow')"),
    ("shared attribute", lambda: _nf("(hat & shirt) > yellow"), "(hat > yellow) & (shirt > yellow)"),
    ("nested gtr", lambda: _nf("(hat > brooch) > green"),
     "(hat > green) & ((hat > brooch) | (hat > brooch > green))"),
    ("recursive reduce", lambda: str(recursive_reduce(_p("a > b > c"))), "a' | (a > b') | (a > b > c')"),
    # worked equivalences and facts
    ("conjunctive attribute", lambda: valid_sound(equivalence("hat > (green & brooch)",
                                                              "(hat > green) & (hat > brooch)")), 1),
    ("conjunctive object", lambda: valid_sound(equivalence("(hat & shirt) > yellow",
                                                           "(hat > yellow) & (shirt > yellow)")), 1),
    ("disjunctive attribute", lambda: valid_sound(equivalence("hat > (hat | brooch)",
                                                              "(hat > hat) | (hat > brooch)")), 1),
    ("disjunctive object", lambda: valid_sound(equivalence("(hat | shirt) > yellow",
                                                           "(hat > yellow) | (shirt > yellow)")), 1),
    ("nesting law", lambda: valid_sound(equivalence(
        "(hat > brooch) > green",
        "(hat > green) & ((hat > brooch) | (hat > (brooch > green)))")), 1),
    ("absent object unsatisfiable", lambda: satisfiable(_p("bot > a")), 0),
    ("present attribute is neutral", lambda: valid_sound(equivalence("s > top", "s")), 1),
    ("absent on absent unsatisfiable", lambda: satisfiable(_p("bot > bot")), 0),
    ("excluded middle", lambda: brute_valid(_p("a | a'")), 1),
    ("attribute negation satisfiable", lambda: brute_sat(_p("hat > yellow'")), 1),
    # level-wise procedures
    ("squash", lambda: str(squash(_p("a | (b > c > d)"), 0)), "a | b"),
    ("count distinct", lambda: count_distinct(_p("a & a' & b")), 2),
    ("rewrite keeps chain", lambda: str(rewrite_strict(_p("a | (b > c)"), LevelInterp(0, {"b": 1}), 0)),
     "top > c"),
    ("rewrite drops chain", lambda: rewrite_strict(_p("a | (b > c)"), LevelInterp(0, {"b": 0}), 0), None),
    ("strict procedure divergence", lambda: (valid_paper_strict(_p("a | a' | (b > c)")),
                                             valid_sound(_p("a | a' | (b > c)"))), (0, 1)),
    # measure harness
    ("TEST1 sizes", lambda: _pair_sizes("base", 1, {"s": atom("s")}), (Fraction(1, 2), Fraction(1, 4))),
    ("TEST2 counters", lambda: _pair_counters("base", 2), ("1/2,1/1,1/2", "1/3,1/1,1/1")),
    ("TEST400 counters", lambda: _pair_counters("variant", 400), ("1/2,1/2,1/3", "1/5,1/2,1/3")),
    ("TEST500 counters", lambda: _pair_counters("variant", 500), ("1/1,1/2,1/1", "1/1,1/8,1/6")),
    ("TEST800 counters", lambda: _pair_counters("variant", 800), ("1/1,1/2,1/2", "1/1,1/2,1/3")),
    # variant calculus
    ("subset expansion", lambda: _vnf("(hat | brooch) > green"),
     "(hat > green) | (brooch > green) | (hat & brooch > green)"),
    ("variant negated conjunctive chain", lambda: _vnf("~((hat & brooch) > green)"),
     "(hat' | brooch') | (hat & brooch > green')"),
    ("variant recursive reduce", lambda: str(recursive_reduce2(_p("(a & b) > c"))),
     "(a' | b') | (a & b > c')"),
    ("graph term", lambda: compress(map_term(_p("(a & b) > c"))).render(), "seq[set{seq[a],seq[b]},c]"),
    ("distributivity witness", _distributivity_witness, (1, 0)),
    ("distributivity not valid", lambda: variant_brute_valid(equivalence(
        "hat & brooch > green", "(hat > green) & (brooch > green)")), 0),
    ("subset expansion value-equal", lambda: variant_value_equal(
        _p("(hat | brooch) > green"),
        _p("(hat > green) | (brooch > green) | (hat & brooch > green)")), True),
]


def run_golden():
    """(name, ok, actual, expected) per vector."""
    out = []
    for name, fn, expected in GOLDEN:
        try:
            actual = fn()
        except Exception as exc:  # reported as a failure
            actual = f"{type(exc).__name__}: {exc}"
        out.append((name, actual == expected, actual, expected))
    return out


# -- scaling table ---------------------------------------------------------

def scaling_formula(pairs: int, depth: int):
    """F | rr(F) for F the disjunction of depth-long chains a_j > ... > a_j."""
    names = [chr(ord("a") + j) for j in range(pairs)]
    f = disj(*[chain_formula([lit(n)] * depth) for n in names])
    return Or(f, recursive_reduce(f))


def scaling_table(max_bits: int = 12):
    rows = []
    for pairs in range(1, 5):
        for depth in range(1, 5):
            if pairs * depth > max_bits:
                continue
            F = scaling_formula(pairs, depth)
            n = normalize(F)
            sp, d = space_of([n])
            space = 1 << (len(sp) * d)
            t0 = time.perf_counter()
            _, ex = valid_sound_stats(n, exhaustive=True)
            _, pr = valid_sound_stats(n)
            ms = (time.perf_counter() - t0) * 1000
            rows.append({"pairs": pairs, "depth": depth, "frame_space": space,
                         "exhaustive_frames": ex.frames_checked, "pruned_frames": pr.frames_checked,
                         "recursion_depth": ex.depth, "elapsed_ms": round(ms, 2),
                         "matches": ex.frames_checked == space})
    return rows


def format_table(rows) -> str:
    cols = ["pairs", "depth", "frame_space", "exhaustive_frames", "pruned_frames",
            "recursion_depth", "elapsed_ms", "matches"]
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    lines = ["  ".join(c.rjust(widths[c]) for c in cols)]
    for r in rows:
        lines.append("  ".join(str(r[c]).rjust(widths[c]) for c in cols))
    return "\n".join(lines)
