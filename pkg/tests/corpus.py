"""Formula corpora shared by the acceptance suite."""
import random

from glc.formula import (BOT, TOP, And, Atom, Gtr, Not, Or, conj, disj, f_len, lit,
                         max_object_level)
from glc.generator import (generate, generate_attribute, generate_graph_chain, generate_object,
                           generate_variant)
from glc.reducer import normalize
from glc.variant import nonempty_subsets, recursive_reduce2, variant_query_points

LEAVES = (Atom(lit("a")), Atom(lit("a", True)), Atom(lit("b")), Atom(lit("b", True)),
          Atom(TOP), Atom(BOT))


def exhaustive_corpus(max_len=7):
    """Every formula of length at most max_len over two pairs, top and bot."""
    by_len = {1: list(LEAVES)}
    for n in range(2, max_len + 1):
        out = [Not(x) for x in by_len[n - 1]]
        for i in range(1, n - 1):
            for x in by_len[i]:
                for y in by_len[n - 1 - i]:
                    out += [And(x, y), Or(x, y), Gtr(x, y)]
        by_len[n] = out
    return [f for n in range(1, max_len + 1) for f in by_len[n]]


def seeded_corpus(count=1000, max_len=20, pool=3, max_depth=3):
    """The first `count` seeded formulas within the length and chain depth bounds."""
    out, seed = [], 0
    while len(out) < count:
        f = generate(seed, max_len // 2, pool)
        if f_len(f) <= max_len and max_object_level(normalize(f)) + 1 <= max_depth:
            out.append((seed, f))
        seed += 1
    return out


# variant replacement pairs placed in contexts built from negation,
# conjunction and disjunction

def _wrap(seed, x):
    rng = random.Random(seed)
    for k in range(rng.randint(0, 3)):
        other = generate_variant(seed * 7 + k, 6, 3)
        x = rng.choice([lambda u: Not(u), lambda u: And(u, other), lambda u: Or(other, u)])(x)
    return x


def variant_pairs(seed):
    """The fifteen variant replacement pairs over seeded instances."""
    g = [generate_graph_chain(seed * 11 + k, 4, 3) for k in range(3)]
    o = [generate_object(seed * 11 + 3 + k, 3, 3) for k in range(3)]
    at = [generate_attribute(seed * 11 + 6 + k, 4, 3) for k in range(2)]
    v = [generate_variant(seed * 11 + 8 + k, 8, 3) for k in range(3)]
    k = 2 + seed % 2
    head = conj(*g[:2])
    subsets = nonempty_subsets(k)
    return [
        (Gtr(disj(*g[:k]), at[0]), disj(*[Gtr(conj(*[g[j] for j in s]), at[0]) for s in subsets])),
        (Gtr(o[0], And(at[0], at[1])), And(Gtr(o[0], at[0]), Gtr(o[0], at[1]))),
        (Gtr(o[0], Or(at[0], at[1])), Or(Gtr(o[0], at[0]), Gtr(o[0], at[1]))),
        (Gtr(And(o[0], Or(o[1], o[2])), at[0]), Gtr(Or(And(o[0], o[1]), And(o[0], o[2])), at[0])),
        (Gtr(And(Or(o[0], o[1]), o[2]), at[0]), Gtr(Or(And(o[0], o[2]), And(o[1], o[2])), at[0])),
        (Not(g[0]), recursive_reduce2(g[0])),
        (Not(And(v[0], v[1])), Or(Not(v[0]), Not(v[1]))),
        (Not(Or(v[0], v[1])), And(Not(v[0]), Not(v[1]))),
        (Not(Gtr(head, at[0])), Or(disj(*[Not(x) for x in g[:2]]), Gtr(head, Not(at[0])))),
        (Or(v[0], v[0]), v[0]),
        (And(v[0], v[0]), v[0]),
        (Or(v[0], v[1]), Or(v[1], v[0])),
        (Or(v[0], Or(v[1], v[2])), Or(Or(v[0], v[1]), v[2])),
        (And(v[0], v[1]), And(v[1], v[0])),
        (And(v[0], And(v[1], v[2])), And(And(v[0], v[1]), v[2])),
    ]


def variant_pair_instances(index, count=200, bits=22):
    """The first `count` seeded instances whose enumeration fits in `bits`."""
    seed = 0
    while count:
        left, right = variant_pairs(seed)[index]
        left, right = _wrap(seed, left), _wrap(seed, right)
        if len(set(variant_query_points(left)) | set(variant_query_points(right))) <= bits:
            yield seed, left, right
            count -= 1
        seed += 1
