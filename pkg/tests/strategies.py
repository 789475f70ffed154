"""Hypothesis strategies built on the seeded generators."""
from hypothesis import strategies as st

from glc.generator import generate, generate_graph_chain, generate_variant
from glc.reducer import normalize

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def formulas(size=12, pool=3, topbot=True):
    return st.builds(lambda s: generate(s, size, pool, topbot), seeds)


def normal_forms(size=12, pool=3, topbot=True):
    return formulas(size, pool, topbot).map(normalize)


def variant_formulas(size=12, pool=3):
    return st.builds(lambda s: generate_variant(s, size, pool), seeds)


def graph_chains(size=7, pool=3):
    return st.builds(lambda s: generate_graph_chain(s, size, pool), seeds)


def context(seed, size=8, pool=3, topbot=True, gen=None):
    """A formula with one subterm position marked as a hole; returns a filler."""
    import random

    from glc.formula import positions, replace_at

    host = (gen or (lambda s: generate(s, size, pool, topbot)))(seed)
    pos = random.Random(seed).choice(list(positions(host)))
    return lambda x: replace_at(host, pos, x)
