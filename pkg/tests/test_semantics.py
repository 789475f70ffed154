import pytest
from hypothesis import given

from glc import parse_infix as p
from glc.errors import DepthError, NotNormalError, ResourceError
from glc.formula import And, Not, Or, TOP, lit
from glc.generator import generate
from glc.reducer import normalize
from glc.semantics import (Frame, brute_sat, brute_sat_full, brute_valid, brute_valid_full,
                           budget_bits, enumerate_frames, evaluate, evaluate_full, frame_at,
                           frame_variables, global_J, local_I, space_of, value_equal)

from strategies import formulas


def frame(*levels, pairs=("a", "b", "c", "hat", "yellow")):
    return Frame(tuple(pairs), tuple(frozenset(lv) for lv in levels))


def test_local_interpretation():
    f = frame({"hat"})
    assert local_I(f, 0, lit("hat")) == 1
    assert local_I(f, 0, lit("hat", True)) == 0
    assert local_I(f, 0, TOP) == 1
    with pytest.raises(DepthError):
        local_I(f, 1, lit("hat"))


def test_chain_valuation_is_levelwise():
    f = frame({"hat"}, {"yellow"})
    assert global_J(f, (lit("hat"), lit("yellow"))) == 1
    assert global_J(f, (lit("hat"), lit("hat"))) == 0
    assert evaluate(f, p("hat > yellow")) == 1
    assert evaluate(f, p("yellow > hat")) == 0


def test_present_attribute_is_neutral():
    f = frame({"hat"}, set())
    assert evaluate_full(f, p("hat > top")) == evaluate_full(f, p("hat")) == 1


def test_absent_object_and_absent_attribute():
    for fr in enumerate_frames(("a",), 2):
        assert evaluate_full(fr, p("bot > a")) == 0
        assert evaluate_full(fr, p("bot > bot")) == 0


def test_evaluate_requires_normal_form_and_depth():
    with pytest.raises(NotNormalError):
        evaluate(frame({"a"}), p("~a"))
    with pytest.raises(DepthError):
        evaluate(frame({"a"}), p("a > b"))


def test_frames_enumerate_lexicographically():
    assert frame_variables(("a", "b"), 2) == [(0, "a"), (0, "b"), (1, "a"), (1, "b")]
    assert frame_at(0b1001, ("a", "b"), 2).levels == (frozenset({"a"}), frozenset({"b"}))
    assert frame_at(1, ("a",), 1).to_json() == {"level_0": {"a": 1}}


def test_space_of_covers_depth_and_pairs():
    assert space_of([p("a | (b > c')")]) == (("a", "b", "c"), 2)
    assert space_of([p("top")]) == ((), 1)


def test_oracle_examples():
    assert brute_valid(p("a | a'")) == 1
    assert brute_valid(p("a > b")) == 0
    assert brute_sat(p("bot > a")) == 0
    assert brute_sat(p("hat > yellow'")) == 1
    res = brute_valid_full(p("a > b"))
    assert res.frames_checked == 16 and evaluate(res.witness, p("a > b")) == 0
    model = brute_sat_full(p("a > b'")).witness
    assert evaluate(model, p("a > b'")) == 1


def test_budget_is_enforced(monkeypatch):
    with pytest.raises(ResourceError):
        brute_valid(p("a > b > c"), budget=5)
    monkeypatch.setenv("GLC_BUDGET_BITS", "3")
    assert budget_bits() == 3
    with pytest.raises(ResourceError):
        brute_valid(p("a > b"))


@given(formulas(size=12))
def test_compiled_tables_match_direct_evaluation(f):
    n = normalize(f)
    pairs, depth = space_of([n])
    expected = all(evaluate(fr, n) for fr in enumerate_frames(pairs, depth))
    assert brute_valid(f) == int(expected)


@given(formulas(size=10))
def test_enlarging_the_frame_changes_nothing(f):
    n = normalize(f)
    pairs, depth = space_of([n])
    wide = tuple(sorted(set(pairs) | {"zz"}))
    for i, fr in enumerate(enumerate_frames(pairs, depth)):
        big = Frame(wide, fr.levels + (frozenset(wide),))
        assert evaluate(big, n) == evaluate(fr, n)
        if i > 16:
            break


# value-level Boolean algebra over generated instances

LAWS = [
    ("and associative", lambda x, y, z: (And(x, And(y, z)), And(And(x, y), z))),
    ("or associative", lambda x, y, z: (Or(x, Or(y, z)), Or(Or(x, y), z))),
    ("and commutative", lambda x, y, z: (And(x, y), And(y, x))),
    ("or commutative", lambda x, y, z: (Or(x, y), Or(y, x))),
    ("and distributes", lambda x, y, z: (And(x, Or(y, z)), Or(And(x, y), And(x, z)))),
    ("or distributes", lambda x, y, z: (Or(x, And(y, z)), And(Or(x, y), Or(x, z)))),
    ("and idempotent", lambda x, y, z: (And(x, x), x)),
    ("or idempotent", lambda x, y, z: (Or(x, x), x)),
    ("and absorbs", lambda x, y, z: (And(x, Or(x, y)), x)),
    ("or absorbs", lambda x, y, z: (Or(x, And(x, y)), x)),
    ("top identity", lambda x, y, z: (And(x, p("top")), x)),
    ("bot identity", lambda x, y, z: (Or(x, p("bot")), x)),
    ("bot annihilates", lambda x, y, z: (And(x, p("bot")), p("bot"))),
    ("top annihilates", lambda x, y, z: (Or(x, p("top")), p("top"))),
    ("excluded middle", lambda x, y, z: (Or(x, Not(x)), p("top"))),
    ("contradiction", lambda x, y, z: (And(x, Not(x)), p("bot"))),
    ("double negation", lambda x, y, z: (Not(Not(x)), x)),
]


@pytest.mark.parametrize("name, law", LAWS, ids=[n for n, _ in LAWS])
def test_boolean_algebra_laws(name, law):
    for seed in range(200):
        x, y, z = (generate(seed * 3 + k, 7, 3) for k in range(3))
        left, right = law(x, y, z)
        assert value_equal(left, right), (name, str(x), str(y), str(z))


def test_budget_env_default(monkeypatch):
    monkeypatch.delenv("GLC_BUDGET_BITS", raising=False)
    assert budget_bits() == 24
