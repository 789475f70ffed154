"""Formula language: atoms, connectives, structural metrics and chain predicates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import NotNormalError

LITERAL = "lit"
TOP_KIND = "top"
BOT_KIND = "bot"


@dataclass(frozen=True, slots=True)
class SElem:
    """An atom: a literal with polarity, or top, or bottom."""

    kind: str
    name: str = ""
    complemented: bool = False

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL

    @property
    def pair(self) -> str:
        """Complement-pair key; a and a' share it."""
        if self.kind != LITERAL:
            raise ValueError(f"{self.kind} has no complement pair")
        return self.name

    def __str__(self) -> str:
        if self.kind == TOP_KIND:
            return "top"
        if self.kind == BOT_KIND:
            return "bot"
        return self.name + ("'" if self.complemented else "")


TOP = SElem(TOP_KIND)
BOT = SElem(BOT_KIND)


def lit(name: str, complemented: bool = False) -> SElem:
    return SElem(LITERAL, name, complemented)


def complement(s: SElem) -> SElem:
    if s.kind == TOP_KIND:
        return BOT
    if s.kind == BOT_KIND:
        return TOP
    return SElem(LITERAL, s.name, not s.complemented)


class Formula:
    """Immutable formula tree node with a cached structural hash."""

    __slots__ = ("_hash",)
    tag = ""

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        from .syntax import to_infix

        return to_infix(self)


class Atom(Formula):
    __slots__ = ("elem",)
    tag = "atom"

    def __init__(self, elem: SElem):
        self.elem = elem
        self._hash = hash(("atom", elem))

    def __eq__(self, other):
        return self is other or (type(other) is Atom and self.elem == other.elem)

    __hash__ = Formula.__hash__

    def __repr__(self) -> str:
        return f"Atom({self.elem})"


class Not(Formula):
    __slots__ = ("child",)
    tag = "not"

    def __init__(self, child: Formula):
        self.child = child
        self._hash = hash(("not", child._hash))

    def children(self):
        return (self.child,)

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is Not and self._hash == other._hash
                and self.child == other.child)

    __hash__ = Formula.__hash__

    def __repr__(self) -> str:
        return f"Not({self.child!r})"


class Binary(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        self.left = left
        self.right = right
        self._hash = hash((self.tag, left._hash, right._hash))

    def children(self):
        return (self.left, self.right)

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is type(self) and self._hash == other._hash
                and self.left == other.left and self.right == other.right)

    __hash__ = Formula.__hash__

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class And(Binary):
    __slots__ = ()
    tag = "and"


class Or(Binary):
    __slots__ = ()
    tag = "or"


class Gtr(Binary):
    """Object/attribute connective: left is the object, right its attribute."""

    __slots__ = ()
    tag = "gtr"


def atom(name: str, complemented: bool = False) -> Atom:
    return Atom(lit(name, complemented))


def right_fold(cls, items):
    """Right-nested binary tree: x0 op (x1 op (... op xn))."""
    items = list(items)
    if not items:
        raise ValueError("cannot fold an empty sequence")
    acc = items[-1]
    for x in reversed(items[:-1]):
        acc = cls(x, acc)
    return acc


def conj(*items: Formula) -> Formula:
    return right_fold(And, items)


def disj(*items: Formula) -> Formula:
    return right_fold(Or, items)


def chain_formula(elems) -> Formula:
    """Right-associated chain e0 > (e1 > ...); a single element is a bare atom."""
    return right_fold(Gtr, [e if isinstance(e, Formula) else Atom(e) for e in elems])


# -- metrics --------------------------------------------------------------

def f_len(f: Formula) -> int:
    if type(f) is Atom:
        return 1
    if type(f) is Not:
        return 1 + f_len(f.child)
    return 1 + f_len(f.left) + f_len(f.right)


def neg_max(f: Formula) -> int:
    if type(f) is Atom:
        return 0
    if type(f) is Not:
        return 1 + neg_max(f.child)
    return max(neg_max(f.left), neg_max(f.right))


def f_size(d: int, l: int, flag: bool, f: Formula) -> Fraction:
    """Exact formula size; see README for the recursion."""
    t = type(f)
    if t is Atom:
        return Fraction(1, 4 ** l)
    if t is Not:
        return Fraction(1, 4 ** d) + f_size(d, l, flag, f.child)
    if t is Gtr:
        return f_size(d + 1, l, flag, f.left) + f_size(d + 1, l, flag, f.right)
    if flag:
        return max(f_size(d + 1, l + 1, False, f.left), f_size(d + 1, l + 1, False, f.right))
    return max(f_size(d, l, False, f.left), f_size(d, l, False, f.right))


def size_context(d: int, l: int, flag: bool, parent: Formula) -> tuple[int, int, bool]:
    """Parameters f_size passes to the children of `parent`."""
    t = type(parent)
    if t is Not:
        return d, l, flag
    if t is Gtr:
        return d + 1, l, flag
    if flag:
        return d + 1, l + 1, False
    return d, l, False


def occurrence_counts(f: Formula) -> tuple[int, int, int]:
    """Counts of (negation, gtr, conjunction) occurrences."""
    neg = gtr = conj_ = 0
    stack = [f]
    while stack:
        x = stack.pop()
        t = type(x)
        if t is Not:
            neg += 1
        elif t is Gtr:
            gtr += 1
        elif t is And:
            conj_ += 1
        stack.extend(x.children())
    return neg, gtr, conj_


@dataclass(frozen=True)
class Measure:
    size: Fraction
    inv_neg: Fraction
    inv_gtr: Fraction
    inv_and: Fraction
    variant: bool = False

    def key(self) -> tuple:
        if self.variant:
            return (self.size, self.inv_neg, self.inv_gtr, self.inv_and)
        return (self.size, self.inv_neg, self.inv_gtr)

    def __lt__(self, other: "Measure") -> bool:
        return self.key() < other.key()

    def __le__(self, other: "Measure") -> bool:
        return self.key() <= other.key()

    def __gt__(self, other: "Measure") -> bool:
        return self.key() > other.key()

    def __ge__(self, other: "Measure") -> bool:
        return self.key() >= other.key()


def measure(f: Formula, variant: bool = False, d: int = 0, l: int = 0, flag: bool = True) -> Measure:
    neg, gtr, cnj = occurrence_counts(f)
    return Measure(f_size(d, l, flag, f), Fraction(1, neg + 1), Fraction(1, gtr + 1),
                   Fraction(1, cnj + 1), variant)


def inverse_counters(f: Formula) -> str:
    """Inverse occurrence counters as 'neg,gtr,and' fractions, e.g. '1/2,1/1,1/2'."""
    neg, gtr, cnj = occurrence_counts(f)
    return f"1/{neg + 1},1/{gtr + 1},1/{cnj + 1}"


# -- chains ---------------------------------------------------------------

def chain_elements(f: Formula) -> list[Formula]:
    """Elements of the right spine of a chain: a > (b > c) gives [a, b, c]."""
    out = []
    while type(f) is Gtr:
        out.append(f.left)
        f = f.right
    out.append(f)
    return out


def is_unit_chain(f: Formula) -> bool:
    return type(f) is Gtr and all(type(e) is Atom for e in chain_elements(f))


def unit_chain(f: Formula) -> tuple[SElem, ...]:
    """Element sequence of an atom or unit chain."""
    if type(f) is Atom:
        return (f.elem,)
    if not is_unit_chain(f):
        raise NotNormalError(f"not a unit chain: {f}")
    return tuple(e.elem for e in chain_elements(f))


def is_unit_chain_expansion(f: Formula) -> bool:
    """Negation-free, and every chain that occurs is a unit chain."""
    t = type(f)
    if t is Atom:
        return True
    if t is Not:
        return False
    if t is Gtr:
        return is_unit_chain(f)
    return is_unit_chain_expansion(f.left) and is_unit_chain_expansion(f.right)


def leaves(f: Formula) -> Iterator[Formula]:
    """Atoms and maximal chains of an and/or tree."""
    stack = [f]
    while stack:
        x = stack.pop()
        if type(x) in (And, Or):
            stack.append(x.right)
            stack.append(x.left)
        else:
            yield x


def max_object_level(f: Formula) -> int:
    if not is_unit_chain_expansion(f):
        raise NotNormalError(f"not in unit-chain expansion: {f}")
    return max(len(unit_chain(x)) - 1 for x in leaves(f))


def atoms_of(f: Formula) -> Iterator[SElem]:
    stack = [f]
    while stack:
        x = stack.pop()
        if type(x) is Atom:
            yield x.elem
        else:
            stack.extend(x.children())


def pairs_of(f: Formula) -> frozenset[str]:
    return frozenset(s.name for s in atoms_of(f) if s.is_literal)


def has_topbot(f: Formula) -> bool:
    return any(not s.is_literal for s in atoms_of(f))


# -- positions ------------------------------------------------------------

def subterm(f: Formula, pos: tuple[str, ...]) -> Formula:
    for step in pos:
        f = getattr(f, step)
    return f


def replace_at(f: Formula, pos: tuple[str, ...], new: Formula) -> Formula:
    if not pos:
        return new
    head, rest = pos[0], pos[1:]
    if head == "child":
        return Not(replace_at(f.child, rest, new))
    if head == "left":
        return type(f)(replace_at(f.left, rest, new), f.right)
    return type(f)(f.left, replace_at(f.right, rest, new))


def positions(f: Formula, prefix: tuple[str, ...] = ()) -> Iterator[tuple[str, ...]]:
    """All positions in post-order (children before parent, left before right)."""
    t = type(f)
    if t is Not:
        yield from positions(f.child, prefix + ("child",))
    elif t is not Atom:
        yield from positions(f.left, prefix + ("left",))
        yield from positions(f.right, prefix + ("right",))
    yield prefix
