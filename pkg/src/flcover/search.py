"""Exhaustive enumeration of small FL-algebras.

The lattice order is fixed to one of the hard-coded skeletons (every lattice
with at most four elements up to isomorphism); the search then fills in the
unit, the fusion table, ``zero`` and, when the predicate mentions them, the
``bang`` and ``quest`` tables.  Every yielded algebra is a residuated lattice
with a zero.

Predicates are boolean expressions over axiom names::

    s1..s4 & !s5          modal-fl          storage & (c6 | c7)

Top-level conjuncts are evaluated as soon as the components they read are
fixed, which keeps the size-3 sweeps fast.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .algebra import AXIOMS, CONSUMPTION, RESIDUATED, STORAGE, FLAlgebra, holds
from .errors import FLCError
from .order import FiniteLattice

MAX_SEARCH_SIZE = 4


class PredicateError(FLCError):
    pass


def skeletons(n: int) -> list[FiniteLattice]:
    if not 1 <= n <= MAX_SEARCH_SIZE:
        raise ValueError(f"skeleton size must be in 1..{MAX_SEARCH_SIZE}")
    chain = FiniteLattice.chain([f"e{i}" for i in range(n)])
    if n < 4:
        return [chain]
    diamond = FiniteLattice.generated(["bot", "a", "b", "top"], [(0, 1), (0, 2), (1, 3), (2, 3)])
    return [chain, diamond]


# ---------------------------------------------------------------------------
# Predicate language

GROUPS = {
    "residuated": RESIDUATED,
    "fl": (),
    "storage": STORAGE,
    "modal-fl": STORAGE + CONSUMPTION,
}
EXTRA_ATOMS = {"commutative", "classical"}

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(&)|(\|)|(!)|([A-Za-z][A-Za-z0-9.\-]*))")


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


def _expand_atom(word: str):
    m = re.fullmatch(r"([sc])(\d)\.\.([sc])(\d)", word)
    if m:
        p1, a, p2, b = m.group(1), int(m.group(2)), m.group(3), int(m.group(4))
        if p1 != p2 or a > b:
            raise PredicateError(f"bad range {word!r}")
        return And(tuple(_expand_atom(f"{p1}{i}") for i in range(a, b + 1)))
    if word in GROUPS:
        return And(tuple(Atom(i) for i in GROUPS[word]))
    if word in AXIOMS or word in EXTRA_ATOMS:
        return Atom(word)
    raise PredicateError(f"unknown predicate name {word!r}")


def parse_predicate(text: str):
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PredicateError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        toks.append(next(g for g in m.groups() if g is not None))
    if not toks:
        raise PredicateError("empty predicate")
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def disj():
        parts = [conj()]
        while peek() == "|":
            take()
            parts.append(conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj():
        parts = [neg()]
        while peek() == "&":
            take()
            parts.append(neg())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def neg():
        if peek() == "!":
            take()
            return Not(neg())
        if peek() == "(":
            take()
            e = disj()
            if peek() != ")":
                raise PredicateError("missing ')'")
            take()
            return e
        tok = peek()
        if tok is None or tok in "()&|!":
            raise PredicateError(f"expected an axiom name, got {tok!r}")
        return _expand_atom(take())

    expr = disj()
    if i != len(toks):
        raise PredicateError(f"trailing tokens in {text!r}")
    return expr


def _atom_needs(name: str) -> frozenset:
    if name == "commutative":
        return frozenset()
    if name == "classical":
        return frozenset({"zero"})
    return AXIOMS[name][1]


def needs(expr) -> frozenset:
    if isinstance(expr, Atom):
        return _atom_needs(expr.name)
    if isinstance(expr, Not):
        return needs(expr.arg)
    out = frozenset()
    for a in expr.args:
        out |= needs(a)
    return out


def evaluate(expr, A: FLAlgebra) -> bool:
    if isinstance(expr, Atom):
        if expr.name == "commutative":
            return A.is_commutative()
        if expr.name == "classical":
            from .negation import is_classical_fl
            return is_classical_fl(A)
        return holds(A, expr.name)
    if isinstance(expr, Not):
        return not evaluate(expr.arg, A)
    if isinstance(expr, And):
        return all(evaluate(a, A) for a in expr.args)
    return any(evaluate(a, A) for a in expr.args)


def _conjuncts(expr) -> list:
    if isinstance(expr, And):
        out = []
        for a in expr.args:
            out.extend(_conjuncts(a))
        return out
    return [expr]


# ---------------------------------------------------------------------------
# Table enumeration

def residuated_fusions(L: FiniteLattice, unit: int) -> Iterator[tuple]:
    """Every associative, monotone, residuated fusion on ``L`` with the given unit."""
    n = L.size
    bot = L.bottom
    table = [[None] * n for _ in range(n)]
    for a in range(n):
        table[unit][a] = a
        table[a][unit] = a
    # join preservation forces the bottom to absorb
    for a in range(n):
        for v in ((a, bot), (bot, a)):
            x, y = v
            if table[x][y] is not None and table[x][y] != bot:
                return
            table[x][y] = bot
    free = [(a, b) for a in range(n) for b in range(n) if table[a][b] is None]

    def consistent(a, b):
        v = table[a][b]
        for c in range(n):
            w = table[a][c]
            if w is not None:
                if L.leq(b, c) and not L.leq(v, w):
                    return False
                if L.leq(c, b) and not L.leq(w, v):
                    return False
            w = table[c][b]
            if w is not None:
                if L.leq(a, c) and not L.leq(v, w):
                    return False
                if L.leq(c, a) and not L.leq(w, v):
                    return False
        return True

    def fill(k):
        if k == len(free):
            t = tuple(tuple(row) for row in table)
            A = FLAlgebra(L, t, unit)
            if all(holds(A, i) for i in RESIDUATED):
                yield t
            return
        a, b = free[k]
        for v in range(n):
            table[a][b] = v
            if consistent(a, b):
                yield from fill(k + 1)
        table[a][b] = None

    # the fixed cells must already be mutually monotone
    for a, b in product(range(n), repeat=2):
        if table[a][b] is not None and not consistent(a, b):
            return
    yield from fill(0)


def enumerate_algebras(n: int, constraints="fl", name_prefix: str = "A") -> Iterator[FLAlgebra]:
    """Yield, in a fixed order, every algebra of size ``n`` satisfying ``constraints``.

    ``constraints`` is a predicate string or a parsed expression.  ``bang``
    (resp. ``quest``) tables are enumerated only when the predicate reads
    them; otherwise they are left ``None``.
    """
    if not 1 <= n <= MAX_SEARCH_SIZE:
        raise ValueError(f"search size must be in 1..{MAX_SEARCH_SIZE}")
    expr = parse_predicate(constraints) if isinstance(constraints, str) else constraints
    comps = needs(expr)
    with_bang = "bang" in comps
    with_quest = "quest" in comps
    stages = {"base": [], "bang": [], "zero": [], "quest": []}
    for c in _conjuncts(expr):
        k = needs(c)
        if "quest" in k:
            stages["quest"].append(c)
        elif "zero" in k:
            stages["zero"].append(c)
        elif "bang" in k:
            stages["bang"].append(c)
        else:
            stages["base"].append(c)

    def ok(stage, A):
        return all(evaluate(c, A) for c in stages[stage])

    unary = list(product(range(n), repeat=n))
    count = 0
    for L in skeletons(n):
        for unit in range(n):
            for fusion in residuated_fusions(L, unit):
                base = FLAlgebra(L, fusion, unit, zero=0)
                if not ok("base", base):
                    continue
                bangs = [None]
                if with_bang:
                    bangs = [t for t in unary if ok("bang", base.replace(bang=t))]
                for t in bangs:
                    for z in range(n):
                        A = FLAlgebra(L, fusion, unit, zero=z, bang=t)
                        if not ok("zero", A):
                            continue
                        quests = unary if with_quest else [None]
                        for q in quests:
                            B = A.replace(quest=q) if q is not None else A
                            if q is not None and not ok("quest", B):
                                continue
                            B = B.replace(name=f"{name_prefix}{n}_{count}")
                            count += 1
                            yield B
