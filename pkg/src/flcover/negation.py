"""Orthogonality, the two negations, the derived modality ``-!-`` and classicality.

On algebras the negations come from residual tables (``-l a = a =>l 0``); on
cover systems they come from the orthogonality relation ``z _|_ y`` iff
``z.y`` is in ``zero``.  The two routes are kept separate on purpose; the
tests compare them.
"""

from __future__ import annotations

import os
import random
from itertools import product
from typing import Iterable, NamedTuple, Optional

from .algebra import STORAGE, FLAlgebra, _need, check_modal_fl, holds_all, is_residuated
from .cover import CoverSystem, j, up
from .errors import PreconditionError, VariantMismatch
from .order import up_sets
from .report import AxiomReport


def default_seed() -> int:
    return int(os.environ.get("FLC_SEED", "0"))


# ---------------------------------------------------------------------------
# Cover-system side

def _require_zero(S: CoverSystem):
    if S.dot is None or S.epsilon is None or S.zero is None:
        raise PreconditionError(f"{S.name} needs fusion, epsilon and zero")


def orthogonal(S: CoverSystem, z: int, y: int) -> bool:
    return S.dot[z][y] in S.zero


def neg_left(S: CoverSystem, X: Iterable[int]) -> frozenset:
    """``{z : z _|_ y for every y in X}``."""
    _require_zero(S)
    X = tuple(X)
    d, Z = S.dot, S.zero
    return frozenset(z for z in range(S.n) if all(d[z][y] in Z for y in X))


def neg_right(S: CoverSystem, X: Iterable[int]) -> frozenset:
    """``{z : y _|_ z for every y in X}``."""
    _require_zero(S)
    X = tuple(X)
    d, Z = S.dot, S.zero
    return frozenset(z for z in range(S.n) if all(d[y][z] in Z for y in X))


def check_ortho_props(S: CoverSystem) -> AxiomReport:
    _require_zero(S)
    n, nm, d, e, Z = S.n, S.names, S.dot, S.epsilon, S.zero
    r = range(n)
    rep = AxiomReport()
    eps_l = frozenset(z for z in r if orthogonal(S, z, e))
    eps_r = frozenset(z for z in r if orthogonal(S, e, z))
    rep.add("zero-recovered", [(S.fmt(eps_l), S.fmt(eps_r), S.fmt(Z))] if not (eps_l == eps_r == Z) else [])
    rep.add("ortho-via-eps", ((nm[z], nm[y]) for z, y in product(r, repeat=2)
                              if orthogonal(S, z, y) != orthogonal(S, d[z][y], e)))
    rep.add("ortho-eps-monotone", ((nm[z], nm[y]) for z, y in product(r, repeat=2)
                                   if S.preorder.leq(z, y) and z in eps_l and y not in eps_l))
    rep.add("ortho-eps-local", ((nm[x],) for x in sorted(j(S, eps_l) - eps_l)))
    return rep


def check_classical(S: CoverSystem, seed: Optional[int] = None, samples: int = 100) -> bool:
    """Whether ``j up(X) = -l -r X = -r -l X`` for every up-set ``X``.

    A positive answer is spot-checked on ``samples`` random arbitrary subsets;
    a disagreement there raises, since it would contradict the up-set result.
    """
    _require_zero(S)

    def agrees(X):
        c = j(S, up(S, X))
        return c == neg_left(S, neg_right(S, X)) == neg_right(S, neg_left(S, X))

    if not all(agrees(X) for X in up_sets(S.preorder)):
        return False
    rng = random.Random(default_seed() if seed is None else seed)
    for _ in range(samples):
        X = frozenset(x for x in range(S.n) if rng.random() < 0.5)
        if not agrees(X):
            raise AssertionError(f"{S.name}: classical on up-sets but not on {S.fmt(X)}")
    return True


def girard_quest(S: CoverSystem, X: Iterable[int]) -> frozenset:
    """``(X^perp & I)^perp`` in a classical system with commutative fusion."""
    _require_zero(S)
    if S.I is None:
        raise PreconditionError(f"{S.name} has no I")
    r = range(S.n)
    if any(S.dot[a][b] != S.dot[b][a] for a in r for b in r):
        raise PreconditionError(f"{S.name}: fusion is not commutative")
    if not check_classical(S):
        raise PreconditionError(f"{S.name} is not classical")
    return neg_left(S, neg_left(S, X) & S.I)


# ---------------------------------------------------------------------------
# Algebra side

def _els(A):
    return range(A.n)


def ax_dn_intro(A):
    for a in _els(A):
        if not (A.leq(a, A.neg_l(A.neg_r(a))) and A.leq(a, A.neg_r(A.neg_l(a)))):
            yield (a,)


def ax_antitone(A):
    for a, b in product(_els(A), repeat=2):
        if A.leq(a, b):
            if not A.leq(A.neg_l(b), A.neg_l(a)):
                yield (a, b, "l")
            if not A.leq(A.neg_r(b), A.neg_r(a)):
                yield (a, b, "r")


def ax_neg_unit(A):
    if not (A.neg_l(A.unit) == A.zero == A.neg_r(A.unit)):
        yield (A.unit,)


def ax_unit_below_neg_zero(A):
    z = A.zero
    if not A.leq(A.unit, A.meet(A.neg_l(z), A.neg_r(z))):
        yield (z,)


def ax_contra_r(A):
    il, ir = A.imp_l, A.imp_r
    for a, b in product(_els(A), repeat=2):
        if not A.leq(ir[a][b], il[A.neg_r(b)][A.neg_r(a)]):
            yield (a, b)


def ax_contra_l(A):
    il, ir = A.imp_l, A.imp_r
    for a, b in product(_els(A), repeat=2):
        if not A.leq(il[a][b], ir[A.neg_l(b)][A.neg_l(a)]):
            yield (a, b)


def ax_contra_general(A):
    il, ir = A.imp_l, A.imp_r
    for a, b, c in product(_els(A), repeat=3):
        if not A.leq(il[a][b], ir[il[b][c]][il[a][c]]):
            yield (a, b, c)


NEGATION_AXIOMS = {
    "neg-double-intro": ax_dn_intro,
    "neg-antitone": ax_antitone,
    "neg-unit": ax_neg_unit,
    "unit-below-neg-zero": ax_unit_below_neg_zero,
    "contrapositive-r": ax_contra_r,
    "contrapositive-l": ax_contra_l,
    "contrapositive-general": ax_contra_general,
}


def check_negation_identities(A: FLAlgebra) -> AxiomReport:
    _need(A, "zero")
    if not is_residuated(A):
        raise PreconditionError(f"{A.name} is not a residuated lattice")
    rep = AxiomReport()
    for i, fn in NEGATION_AXIOMS.items():
        rep.add(i, (tuple(A.names[x] if isinstance(x, int) else x for x in w) for w in fn(A)))
    return rep


def _require_storage_zero(A: FLAlgebra):
    _need(A, "zero", "bang")
    if not (is_residuated(A) and holds_all(A, STORAGE)):
        raise PreconditionError(f"{A.name} does not carry a storage modality")


def dual_quest(A: FLAlgebra) -> tuple:
    """The table ``a -> -l ! -r a``, checked against its three other spellings."""
    _require_storage_zero(A)
    t = A.bang
    out = []
    for a in _els(A):
        if A.neg_l(t[a]) != A.neg_r(t[a]) or t[A.neg_l(a)] != t[A.neg_r(a)]:
            raise VariantMismatch(A.names[a], "lemma-5 halves")
        v = (A.neg_l(t[A.neg_r(a)]), A.neg_r(t[A.neg_l(a)]),
             A.neg_l(t[A.neg_l(a)]), A.neg_r(t[A.neg_r(a)]))
        if len(set(v)) != 1:
            raise VariantMismatch(A.names[a], tuple(A.names[x] for x in v))
        out.append(v[0])
    return tuple(out)


def check_theorem5(A: FLAlgebra) -> AxiomReport:
    """(c1)-(c5) for ``A`` with its ``quest`` replaced by ``-l ! -r``."""
    return check_modal_fl(A.replace(quest=dual_quest(A)))


# ---------------------------------------------------------------------------
# Classical / Grishin algebras

class GrishinResult(NamedTuple):
    classical: bool
    grishin: bool


def is_classical_fl(A: FLAlgebra) -> bool:
    _need(A, "zero")
    return all(A.neg_l(A.neg_r(a)) == a == A.neg_r(A.neg_l(a)) for a in _els(A))


def is_grishin(A: FLAlgebra) -> bool:
    """Double negation elimination plus ``a <= b`` iff ``a*-r b <= 0`` iff ``-l b*a <= 0``."""
    if not is_classical_fl(A):
        return False
    z, f = A.zero, A.fusion
    for a, b in product(_els(A), repeat=2):
        le = A.leq(a, b)
        if le != A.leq(f[a][A.neg_r(b)], z) or le != A.leq(f[A.neg_l(b)][a], z):
            return False
    return True


def is_grishin_residual_form(A: FLAlgebra) -> bool:
    """The residuated formulation: DNE, ``-l 1 = -r 1`` and both implications via fusion."""
    if not is_classical_fl(A):
        return False
    if A.neg_l(A.unit) != A.neg_r(A.unit):
        return False
    f = A.fusion
    for a, b in product(_els(A), repeat=2):
        if A.imp_l[a][b] != A.neg_l(f[a][A.neg_r(b)]):
            return False
        if A.imp_r[a][b] != A.neg_r(f[A.neg_l(b)][a]):
            return False
    return True


def check_grishin_equivalence(A: FLAlgebra) -> GrishinResult:
    _need(A, "zero")
    if not is_residuated(A):
        raise PreconditionError(f"{A.name} is not a residuated lattice")
    return GrishinResult(is_classical_fl(A), is_grishin(A))
