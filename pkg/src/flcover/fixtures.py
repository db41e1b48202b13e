"""Small named structures used by the tests, the acceptance suite and the docs."""

from __future__ import annotations

from itertools import combinations

from .algebra import FLAlgebra
from .cover import CoverSystem, Extensional
from .order import FiniteLattice, FinitePreorder


def one_element() -> FLAlgebra:
    L = FiniteLattice(["e"], [(0, 0)])
    return FLAlgebra(L, ((0,),), 0, 0, (0,), (0,), name="ONE")


def bool2() -> FLAlgebra:
    """Two-element Boolean algebra: fusion is meet, ! and ? are the identity."""
    L = FiniteLattice.chain(["bot", "top"])
    return FLAlgebra.from_functions(L, L.meet, 1, zero=0, bang=lambda a: a, quest=lambda a: a,
                                    name="BOOL2")


def luk3() -> FLAlgebra:
    """Three-element Lukasiewicz chain 0 < h < 1 with fusion max(0, a+b-1).

    Elements are indexed 0, 1, 2 standing for 0, 1/2, 1.
    """
    L = FiniteLattice.chain(["0", "h", "1"])
    return FLAlgebra.from_functions(
        L, lambda a, b: max(0, a + b - 2), 2, zero=0,
        bang=lambda a: 2 if a == 2 else 0,
        quest=lambda a: 0 if a == 0 else 2,
        name="LUK3")


def heyting3() -> FLAlgebra:
    """Three-element Heyting chain (fusion is meet), with ! and ? the identity."""
    L = FiniteLattice.chain(["0", "h", "1"])
    return FLAlgebra.from_functions(L, L.meet, 2, zero=0, bang=lambda a: a, quest=lambda a: a,
                                    name="HEYT3")


def algebra_fixtures() -> list[FLAlgebra]:
    return [one_element(), bool2(), luk3(), heyting3()]


def cov2() -> CoverSystem:
    P = FinitePreorder.discrete(["a", "b"])
    return CoverSystem(P, Extensional.from_lists(2, [[{0}, {1}], [{1}]]), name="COV2")


def rcov1() -> CoverSystem:
    P = FinitePreorder.discrete(["e"])
    return CoverSystem(P, Extensional.from_lists(1, [[{0}]]), dot=((0,),), epsilon=0, name="RCOV1")


def rcov1_modal() -> CoverSystem:
    return rcov1().replace(zero=frozenset(), I=frozenset({0}), R=frozenset({(0, 0)}), name="RCOV1M")


def topological(opens: list[set[str]], name: str = "TOP") -> CoverSystem:
    """Cover system of a finite topology given by its open sets.

    Points of the cover system are the open sets; ``x <= y`` iff ``x`` contains
    ``y``, and ``x`` is covered by ``C`` iff ``x`` is the union of ``C``.
    """
    fam = [frozenset(o) for o in opens]
    if len(set(fam)) != len(fam):
        raise ValueError("duplicate open sets")
    labels = ["o_" + "_".join(sorted(o)) if o else "empty" for o in fam]
    n = len(fam)
    P = FinitePreorder(labels, [(i, k) for i in range(n) for k in range(n) if fam[i] >= fam[k]])
    covers = []
    for i in range(n):
        mine = []
        for size in range(n + 1):
            for C in combinations(range(n), size):
                if frozenset().union(*(fam[c] for c in C)) == fam[i]:
                    mine.append(set(C))
        covers.append(mine)
    return CoverSystem(P, Extensional.from_lists(n, covers), name=name)
