"""Finite residuated lattices, FL-algebras and modal FL-algebras.

An :class:`FLAlgebra` carries a lattice order, a fusion table and a unit;
``zero``, ``bang`` and ``quest`` are optional so the same type covers plain
residuated lattices, FL-algebras, storage algebras and modal FL-algebras.
Residuals are never stored; they are derived by a join-scan and validated.

Every axiom is a generator of failing witnesses (tuples of element indices).
The ``check_*`` functions collect these into an :class:`AxiomReport`; the
enumerator uses :func:`holds`, which stops at the first witness.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Iterator, Optional, Sequence

from .errors import PreconditionError, ResidualMissing
from .order import FiniteLattice
from .report import AxiomReport

Table = tuple


@dataclass(frozen=True)
class FLAlgebra:
    lattice: FiniteLattice
    fusion: Table
    unit: int
    zero: Optional[int] = None
    bang: Optional[Table] = None
    quest: Optional[Table] = None
    name: str = "A"

    def __post_init__(self):
        n = self.lattice.size
        fusion = tuple(tuple(row) for row in self.fusion)
        object.__setattr__(self, "fusion", fusion)
        if len(fusion) != n or any(len(row) != n for row in fusion):
            raise ValueError(f"fusion table must be {n}x{n}")
        if any(not (0 <= v < n) for row in fusion for v in row):
            raise ValueError("fusion table value out of range")
        for label in ("unit", "zero"):
            v = getattr(self, label)
            if v is not None and not (0 <= v < n):
                raise ValueError(f"{label} out of range")
        for label in ("bang", "quest"):
            t = getattr(self, label)
            if t is not None:
                t = tuple(t)
                object.__setattr__(self, label, t)
                if len(t) != n or any(not (0 <= v < n) for v in t):
                    raise ValueError(f"{label} table malformed")

    @classmethod
    def from_functions(cls, lattice: FiniteLattice, fuse: Callable[[int, int], int], unit: int,
                       zero: Optional[int] = None, bang: Optional[Callable[[int], int]] = None,
                       quest: Optional[Callable[[int], int]] = None, name: str = "A") -> "FLAlgebra":
        r = range(lattice.size)
        return cls(lattice, tuple(tuple(fuse(a, b) for b in r) for a in r), unit, zero,
                   None if bang is None else tuple(bang(a) for a in r),
                   None if quest is None else tuple(quest(a) for a in r), name)

    def replace(self, **changes) -> "FLAlgebra":
        return dataclasses.replace(self, **changes)

    # --- basic access ---------------------------------------------------

    @property
    def n(self) -> int:
        return self.lattice.size

    @property
    def names(self) -> tuple:
        return self.lattice.names

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    def index(self, name: str) -> int:
        return self.lattice.index(name)

    def leq(self, a: int, b: int) -> bool:
        return self.lattice.leq(a, b)

    def join(self, a: int, b: int) -> int:
        return self.lattice.join(a, b)

    def meet(self, a: int, b: int) -> int:
        return self.lattice.meet(a, b)

    def fuse(self, a: int, b: int) -> int:
        return self.fusion[a][b]

    # --- residuals ------------------------------------------------------

    @cached_property
    def _left_candidates(self):
        # b =>l c as the join of {a : a.b <= c}
        L, f, r = self.lattice, self.fusion, range(self.n)
        return tuple(tuple(L.join_all(a for a in r if L.leq(f[a][b], c)) for c in r) for b in r)

    @cached_property
    def _right_candidates(self):
        # a =>r c as the join of {b : a.b <= c}
        L, f, r = self.lattice, self.fusion, range(self.n)
        return tuple(tuple(L.join_all(b for b in r if L.leq(f[a][b], c)) for c in r) for a in r)

    def _left_failures(self) -> Iterator[tuple]:
        L, f, cand, r = self.lattice, self.fusion, self._left_candidates, range(self.n)
        for b, c in product(r, r):
            top = cand[b][c]
            if any(L.leq(a, top) != L.leq(f[a][b], c) for a in r):
                yield (b, c)

    def _right_failures(self) -> Iterator[tuple]:
        L, f, cand, r = self.lattice, self.fusion, self._right_candidates, range(self.n)
        for a, c in product(r, r):
            top = cand[a][c]
            if any(L.leq(b, top) != L.leq(f[a][b], c) for b in r):
                yield (a, c)

    @cached_property
    def imp_l(self) -> Table:
        """``imp_l[b][c]`` is ``b =>l c``; raises ResidualMissing if fusion is not residuated."""
        for b, c in self._left_failures():
            raise ResidualMissing("left", self.names[b], self.names[c])
        return self._left_candidates

    @cached_property
    def imp_r(self) -> Table:
        for a, c in self._right_failures():
            raise ResidualMissing("right", self.names[a], self.names[c])
        return self._right_candidates

    def neg_l(self, a: int) -> int:
        return self.imp_l[a][self._require_zero()]

    def neg_r(self, a: int) -> int:
        return self.imp_r[a][self._require_zero()]

    def _require_zero(self) -> int:
        if self.zero is None:
            raise PreconditionError(f"algebra {self.name} has no zero")
        return self.zero

    def is_commutative(self) -> bool:
        r = range(self.n)
        return all(self.fusion[a][b] == self.fusion[b][a] for a in r for b in r)

    def __repr__(self) -> str:
        parts = [f"name={self.name!r}", f"elements={list(self.names)}"]
        return f"FLAlgebra({', '.join(parts)})"


def residual_left(A: FLAlgebra, b: int, c: int) -> int:
    """``b =>l c``, the greatest ``a`` with ``a.b <= c``."""
    return A.imp_l[b][c]


def residual_right(A: FLAlgebra, a: int, c: int) -> int:
    """``a =>r c``, the greatest ``b`` with ``a.b <= c``."""
    return A.imp_r[a][c]


# ---------------------------------------------------------------------------
# Axioms.  Each yields witnesses (tuples of element indices; a trailing
# 'l'/'r' marks the side for two-sided laws).

def _els(A):
    return range(A.n)


def ax_associativity(A):
    f = A.fusion
    for a, b, c in product(_els(A), repeat=3):
        if f[f[a][b]][c] != f[a][f[b][c]]:
            yield (a, b, c)


def ax_unit(A):
    f, e = A.fusion, A.unit
    for a in _els(A):
        if f[e][a] != a or f[a][e] != a:
            yield (a,)


def ax_monotone(A):
    f, L = A.fusion, A.lattice
    for a, b, c in product(_els(A), repeat=3):
        if L.leq(b, c) and not (L.leq(f[a][b], f[a][c]) and L.leq(f[b][a], f[c][a])):
            yield (a, b, c)


def ax_residual_left(A):
    yield from A._left_failures()


def ax_residual_right(A):
    yield from A._right_failures()


def ax_s1(A):
    for a in _els(A):
        if not A.leq(A.bang[a], a):
            yield (a,)


def ax_s2(A):
    t = A.bang
    for a in _els(A):
        if not A.leq(t[a], t[t[a]]):
            yield (a,)


def ax_s3(A):
    if A.bang[A.unit] != A.unit:
        yield (A.unit,)


def ax_s4(A):
    t, f = A.bang, A.fusion
    for a, b in product(_els(A), repeat=2):
        if t[A.meet(a, b)] != f[t[a]][t[b]]:
            yield (a, b)


def ax_s5(A):
    t, f = A.bang, A.fusion
    for a, b in product(_els(A), repeat=2):
        if f[t[a]][b] != f[b][t[a]]:
            yield (a, b)


def ax_bang_monotone(A):
    t = A.bang
    for a, b in product(_els(A), repeat=2):
        if A.leq(a, b) and not A.leq(t[a], t[b]):
            yield (a, b)


def ax_c1(A):
    t, q = A.bang, A.quest
    il, ir = A.imp_l, A.imp_r
    for a, b in product(_els(A), repeat=2):
        if not A.leq(t[il[a][b]], il[q[a]][q[b]]):
            yield (a, b, "l")
        if not A.leq(t[ir[a][b]], ir[q[a]][q[b]]):
            yield (a, b, "r")


def ax_c2(A):
    for a in _els(A):
        if not A.leq(a, A.quest[a]):
            yield (a,)


def ax_c3(A):
    q = A.quest
    for a in _els(A):
        if not A.leq(q[q[a]], q[a]):
            yield (a,)


def ax_c4(A):
    if not A.leq(A.quest[A.zero], A.zero):
        yield (A.zero,)


def ax_c5(A):
    for a in _els(A):
        if not A.leq(A.zero, A.quest[a]):
            yield (a,)


def ax_quest_monotone(A):
    q = A.quest
    for a, b in product(_els(A), repeat=2):
        if A.leq(a, b) and not A.leq(q[a], q[b]):
            yield (a, b)


def ax_c6(A):
    t, q, f = A.bang, A.quest, A.fusion
    for a, b in product(_els(A), repeat=2):
        if not A.leq(f[t[a]][q[b]], q[f[a][b]]):
            yield (a, b)


def ax_c7(A):
    t, q, f = A.bang, A.quest, A.fusion
    for a, b in product(_els(A), repeat=2):
        if not A.leq(f[q[a]][t[b]], q[f[a][b]]):
            yield (a, b)


# Lemma 1 consequences of (s1)-(s4).

def ax_l1_below_unit(A):
    for a in _els(A):
        if not A.leq(A.bang[a], A.unit):
            yield (a,)


def ax_l1_idempotent(A):
    t, f = A.bang, A.fusion
    for a in _els(A):
        if t[a] != f[t[a]][t[a]]:
            yield (a,)


def ax_l1_fusion(A):
    t, f = A.bang, A.fusion
    for a, b in product(_els(A), repeat=2):
        p = f[t[a]][t[b]]
        if p != t[p] or not A.leq(t[p], t[f[a][b]]):
            yield (a, b)


def ax_l1_residual(A):
    t, il, ir = A.bang, A.imp_l, A.imp_r
    for a, b in product(_els(A), repeat=2):
        if not A.leq(t[il[a][b]], il[t[a]][t[b]]):
            yield (a, b, "l")
        if not A.leq(t[ir[a][b]], ir[t[a]][t[b]]):
            yield (a, b, "r")


def ax_l1_top(A):
    if A.bang[A.top] != A.unit:
        yield (A.top,)


# Alternative storage axiomatizations for commutative algebras.

def ax_troelstra_weak_monotone(A):
    t = A.bang
    for a, b in product(_els(A), repeat=2):
        if A.leq(t[a], b) and not A.leq(t[a], t[b]):
            yield (a, b)


def ax_bucalo_top(A):
    if not A.leq(A.bang[A.top], A.unit):
        yield (A.top,)


def ax_bucalo_unit(A):
    if not A.leq(A.unit, A.bang[A.unit]):
        yield (A.unit,)


def ax_bucalo_contraction(A):
    t, f = A.bang, A.fusion
    for a in _els(A):
        if not A.leq(t[a], f[t[a]][t[a]]):
            yield (a,)


def ax_bucalo_fusion(A):
    t, f = A.bang, A.fusion
    for a, b in product(_els(A), repeat=2):
        p = f[t[a]][t[b]]
        if not A.leq(p, t[p]):
            yield (a, b)


AxiomFn = Callable[[FLAlgebra], Iterator[tuple]]

# id -> (function, components it reads beyond the residuated lattice)
AXIOMS: dict[str, tuple[AxiomFn, frozenset]] = {
    "associativity": (ax_associativity, frozenset()),
    "unit": (ax_unit, frozenset()),
    "monotonicity": (ax_monotone, frozenset()),
    "residual-l": (ax_residual_left, frozenset()),
    "residual-r": (ax_residual_right, frozenset()),
    "s1": (ax_s1, frozenset({"bang"})),
    "s2": (ax_s2, frozenset({"bang"})),
    "s3": (ax_s3, frozenset({"bang"})),
    "s4": (ax_s4, frozenset({"bang"})),
    "s5": (ax_s5, frozenset({"bang"})),
    "bang-monotone": (ax_bang_monotone, frozenset({"bang"})),
    "c1": (ax_c1, frozenset({"bang", "quest"})),
    "c2": (ax_c2, frozenset({"quest"})),
    "c3": (ax_c3, frozenset({"quest"})),
    "c4": (ax_c4, frozenset({"quest", "zero"})),
    "c5": (ax_c5, frozenset({"quest", "zero"})),
    "quest-monotone": (ax_quest_monotone, frozenset({"quest"})),
    "c6": (ax_c6, frozenset({"bang", "quest"})),
    "c7": (ax_c7, frozenset({"bang", "quest"})),
    "lemma1.1": (ax_l1_below_unit, frozenset({"bang"})),
    "lemma1.2": (ax_bang_monotone, frozenset({"bang"})),
    "lemma1.3": (ax_l1_idempotent, frozenset({"bang"})),
    "lemma1.4": (ax_l1_fusion, frozenset({"bang"})),
    "lemma1.5": (ax_l1_residual, frozenset({"bang"})),
    "lemma1.6": (ax_l1_top, frozenset({"bang"})),
    "troelstra.2": (ax_troelstra_weak_monotone, frozenset({"bang"})),
    "troelstra.3": (ax_l1_top, frozenset({"bang"})),
    "bucalo.3a": (ax_bucalo_top, frozenset({"bang"})),
    "bucalo.3b": (ax_bucalo_unit, frozenset({"bang"})),
    "bucalo.4a": (ax_bucalo_contraction, frozenset({"bang"})),
    "bucalo.4b": (ax_bucalo_fusion, frozenset({"bang"})),
}

RESIDUATED = ("associativity", "unit", "monotonicity", "residual-l", "residual-r")
STORAGE = ("s1", "s2", "s3", "s4", "s5")
CONSUMPTION = ("c1", "c2", "c3", "c4", "c5")
LEMMA1 = ("lemma1.1", "lemma1.2", "lemma1.3", "lemma1.4", "lemma1.5", "lemma1.6")
LEMMA2 = ("quest-monotone", "c6", "c7")
TROELSTRA = ("s1", "troelstra.2", "troelstra.3", "s4")
BUCALO = ("s1", "s2", "bucalo.3a", "bucalo.3b", "bucalo.4a", "bucalo.4b")


def holds(A: FLAlgebra, axiom_id: str) -> bool:
    fn, _ = AXIOMS[axiom_id]
    return next(fn(A), None) is None


def holds_all(A: FLAlgebra, ids: Sequence[str]) -> bool:
    return all(holds(A, i) for i in ids)


def _name_witness(A: FLAlgebra, w: tuple) -> tuple:
    return tuple(A.names[x] if isinstance(x, int) else x for x in w)


def run_axioms(A: FLAlgebra, ids: Sequence[str]) -> AxiomReport:
    rep = AxiomReport()
    for i in ids:
        fn, _ = AXIOMS[i]
        rep.add(i, (_name_witness(A, w) for w in fn(A)))
    return rep


def _need(A: FLAlgebra, *parts: str):
    for p in parts:
        if getattr(A, p) is None:
            raise PreconditionError(f"algebra {A.name} has no {p}")


def check_residuated_lattice(A: FLAlgebra) -> AxiomReport:
    return run_axioms(A, RESIDUATED)


def is_residuated(A: FLAlgebra) -> bool:
    return holds_all(A, RESIDUATED)


def check_storage(A: FLAlgebra) -> AxiomReport:
    _need(A, "bang")
    if not is_residuated(A):
        raise PreconditionError(f"{A.name} is not a residuated lattice")
    return run_axioms(A, STORAGE)


def _require_storage(A: FLAlgebra):
    _need(A, "bang")
    if not (is_residuated(A) and holds_all(A, STORAGE)):
        raise PreconditionError(f"{A.name} does not carry a storage modality")


def check_lemma1(A: FLAlgebra) -> AxiomReport:
    _require_storage(A)
    return run_axioms(A, LEMMA1)


def check_modal_fl(A: FLAlgebra) -> AxiomReport:
    _need(A, "zero", "quest")
    _require_storage(A)
    return run_axioms(A, CONSUMPTION)


def is_modal_fl(A: FLAlgebra) -> bool:
    return (A.zero is not None and A.bang is not None and A.quest is not None
            and is_residuated(A) and holds_all(A, STORAGE + CONSUMPTION))


def check_lemma2(A: FLAlgebra) -> AxiomReport:
    if not is_modal_fl(A):
        raise PreconditionError(f"{A.name} is not a modal FL-algebra")
    return run_axioms(A, LEMMA2)


def check_lemma3_equivalence(A: FLAlgebra, quest: Sequence[int]) -> tuple[bool, bool]:
    """Evaluate both sides of: (c1) iff (? monotone and (c6) and (c7)).

    ``A`` must be residuated with a monotone ``bang`` fixing the unit; its own
    ``quest`` (if any) is ignored in favour of the candidate.
    """
    _need(A, "bang")
    if not (is_residuated(A) and holds(A, "bang-monotone") and holds(A, "s3")):
        raise PreconditionError(f"{A.name}: need a residuated lattice with monotone ! and !1=1")
    B = A.replace(quest=tuple(quest))
    return holds(B, "c1"), holds_all(B, LEMMA2)


def troelstra_equivalence(A: FLAlgebra) -> tuple[bool, bool]:
    """((s1)-(s4) holds, Troelstra's storage conditions hold) on a commutative algebra."""
    _need(A, "bang")
    if not A.is_commutative():
        raise PreconditionError(f"{A.name} is not commutative")
    return holds_all(A, STORAGE[:4]), holds_all(A, TROELSTRA)


def bucalo_equivalence(A: FLAlgebra) -> tuple[bool, bool]:
    _need(A, "bang")
    if not A.is_commutative():
        raise PreconditionError(f"{A.name} is not commutative")
    return holds_all(A, STORAGE[:4]), holds_all(A, BUCALO)


def same_tables(A: FLAlgebra, B: FLAlgebra, mapping: Optional[Sequence[int]] = None) -> bool:
    """Whether ``mapping`` (default: identity on indices) is an isomorphism A -> B.

    Compares order, fusion, unit, zero, bang and quest; absent components must
    be absent on both sides.
    """
    n = A.n
    if B.n != n:
        return False
    m = list(range(n)) if mapping is None else list(mapping)
    if sorted(m) != list(range(n)):
        return False
    r = range(n)
    if any(A.leq(a, b) != B.leq(m[a], m[b]) for a in r for b in r):
        return False
    if any(m[A.fusion[a][b]] != B.fusion[m[a]][m[b]] for a in r for b in r):
        return False
    if m[A.unit] != B.unit:
        return False
    if (A.zero is None) != (B.zero is None) or (A.zero is not None and m[A.zero] != B.zero):
        return False
    for part in ("bang", "quest"):
        ta, tb = getattr(A, part), getattr(B, part)
        if (ta is None) != (tb is None):
            return False
        if ta is not None and any(m[ta[a]] != tb[m[a]] for a in r):
            return False
    return True
