"""Cover systems, residuated and modal FL-cover systems, and their propositions.

A :class:`CoverSystem` is a preordered set of points with a covering relation
``x <| C``.  Optional fields turn it into a residuated cover system (``dot``,
``epsilon``) and then a modal FL-cover system (``zero``, ``I``, ``R``).

The covering relation has two backends.  :class:`Extensional` lists the covers
of each point.  :class:`LatticeJoin` says ``x <| C`` iff ``x <= join(C)`` in a
lattice on the same carrier; it is never materialized, and every quantifier
over covers uses a closed form or, for larger carriers, covers of size <= 3.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence, Union

from .algebra import FLAlgebra
from .errors import ComplexityBound, FLCError, PreconditionError
from .order import (FiniteLattice, FinitePreorder, check_preorder, format_set, small_subsets,
                    subsets, up_closure, up_sets)
from .report import AxiomReport

MAX_UPSET_POINTS = 12
MAX_CHOICE_UNIONS = 10**6
# a LatticeJoin carrier up to this size has its covers quantified exhaustively
LATTICE_EXHAUSTIVE_POINTS = 5
LATTICE_SAMPLE_COVER_SIZE = 3


@dataclass(frozen=True)
class Extensional:
    covers: tuple

    @classmethod
    def from_lists(cls, n: int, lists: Sequence[Iterable[Iterable[int]]]) -> "Extensional":
        if len(lists) != n:
            raise ValueError(f"expected cover lists for {n} points, got {len(lists)}")
        return cls(tuple(frozenset(frozenset(C) for C in per) for per in lists))

    def of(self, x: int) -> frozenset:
        return self.covers[x]


@dataclass(frozen=True)
class LatticeJoin:
    lattice: FiniteLattice


Backend = Union[Extensional, LatticeJoin]


@dataclass(frozen=True)
class CoverSystem:
    preorder: FinitePreorder
    backend: Backend
    dot: Optional[tuple] = None
    epsilon: Optional[int] = None
    zero: Optional[frozenset] = None
    I: Optional[frozenset] = None
    R: Optional[frozenset] = None
    name: str = "S"

    def __post_init__(self):
        n = self.preorder.size
        b = self.backend
        if isinstance(b, Extensional):
            if len(b.covers) != n:
                raise ValueError("extensional backend must list covers for every point")
            for per in b.covers:
                for C in per:
                    if any(not (0 <= c < n) for c in C):
                        raise ValueError("cover member outside the carrier")
        elif isinstance(b, LatticeJoin):
            if b.lattice.names != self.preorder.names:
                raise ValueError("lattice-join backend must live on the same carrier")
        else:
            raise TypeError(f"unknown cover backend {b!r}")
        if self.dot is not None:
            dot = tuple(tuple(row) for row in self.dot)
            object.__setattr__(self, "dot", dot)
            if len(dot) != n or any(len(r) != n or any(not (0 <= v < n) for v in r) for r in dot):
                raise ValueError(f"fusion table must be a total {n}x{n} table")
        if self.epsilon is not None and not (0 <= self.epsilon < n):
            raise ValueError("epsilon outside the carrier")
        for label in ("zero", "I"):
            v = getattr(self, label)
            if v is not None:
                v = frozenset(v)
                object.__setattr__(self, label, v)
                if any(not (0 <= x < n) for x in v):
                    raise ValueError(f"{label} has a member outside the carrier")
        if self.R is not None:
            R = frozenset((int(a), int(c)) for a, c in self.R)
            object.__setattr__(self, "R", R)
            if any(not (0 <= a < n and 0 <= c < n) for a, c in R):
                raise ValueError("R relates points outside the carrier")

    def replace(self, **changes) -> "CoverSystem":
        return dataclasses.replace(self, **changes)

    @property
    def n(self) -> int:
        return self.preorder.size

    @property
    def names(self) -> tuple:
        return self.preorder.names

    @property
    def points(self) -> frozenset:
        return frozenset(range(self.n))

    def index(self, name: str) -> int:
        return self.preorder.index(name)

    @property
    def is_residuated(self) -> bool:
        return self.dot is not None and self.epsilon is not None

    @property
    def is_modal(self) -> bool:
        return self.is_residuated and None not in (self.zero, self.I, self.R)

    @cached_property
    def r_successors(self) -> tuple:
        succ = [set() for _ in range(self.n)]
        for a, c in self.R or ():
            succ[a].add(c)
        return tuple(frozenset(s) for s in succ)

    def fmt(self, X: Iterable[int]) -> str:
        return format_set(self.names, X)

    def __repr__(self) -> str:
        kind = "lattice-join" if isinstance(self.backend, LatticeJoin) else "extensional"
        return f"CoverSystem(name={self.name!r}, points={list(self.names)}, backend={kind})"


# ---------------------------------------------------------------------------
# Basic operations

def covered_by(S: CoverSystem, x: int, C: Iterable[int]) -> bool:
    C = frozenset(C)
    b = S.backend
    if isinstance(b, LatticeJoin):
        return b.lattice.leq(x, b.lattice.join_all(C))
    return C in b.of(x)


def j(S: CoverSystem, X: Iterable[int]) -> frozenset:
    """Local members of ``X``: the points with some cover included in ``X``."""
    X = frozenset(X)
    b = S.backend
    if isinstance(b, LatticeJoin):
        top = b.lattice.join_all(X)
        return b.lattice.down(top)
    return frozenset(x for x in range(S.n) if any(C <= X for C in b.of(x)))


def up(S: CoverSystem, X: Iterable[int]) -> frozenset:
    return up_closure(S.preorder, X)


def is_upset(S: CoverSystem, X: Iterable[int]) -> bool:
    X = frozenset(X)
    return all(S.preorder.up(x) <= X for x in X)


def is_proposition(S: CoverSystem, X: Iterable[int]) -> bool:
    X = frozenset(X)
    return is_upset(S, X) and j(S, X) <= X


def point_product(S: CoverSystem, X: Iterable[int], Y: Iterable[int]) -> frozenset:
    """``X . Y``, the pointwise fusion of two sets of points."""
    d = S.dot
    Y = tuple(Y)
    return frozenset(d[x][y] for x in X for y in Y)


def imp_left_set(S: CoverSystem, X: Iterable[int], Y: Iterable[int]) -> frozenset:
    """``{z : z.X included in Y}``."""
    X, Y, d = tuple(X), frozenset(Y), S.dot
    return frozenset(z for z in range(S.n) if all(d[z][x] in Y for x in X))


def imp_right_set(S: CoverSystem, X: Iterable[int], Y: Iterable[int]) -> frozenset:
    """``{z : X.z included in Y}``."""
    X, Y, d = tuple(X), frozenset(Y), S.dot
    return frozenset(z for z in range(S.n) if all(d[x][z] in Y for x in X))


def diamond(S: CoverSystem, X: Iterable[int], R: Optional[Iterable[tuple[int, int]]] = None) -> frozenset:
    """Existential image ``<R>X = {x : x R y for some y in X}``; ``R`` defaults to ``S.R``."""
    X = frozenset(X)
    if R is None:
        succ = S.r_successors
    else:
        s = [set() for _ in range(S.n)]
        for a, c in R:
            s[a].add(c)
        succ = s
    return frozenset(x for x in range(S.n) if succ[x] & X)


def bang_set(S: CoverSystem, X: Iterable[int]) -> frozenset:
    return j(S, up(S, frozenset(X) & S.I))


def prop_join(S: CoverSystem, family: Iterable[Iterable[int]]) -> frozenset:
    out: set[int] = set()
    for X in family:
        out |= set(X)
    return j(S, out)


def prop_meet(S: CoverSystem, family: Iterable[Iterable[int]]) -> frozenset:
    out = set(range(S.n))
    for X in family:
        out &= set(X)
    return frozenset(out)


def covers_of(S: CoverSystem, x: int) -> tuple[list[frozenset], bool]:
    """The covers of ``x`` to quantify over, and whether that list is complete."""
    b = S.backend
    if isinstance(b, Extensional):
        return sorted(b.of(x), key=_set_key), True
    exhaustive = S.n <= LATTICE_EXHAUSTIVE_POINTS
    pool = subsets(S.n) if exhaustive else small_subsets(S.n, LATTICE_SAMPLE_COVER_SIZE)
    L = b.lattice
    return [C for C in pool if L.leq(x, L.join_all(C))], exhaustive


def _set_key(X: frozenset):
    return (len(X), tuple(sorted(X)))


def materialize(S: CoverSystem, limit: int = 10) -> CoverSystem:
    """Replace a lattice-join backend by the extensional list of all its covers."""
    if isinstance(S.backend, Extensional):
        return S
    if S.n > limit:
        raise ComplexityBound(f"materializing covers over {S.n} points exceeds {limit}")
    L = S.backend.lattice
    lists = [[C for C in subsets(S.n) if L.leq(x, L.join_all(C))] for x in range(S.n)]
    return S.replace(backend=Extensional.from_lists(S.n, lists))


# ---------------------------------------------------------------------------
# Axiom checks

def _backend_note(S: CoverSystem) -> str:
    if isinstance(S.backend, Extensional):
        return ""
    if S.n <= LATTICE_EXHAUSTIVE_POINTS:
        return "lattice-join, exhaustive"
    return "verified-by-theorem+sample"


def check_cover_axioms(S: CoverSystem) -> AxiomReport:
    """Existence, Transitivity and Refinement, plus the preorder laws for refinement."""
    n, nm = S.n, S.names
    rep = AxiomReport().extend(check_preorder(S.preorder), prefix="preorder-")
    note = _backend_note(S)
    covers = [covers_of(S, x)[0] for x in range(n)]

    rep.add("existence", ((nm[x],) for x in range(n)
                          if not any(C <= S.preorder.up(x) for C in covers[x])), note)

    def transitivity_failures():
        for x in range(n):
            for C in covers[x]:
                unions = {frozenset()}
                for y in sorted(C):
                    if not covers[y]:
                        unions = set()
                        break
                    unions = {U | Cy for U in unions for Cy in covers[y]}
                    if len(unions) > MAX_CHOICE_UNIONS:
                        raise ComplexityBound(
                            f"transitivity at {nm[x]}: more than {MAX_CHOICE_UNIONS} choice unions")
                for U in sorted(unions, key=_set_key):
                    if not covered_by(S, x, U):
                        yield (nm[x], S.fmt(C), S.fmt(U))

    rep.add("transitivity", transitivity_failures(), note)

    def refinement_failures():
        for x, y in product(range(n), repeat=2):
            if x == y or not S.preorder.leq(x, y):
                continue
            for C in covers[x]:
                upC = up(S, C)
                if not any(D <= upC for D in covers[y]):
                    yield (nm[x], nm[y], S.fmt(C))

    rep.add("refinement", refinement_failures(), note)
    return rep


def _require(S: CoverSystem, *fields: str):
    for f in fields:
        if getattr(S, f) is None:
            raise PreconditionError(f"cover system {S.name} has no {f}")


def check_residuated_cover(S: CoverSystem) -> AxiomReport:
    _require(S, "dot", "epsilon")
    if not check_cover_axioms(S).ok:
        raise PreconditionError(f"{S.name} fails the cover system axioms")
    n, nm, d, e = S.n, S.names, S.dot, S.epsilon
    P = S.preorder
    note = _backend_note(S)
    rep = AxiomReport()
    r = range(n)
    rep.add("associativity", ((nm[a], nm[b], nm[c]) for a, b, c in product(r, repeat=3)
                              if d[d[a][b]][c] != d[a][d[b][c]]))
    rep.add("identity", ((nm[a],) for a in r if d[e][a] != a or d[a][e] != a))
    rep.add("dot-monotone", ((nm[a], nm[b], nm[c]) for a, b, c in product(r, repeat=3)
                             if P.leq(b, c) and not (P.leq(d[a][b], d[a][c]) and P.leq(d[b][a], d[c][a]))))
    covers = [covers_of(S, x)[0] for x in r]

    def preserve_failures():
        for x in r:
            for C in covers[x]:
                for y in r:
                    if not covered_by(S, d[x][y], frozenset(d[c][y] for c in C)):
                        yield (nm[x], S.fmt(C), nm[y], "right")
                    if not covered_by(S, d[y][x], frozenset(d[y][c] for c in C)):
                        yield (nm[x], S.fmt(C), nm[y], "left")

    rep.add("fusion-preserves-covering", preserve_failures(), note)
    ue = P.up(e)
    rep.add("eps-refinement-local", ((nm[x],) for x in sorted(j(S, ue) - ue)))

    def product_failures():
        for x, y in product(r, repeat=2):
            for C in covers[x]:
                for D in covers[y]:
                    if not covered_by(S, d[x][y], point_product(S, C, D)):
                        yield (nm[x], S.fmt(C), nm[y], S.fmt(D))

    rep.add("covering-product", product_failures(), "derived" + (", " + note if note else ""))
    return rep


def check_modal_fl_cover(S: CoverSystem) -> AxiomReport:
    _require(S, "dot", "epsilon", "zero", "I", "R")
    if not check_residuated_cover(S).ok:
        raise PreconditionError(f"{S.name} is not a residuated cover system")
    if S.n > MAX_UPSET_POINTS:
        raise ComplexityBound(f"modal checks over {S.n} points exceed {MAX_UPSET_POINTS}")
    n, nm, d, e = S.n, S.names, S.dot, S.epsilon
    P, I, R, Z = S.preorder, S.I, S.R, S.zero
    r = range(n)
    rep = AxiomReport()
    rep.add("zero-proposition", [] if is_proposition(S, Z) else [(S.fmt(Z),)])
    rep.add("I-below-eps", ((nm[x],) for x in sorted(I - P.up(e))))
    sub = [(nm[x], nm[y]) for x in sorted(I) for y in sorted(I) if d[x][y] not in I]
    if e not in I:
        sub.insert(0, (nm[e],))
    rep.add("I-submonoid", sub)
    rep.add("I-eps-cover", [] if covered_by(S, e, I) else [(nm[e], S.fmt(I))])
    rep.add("I-idempotent-central",
            [(nm[x],) for x in sorted(I) if d[x][x] != x]
            + [(nm[x], nm[y]) for x in sorted(I) for y in r if d[x][y] != d[y][x]])

    def confluence_failures():
        for x, y in product(r, repeat=2):
            if not P.leq(x, y):
                continue
            for z in sorted(S.r_successors[x]):
                if not any(P.leq(z, w) for w in S.r_successors[y]):
                    yield (nm[x], nm[y], nm[z])

    rep.add("confluence", confluence_failures())

    def localisation_failures():
        for X in up_sets(P, MAX_UPSET_POINTS):
            lhs = j(S, diamond(S, X))
            rhs = diamond(S, j(S, X))
            for x in sorted(lhs - rhs):
                yield (nm[x], S.fmt(X))

    rep.add("modal-localisation", localisation_failures(), "quantified over up-sets")

    def rmono_failures():
        for x in sorted(I):
            for y, z in sorted(R):
                if (d[x][y], d[x][z]) not in R:
                    yield (nm[x], nm[y], nm[z], "left")
                if (d[y][x], d[z][x]) not in R:
                    yield (nm[x], nm[y], nm[z], "right")

    rep.add("R-monotonicity", rmono_failures())
    rep.add("R-reflexive", ((nm[x],) for x in r if (x, x) not in R))
    rep.add("R-transitive", ((nm[x], nm[y], nm[z]) for x, y in sorted(R)
                             for z in sorted(S.r_successors[y]) if (x, z) not in R))
    rep.add("zero-R-closed", ((nm[x], nm[y]) for x, y in sorted(R) if y in Z and x not in Z))
    empty_covered = j(S, frozenset())
    rep.add("zero-R-empty-cover", ((nm[x],) for x in sorted(Z)
                                   if not (S.r_successors[x] & empty_covered)))
    return rep


# ---------------------------------------------------------------------------
# Propositions and the proposition algebra

def _canonical_shape(S: CoverSystem) -> bool:
    b = S.backend
    return isinstance(b, LatticeJoin) and S.preorder == b.lattice.reversed()


def enumerate_propositions(S: CoverSystem, method: str = "auto") -> list[frozenset]:
    """All localised up-sets, sorted by size and then by member indices.

    ``method="brute"`` forces the up-set scan even where a closed form exists
    (lattice-join backends whose refinement order is the reversed lattice
    order, where the propositions are exactly the principal up-sets).
    """
    if method not in ("auto", "brute", "closed"):
        raise ValueError(method)
    if method == "closed" or (method == "auto" and _canonical_shape(S)):
        if not _canonical_shape(S):
            raise PreconditionError("closed form needs a canonical lattice-join system")
        props = {S.preorder.up(x) for x in range(S.n)}
    else:
        props = {X for X in up_sets(S.preorder, MAX_UPSET_POINTS) if j(S, X) <= X}
    return sorted(props, key=_set_key)


@dataclass
class PropositionAlgebra:
    """The algebra of propositions of a cover system, indexed like ``props``."""

    system: CoverSystem
    props: tuple
    algebra: FLAlgebra
    index: dict = field(repr=False)

    def element(self, X: Iterable[int]) -> int:
        X = frozenset(X)
        try:
            return self.index[X]
        except KeyError:
            raise FLCError(f"{self.system.fmt(X)} is not a proposition") from None

    def proposition(self, i: int) -> frozenset:
        return self.props[i]

    def label(self, i: int) -> str:
        return self.system.fmt(self.props[i])


def prop_algebra(S: CoverSystem, check: bool = True) -> PropositionAlgebra:
    """Build Prop(S) with its residuated-lattice and (when present) modal structure.

    Fusion is ``j up(X.Y)``, the unit is ``up(epsilon)``, ``!X = j up(X & I)`` and
    ``?X = <R>X``.  Residuals, joins and meets are left to :class:`FLAlgebra`,
    which derives them from the inclusion order.
    """
    _require(S, "dot", "epsilon")
    if check:
        rep = check_modal_fl_cover(S) if S.is_modal else check_residuated_cover(S)
        if not rep.ok:
            bad = ", ".join(r.check_id for r in rep.failures())
            raise PreconditionError(f"{S.name} fails: {bad}")
    props = enumerate_propositions(S)
    index = {X: i for i, X in enumerate(props)}
    m = len(props)
    names = [f"X{i}" for i in range(m)]
    lattice = FiniteLattice(names, [(i, k) for i in range(m) for k in range(m) if props[i] <= props[k]])

    def elem(X):
        try:
            return index[X]
        except KeyError:
            raise FLCError(f"{S.name}: {S.fmt(X)} should be a proposition but is not") from None

    fusion = tuple(tuple(elem(j(S, up(S, point_product(S, X, Y)))) for Y in props) for X in props)
    unit = elem(S.preorder.up(S.epsilon))
    zero = elem(S.zero) if S.zero is not None else None
    bang = tuple(elem(bang_set(S, X)) for X in props) if S.I is not None else None
    quest = tuple(elem(diamond(S, X)) for X in props) if S.R is not None else None
    A = FLAlgebra(lattice, fusion, unit, zero, bang, quest, name=f"Prop_{S.name}")
    return PropositionAlgebra(S, tuple(props), A, index)


def is_strong(S: CoverSystem) -> bool:
    """Whether ``j up(X.Y) = up(X.Y)`` for all propositions ``X``, ``Y``."""
    _require(S, "dot", "epsilon")
    props = enumerate_propositions(S)
    for X, Y in product(props, repeat=2):
        U = up(S, point_product(S, X, Y))
        if j(S, U) != U:
            return False
    return True
