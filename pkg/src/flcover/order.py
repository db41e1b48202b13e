"""Finite preorders, lattices and point sets.

Points are addressed by index ``0..n-1``; a point set is a ``frozenset`` of
indices.  Relations are stored fully materialized, so every query below is a
table lookup.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import ComplexityBound, OrderError
from .report import AxiomReport

PointSet = frozenset

MAX_SUBSET_POINTS = 16


class FinitePreorder:
    """A binary relation ``leq`` over named points.

    The constructor stores the relation exactly as given; use
    :meth:`generated` to take the reflexive-transitive closure of a set of
    generating pairs.  Whether the relation really is a preorder is decided by
    :func:`check_preorder`.
    """

    def __init__(self, names: Sequence[str], pairs: Iterable[tuple[int, int]]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise OrderError(f"duplicate point names in {self.names}")
        n = len(self.names)
        rel = frozenset((int(a), int(b)) for a, b in pairs)
        for a, b in rel:
            if not (0 <= a < n and 0 <= b < n):
                raise OrderError(f"pair ({a},{b}) outside carrier of size {n}")
        self.pairs = rel
        self._matrix = tuple(tuple((a, b) in rel for b in range(n)) for a in range(n))
        self._up = tuple(frozenset(b for b in range(n) if self._matrix[a][b]) for a in range(n))
        self._down = tuple(frozenset(a for a in range(n) if self._matrix[a][b]) for b in range(n))
        self._index = {name: i for i, name in enumerate(self.names)}

    @classmethod
    def generated(cls, names: Sequence[str], pairs: Iterable[tuple[int, int]]):
        n = len(names)
        m = [[a == b for b in range(n)] for a in range(n)]
        for a, b in pairs:
            m[a][b] = True
        for k in range(n):
            for a in range(n):
                if m[a][k]:
                    row_k = m[k]
                    row_a = m[a]
                    for b in range(n):
                        if row_k[b]:
                            row_a[b] = True
        return cls(names, [(a, b) for a in range(n) for b in range(n) if m[a][b]])

    @classmethod
    def from_named_pairs(cls, names: Sequence[str], pairs: Iterable[tuple[str, str]], close: bool = True):
        idx = {name: i for i, name in enumerate(names)}
        try:
            ip = [(idx[a], idx[b]) for a, b in pairs]
        except KeyError as e:
            raise OrderError(f"unknown point {e.args[0]!r}") from None
        return cls.generated(names, ip) if close else cls(names, ip)

    @classmethod
    def discrete(cls, names: Sequence[str]):
        return cls(names, [(i, i) for i in range(len(names))])

    def __len__(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        return len(self.names)

    def leq(self, a: int, b: int) -> bool:
        return self._matrix[a][b]

    def up(self, x: int) -> frozenset:
        return self._up[x]

    def down(self, x: int) -> frozenset:
        return self._down[x]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise OrderError(f"unknown point {name!r}") from None

    def reversed(self) -> "FinitePreorder":
        return FinitePreorder(self.names, [(b, a) for a, b in self.pairs])

    def generators(self) -> list[tuple[int, int]]:
        """Non-reflexive pairs not implied by transitivity (covering pairs for posets)."""
        out = []
        for a, b in sorted(self.pairs):
            if a == b:
                continue
            if any(c not in (a, b) and self.leq(a, c) and self.leq(c, b) and not self.leq(c, a)
                   and not self.leq(b, c) for c in range(self.size)):
                continue
            out.append((a, b))
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, FinitePreorder) and self.names == other.names
                and self.pairs == other.pairs)

    def __hash__(self) -> int:
        return hash((self.names, self.pairs))

    def __repr__(self) -> str:
        shown = ", ".join(f"{self.names[a]}<={self.names[b]}" for a, b in self.generators())
        return f"{type(self).__name__}({list(self.names)}, [{shown}])"


def check_preorder(P: FinitePreorder) -> AxiomReport:
    n = P.size
    nm = P.names
    rep = AxiomReport()
    rep.add("reflexivity", ((nm[a],) for a in range(n) if not P.leq(a, a)))
    rep.add("transitivity", ((nm[a], nm[b], nm[c]) for a, b, c in product(range(n), repeat=3)
                             if P.leq(a, b) and P.leq(b, c) and not P.leq(a, c)))
    return rep


def _upper_bounds(P: FinitePreorder, X: Iterable[int]) -> set[int]:
    ub = set(range(P.size))
    for x in X:
        ub &= P.up(x)
    return ub


def _least(P: FinitePreorder, cands: set[int]):
    for c in cands:
        if all(P.leq(c, d) for d in cands):
            return c
    return None


def _greatest(P: FinitePreorder, cands: set[int]):
    for c in cands:
        if all(P.leq(d, c) for d in cands):
            return c
    return None


def check_lattice(P: FinitePreorder) -> AxiomReport:
    """Preorder laws, antisymmetry, and existence of all binary and empty joins/meets."""
    n = P.size
    nm = P.names
    rep = check_preorder(P)
    rep.add("antisymmetry", ((nm[a], nm[b]) for a in range(n) for b in range(a + 1, n)
                             if P.leq(a, b) and P.leq(b, a)))
    if n == 0:
        rep.add("nonempty", [("carrier",)])
        return rep

    def lower_bounds(X):
        lb = set(range(n))
        for x in X:
            lb &= P.down(x)
        return lb

    rep.add("join", ((nm[a], nm[b]) for a in range(n) for b in range(a, n)
                     if _least(P, _upper_bounds(P, (a, b))) is None))
    rep.add("meet", ((nm[a], nm[b]) for a in range(n) for b in range(a, n)
                     if _greatest(P, lower_bounds((a, b))) is None))
    rep.add("bottom", [("none",)] if _least(P, set(range(n))) is None else [])
    rep.add("top", [("none",)] if _greatest(P, set(range(n))) is None else [])
    return rep


class FiniteLattice(FinitePreorder):
    """A finite bounded lattice.  Construction fails unless :func:`check_lattice` passes."""

    def __init__(self, names: Sequence[str], pairs: Iterable[tuple[int, int]]):
        super().__init__(names, pairs)
        rep = check_lattice(self)
        if not rep.ok:
            bad = ", ".join(r.line() for r in rep.failures())
            raise OrderError(f"not a lattice: {bad}")
        n = self.size
        self._join = tuple(tuple(_least(self, _upper_bounds(self, (a, b))) for b in range(n)) for a in range(n))
        self._meet = tuple(tuple(_greatest(self, set(self._down[a] & self._down[b])) for b in range(n))
                           for a in range(n))
        self.bottom = _least(self, set(range(n)))
        self.top = _greatest(self, set(range(n)))

    @classmethod
    def chain(cls, names: Sequence[str]) -> "FiniteLattice":
        return cls.generated(names, [(i, i + 1) for i in range(len(names) - 1)])

    def join(self, a: int, b: int) -> int:
        return self._join[a][b]

    def meet(self, a: int, b: int) -> int:
        return self._meet[a][b]

    def join_all(self, X: Iterable[int]) -> int:
        r = self.bottom
        for x in X:
            r = self._join[r][x]
        return r

    def meet_all(self, X: Iterable[int]) -> int:
        r = self.top
        for x in X:
            r = self._meet[r][x]
        return r


def as_pointset(P: FinitePreorder, X: Iterable[int]) -> frozenset:
    X = frozenset(X)
    for x in X:
        if not (isinstance(x, int) and 0 <= x < P.size):
            raise OrderError(f"point {x!r} outside carrier of size {P.size}")
    return X


def up_closure(P: FinitePreorder, X: Iterable[int]) -> frozenset:
    out: set[int] = set()
    for x in X:
        out |= P.up(x)
    return frozenset(out)


def down_closure(P: FinitePreorder, X: Iterable[int]) -> frozenset:
    out: set[int] = set()
    for x in X:
        out |= P.down(x)
    return frozenset(out)


def is_up_set(P: FinitePreorder, X: Iterable[int]) -> bool:
    X = frozenset(X)
    return all(P.up(x) <= X for x in X)


def lattice_join(L: FiniteLattice, X: Iterable[int]) -> int:
    return L.join_all(as_pointset(L, X))


def lattice_meet(L: FiniteLattice, X: Iterable[int]) -> int:
    return L.meet_all(as_pointset(L, X))


def require_enumerable(n: int, limit: int = MAX_SUBSET_POINTS, what: str = "subset enumeration"):
    if n > limit:
        raise ComplexityBound(f"{what} over {n} points exceeds the limit of {limit}")


def subsets(n: int, limit: int = MAX_SUBSET_POINTS) -> Iterator[frozenset]:
    """All subsets of ``range(n)``, ordered by bitmask."""
    require_enumerable(n, limit)
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


def small_subsets(n: int, max_size: int) -> Iterator[frozenset]:
    from itertools import combinations
    for k in range(min(max_size, n) + 1):
        for c in combinations(range(n), k):
            yield frozenset(c)


def up_sets(P: FinitePreorder, limit: int = MAX_SUBSET_POINTS) -> Iterator[frozenset]:
    """Every up-set of ``P``, in bitmask order of their characteristic vectors."""
    n = P.size
    require_enumerable(n, limit, "up-set enumeration")
    up_mask = [sum(1 << y for y in P.up(x)) for x in range(n)]
    for mask in range(1 << n):
        ok = True
        m = mask
        while m:
            low = m & -m
            x = low.bit_length() - 1
            if up_mask[x] & ~mask:
                ok = False
                break
            m ^= low
        if ok:
            yield frozenset(i for i in range(n) if mask >> i & 1)


def format_set(names: Sequence[str], X: Iterable[int]) -> str:
    return "{" + ",".join(names[i] for i in sorted(X)) + "}"
