"""Canonical cover system of a finite modal FL-algebra and its verification.

Given ``A`` the canonical system takes the elements of ``A`` as points, with
``x <= y`` (refinement) iff ``y`` is below ``x`` in ``A``, ``x <| C`` iff
``x`` lies below the join of ``C``, ``x.y = x*y`` and ``epsilon = 1``.  The
modal part is ``zero = {x : x <= 0}``, ``I = {!x}`` and ``x R y`` iff
``x <= ?y``.  Finite lattices are complete, so ``x -> up(x)`` must be an
isomorphism onto the proposition algebra; :func:`verify_representation`
checks that clause by clause.
"""

from __future__ import annotations

from itertools import product

from .algebra import FLAlgebra, is_modal_fl, is_residuated
from .cover import (CoverSystem, LatticeJoin, bang_set, diamond, enumerate_propositions,
                    imp_left_set, imp_right_set, is_strong, j, point_product, prop_algebra,
                    prop_join, prop_meet, up)
from .errors import PreconditionError
from .order import subsets
from .report import AxiomReport


def canonical_cover_system(A: FLAlgebra) -> CoverSystem:
    """The canonical system of ``A``.

    ``A`` must be residuated; the modal fields are filled from whichever of
    ``zero``, ``bang``, ``quest`` it carries, and if it carries both modalities
    it must be a modal FL-algebra.
    """
    if not is_residuated(A):
        raise PreconditionError(f"{A.name} is not a residuated lattice")
    if A.bang is not None and A.quest is not None and not is_modal_fl(A):
        raise PreconditionError(f"{A.name} is not a modal FL-algebra")
    L = A.lattice
    r = range(A.n)
    zero = L.down(A.zero) if A.zero is not None else None
    I = frozenset(A.bang) if A.bang is not None else None
    R = (frozenset((x, y) for x in r for y in r if A.leq(x, A.quest[y]))
         if A.quest is not None else None)
    return CoverSystem(L.reversed(), LatticeJoin(L), dot=A.fusion, epsilon=A.unit,
                       zero=zero, I=I, R=R, name=f"S_{A.name}")


def verify_representation(A: FLAlgebra) -> AxiomReport:
    """Check that ``x -> up(x)`` is an isomorphism from ``A`` onto Prop of its canonical system."""
    if not is_modal_fl(A):
        raise PreconditionError(f"{A.name} is not a modal FL-algebra")
    S = canonical_cover_system(A)
    P = prop_algebra(S)
    B = P.algebra
    nm = A.names
    r = range(A.n)
    u = [S.preorder.up(x) for x in r]
    rep = AxiomReport()

    scanned = enumerate_propositions(S, method="brute")
    bij = []
    if set(scanned) != set(u) or len(set(u)) != A.n:
        bij.append(("Prop", ",".join(S.fmt(X) for X in scanned)))
    bij += [(nm[x], nm[y]) for x in r for y in r if x < y and u[x] == u[y]]
    rep.add("bijection", bij)
    rep.add("principal-is-downset", ((nm[x],) for x in r if u[x] != A.lattice.down(x)))
    rep.add("order", ((nm[x], nm[y]) for x, y in product(r, repeat=2)
                      if A.leq(x, y) != (u[x] <= u[y])))
    if bij:
        return rep

    e = [P.element(X) for X in u]
    rep.add("fusion", ((nm[x], nm[y]) for x, y in product(r, repeat=2)
                       if e[A.fuse(x, y)] != B.fuse(e[x], e[y])))
    rep.add("fusion-strong", ((nm[x], nm[y]) for x, y in product(r, repeat=2)
                              if u[A.fuse(x, y)] != up(S, point_product(S, u[x], u[y]))))
    units = []
    if e[A.unit] != B.unit or u[A.unit] != S.preorder.up(S.epsilon):
        units.append(("1",))
    if e[A.zero] != B.zero or u[A.zero] != S.zero:
        units.append(("0",))
    rep.add("unit-zero", units)
    rep.add("eq6-bang", ((nm[x],) for x in r if u[A.bang[x]] != bang_set(S, u[x])))
    rep.add("eq7-quest", ((nm[x],) for x in r if u[A.quest[x]] != diamond(S, u[x])))
    rep.add("eq8-bang-join", ((nm[x],) for x in r
                              if A.bang[x] != A.lattice.join_all(up(S, u[x] & S.I))))
    rep.add("bang", ((nm[x],) for x in r if e[A.bang[x]] != B.bang[e[x]]))
    rep.add("quest", ((nm[x],) for x in r if e[A.quest[x]] != B.quest[e[x]]))

    def residual_failures():
        for x, y in product(r, repeat=2):
            if u[A.imp_l[x][y]] != imp_left_set(S, u[x], u[y]) or e[A.imp_l[x][y]] != B.imp_l[e[x]][e[y]]:
                yield (nm[x], nm[y], "l")
            if u[A.imp_r[x][y]] != imp_right_set(S, u[x], u[y]) or e[A.imp_r[x][y]] != B.imp_r[e[x]][e[y]]:
                yield (nm[x], nm[y], "r")

    rep.add("residuals", residual_failures())

    def lattice_failures():
        for X in subsets(A.n):
            fam = [u[x] for x in X]
            label = "{" + ",".join(nm[x] for x in sorted(X)) + "}"
            if u[A.lattice.join_all(X)] != prop_join(S, fam):
                yield ("join", label)
            if u[A.lattice.meet_all(X)] != prop_meet(S, fam):
                yield ("meet", label)
            ex = [e[x] for x in X]
            if e[A.lattice.join_all(X)] != B.lattice.join_all(ex):
                yield ("join-order", label)
            if e[A.lattice.meet_all(X)] != B.lattice.meet_all(ex):
                yield ("meet-order", label)

    rep.add("joins-meets", lattice_failures())
    return rep


def verify_strong(A: FLAlgebra) -> bool:
    return is_strong(canonical_cover_system(A))


def j_closed_form_agrees(S: CoverSystem) -> bool:
    """Cross-check the lattice-join closed form of ``j`` against the cover scan on a materialized copy."""
    from .cover import materialize
    M = materialize(S)
    return all(j(S, X) == j(M, X) for X in subsets(S.n))
