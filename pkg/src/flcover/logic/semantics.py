"""Models over modal FL-cover systems and the satisfaction relation.

Quantifiers are substitutional: ``forall v. F`` denotes the meet of the
truth sets of ``F(u/v)`` for ``u`` in the universe, ``exists`` the
localised union.  Every clause is computed with the set operations of
:mod:`flcover.cover`; :func:`check_semantic_agreement` replays the same
formulas through the tables of the proposition algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Optional

from ..cover import (CoverSystem, bang_set, diamond, imp_left_set, imp_right_set, is_proposition,
                     j, prop_algebra)
from ..errors import ArityError, FreeVariable, PreconditionError, UnknownSymbol
from ..negation import default_seed, neg_left, neg_right
from ..report import AxiomReport
from .syntax import (BINARY, And, Atom, Bang, Bot, Const, Elem, Exists, Forall, Formula, ImpL, ImpR,
                     One, Or, Quest, Signature, Top, Var, Zero, format_formula, free_variables,
                     _is_name, is_closed, random_formula, substitute)


@dataclass(frozen=True)
class Model:
    system: CoverSystem
    universe: tuple
    constants: Mapping = field(default_factory=dict)   # constant name -> universe element
    predicates: Mapping = field(default_factory=dict)  # name -> {tuple of elements: point set}
    arities: Mapping = field(default_factory=dict)
    signature: Signature = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        S = self.system
        if not S.is_modal:
            raise PreconditionError(f"{S.name} is not a modal cover system")
        object.__setattr__(self, "universe", tuple(self.universe))
        if not self.universe:
            raise PreconditionError("the universe must be non-empty")
        if len(set(self.universe)) != len(self.universe):
            raise PreconditionError("duplicate universe elements")
        U = set(self.universe)
        for c, u in self.constants.items():
            if u not in U:
                raise PreconditionError(f"constant {c} denotes {u!r}, which is not in the universe")
            if c in U:
                raise PreconditionError(f"constant {c} clashes with a universe element")
        tables = {}
        arities = dict(self.arities)
        for p, table in self.predicates.items():
            table = {tuple(k): frozenset(v) for k, v in table.items()}
            k = arities.get(p)
            if k is None:
                lengths = {len(t) for t in table}
                if len(lengths) != 1:
                    raise PreconditionError(f"cannot infer the arity of {p}")
                k = lengths.pop()
                arities[p] = k
            for args in product(self.universe, repeat=k):
                if args not in table:
                    raise PreconditionError(f"{p}{args} is not interpreted")
                if not is_proposition(S, table[args]):
                    raise PreconditionError(f"{p}{args} = {S.fmt(table[args])} is not a proposition")
            if len(table) != len(self.universe) ** k:
                raise PreconditionError(f"{p} is interpreted outside the universe")
            tables[p] = table
        object.__setattr__(self, "predicates", tables)
        object.__setattr__(self, "arities", arities)
        object.__setattr__(self, "constants", dict(self.constants))
        for u in self.universe:
            if not _is_name(u):
                raise PreconditionError(f"{u!r} cannot name a universe element")
        # building the signature validates the symbol names
        object.__setattr__(self, "signature", Signature(tuple(self.constants), tuple(arities.items())))

    def term_value(self, t) -> str:
        if isinstance(t, Elem):
            if t.name not in self.universe:
                raise UnknownSymbol(f"{t.name!r} is not in the universe")
            return t.name
        if isinstance(t, Const):
            if t.name not in self.constants:
                raise UnknownSymbol(f"unknown constant {t.name!r}")
            return self.constants[t.name]
        raise FreeVariable(f"free variable {t.name}")

    def closed_terms(self) -> list:
        return [Elem(u) for u in self.universe]


def binary_clause(S: CoverSystem, op: type, X: frozenset, Y: frozenset) -> frozenset:
    if op is And:
        return X & Y
    if op is Or:
        return j(S, X | Y)
    if op is ImpL:
        return imp_left_set(S, X, Y)
    if op is ImpR:
        return imp_right_set(S, X, Y)
    raise TypeError(op)


class Evaluator:
    """Memoised bottom-up computation of truth sets for one model."""

    def __init__(self, model: Model):
        self.model = model
        self.memo: dict = {}

    def __call__(self, phi: Formula) -> frozenset:
        hit = self.memo.get(phi)
        if hit is None:
            hit = self.memo[phi] = self._eval(phi)
        return hit

    def _instances(self, phi):
        return [self(substitute(phi.body, phi.var, t)) for t in self.model.closed_terms()]

    def _eval(self, phi: Formula) -> frozenset:
        M = self.model
        S = M.system
        if isinstance(phi, Atom):
            if phi.pred not in M.predicates:
                raise UnknownSymbol(f"unknown predicate {phi.pred!r}")
            if len(phi.args) != M.arities[phi.pred]:
                raise ArityError(f"{phi.pred} takes {M.arities[phi.pred]} argument(s)")
            return M.predicates[phi.pred][tuple(M.term_value(t) for t in phi.args)]
        if isinstance(phi, Top):
            return S.points
        if isinstance(phi, Bot):
            return j(S, ())
        if isinstance(phi, One):
            return S.preorder.up(S.epsilon)
        if isinstance(phi, Zero):
            return S.zero
        if isinstance(phi, BINARY):
            return binary_clause(S, type(phi), self(phi.left), self(phi.right))
        if isinstance(phi, Forall):
            out = S.points
            for X in self._instances(phi):
                out = out & X
            return out
        if isinstance(phi, Exists):
            return j(S, frozenset().union(*self._instances(phi)))
        if isinstance(phi, Bang):
            return bang_set(S, self(phi.body))
        if isinstance(phi, Quest):
            return diamond(S, self(phi.body))
        raise TypeError(f"not a formula: {phi!r}")


def truth_set(M: Model, phi: Formula, evaluator: Optional[Evaluator] = None) -> frozenset:
    free = free_variables(phi)
    if free:
        raise FreeVariable(f"formula has free variable(s) {', '.join(sorted(free))}")
    return (evaluator or Evaluator(M))(phi)


def satisfies(M: Model, x, phi: Formula) -> bool:
    point = M.system.index(x) if isinstance(x, str) else x
    return point in truth_set(M, phi)


def closed_instances(M: Model, phi: Formula) -> list:
    """Every sentence obtained by replacing the free variables of ``phi`` with universe elements."""
    free = sorted(free_variables(phi))
    out = []
    for choice in product(M.closed_terms(), repeat=len(free)):
        psi = phi
        for v, t in zip(free, choice):
            psi = substitute(psi, v, t)
        out.append(psi)
    return out


def is_true(M: Model, phi: Formula) -> bool:
    ev = Evaluator(M)
    return all(ev(psi) == M.system.points for psi in closed_instances(M, phi))


# ---------------------------------------------------------------------------
# Agreement with the proposition algebra

def _base_atoms(M: Model) -> list:
    out: list = [Top(), Bot(), One(), Zero()]
    terms = M.closed_terms() + [Const(c) for c in M.constants]
    for p, k in sorted(M.arities.items()):
        for args in product(terms + [Var("v0")], repeat=k):
            out.append(Atom(p, tuple(args)))
    return out


_UNARY_STEPS = (Bang, Quest, lambda f: Forall("v0", f), lambda f: Exists("v0", f))


def _levels(M: Model, max_depth: int) -> list:
    levels = [_base_atoms(M)]
    seen = set(levels[0])
    for _ in range(max_depth - 1):
        prev = [f for level in levels for f in level]
        newest = set(levels[-1])
        fresh = []
        candidates = [op(f) for f in levels[-1] for op in _UNARY_STEPS]
        candidates += [op(a, b) for a, b in product(prev, repeat=2)
                       if a in newest or b in newest for op in BINARY]
        for g in candidates:
            if g not in seen:
                seen.add(g)
                fresh.append(g)
        levels.append(fresh)
    return levels


def depth_suite(M: Model, max_depth: int = 3) -> list:
    """Every formula of depth at most ``max_depth`` (atoms have depth 1).

    Leaves are the constants and the atoms over closed terms and ``v0``; the
    operators are the modalities, ``forall v0`` / ``exists v0`` and the four
    binary connectives.  Open formulas are kept as building blocks.
    """
    return [f for level in _levels(M, max_depth) for f in level]


_CLAUSE = {Atom: "atom", Top: "top", Bot: "bottom", One: "one", Zero: "zero", And: "and", Or: "or",
           ImpL: "imp-l", ImpR: "imp-r", Forall: "forall", Exists: "exists", Bang: "bang", Quest: "quest"}


def check_semantic_agreement(M: Model, seed: Optional[int] = None, random_count: int = 100,
                             max_depth: int = 3, random_depth: int = 5) -> AxiomReport:
    """Compare truth sets with the proposition-algebra computation on a generated suite.

    The suite is every closed formula of :func:`depth_suite` plus
    ``random_count`` seeded random sentences.  Each is evaluated twice: by
    :class:`Evaluator` and by an independent recursion over the element tables
    of ``prop_algebra``.  The report has one check per top-level connective,
    plus ``proposition`` (truth sets are localised up-sets) and ``neg-l`` /
    ``neg-r`` (negations coincide with orthogonal complements).

    Binary sentences of the outermost depth are not materialised as trees:
    their truth set is the connective's clause applied to the children's
    truth sets, which is what the evaluator would compute anyway.
    """
    S = M.system
    P = prop_algebra(S)
    A = P.algebra
    rng = random.Random(default_seed() if seed is None else seed)
    levels = _levels(M, max(1, max_depth - 1))
    lower = [f for level in levels for f in level]
    suite = [f for f in lower if is_closed(f)]
    if max_depth > 1:
        suite += [g for f in levels[-1] for op in _UNARY_STEPS for g in [op(f)] if is_closed(g)]
    suite += [random_formula(rng, M.signature, M.universe, random_depth, closed=True)
              for _ in range(random_count)]

    ev = Evaluator(M)
    memo: dict = {}

    def alg(phi) -> int:
        hit = memo.get(phi)
        if hit is not None:
            return hit
        if isinstance(phi, Atom):
            r = P.element(M.predicates[phi.pred][tuple(M.term_value(t) for t in phi.args)])
        elif isinstance(phi, Top):
            r = A.top
        elif isinstance(phi, Bot):
            r = A.bottom
        elif isinstance(phi, One):
            r = A.unit
        elif isinstance(phi, Zero):
            r = A.zero
        elif isinstance(phi, BINARY):
            r = _table(A, type(phi), alg(phi.left), alg(phi.right))
        elif isinstance(phi, (Forall, Exists)):
            vals = [alg(substitute(phi.body, phi.var, t)) for t in M.closed_terms()]
            r = A.lattice.meet_all(vals) if isinstance(phi, Forall) else A.lattice.join_all(vals)
        elif isinstance(phi, Bang):
            r = A.bang[alg(phi.body)]
        else:
            r = A.quest[alg(phi.body)]
        memo[phi] = r
        return r

    failures: dict = {c: [] for c in [*_CLAUSE.values(), "proposition", "neg-l", "neg-r"]}

    def judge(kind, X, element, left, build):
        if not is_proposition(S, X):
            failures["proposition"].append((format_formula(build()),))
            return
        if P.props[element] != X:
            failures[_CLAUSE[kind]].append((format_formula(build()),))
        if left is not None and kind in (ImpL, ImpR):
            neg = neg_left if kind is ImpL else neg_right
            if X != neg(S, left):
                failures["neg-l" if kind is ImpL else "neg-r"].append((format_formula(build()),))

    for phi in suite:
        zero_right = isinstance(phi, (ImpL, ImpR)) and isinstance(phi.right, Zero)
        judge(type(phi), ev(phi), alg(phi), ev(phi.left) if zero_right else None, lambda: phi)
    count = len(suite)

    if max_depth > 1:
        closed_lower = [f for f in lower if is_closed(f)]
        newest = {f for f in levels[-1] if is_closed(f)}
        zero = Zero()
        for a, b in product(closed_lower, repeat=2):
            if a not in newest and b not in newest:
                continue
            Xa, Xb, ea, eb = ev(a), ev(b), alg(a), alg(b)
            for op in BINARY:
                count += 1
                judge(op, binary_clause(S, op, Xa, Xb), _table(A, op, ea, eb),
                      Xa if b == zero else None, lambda: op(a, b))

    rep = AxiomReport()
    for check_id, ws in failures.items():
        rep.add(check_id, ws, note=f"{count} sentences")
    return rep


def _table(A, op, x: int, y: int) -> int:
    if op is And:
        return A.meet(x, y)
    if op is Or:
        return A.join(x, y)
    if op is ImpL:
        return A.imp_l[x][y]
    return A.imp_r[x][y]
