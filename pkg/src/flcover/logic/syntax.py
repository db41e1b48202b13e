"""Terms, formulas, the concrete grammar and its printer.

Concrete syntax, loosest first::

    forall v. F        exists v. F         (scope runs to the closing paren / end)
    F ->l F   F ->r F                      (right-associative)
    F | F                                  (left-associative)
    F & F                                  (left-associative)
    !F  ?F  negl F  negr F                 (prefix, stacking)
    P(t, ...)  P  T  F  1  0  ( F )

``negl F`` and ``negr F`` are sugar for ``F ->l 0`` and ``F ->r 0``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from ..errors import ArityError, ParseError, UnknownSymbol

VARIABLE = re.compile(r"v\d+")
KEYWORDS = frozenset({"forall", "exists", "negl", "negr", "T", "F"})


@dataclass(frozen=True)
class Signature:
    constants: tuple = ()
    predicates: tuple = ()  # (name, arity) pairs

    def __post_init__(self):
        object.__setattr__(self, "constants", tuple(self.constants))
        preds = self.predicates.items() if isinstance(self.predicates, Mapping) else self.predicates
        object.__setattr__(self, "predicates", tuple((p, int(k)) for p, k in preds))
        names = list(self.constants) + [p for p, _ in self.predicates]
        if len(set(names)) != len(names):
            raise ValueError("signature names must be unique")
        for name in names:
            if not _is_name(name):
                raise ValueError(f"{name!r} cannot be used as a symbol name")
        if any(k < 0 for _, k in self.predicates):
            raise ValueError("arities must be non-negative")

    def arity(self, pred: str) -> Optional[int]:
        for p, k in self.predicates:
            if p == pred:
                return k
        return None


def _is_name(s: str) -> bool:
    return bool(re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", s)) and s not in KEYWORDS and not VARIABLE.fullmatch(s)


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Elem:
    """A member of the model's universe used as a closed term."""
    name: str


@dataclass(frozen=True)
class Var:
    name: str


Term = Union[Const, Elem, Var]


# ---------------------------------------------------------------------------
# Formulas

@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ImpL:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ImpR:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Bang:
    body: "Formula"


@dataclass(frozen=True)
class Quest:
    body: "Formula"


Formula = Union[Atom, Top, Bot, One, Zero, And, Or, ImpL, ImpR, Forall, Exists, Bang, Quest]
CONSTANTS = (Top, Bot, One, Zero)
BINARY = (And, Or, ImpL, ImpR)
QUANTIFIERS = (Forall, Exists)
MODALITIES = (Bang, Quest)


def _cached_hash(self) -> int:
    # suites hash hundreds of thousands of nested formulas; the generated hash recurses every time
    try:
        return self.__dict__["_hash"]
    except KeyError:
        h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
        object.__setattr__(self, "_hash", h)
        return h


for _cls in (Atom, And, Or, ImpL, ImpR, Forall, Exists, Bang, Quest):
    _cls.__hash__ = _cached_hash


def NegL(body: Formula) -> ImpL:
    return ImpL(body, Zero())


def NegR(body: Formula) -> ImpR:
    return ImpR(body, Zero())


def free_variables(phi: Formula) -> frozenset:
    if isinstance(phi, Atom):
        return frozenset(t.name for t in phi.args if isinstance(t, Var))
    if isinstance(phi, CONSTANTS):
        return frozenset()
    if isinstance(phi, BINARY):
        return free_variables(phi.left) | free_variables(phi.right)
    if isinstance(phi, QUANTIFIERS):
        return free_variables(phi.body) - {phi.var}
    return free_variables(phi.body)


def is_closed(phi: Formula) -> bool:
    return not free_variables(phi)


def substitute(phi: Formula, var: Union[str, Var], term: Term) -> Formula:
    """Replace the free occurrences of ``var`` by the closed term ``term``."""
    v = var.name if isinstance(var, Var) else var
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(term if isinstance(t, Var) and t.name == v else t for t in phi.args))
    if isinstance(phi, CONSTANTS):
        return phi
    if isinstance(phi, BINARY):
        return type(phi)(substitute(phi.left, v, term), substitute(phi.right, v, term))
    if isinstance(phi, QUANTIFIERS):
        return phi if phi.var == v else type(phi)(phi.var, substitute(phi.body, v, term))
    return type(phi)(substitute(phi.body, v, term))


def depth(phi: Formula) -> int:
    if isinstance(phi, (Atom,) + CONSTANTS):
        return 1
    if isinstance(phi, BINARY):
        return 1 + max(depth(phi.left), depth(phi.right))
    return 1 + depth(phi.body)


# ---------------------------------------------------------------------------
# Printer

_BINARY_SYMBOL = {And: "&", Or: "|", ImpL: "->l", ImpR: "->r"}
_LEVEL = {ImpL: 1, ImpR: 1, Or: 2, And: 3}
_UNARY_LEVEL = 4
_CONSTANT_TEXT = {Top: "T", Bot: "F", One: "1", Zero: "0"}


def _term_text(t: Term) -> str:
    return t.name


def format_formula(phi: Formula) -> str:
    return _fmt(phi, 0)


def _fmt(phi: Formula, ctx: int) -> str:
    # ctx is the binding strength demanded by the parent; 0 means "anything goes"
    if isinstance(phi, Atom):
        if not phi.args:
            return phi.pred
        return f"{phi.pred}({', '.join(_term_text(t) for t in phi.args)})"
    if isinstance(phi, CONSTANTS):
        return _CONSTANT_TEXT[type(phi)]
    if isinstance(phi, QUANTIFIERS):
        kw = "forall" if isinstance(phi, Forall) else "exists"
        text = f"{kw} {phi.var}. {_fmt(phi.body, 0)}"
        return text if ctx == 0 else f"({text})"
    if isinstance(phi, MODALITIES):
        sym = "!" if isinstance(phi, Bang) else "?"
        return sym + _fmt(phi.body, _UNARY_LEVEL)
    level = _LEVEL[type(phi)]
    if level == 1:
        left, right = _fmt(phi.left, level + 1), _fmt(phi.right, level)
    else:
        left, right = _fmt(phi.left, level), _fmt(phi.right, level + 1)
    text = f"{left} {_BINARY_SYMBOL[type(phi)]} {right}"
    return f"({text})" if ctx > level else text


# ---------------------------------------------------------------------------
# Parser

_TOKEN = re.compile(r"(?:(->[lr])|([()!?&|,.])|([01])|([A-Za-z_][A-Za-z0-9_']*))")


@dataclass
class _Token:
    kind: str  # "sym", "id", "num", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            out.append(_Token("end", "", pos))
            return out
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = pos
        imp, sym, num, ident = m.groups()
        if imp or sym:
            out.append(_Token("sym", imp or sym, start))
        elif num:
            out.append(_Token("num", num, start))
        else:
            out.append(_Token("id", ident, start))
        pos = m.end()


@dataclass
class _Parser:
    tokens: list
    sig: Signature
    universe: frozenset
    bound: list = field(default_factory=list)
    i: int = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        t = self.tok
        if t.text != text or t.kind == "end":
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return self.take()

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("sym", "id") and self.tok.text in texts

    # formula := quantified | implication
    def formula(self) -> Formula:
        if self.at("forall", "exists"):
            return self.quantified()
        return self.implication()

    def quantified(self) -> Formula:
        kw = self.take().text
        t = self.take()
        if t.kind != "id" or t.text in KEYWORDS:
            raise ParseError("expected a variable name", t.pos)
        if t.text in self.sig.constants or t.text in self.universe:
            raise ParseError(f"cannot bind {t.text!r}: it names a closed term", t.pos)
        self.expect(".")
        self.bound.append(t.text)
        try:
            body = self.formula()
        finally:
            self.bound.pop()
        return (Forall if kw == "forall" else Exists)(t.text, body)

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at("->l", "->r"):
            op = ImpL if self.take().text == "->l" else ImpR
            return op(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at("|"):
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at("&"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at("!"):
            self.take()
            return Bang(self.unary())
        if self.at("?"):
            self.take()
            return Quest(self.unary())
        if self.at("negl"):
            self.take()
            return NegL(self.unary())
        if self.at("negr"):
            self.take()
            return NegR(self.unary())
        if self.at("forall", "exists"):
            return self.quantified()
        return self.primary()

    def primary(self) -> Formula:
        t = self.tok
        if t.kind == "sym" and t.text == "(":
            self.take()
            inner = self.formula()
            self.expect(")")
            return inner
        if t.kind == "num":
            self.take()
            return One() if t.text == "1" else Zero()
        if t.kind == "id":
            if t.text == "T":
                self.take()
                return Top()
            if t.text == "F":
                self.take()
                return Bot()
            if t.text not in KEYWORDS:
                return self.atom()
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def atom(self) -> Atom:
        t = self.take()
        arity = self.sig.arity(t.text)
        if arity is None:
            raise UnknownSymbol(f"unknown predicate {t.text!r} at position {t.pos}")
        args: list = []
        if self.at("("):
            self.take()
            args.append(self.term())
            while self.at(","):
                self.take()
                args.append(self.term())
            self.expect(")")
        if len(args) != arity:
            raise ArityError(f"{t.text} takes {arity} argument(s), got {len(args)} at position {t.pos}")
        return Atom(t.text, tuple(args))

    def term(self) -> Term:
        t = self.take()
        if t.kind != "id" or t.text in KEYWORDS:
            raise ParseError("expected a term", t.pos)
        name = t.text
        if name in self.bound:
            return Var(name)
        if name in self.sig.constants:
            return Const(name)
        if name in self.universe:
            return Elem(name)
        if VARIABLE.fullmatch(name):
            return Var(name)
        raise UnknownSymbol(f"unknown term {name!r} at position {t.pos}")


def parse_formula(text: str, sig: Signature, universe: Iterable[str] = ()) -> Formula:
    p = _Parser(_tokenize(text), sig, frozenset(universe))
    phi = p.formula()
    if p.tok.kind != "end":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos)
    return phi


# ---------------------------------------------------------------------------
# Random formulas

def random_formula(rng: random.Random, sig: Signature, universe: Iterable[str] = (),
                   max_depth: int = 5, closed: bool = False, variables: int = 3) -> Formula:
    """A random formula of depth at most ``max_depth``.

    With ``closed=True`` variables only occur under a binder for them.
    """
    universe = tuple(universe)
    closed_terms = [Const(c) for c in sig.constants] + [Elem(u) for u in universe]
    var_names = [f"v{i}" for i in range(variables)]

    def term(bound):
        pool = list(closed_terms) + [Var(v) for v in (bound if closed else var_names)]
        if not pool:
            raise ValueError("no terms available")
        return rng.choice(pool)

    def leaf(bound):
        usable = bool(closed_terms or bound or not closed)
        preds = [(p, k) for p, k in sig.predicates if k == 0 or usable]
        if preds and rng.random() < 0.7:
            p, k = rng.choice(preds)
            return Atom(p, tuple(term(bound) for _ in range(k)))
        return rng.choice(CONSTANTS)()

    def go(d, bound):
        if d <= 1 or rng.random() < 0.25:
            return leaf(bound)
        kind = rng.random()
        if kind < 0.45:
            op = rng.choice(BINARY)
            return op(go(d - 1, bound), go(d - 1, bound))
        if kind < 0.7:
            return rng.choice(MODALITIES)(go(d - 1, bound))
        v = rng.choice(var_names)
        return rng.choice(QUANTIFIERS)(v, go(d - 1, bound + (v,)))

    return go(max_depth, ())
