"""Line-oriented text formats for algebras, cover systems and models.

A document is a sequence of blocks::

    [algebra BOOL2]
    elements = bot top
    order = bot<=top
    unit = top
    zero = bot
    fusion:
      bot*bot = bot
      ...
    bang:
      !bot = bot
      ...

    [cover COV2]
    points = a b
    preorder =
    covers:
      a <| { a }
      a <| { b }
      b <| { b }

    [model M]
    cover = COV2
    universe = u
    pred P/1:
      P(u) = { a b }

``#`` starts a comment.  Order and preorder lines list generating pairs and
are closed reflexively and transitively; ``R`` is taken as written.  A model's
``cover`` names a cover block of the same document or a file path relative to
the model's file.  A lattice-join cover is declared with the single covers
line ``backend = lattice-join order = NAME`` (an algebra block of the same
document) or ``backend = lattice-join order = inline a<=b ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Optional, Union

from .algebra import FLAlgebra
from .cover import CoverSystem, Extensional, LatticeJoin, PropositionAlgebra
from .errors import FormatError, OrderError, StructureError
from .logic.semantics import Model
from .order import FiniteLattice, FinitePreorder, check_lattice

NAME = r"[A-Za-z0-9_.']+"
_NAME_RE = re.compile(NAME)
_HEADER = re.compile(rf"\[\s*(algebra|cover|model)\s+({NAME})\s*\]")
_KEYS = {
    "algebra": ("elements", "order", "unit", "zero"),
    "cover": ("points", "preorder", "epsilon", "zero", "I", "R"),
    "model": ("cover", "universe"),
}
_SECTIONS = {
    "algebra": ("fusion", "bang", "quest"),
    "cover": ("fusion", "covers"),
    "model": (),
}

Value = Union[FLAlgebra, CoverSystem, Model]


@dataclass(frozen=True)
class Block:
    kind: str
    name: str
    value: Value


@dataclass
class Document:
    blocks: list = field(default_factory=list)

    def of_kind(self, kind: str) -> list:
        return [b for b in self.blocks if b.kind == kind]

    def find(self, kind: str, name: Optional[str] = None) -> Block:
        found = [b for b in self.of_kind(kind) if name is None or b.name == name]
        if not found:
            raise FormatError(f"no {kind} block" + (f" named {name}" if name else ""))
        if len(found) > 1:
            raise FormatError(f"several {kind} blocks; name one explicitly")
        return found[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, Document) and self.blocks == other.blocks


# ---------------------------------------------------------------------------
# Raw block scanning

@dataclass
class _Raw:
    kind: str
    name: str
    line: int
    keys: dict = field(default_factory=dict)        # key -> (value text, line)
    sections: dict = field(default_factory=dict)    # section -> [(text, line)]
    extra: list = field(default_factory=list)       # model const / pred lines


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _scan(text: str) -> list[_Raw]:
    blocks: list[_Raw] = []
    current: Optional[_Raw] = None
    section: Optional[list] = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        m = _HEADER.fullmatch(line)
        if m:
            current = _Raw(m.group(1), m.group(2), no)
            blocks.append(current)
            section = None
            continue
        if line.startswith("["):
            raise FormatError(f"bad block header {line!r}", no)
        if current is None:
            raise FormatError("content before the first block header", no)
        kind = current.kind
        key = re.match(r"([A-Za-z]+)\s*=(.*)$", line)
        if key and key.group(1) in _KEYS[kind]:
            if key.group(1) in current.keys:
                raise FormatError(f"duplicate key {key.group(1)!r}", no)
            current.keys[key.group(1)] = (key.group(2).strip(), no)
            section = None
            continue
        sec = re.fullmatch(r"([A-Za-z]+)\s*:", line)
        if sec and sec.group(1) in _SECTIONS[kind]:
            if sec.group(1) in current.sections:
                raise FormatError(f"duplicate section {sec.group(1)!r}", no)
            section = current.sections[sec.group(1)] = []
            continue
        if kind == "model":
            c = re.fullmatch(rf"const\s+({NAME})\s*=\s*({NAME})", line)
            if c:
                current.extra.append(("const", c.group(1), c.group(2), no))
                section = None
                continue
            p = re.fullmatch(rf"pred\s+({NAME})\s*/\s*(\d+)\s*:", line)
            if p:
                section = []
                current.extra.append(("pred", p.group(1), (int(p.group(2)), section), no))
                continue
        if section is None:
            raise FormatError(f"unexpected line {line!r}", no)
        section.append((line, no))
    return blocks


def _names(text: str, no: int) -> list[str]:
    out = text.split()
    for name in out:
        if not _NAME_RE.fullmatch(name):
            raise FormatError(f"bad name {name!r}", no)
    return out


def _require(raw: _Raw, key: str) -> tuple[str, int]:
    if key not in raw.keys:
        raise FormatError(f"[{raw.kind} {raw.name}] is missing {key!r}", raw.line)
    return raw.keys[key]


def _lookup(index: dict, name: str, no: int) -> int:
    try:
        return index[name]
    except KeyError:
        raise FormatError(f"unknown element {name!r}", no) from None


def _pairs(text: str, index: dict, no: int, sep: str = "<=") -> list[tuple[int, int]]:
    out = []
    for tok in text.split():
        parts = tok.split(sep)
        if len(parts) != 2:
            raise FormatError(f"expected x{sep}y, got {tok!r}", no)
        out.append((_lookup(index, parts[0], no), _lookup(index, parts[1], no)))
    return out


def _set(text: str, index: dict, no: int) -> frozenset:
    m = re.fullmatch(r"\{(.*)\}", text.strip())
    if not m:
        raise FormatError(f"expected {{ ... }}, got {text!r}", no)
    return frozenset(_lookup(index, x, no) for x in _names(m.group(1), no))


def _fusion(lines: list, index: dict, n: int, no: int) -> tuple:
    table: dict = {}
    for line, ln in lines:
        m = re.fullmatch(rf"({NAME})\s*\*\s*({NAME})\s*=\s*({NAME})", line)
        if not m:
            raise FormatError(f"expected 'a*b = c', got {line!r}", ln)
        a, b, c = (_lookup(index, g, ln) for g in m.groups())
        if (a, b) in table:
            raise FormatError(f"fusion entry {m.group(1)}*{m.group(2)} given twice", ln)
        table[a, b] = c
    missing = [(a, b) for a, b in product(range(n), repeat=2) if (a, b) not in table]
    if missing:
        names = {v: k for k, v in index.items()}
        a, b = missing[0]
        raise FormatError(f"fusion table is missing {names[a]}*{names[b]} ({len(missing)} entries)", no)
    return tuple(tuple(table[a, b] for b in range(n)) for a in range(n))


def _unary(lines: list, index: dict, n: int, symbol: str, no: int) -> tuple:
    table: dict = {}
    for line, ln in lines:
        m = re.fullmatch(rf"{re.escape(symbol)}\s*({NAME})\s*=\s*({NAME})", line)
        if not m:
            raise FormatError(f"expected '{symbol}a = b', got {line!r}", ln)
        a, b = (_lookup(index, g, ln) for g in m.groups())
        if a in table:
            raise FormatError(f"{symbol}{m.group(1)} given twice", ln)
        table[a] = b
    if len(table) != n:
        raise FormatError(f"the {symbol} table must list every element", no)
    return tuple(table[a] for a in range(n))


def _lattice(names: list, pairs: list, what: str) -> FiniteLattice:
    try:
        return FiniteLattice.generated(names, pairs)
    except OrderError as e:
        raise StructureError(f"{what}: {e}", check_lattice(FinitePreorder.generated(names, pairs))) from None


# ---------------------------------------------------------------------------
# Block builders

def _build_algebra(raw: _Raw) -> FLAlgebra:
    text, no = _require(raw, "elements")
    names = _names(text, no)
    if not names or len(set(names)) != len(names):
        raise FormatError("elements must be a non-empty list of distinct names", no)
    index = {x: i for i, x in enumerate(names)}
    text, no = raw.keys.get("order", ("", raw.line))
    L = _lattice(names, _pairs(text, index, no), f"[algebra {raw.name}] order")
    n = len(names)
    unit = _lookup(index, *_require(raw, "unit"))
    zero = _lookup(index, *raw.keys["zero"]) if "zero" in raw.keys else None
    if "fusion" not in raw.sections:
        raise FormatError(f"[algebra {raw.name}] has no fusion section", raw.line)
    fusion = _fusion(raw.sections["fusion"], index, n, raw.line)
    bang = _unary(raw.sections["bang"], index, n, "!", raw.line) if "bang" in raw.sections else None
    quest = _unary(raw.sections["quest"], index, n, "?", raw.line) if "quest" in raw.sections else None
    return FLAlgebra(L, fusion, unit, zero, bang, quest, name=raw.name)


def _build_cover(raw: _Raw, algebras: dict) -> CoverSystem:
    text, no = _require(raw, "points")
    names = _names(text, no)
    if not names or len(set(names)) != len(names):
        raise FormatError("points must be a non-empty list of distinct names", no)
    index = {x: i for i, x in enumerate(names)}
    n = len(names)
    text, no = raw.keys.get("preorder", ("", raw.line))
    P = FinitePreorder.generated(names, _pairs(text, index, no))
    if "covers" not in raw.sections:
        raise FormatError(f"[cover {raw.name}] has no covers section", raw.line)
    backend = _backend(raw.sections["covers"], names, index, algebras)
    dot = _fusion(raw.sections["fusion"], index, n, raw.line) if "fusion" in raw.sections else None
    eps = _lookup(index, *raw.keys["epsilon"]) if "epsilon" in raw.keys else None
    sets = {k: _set(raw.keys[k][0], index, raw.keys[k][1]) for k in ("zero", "I") if k in raw.keys}
    R = None
    if "R" in raw.keys:
        text, no = raw.keys["R"]
        R = frozenset(_pairs(text, index, no, sep="->"))
    return CoverSystem(P, backend, dot, eps, sets.get("zero"), sets.get("I"), R, name=raw.name)


def _backend(lines: list, names: list, index: dict, algebras: dict):
    if len(lines) == 1 and lines[0][0].startswith("backend"):
        line, no = lines[0]
        m = re.fullmatch(r"backend\s*=\s*lattice-join\s+order\s*=\s*(.*)", line)
        if not m:
            raise FormatError(f"expected 'backend = lattice-join order = ...', got {line!r}", no)
        ref = m.group(1).strip()
        if ref.split()[:1] == ["inline"]:
            L = _lattice(names, _pairs(ref[len("inline"):], index, no), "lattice-join order")
        else:
            if ref not in algebras:
                raise FormatError(f"lattice-join order refers to unknown algebra {ref!r}", no)
            L = algebras[ref].lattice
            if L.names != tuple(names):
                raise FormatError(f"algebra {ref} does not have the same elements as the points", no)
        return LatticeJoin(L)
    per: list[set] = [set() for _ in names]
    for line, no in lines:
        m = re.fullmatch(rf"({NAME})\s*<\|\s*(\{{.*\}})", line)
        if not m:
            raise FormatError(f"expected 'x <| {{ ... }}', got {line!r}", no)
        per[_lookup(index, m.group(1), no)].add(_set(m.group(2), index, no))
    return Extensional.from_lists(len(names), per)


def _build_model(raw: _Raw, covers: dict, base: Optional[Path]) -> Model:
    ref, no = _require(raw, "cover")
    if ref in covers:
        S = covers[ref]
    else:
        path = Path(ref) if base is None else base / ref
        try:
            S = load_document(path).find("cover").value
        except OSError as e:
            raise FormatError(f"cannot read cover file {ref!r}: {e}", no) from None
    text, no = _require(raw, "universe")
    universe = _names(text, no)
    consts: dict = {}
    preds: dict = {}
    arities: dict = {}
    index = {x: i for i, x in enumerate(S.names)}
    for kind, name, val, ln in raw.extra:
        if kind == "const":
            if name in consts:
                raise FormatError(f"constant {name} given twice", ln)
            consts[name] = val
            continue
        arity, lines = val
        if name in preds:
            raise FormatError(f"predicate {name} given twice", ln)
        table: dict = {}
        for line, pl in lines:
            m = re.fullmatch(rf"({NAME})(?:\s*\(([^)]*)\))?\s*=\s*(\{{.*\}})", line)
            if not m or m.group(1) != name:
                raise FormatError(f"expected '{name}(...) = {{ ... }}', got {line!r}", pl)
            args = tuple(a.strip() for a in m.group(2).split(",")) if m.group(2) and m.group(2).strip() else ()
            if len(args) != arity:
                raise FormatError(f"{name} has arity {arity}", pl)
            if args in table:
                raise FormatError(f"{line!r} repeats an entry", pl)
            table[args] = _set(m.group(3), index, pl)
        preds[name] = table
        arities[name] = arity
    try:
        return Model(S, tuple(universe), consts, preds, arities)
    except ValueError as e:
        raise FormatError(str(e), raw.line) from None


def parse_document(text: str, base: Optional[Path] = None) -> Document:
    doc = Document()
    algebras: dict = {}
    covers: dict = {}
    seen = set()
    for raw in _scan(text):
        if (raw.kind, raw.name) in seen:
            raise FormatError(f"duplicate block [{raw.kind} {raw.name}]", raw.line)
        seen.add((raw.kind, raw.name))
        if raw.kind == "algebra":
            value = algebras[raw.name] = _build_algebra(raw)
        elif raw.kind == "cover":
            value = covers[raw.name] = _build_cover(raw, algebras)
        else:
            value = _build_model(raw, covers, base)
        doc.blocks.append(Block(raw.kind, raw.name, value))
    return doc


def load_document(path: Union[str, Path]) -> Document:
    path = Path(path)
    return parse_document(path.read_text(), base=path.parent)


# ---------------------------------------------------------------------------
# Printers

def _fmt_set(names, X) -> str:
    inner = " ".join(names[x] for x in sorted(X))
    return "{ " + inner + " }" if inner else "{ }"


def _fmt_pairs(names, pairs, sep="<=") -> str:
    return " ".join(f"{names[a]}{sep}{names[b]}" for a, b in pairs)


def _assign(key: str, value: str) -> str:
    return f"{key} = {value}" if value else f"{key} ="


def format_algebra(A: FLAlgebra, comments: Optional[list] = None) -> str:
    nm = A.names
    out = [f"[algebra {A.name}]"]
    out += [f"# {c}" for c in comments or []]
    out.append(_assign("elements", " ".join(nm)))
    out.append(_assign("order", _fmt_pairs(nm, A.lattice.generators())))
    out.append(f"unit = {nm[A.unit]}")
    if A.zero is not None:
        out.append(f"zero = {nm[A.zero]}")
    out.append("fusion:")
    out += [f"  {nm[a]}*{nm[b]} = {nm[A.fusion[a][b]]}" for a in range(A.n) for b in range(A.n)]
    for label, sym, table in (("bang", "!", A.bang), ("quest", "?", A.quest)):
        if table is not None:
            out.append(f"{label}:")
            out += [f"  {sym}{nm[a]} = {nm[table[a]]}" for a in range(A.n)]
    return "\n".join(out) + "\n"


def format_prop_algebra(P: PropositionAlgebra) -> str:
    """The algebra of ``P`` with comments naming the proposition behind each element."""
    notes = [f"{P.algebra.names[i]} = {P.label(i)}" for i in range(len(P.props))]
    return format_algebra(P.algebra, [f"propositions of {P.system.name}"] + notes)


def format_cover(S: CoverSystem) -> str:
    nm = S.names
    out = [f"[cover {S.name}]", _assign("points", " ".join(nm)),
           _assign("preorder", _fmt_pairs(nm, S.preorder.generators()))]
    if S.epsilon is not None:
        out.append(f"epsilon = {nm[S.epsilon]}")
    if S.dot is not None:
        out.append("fusion:")
        out += [f"  {nm[a]}*{nm[b]} = {nm[S.dot[a][b]]}" for a in range(S.n) for b in range(S.n)]
    out.append("covers:")
    b = S.backend
    if isinstance(b, LatticeJoin):
        out.append(f"  backend = lattice-join order = inline {_fmt_pairs(nm, b.lattice.generators())}".rstrip())
    else:
        for x in range(S.n):
            for C in sorted(b.of(x), key=lambda C: (len(C), sorted(C))):
                out.append(f"  {nm[x]} <| {_fmt_set(nm, C)}")
    for label in ("zero", "I"):
        v = getattr(S, label)
        if v is not None:
            out.append(f"{label} = {_fmt_set(nm, v)}")
    if S.R is not None:
        out.append(_assign("R", _fmt_pairs(nm, sorted(S.R), "->")))
    return "\n".join(out) + "\n"


def format_model(M: Model, name: str = "M", cover_ref: Optional[str] = None) -> str:
    nm = M.system.names
    out = [f"[model {name}]", f"cover = {cover_ref or M.system.name}",
           _assign("universe", " ".join(M.universe))]
    out += [f"const {c} = {u}" for c, u in M.constants.items()]
    for p, table in M.predicates.items():
        k = M.arities[p]
        out.append(f"pred {p}/{k}:")
        for args in product(M.universe, repeat=k):
            head = f"{p}({', '.join(args)})" if k else p
            out.append(f"  {head} = {_fmt_set(nm, table[args])}")
    return "\n".join(out) + "\n"


def format_document(doc: Document) -> str:
    parts = []
    for b in doc.blocks:
        if b.kind == "algebra":
            parts.append(format_algebra(b.value.replace(name=b.name)))
        elif b.kind == "cover":
            parts.append(format_cover(b.value.replace(name=b.name)))
        else:
            parts.append(format_model(b.value, b.name))
    return "\n".join(parts)

