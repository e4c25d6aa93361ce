"""Text format for operad presentations (``.opd`` files) and the built-in library.

Example::

    # transposed Poisson algebras
    op mul : symmetric
    op bra : antisymmetric
    id tp-identity : 2*mul(bra(x1, x2), x3) = bra(mul(x1, x3), x2) + bra(x1, mul(x2, x3))
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .order import MonomialOrder
from .poly import Polynomial
from .symmetrize import (SYMMETRIES, IdentityExpr, SymbolicOp, generators_for,
                         multilinear_orbit, term_variables)

BUILTINS = ("as", "com", "lie", "novikov", "gd", "com-gd", "tp")
LIBRARY = "identities"


class SourceError(Exception):
    def __init__(self, message: str, line: int, column: int, token: str = "", source: str = ""):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        self.source = source

    def __str__(self):
        where = f"{self.source}:" if self.source else ""
        tok = f" (at {self.token!r})" if self.token else ""
        return f"{where}{self.line}:{self.column}: {self.message}{tok}"


@dataclass(frozen=True)
class Presentation:
    ops: tuple
    identities: tuple
    name: str = field(default="", compare=False)

    @property
    def op_table(self) -> dict:
        return {op.name: op for op in self.ops}

    @property
    def generators(self) -> list[str]:
        return generators_for(self.ops)

    def order(self, precedence=None) -> MonomialOrder:
        return MonomialOrder(precedence if precedence else self.generators)

    def identity(self, name: str) -> IdentityExpr:
        for ident in self.identities:
            if ident.name.lower() == name.lower():
                return ident
        raise KeyError(name)

    def relations(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        order = order or self.order()
        out = []
        for ident in self.identities:
            out.extend(multilinear_orbit(ident, self.op_table, order))
        return out

    def render(self) -> str:
        lines = [f"op {op.name} : {op.symmetry}" for op in self.ops]
        lines += [f"id {i.name} : {i.render()}" for i in self.identities]
        return "\n".join(lines) + "\n"


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_ID_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_'\-]*")
_INT = re.compile(r"\d+")
_VAR = re.compile(r"x([1-9]\d*)$")


class _Scanner:
    def __init__(self, text: str, source: str):
        self.text = text
        self.pos = 0
        self.source = source

    def error(self, message, pos=None, token=""):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        if not token:
            m = re.compile(r"\S+").match(self.text, pos)
            token = m.group(0)[:20] if m else "<end of input>"
        return SourceError(message, line, col, token, self.source)

    def skip(self):
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c.isspace():
                self.pos += 1
            elif c == "#":
                nl = text.find("\n", self.pos)
                self.pos = len(text) if nl < 0 else nl
            else:
                break

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def regex(self, pattern, what):
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def keyword(self) -> str:
        self.skip()
        m = _NAME.match(self.text, self.pos)
        return m.group(0) if m else ""


def parse(text: str, source: str = "") -> Presentation:
    """Parse ``.opd`` text; raises :class:`SourceError` on malformed input."""
    sc = _Scanner(text, source)
    ops: dict = {}
    identities = []
    while not sc.at_end():
        start = sc.pos
        kw = sc.keyword()
        if kw == "op":
            sc.pos += 2
            name_pos = sc.pos
            name = sc.regex(_NAME, "operation name")
            sc.expect(":")
            sym = sc.regex(_NAME, "symmetry")
            if sym not in SYMMETRIES:
                raise sc.error(f"unknown symmetry {sym!r}; use plain, symmetric or antisymmetric",
                               sc.pos - len(sym), sym)
            if name in ops:
                raise sc.error(f"operation {name!r} declared twice", name_pos, name)
            ops[name] = SymbolicOp(name, sym)
        elif kw == "id":
            sc.pos += 2
            sc.skip()
            name_pos = sc.pos
            name = sc.regex(_ID_NAME, "identity name")
            if any(i.name == name for i in identities):
                raise sc.error(f"identity {name!r} declared twice", name_pos, name)
            sc.expect(":")
            lhs = _expr(sc, ops)
            sc.expect("=")
            rhs = _expr(sc, ops)
            terms = lhs + [(-c, t, pos) for c, t, pos in rhs]
            _check_variables(sc, name, name_pos, terms)
            identities.append(IdentityExpr(name, tuple((c, t) for c, t, _ in terms)))
        else:
            raise sc.error("expected 'op' or 'id'", start)
    return Presentation(tuple(ops.values()), tuple(identities), source)


def _check_variables(sc, name, pos, terms):
    if not terms:
        raise sc.error(f"identity {name!r} has no terms", pos, name)
    varsets = [(frozenset(term_variables(t)), tpos) for _, t, tpos in terms]
    first = varsets[0][0]
    for vs, tpos in varsets[1:]:
        if vs != first:
            raise sc.error(f"identity {name!r}: every term must use the same variables", tpos)
    if first != frozenset(range(1, len(first) + 1)):
        raise sc.error(f"identity {name!r}: variables must be x1..x{len(first)} without gaps", pos, name)


def _expr(sc: _Scanner, ops) -> list:
    """Sum of terms; returns ``[(coeff, term, pos)]``.  A lone ``0`` is the empty sum."""
    sc.skip()
    if sc.peek() == "0":
        m = re.compile(r"0(?![\d/*])").match(sc.text, sc.pos)
        if m:
            sc.pos = m.end()
            return []
    out = []
    sign = 1
    if sc.peek() in "+-" and sc.peek():
        sign = -1 if sc.peek() == "-" else 1
        sc.pos += 1
    while True:
        out.append(_term(sc, ops, sign))
        ch = sc.peek()
        if ch and ch in "+-":
            sign = -1 if ch == "-" else 1
            sc.pos += 1
        else:
            return out


def _term(sc: _Scanner, ops, sign):
    sc.skip()
    pos = sc.pos
    coeff = Fraction(sign)
    ch = sc.peek()
    if ch in "+-" and ch:
        if ch == "-":
            coeff = -coeff
        sc.pos += 1
        sc.skip()
    if sc.peek().isdigit():
        rpos = sc.pos
        m = re.compile(r"\d+(?:/\d*)?").match(sc.text, sc.pos)
        lit = m.group(0)
        sc.pos = m.end()
        num, _, den = lit.partition("/")
        if "/" in lit and (not den or int(den) == 0):
            raise sc.error(f"malformed rational {lit!r}", rpos, lit)
        value = Fraction(int(num), int(den) if den else 1)
        if value == 0:
            raise sc.error("zero coefficient", rpos, lit)
        coeff *= value
        sc.expect("*")
    t = _operand(sc, ops)
    vs = term_variables(t)
    if len(set(vs)) != len(vs):
        dup = sorted({v for v in vs if vs.count(v) > 1})
        raise sc.error(f"repeated variable x{dup[0]} in term; identities must be multilinear", pos)
    return coeff, t, pos


def _operand(sc: _Scanner, ops):
    sc.skip()
    pos = sc.pos
    name = sc.regex(_NAME, "operation or variable")
    if sc.peek() == "(":
        if name not in ops:
            raise sc.error(f"unknown operation {name!r}", pos, name)
        sc.pos += 1
        args = [_operand(sc, ops)]
        while sc.peek() == ",":
            sc.pos += 1
            args.append(_operand(sc, ops))
        sc.expect(")")
        if len(args) != 2:
            raise sc.error(f"operation {name!r} takes 2 arguments, got {len(args)}", pos, name)
        return (name, args[0], args[1])
    m = _VAR.match(name)
    if not m:
        raise sc.error(f"unknown variable {name!r}; variables are x1, x2, ...", pos, name)
    return int(m.group(1))


def render(p: Presentation) -> str:
    return p.render()


@lru_cache(maxsize=None)
def _builtin_text(name: str) -> str:
    return resources.files("shuffleop").joinpath("data", f"{name}.opd").read_text("utf-8")


@lru_cache(maxsize=None)
def builtin(name: str) -> Presentation:
    if name not in BUILTINS and name != LIBRARY:
        raise KeyError(f"unknown built-in presentation {name!r}; choose from {', '.join(BUILTINS)}")
    p = parse(_builtin_text(name), f"{name}.opd")
    return Presentation(p.ops, p.identities, name)


def identity_library() -> Presentation:
    return builtin(LIBRARY)


def lookup_identity(name: str, presentation: Presentation | None = None) -> IdentityExpr:
    """Find an identity in ``presentation`` first, then in the shared library."""
    if presentation is not None:
        try:
            return presentation.identity(name)
        except KeyError:
            pass
    try:
        return identity_library().identity(name)
    except KeyError:
        raise KeyError(f"unknown identity {name!r}") from None


def load_file(path) -> Presentation:
    path = Path(path)
    p = parse(path.read_text(encoding="utf-8"), str(path))
    return replace(p, name=path.stem)
