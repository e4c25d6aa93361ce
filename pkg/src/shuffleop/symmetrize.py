"""From multilinear identities over symmetric operations to shuffle relations.

A plain binary operation ``mu`` becomes two shuffle generators, ``mu`` and
its transpose ``mu'`` with ``mu(2 1) = mu'(1 2)``.  Symmetric and
antisymmetric operations keep a single generator; swapping their arguments
costs a sign of +1 or -1 respectively.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Union

from .order import MonomialOrder
from .poly import Polynomial, add_into
from .trees import Tree

SYMMETRIES = ("plain", "symmetric", "antisymmetric")

# variable index, or (op_name, left, right)
Term = Union[int, tuple]


@dataclass(frozen=True)
class SymbolicOp:
    name: str
    symmetry: str = "plain"

    def __post_init__(self):
        if self.symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry {self.symmetry!r}")

    @property
    def generators(self) -> tuple[str, ...]:
        if self.symmetry == "plain":
            return (self.name, twin_name(self.name))
        return (self.name,)


def twin_name(name: str) -> str:
    return name + "'"


def term_variables(term: Term) -> list[int]:
    if isinstance(term, int):
        return [term]
    return term_variables(term[1]) + term_variables(term[2])


def render_term(term: Term) -> str:
    if isinstance(term, int):
        return f"x{term}"
    return f"{term[0]}({render_term(term[1])}, {render_term(term[2])})"


@dataclass(frozen=True)
class IdentityExpr:
    """A named multilinear identity ``sum c_i * term_i = 0``."""
    name: str
    terms: tuple  # of (Fraction, Term)

    def __post_init__(self):
        if not self.terms:
            raise ValueError(f"identity {self.name!r} has no terms")
        varsets = set()
        for _, t in self.terms:
            vs = term_variables(t)
            if len(set(vs)) != len(vs):
                raise ValueError(f"identity {self.name!r} is not multilinear: repeated variable")
            varsets.add(frozenset(vs))
        if len(varsets) != 1:
            raise ValueError(f"identity {self.name!r}: terms use different variables")
        (vs,) = varsets
        if vs != frozenset(range(1, len(vs) + 1)):
            raise ValueError(f"identity {self.name!r}: variables must be x1..xn")

    @property
    def arity(self) -> int:
        return len(term_variables(self.terms[0][1]))

    def ops_used(self) -> set[str]:
        out = set()

        def walk(t):
            if not isinstance(t, int):
                out.add(t[0])
                walk(t[1])
                walk(t[2])
        for _, t in self.terms:
            walk(t)
        return out

    def substitute(self, sigma: Mapping[int, int]) -> IdentityExpr:
        def sub(t):
            if isinstance(t, int):
                return sigma[t]
            return (t[0], sub(t[1]), sub(t[2]))
        return IdentityExpr(self.name, tuple((c, sub(t)) for c, t in self.terms))

    def render(self) -> str:
        parts = []
        for i, (c, t) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = render_term(t) if a == 1 else f"{a}*{render_term(t)}"
            parts.append((f"-{body}" if sign == "-" else body) if i == 0 else f"{sign} {body}")
        return " ".join(parts) + " = 0"


def _op_table(ops) -> dict:
    if isinstance(ops, Mapping):
        return dict(ops)
    return {op.name: op for op in ops}


def to_shuffle(term: Term, ops) -> tuple[int, Tree]:
    """Return ``(sign, tree)`` with ``term == sign * tree`` in the shuffle encoding."""
    table = _op_table(ops)
    vs = term_variables(term)
    if len(set(vs)) != len(vs):
        raise ValueError("term is not multilinear")

    def conv(t):
        if isinstance(t, int):
            return 1, t, t
        try:
            op = table[t[0]]
        except KeyError:
            raise ValueError(f"unknown operation {t[0]!r}") from None
        sa, a, ma = conv(t[1])
        sb, b, mb = conv(t[2])
        sign = sa * sb
        if ma < mb:
            return sign, (op.name, a, b), ma
        if op.symmetry == "plain":
            return sign, (twin_name(op.name), b, a), mb
        if op.symmetry == "antisymmetric":
            sign = -sign
        return sign, (op.name, b, a), mb

    sign, tree, _ = conv(term)
    return sign, tree


def identity_to_polynomial(identity: IdentityExpr, ops, order: MonomialOrder | None = None) -> Polynomial:
    acc: dict = {}
    for c, t in identity.terms:
        s, tree = to_shuffle(t, ops)
        add_into(acc, {tree: Fraction(c) * s})
    return Polynomial(acc, order, arity=identity.arity)


def orbit_polynomials(identity: IdentityExpr, ops, order: MonomialOrder | None = None) -> list[Polynomial]:
    """Images of all variable permutations, with zeros and scalar multiples removed.

    Order of the output follows the lexicographic order of permutations.
    """
    n = identity.arity
    seen = set()
    out = []
    for perm in permutations(range(1, n + 1)):
        sigma = dict(zip(range(1, n + 1), perm))
        p = identity_to_polynomial(identity.substitute(sigma), ops, order)
        if p.is_zero():
            continue
        key = _projective_key(p)
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return out


def _projective_key(p: Polynomial):
    d = p.as_dict()
    # any fixed monomial works as the normalizing pivot
    pivot = min(d, key=repr)
    c = d[pivot]
    return frozenset((m, v / c) for m, v in d.items())


def row_reduce(polys: Iterable[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Reduced row echelon basis of the span, monic, leads descending."""
    key = order.key
    pivots: dict = {}
    for p in polys:
        row = p.as_dict()
        for lead in [m for m in row if m in pivots]:
            c = row.get(lead)
            if c:
                add_into(row, pivots[lead], -c)
        if not row:
            continue
        lead = max(row, key=key)
        inv = 1 / row[lead]
        row = {m: v * inv for m, v in row.items()}
        for other in pivots.values():
            c = other.get(lead)
            if c:
                add_into(other, row, -c)
        pivots[lead] = row
    arity = None
    return [Polynomial(pivots[m], order, arity)
            for m in sorted(pivots, key=key, reverse=True)]


def multilinear_orbit(identity: IdentityExpr, ops, order: MonomialOrder | None = None) -> list[Polynomial]:
    """A linearly independent generating set of the shuffle relations of ``identity``."""
    table = _op_table(ops)
    if order is None:
        order = default_order(table.values())
    return row_reduce(orbit_polynomials(identity, table, order), order)


def generators_for(ops: Iterable[SymbolicOp]) -> list[str]:
    out = []
    for op in ops:
        out.extend(op.generators)
    return out


def default_order(ops: Iterable[SymbolicOp]) -> MonomialOrder:
    """Declaration order, earliest generator smallest."""
    return MonomialOrder(generators_for(ops))
