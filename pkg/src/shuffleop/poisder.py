"""The differential Poisson image of Gelfand-Dorfman expressions.

The map sends ``a o b`` to ``a * d(b)`` and ``[a, b]`` to ``{a, b}`` in the
free Poisson algebra with derivation on ``x1..xn``.  That algebra is the
free Poisson algebra on the derived letters ``d^k(x_i)``, i.e. the symmetric
algebra on the free Lie algebra over those letters.

Elements are kept as ``{PoisMonomial: coefficient}`` where a PoisMonomial
is a sorted tuple of Lie monomials (nested brackets of letters).  Such
expressions are not unique (Jacobi is not applied), so zero testing maps
every Lie factor into the free associative algebra (``[a, b] -> ab - ba``)
and every product to a multiset of words.  Factors of a multilinear
monomial involve disjoint variables, so the multiset is just the sorted
tuple of words, and the map is injective on the symmetric algebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Union

from .poly import add_into
from .symmetrize import IdentityExpr, SymbolicOp, term_variables

# (i, k) stands for d^k(x_i)
Letter = tuple
# Letter, or ("[", left, right)
LieMonomial = Union[tuple]

BRACKET = "["


def is_letter(u) -> bool:
    return u[0] != BRACKET


def lie_key(u):
    if is_letter(u):
        return (0, u)
    return (1, lie_key(u[1]), lie_key(u[2]))


def letters_of(u) -> list:
    if is_letter(u):
        return [u]
    return letters_of(u[1]) + letters_of(u[2])


def lie_bracket(a, b) -> tuple[int, tuple]:
    """Antisymmetry-normalized ``[a, b]`` as ``(sign, monomial)``."""
    if lie_key(a) > lie_key(b):
        return -1, (BRACKET, b, a)
    return 1, (BRACKET, a, b)


def lie_derive(u) -> list:
    """``d(u)`` as a list of ``(sign, monomial)``."""
    if is_letter(u):
        return [(1, (u[0], u[1] + 1))]
    out = []
    for s, da in lie_derive(u[1]):
        t, m = lie_bracket(da, u[2])
        out.append((s * t, m))
    for s, db in lie_derive(u[2]):
        t, m = lie_bracket(u[1], db)
        out.append((s * t, m))
    return out


def _mono(factors) -> tuple:
    return tuple(sorted(factors, key=lie_key))


class PoisElement:
    """A linear combination of products of Lie monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def variable(cls, i: int) -> PoisElement:
        return cls({((i, 0),): Fraction(1)})

    def __add__(self, other):
        return PoisElement(add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        return PoisElement(add_into(dict(self.terms), other.terms, -1))

    def scale(self, c) -> PoisElement:
        return PoisElement({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: PoisElement) -> PoisElement:
        acc: dict = {}
        for fa, ca in self.terms.items():
            for fb, cb in other.terms.items():
                add_into(acc, {_mono(fa + fb): ca * cb})
        return PoisElement(acc)

    def bracket(self, other: PoisElement) -> PoisElement:
        # {a_1...a_k, b_1...b_m} = sum_ij [a_i, b_j] * (the other factors)
        acc: dict = {}
        for fa, ca in self.terms.items():
            for fb, cb in other.terms.items():
                for i, a in enumerate(fa):
                    rest_a = fa[:i] + fa[i + 1:]
                    for j, b in enumerate(fb):
                        s, ab = lie_bracket(a, b)
                        rest = rest_a + fb[:j] + fb[j + 1:]
                        add_into(acc, {_mono(rest + (ab,)): s * ca * cb})
        return PoisElement(acc)

    def derive(self) -> PoisElement:
        acc: dict = {}
        for f, c in self.terms.items():
            for i, u in enumerate(f):
                rest = f[:i] + f[i + 1:]
                for s, du in lie_derive(u):
                    add_into(acc, {_mono(rest + (du,)): s * c})
        return PoisElement(acc)

    def __len__(self):
        return len(self.terms)

    def derivation_orders(self) -> set[int]:
        return {sum(k for u in f for _, k in letters_of(u)) for f in self.terms}

    def coordinates(self) -> dict:
        """Image in the symmetric algebra over words: ``{sorted words: coefficient}``."""
        acc: dict = {}
        for f, c in self.terms.items():
            expansions = [list(_assoc(u).items()) for u in f]
            for choice in product(*expansions):
                coeff = c
                words = []
                for w, v in choice:
                    coeff *= v
                    words.append(w)
                add_into(acc, {tuple(sorted(words)): coeff})
        return acc

    def __eq__(self, other):
        if not isinstance(other, PoisElement):
            return NotImplemented
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.coordinates()

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for f, c in sorted(self.terms.items(), key=lambda kv: [lie_key(u) for u in kv[0]]):
            body = " ".join(_render_lie(u) for u in f)
            parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{body}" if abs(c) != 1
                         else f"{'+' if c > 0 else '-'} {body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _assoc(u) -> dict:
    if is_letter(u):
        return {(u,): Fraction(1)}
    a, b = _assoc(u[1]), _assoc(u[2])
    acc: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            add_into(acc, {wa + wb: ca * cb})
            add_into(acc, {wb + wa: -ca * cb})
    return acc


def _render_lie(u) -> str:
    if is_letter(u):
        i, k = u
        return f"x{i}" if k == 0 else (f"d(x{i})" if k == 1 else f"d{k}(x{i})")
    return "{" + _render_lie(u[1]) + ", " + _render_lie(u[2]) + "}"


def is_zero(p: PoisElement) -> bool:
    return p.is_zero()


def _roles(ops) -> tuple[str | None, str | None]:
    """Names of the product and the bracket among ``ops``."""
    table = ops if isinstance(ops, Mapping) else {o.name: o for o in ops}
    prods = [o.name for o in table.values() if o.symmetry != "antisymmetric"]
    bras = [o.name for o in table.values() if o.symmetry == "antisymmetric"]
    if len(prods) > 1 or len(bras) > 1:
        raise ValueError("the map needs at most one product and one bracket")
    return (prods[0] if prods else None), (bras[0] if bras else None)


def tau_term(term, product_op: str | None, bracket_op: str | None) -> PoisElement:
    if isinstance(term, int):
        return PoisElement.variable(term)
    a = tau_term(term[1], product_op, bracket_op)
    b = tau_term(term[2], product_op, bracket_op)
    if term[0] == product_op:
        return a * b.derive()
    if term[0] == bracket_op:
        return a.bracket(b)
    raise ValueError(f"operation {term[0]!r} is neither the product nor the bracket")


def _count_products(term, product_op) -> int:
    if isinstance(term, int):
        return 0
    return (term[0] == product_op) + _count_products(term[1], product_op) + _count_products(term[2], product_op)


@dataclass
class TauReport:
    identity: str
    derivation_orders: list
    zero: bool
    raw_terms: int
    normalized_terms: int
    coordinates: int

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "derivation_orders": self.derivation_orders,
            "zero": self.zero,
            "raw_terms": self.raw_terms,
            "normalized_terms": self.normalized_terms,
            "coordinates": self.coordinates,
        }


def tau_expand(identity: IdentityExpr, ops=(SymbolicOp("mul"), SymbolicOp("bra", "antisymmetric"))):
    """Image of ``identity`` (as ``sum c_i t_i``); returns ``(element, report)``."""
    product_op, bracket_op = _roles(ops)
    total = PoisElement()
    raw = 0
    grades = set()
    for c, t in identity.terms:
        vs = term_variables(t)
        if len(set(vs)) != len(vs):
            raise ValueError("expression is not multilinear")
        img = tau_term(t, product_op, bracket_op)
        expected = _count_products(t, product_op)
        found = img.derivation_orders()
        if found and found != {expected}:
            raise AssertionError(f"derivation grading broken: {found} != {expected}")
        for f in img.terms:
            vs_img = sorted(i for u in f for i, _ in letters_of(u))
            if vs_img != sorted(vs):
                raise AssertionError("multilinearity lost in expansion")
        grades.add(expected)
        raw += len(img)
        total = total + img.scale(Fraction(c))
    coords = total.coordinates()
    report = TauReport(identity.name, sorted(grades), not coords, raw, len(total), len(coords))
    return total, report
