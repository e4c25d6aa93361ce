"""Exact-rational linear combinations of tree monomials."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .order import MonomialOrder
from .trees import Tree, arity, parse_tree, render


def add_into(acc: dict, other: dict, c=1) -> dict:
    """``acc += c * other`` on raw ``{monomial: coefficient}`` dicts, in place."""
    for m, v in other.items():
        s = acc.get(m, 0) + c * v
        if s:
            acc[m] = s
        else:
            acc.pop(m, None)
    return acc


class Polynomial:
    """A homogeneous combination of monomials of one arity.

    Terms are exposed in strictly descending monomial order; the zero
    polynomial has no terms.
    """

    __slots__ = ("_terms", "arity", "order")

    def __init__(self, terms: dict | Iterable = (), order: MonomialOrder | None = None,
                 arity: int | None = None):
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for m, c in items:
            c = Fraction(c)
            if c:
                add_into(acc, {m: c})
        ar = {_arity(m) for m in acc}
        if len(ar) > 1:
            raise ValueError("all monomials of a polynomial must have equal arity")
        if ar:
            (found,) = ar
            if arity is not None and arity != found:
                raise ValueError(f"declared arity {arity} but monomials have arity {found}")
            arity = found
        self._terms = acc
        self.arity = arity
        self.order = order

    # construction helpers
    @classmethod
    def monomial(cls, m: Tree, order=None, coeff=1):
        return cls({m: coeff}, order)

    @classmethod
    def parse(cls, text: str, order=None, rename: dict | None = None):
        """Parse e.g. ``"z(1 x(2 3)) + 2 x(z(1 3) 2) - 1/2 x(1 z(2 3))"``."""
        terms = []
        for sign, coeff, mono in _split_terms(text):
            c = Fraction(coeff) if coeff else Fraction(1)
            t = parse_tree(mono)
            if rename:
                t = _rename(t, rename)
            terms.append((t, -c if sign == "-" else c))
        return cls(terms, order)

    # accessors
    def as_dict(self) -> dict:
        return dict(self._terms)

    @property
    def terms(self) -> list[tuple[Tree, Fraction]]:
        if self.order is None:
            raise ValueError("polynomial has no monomial order attached")
        return sorted(self._terms.items(), key=lambda kv: self.order.key(kv[0]), reverse=True)

    def lead(self) -> Tree:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=self.order.key)

    def lead_coeff(self) -> Fraction:
        return self._terms[self.lead()]

    def coeff(self, m: Tree) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def monomials(self):
        return self._terms.keys()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # arithmetic
    def _check(self, other: Polynomial):
        if self.arity is not None and other.arity is not None and self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _new(self, terms: dict, other=None):
        p = Polynomial.__new__(Polynomial)
        p._terms = terms
        p.arity = self.arity if self.arity is not None else (other.arity if other else None)
        p.order = self.order or (other.order if other else None)
        return p

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        return self._new(add_into(dict(self._terms), other._terms), other)

    def __sub__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        return self._new(add_into(dict(self._terms), other._terms, -1), other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> Polynomial:
        c = Fraction(c)
        if not c:
            return self._new({})
        return self._new({m: c * v for m, v in self._terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def monic(self) -> Polynomial:
        return self.scale(1 / self.lead_coeff())

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def with_order(self, order: MonomialOrder) -> Polynomial:
        p = self._new(dict(self._terms))
        p.order = order
        return p

    def render(self) -> str:
        if not self._terms:
            return "0"
        items = self.terms if self.order is not None else sorted(
            self._terms.items(), key=lambda kv: render(kv[0]))
        parts = []
        for i, (m, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = render(m) if a == 1 else f"{a} {render(m)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self.render()!r})"


def _arity(m):
    return arity(m)


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*([A-Za-z_][A-Za-z0-9_']*\(.*?\)(?=\s*[+-]|\s*$)|\d+)")


def _split_terms(text: str):
    text = text.strip()
    if text in ("", "0"):
        return
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, coeff, mono = m.groups()
        if not first and sign is None:
            raise ValueError(f"missing operator near {text[pos:]!r}")
        first = False
        if coeff and mono.isdigit():
            # "2 3" would be ambiguous; only leaf monomials are bare digits
            raise ValueError(f"ambiguous term near {text[pos:]!r}")
        yield sign, coeff, mono
        pos = m.end()


def _rename(t, names):
    if isinstance(t, int):
        return t
    return (names.get(t[0], t[0]), _rename(t[1], names), _rename(t[2], names))


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_scale(p: Polynomial, c) -> Polynomial:
    return p.scale(c)


def poly_normalize(terms: Iterable[tuple], order: MonomialOrder | None = None) -> Polynomial:
    """Merge like terms and drop zeros; ``terms`` yields ``(coefficient, monomial)``."""
    return Polynomial([(m, c) for c, m in terms], order)
