"""Graded path-lexicographic order on shuffle tree monomials."""
from __future__ import annotations

from enum import IntEnum
from typing import Iterable

from .trees import Tree, arity


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class MonomialOrder:
    """Path-lexicographic order.

    Monomials are compared by arity, then by the root-to-leaf words of
    generators read for leaves 1, 2, ..., n (each word compared degree-lex,
    longer words being larger), then by the planar reading of the leaf
    labels, compared reverse-lexicographically.

    ``precedence`` lists generator names from smallest to largest.
    """

    def __init__(self, precedence: Iterable[str]):
        self.precedence = tuple(precedence)
        if len(set(self.precedence)) != len(self.precedence):
            raise ValueError("duplicate generator in precedence")
        self._rank = {g: i for i, g in enumerate(self.precedence)}
        self._cache: dict = {}

    def __repr__(self):
        return f"MonomialOrder({list(self.precedence)!r})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.precedence == self.precedence

    def __hash__(self):
        return hash(self.precedence)

    def key(self, t: Tree):
        k = self._cache.get(t)
        if k is None:
            k = self._cache[t] = self._make_key(t)
        return k

    def _make_key(self, t: Tree):
        paths = {}
        reading = []
        rank = self._rank

        def walk(s, word):
            if isinstance(s, int):
                paths[s] = (len(word), word)
                reading.append(s)
                return
            try:
                w = word + (rank[s[0]],)
            except KeyError:
                raise ValueError(f"generator {s[0]!r} missing from precedence") from None
            walk(s[1], w)
            walk(s[2], w)

        walk(t, ())
        n = len(reading)
        words = tuple(paths[i] for i in range(1, n + 1))
        return (n, words, tuple(-v for v in reversed(reading)))

    def compare(self, a: Tree, b: Tree) -> Ordering:
        if arity(a) != arity(b):
            raise ValueError("cannot compare monomials of different arity")
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            return Ordering.EQUAL
        return Ordering.GREATER if ka > kb else Ordering.LESS

    def sorted(self, monomials, descending: bool = False):
        return sorted(monomials, key=self.key, reverse=descending)
