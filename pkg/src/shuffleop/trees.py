"""Tree monomials of binary shuffle operads.

A tree is either a leaf label (positive ``int``) or a triple
``(generator_name, left, right)``.  Plain tuples keep trees hashable and
cheap, which matters once arity-6 components (tens of thousands of
monomials) are enumerated.

Text form follows the usual notation for shuffle operads::

    x(z(1 3) 2)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence, Union

Tree = Union[int, tuple]

ARITY_CAP = 7


@dataclass(frozen=True)
class ShuffleGenerator:
    name: str
    arity: int = 2

    def __post_init__(self):
        if self.arity != 2:
            raise ValueError(f"only binary generators are supported, got arity {self.arity}")


def is_leaf(t: Tree) -> bool:
    return isinstance(t, int)


def arity(t: Tree) -> int:
    if isinstance(t, int):
        return 1
    return arity(t[1]) + arity(t[2])


def weight(t: Tree) -> int:
    """Number of internal nodes."""
    return arity(t) - 1


def leaves(t: Tree) -> tuple[int, ...]:
    if isinstance(t, int):
        return (t,)
    return leaves(t[1]) + leaves(t[2])


def min_leaf(t: Tree) -> int:
    # the leftmost leaf is the minimum in a shuffle tree
    while not isinstance(t, int):
        t = t[1]
    return t


def generators_of(t: Tree) -> set[str]:
    if isinstance(t, int):
        return set()
    return {t[0]} | generators_of(t[1]) | generators_of(t[2])


def _is_binary_tree(t) -> bool:
    if isinstance(t, bool):
        return False
    if isinstance(t, int):
        return t >= 1
    return (isinstance(t, tuple) and len(t) == 3 and isinstance(t[0], str)
            and _is_binary_tree(t[1]) and _is_binary_tree(t[2]))


def validate_shuffle(t: Tree) -> bool:
    """True iff leaves are a permutation of 1..n and siblings have increasing minima."""
    if not _is_binary_tree(t):
        return False

    def walk(s):
        # returns the true minimum, or None if a node violates the condition
        if isinstance(s, int):
            return s
        a = walk(s[1])
        b = walk(s[2])
        if a is None or b is None or a >= b:
            return None
        return a

    if walk(t) is None:
        return False
    labels = sorted(leaves(t))
    return labels == list(range(1, len(labels) + 1))


def relabel(t: Tree, mapping) -> Tree:
    if isinstance(t, int):
        return mapping[t]
    return (t[0], relabel(t[1], mapping), relabel(t[2], mapping))


def standardize(t: Tree) -> Tree:
    """Relabel leaves order-preservingly onto 1..n."""
    labels = sorted(leaves(t))
    return relabel(t, {v: i for i, v in enumerate(labels, 1)})


def render(t: Tree) -> str:
    if isinstance(t, int):
        return str(t)
    return f"{t[0]}({render(t[1])} {render(t[2])})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\()|(\)))")


def parse_tree(text: str) -> Tree:
    """Parse the canonical text form, e.g. ``x(z(1 3) 2)``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse tree at {text[pos:]!r}")
        tokens.append(m.groups())
        pos = m.end()
    tokens.append((None, None, None, None))
    i = 0

    def node():
        nonlocal i
        num, name, lp, rp = tokens[i]
        i += 1
        if num is not None:
            return int(num)
        if name is None or tokens[i][2] is None:
            raise ValueError(f"malformed tree {text!r}")
        i += 1
        left = node()
        right = node()
        if tokens[i][3] is None:
            raise ValueError(f"malformed tree {text!r}")
        i += 1
        return (name, left, right)

    t = node()
    if tokens[i][0] is not None or tokens[i][1] is not None or i != len(tokens) - 1:
        raise ValueError(f"trailing input in {text!r}")
    return t


def shuffle_compose(outer: Tree, slot: int, inner: Tree,
                    labels: Sequence[int] | None = None) -> Tree:
    """Shuffle composition ``outer o_slot inner``.

    ``labels`` is the set of result labels carried by the leaves of ``inner``;
    its minimum must be ``slot``.  Defaults to the consecutive block starting
    at ``slot``.  The remaining labels go, in increasing order, to the other
    leaves of ``outer``.
    """
    p, q = arity(outer), arity(inner)
    if not 1 <= slot <= p:
        raise ValueError(f"slot {slot} out of range for arity {p}")
    n = p + q - 1
    if labels is None:
        labels = range(slot, slot + q)
    labels = sorted(labels)
    if len(labels) != q or len(set(labels)) != q:
        raise ValueError("redistribution must give one label per inner leaf")
    if labels[0] != slot or labels[-1] > n:
        raise ValueError("redistribution violates the shuffle condition")
    rest = [v for v in range(1, n + 1) if v not in set(labels)]
    outer_map = {}
    it = iter(rest)
    for j in range(1, p + 1):
        if j != slot:
            outer_map[j] = next(it)
    # the slot itself is consumed by inner; mins before slot stay fixed
    if any(outer_map[j] != j for j in range(1, slot)):
        raise ValueError("redistribution violates the shuffle condition")
    inner_relabeled = relabel(inner, {i: v for i, v in enumerate(labels, 1)})

    def graft(t):
        if isinstance(t, int):
            return inner_relabeled if t == slot else outer_map[t]
        return (t[0], graft(t[1]), graft(t[2]))

    return graft(outer)


@lru_cache(maxsize=None)
def _shapes(gens: tuple[str, ...], n: int) -> tuple[Tree, ...]:
    """All shuffle trees on labels 1..n."""
    if n == 1:
        return (1,)
    out = []
    others = range(2, n + 1)
    # label 1 always sits in the left part
    for k in range(0, n - 1):
        for extra in combinations(others, k):
            left_labels = (1,) + extra
            right_labels = tuple(v for v in others if v not in extra)
            lmap = dict(enumerate(left_labels, 1))
            rmap = dict(enumerate(right_labels, 1))
            lefts = [relabel(t, lmap) for t in _shapes(gens, len(left_labels))]
            rights = [relabel(t, rmap) for t in _shapes(gens, len(right_labels))]
            for g in gens:
                for a in lefts:
                    for b in rights:
                        out.append((g, a, b))
    return tuple(out)


def enumerate_monomials(generators: Iterable, n: int) -> list[Tree]:
    """All shuffle tree monomials of arity ``n`` over the given generators."""
    if n < 1:
        raise ValueError("arity must be positive")
    names = tuple(g.name if isinstance(g, ShuffleGenerator) else g for g in generators)
    if len(set(names)) != len(names):
        raise ValueError("generator names must be unique")
    return list(_shapes(names, n))


def subtree_at(t: Tree, path: str) -> Tree:
    for step in path:
        t = t[1] if step == "L" else t[2]
    return t


def replace_at(t: Tree, path: str, new: Tree) -> Tree:
    if not path:
        return new
    if path[0] == "L":
        return (t[0], replace_at(t[1], path[1:], new), t[2])
    return (t[0], t[1], replace_at(t[2], path[1:], new))


def node_paths(t: Tree, prefix: str = "") -> list[str]:
    """Paths of internal nodes in pre-order."""
    if isinstance(t, int):
        return []
    return [prefix] + node_paths(t[1], prefix + "L") + node_paths(t[2], prefix + "R")
