"""Operadic divisibility and rewriting of shuffle tree monomials."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .poly import Polynomial, add_into
from .trees import Tree, arity, min_leaf, relabel, render, replace_at, subtree_at


@dataclass(frozen=True)
class Occurrence:
    """An embedding of a divisor monomial into a larger monomial.

    ``path`` locates the image of the divisor's root ("" is the root, then
    "L"/"R" steps).  ``hanging[j - 1]`` is the subtree grafted onto leaf
    ``j`` of the divisor, and ``nodes`` are the paths of the matched
    internal nodes.
    """
    path: str
    hanging: tuple
    nodes: frozenset

    def describe(self) -> str:
        return f"at '{self.path or '.'}' onto [" + ", ".join(render(h) for h in self.hanging) + "]"


@dataclass(frozen=True)
class RewriteRule:
    id: int
    lead: Tree
    tail: Polynomial = field(compare=False)

    @property
    def arity(self) -> int:
        return arity(self.lead)

    @property
    def weight(self) -> int:
        return self.arity - 1

    def as_polynomial(self) -> Polynomial:
        return Polynomial.monomial(self.lead, self.tail.order) - self.tail

    def render(self) -> str:
        return f"{render(self.lead)} -> {self.tail.render()}"


def _skeletons(t: Tree, budget: int, path: str):
    """Connected sets of internal nodes rooted at ``t`` with at most ``budget`` nodes.

    Yields ``(skeleton, hanging, nodes)`` where the skeleton's leaves are
    0-based indices into ``hanging`` in planar order.
    """
    if budget < 1 or isinstance(t, int):
        return
    lefts = [(0, (t[1],), ())]
    if not isinstance(t[1], int):
        lefts += list(_skeletons(t[1], budget - 1, path + "L"))
    for ls, lh, ln in lefts:
        used = 1 + len(ln)
        rights = [(0, (t[2],), ())]
        if not isinstance(t[2], int):
            rights += list(_skeletons(t[2], budget - used, path + "R"))
        for rs, rh, rn in rights:
            k = len(lh)
            shifted = rs + k if isinstance(rs, int) else _shift(rs, k)
            yield (t[0], ls, shifted), lh + rh, (path,) + ln + rn


def _shift(s, k):
    if isinstance(s, int):
        return s + k
    return (s[0], _shift(s[1], k), _shift(s[2], k))


def _standard_pattern(skeleton, hanging):
    mins = [min_leaf(h) for h in hanging]
    order = sorted(range(len(hanging)), key=mins.__getitem__)
    rank = {i: r for r, i in enumerate(order, 1)}
    return relabel(skeleton, rank), tuple(hanging[i] for i in order)


def match_at(lead: Tree, t: Tree):
    """Hanging subtrees if ``lead`` embeds with its root at the root of ``t``."""
    slots = {}

    def walk(p, s):
        if isinstance(p, int):
            slots[p] = s
            return True
        if isinstance(s, int) or s[0] != p[0]:
            return False
        return walk(p[1], s[1]) and walk(p[2], s[2])

    if not walk(lead, t):
        return None
    k = len(slots)
    hanging = tuple(slots[j] for j in range(1, k + 1))
    mins = [min_leaf(h) for h in hanging]
    if any(mins[i] >= mins[i + 1] for i in range(k - 1)):
        return None
    return hanging


def _pattern_nodes(lead: Tree, path: str) -> frozenset:
    out = []

    def walk(p, q):
        if isinstance(p, int):
            return
        out.append(q)
        walk(p[1], q + "L")
        walk(p[2], q + "R")
    walk(lead, path)
    return frozenset(out)


def find_divisor_embeddings(lead: Tree, m: Tree) -> list[Occurrence]:
    """All embeddings of ``lead`` into ``m``, in pre-order of their root."""
    if arity(lead) > arity(m) or isinstance(lead, int):
        return []
    out = []

    def visit(t, path):
        if isinstance(t, int):
            return
        hanging = match_at(lead, t)
        if hanging is not None:
            out.append(Occurrence(path, hanging, _pattern_nodes(lead, path)))
        visit(t[1], path + "L")
        visit(t[2], path + "R")

    visit(m, "")
    return out


def substitute(m: Tree, occ: Occurrence, poly: dict) -> dict:
    """Replace the embedded divisor in ``m`` by each monomial of ``poly``."""
    out = {}
    hang = dict(enumerate(occ.hanging, 1))
    for s, c in poly.items():
        out[replace_at(m, occ.path, relabel(s, hang))] = c
    return out


class RuleIndex:
    """Lookup structure answering "which rule leads divide this monomial, where"."""

    def __init__(self, rules: Iterable[RewriteRule] = ()):
        self.by_lead: dict = {}
        self.max_weight = 0
        self._occ_cache: dict = {}
        for r in rules:
            self.add(r)

    def add(self, rule: RewriteRule):
        if rule.lead in self.by_lead:
            raise ValueError(f"duplicate leading monomial {render(rule.lead)}")
        self.by_lead[rule.lead] = rule
        self.max_weight = max(self.max_weight, rule.weight)
        self._occ_cache.clear()

    def __len__(self):
        return len(self.by_lead)

    def rules(self) -> list[RewriteRule]:
        return list(self.by_lead.values())

    def _occurrences_at(self, t, path):
        found = []
        for skel, hang, nodes in _skeletons(t, self.max_weight, path):
            pattern, hanging = _standard_pattern(skel, hang)
            rule = self.by_lead.get(pattern)
            if rule is not None:
                found.append((Occurrence(path, hanging, frozenset(nodes)), rule))
        return found

    def occurrences(self, m: Tree) -> list[tuple[Occurrence, RewriteRule]]:
        """All (occurrence, rule) pairs for ``m``, root pre-order then pattern size."""
        cached = self._occ_cache.get(m)
        if cached is not None:
            return cached
        out = []

        def visit(t, path):
            if isinstance(t, int):
                return
            out.extend(self._occurrences_at(t, path))
            visit(t[1], path + "L")
            visit(t[2], path + "R")

        if self.max_weight:
            visit(m, "")
        if len(self._occ_cache) < 200_000:
            self._occ_cache[m] = out
        return out

    def first_occurrence(self, m: Tree):
        if not self.max_weight or isinstance(m, int):
            return None

        def visit(t, path):
            if isinstance(t, int):
                return None
            found = self._occurrences_at(t, path)
            if found:
                return found[0]
            return visit(t[1], path + "L") or visit(t[2], path + "R")

        return visit(m, "")

    def divides_at_root(self, m: Tree) -> bool:
        return bool(self._occurrences_at(m, "")) if self.max_weight else False

    def is_normal(self, m: Tree) -> bool:
        return self.first_occurrence(m) is None


@dataclass(frozen=True)
class Step:
    """One rewrite: ``coeff * monomial`` replaced via ``rule`` at ``occurrence``."""
    rule: int
    monomial: Tree
    coeff: Fraction
    occurrence: Occurrence
    result: Polynomial

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "monomial": render(self.monomial),
            "coefficient": str(self.coeff),
            "occurrence": self.occurrence.describe(),
            "path": self.occurrence.path,
            "result": self.result.render(),
        }


def rewrite_once(p: dict, m: Tree, occ: Occurrence, rule: RewriteRule) -> dict:
    c = p[m]
    out = dict(p)
    del out[m]
    return add_into(out, substitute(m, occ, rule.tail.as_dict()), c)


def reduce(p: Polynomial, index: RuleIndex, strategy: str = "leftmost",
           rng: random.Random | None = None, record: bool = True):
    """Rewrite ``p`` until no monomial is divisible by a rule lead.

    ``strategy="leftmost"`` rewrites the largest reducible monomial at its
    first occurrence; ``"random"`` picks both uniformly with ``rng``.
    Returns ``(normal_form, steps)``.
    """
    order = p.order
    if order is None:
        raise ValueError("polynomial needs a monomial order")
    if strategy not in ("leftmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    cur = p.as_dict()
    steps = []
    while True:
        if strategy == "leftmost":
            choice = None
            for m in sorted(cur, key=order.key, reverse=True):
                occs = index.occurrences(m)
                if occs:
                    choice = (m, occs[0])
                    break
        else:
            reducible = [m for m in sorted(cur, key=order.key) if index.occurrences(m)]
            choice = None
            if reducible:
                m = rng.choice(reducible)
                choice = (m, rng.choice(index.occurrences(m)))
        if choice is None:
            break
        m, (occ, rule) = choice
        c = cur[m]
        cur = rewrite_once(cur, m, occ, rule)
        if record:
            steps.append(Step(rule.id, m, c, occ, Polynomial(cur, order, p.arity)))
    return Polynomial(cur, order, p.arity), steps


def replay(start: Polynomial, steps: list[Step], index: RuleIndex) -> Polynomial:
    """Re-run a certificate, checking every recorded intermediate result."""
    rules = {r.id: r for r in index.rules()}
    cur = start.as_dict()
    for i, st in enumerate(steps):
        rule = rules.get(st.rule)
        if rule is None:
            raise ValueError(f"step {i}: unknown rule {st.rule}")
        if cur.get(st.monomial) != st.coeff:
            raise ValueError(f"step {i}: monomial {render(st.monomial)} not present with recorded coefficient")
        hanging = match_at(rule.lead, subtree_at(st.monomial, st.occurrence.path))
        if hanging != st.occurrence.hanging:
            raise ValueError(f"step {i}: rule {st.rule} does not embed at recorded position")
        cur = rewrite_once(cur, st.monomial, st.occurrence, rule)
        if cur != st.result.as_dict():
            raise ValueError(f"step {i}: result differs from certificate")
    return Polynomial(cur, start.order, start.arity)
