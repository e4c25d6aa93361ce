"""Truncated Groebner bases of shuffle operads.

Completion runs arity by arity.  At arity ``n`` every small common multiple
``w`` of two rule leads (the two embeddings share an internal node and
together cover all of ``w``) yields an S-polynomial: the difference of the
two one-step rewrites of ``w``.  These, together with the input relations
of arity ``n``, are reduced modulo the rules of smaller arity and then
row-reduced.  The non-zero rows become the rules of arity ``n``.  No
S-polynomial between an arity-``n`` rule and another rule lives in arity
``n`` or below, so the rules found at each level are final once the level
is done.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .order import MonomialOrder
from .poly import Polynomial, add_into
from .rewriting import (Occurrence, RewriteRule, RuleIndex, reduce, replay,
                        substitute)
from .trees import (ARITY_CAP, Tree, arity, enumerate_monomials, parse_tree,
                    relabel, render)

log = logging.getLogger(__name__)


class ArityError(ValueError):
    """Requested arity lies beyond the certified or configured bound."""


class GroebnerBasis:
    def __init__(self, rules: Iterable[RewriteRule], certified_arity: int,
                 order: MonomialOrder, generators: Sequence[str] | None = None,
                 ops: tuple = ()):
        self.rules = sorted(rules, key=lambda r: r.id)
        self.certified_arity = certified_arity
        self.order = order
        self.generators = tuple(generators if generators is not None else order.precedence)
        self.ops = tuple(ops)
        self.index = RuleIndex(self.rules)
        self._normal: dict = {}

    def rules_of_arity(self, n: int) -> list[RewriteRule]:
        return [r for r in self.rules if r.arity == n]

    def rule(self, rule_id: int) -> RewriteRule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def _check_arity(self, n: int):
        if n > self.certified_arity:
            raise ArityError(f"arity {n} exceeds certified arity {self.certified_arity}")

    def is_normal(self, m: Tree) -> bool:
        return self.index.is_normal(m)

    def is_normal_polynomial(self, p: Polynomial) -> bool:
        return all(self.index.is_normal(m) for m in p.monomials())

    def normal_monomials(self, n: int) -> list[Tree]:
        """Monomials of arity ``n`` divisible by no rule lead."""
        self._check_arity(n)
        return list(self._normals(n))

    def _normals(self, n: int) -> tuple:
        if n in self._normal:
            return self._normal[n]
        if n == 1:
            out = (1,)
        else:
            # normality is inherited by subtrees, so only root embeddings need checking
            out = []
            others = range(2, n + 1)
            for k in range(0, n - 1):
                for extra in combinations(others, k):
                    left_labels = (1,) + extra
                    right_labels = tuple(v for v in others if v not in extra)
                    lmap = dict(enumerate(left_labels, 1))
                    rmap = dict(enumerate(right_labels, 1))
                    lefts = [relabel(t, lmap) for t in self._normals(len(left_labels))]
                    rights = [relabel(t, rmap) for t in self._normals(len(right_labels))]
                    for g in self.generators:
                        for a in lefts:
                            for b in rights:
                                t = (g, a, b)
                                if not self.index.divides_at_root(t):
                                    out.append(t)
            out = tuple(out)
        self._normal[n] = out
        return out

    def dims(self, n: int) -> int:
        self._check_arity(n)
        return len(self._normals(n))

    def dims_table(self, max_arity: int | None = None) -> list[int]:
        top = self.certified_arity if max_arity is None else max_arity
        return [self.dims(n) for n in range(1, top + 1)]

    def normal_form(self, p: Polynomial, strategy: str = "leftmost", rng=None,
                    record: bool = True):
        if p.arity is not None:
            self._check_arity(p.arity)
        if p.order != self.order:
            p = p.with_order(self.order)
        return reduce(p, self.index, strategy=strategy, rng=rng, record=record)

    def replay(self, start: Polynomial, steps) -> Polynomial:
        return replay(start.with_order(self.order), steps, self.index)

    # serialization
    def to_dict(self) -> dict:
        return {
            "certified_arity": self.certified_arity,
            "precedence": list(self.order.precedence),
            "generators": list(self.generators),
            "ops": [[op.name, op.symmetry] for op in self.ops],
            "summary": {str(n): len(self.rules_of_arity(n))
                        for n in range(2, self.certified_arity + 1)},
            "rules": [{"id": r.id, "arity": r.arity, "lead": render(r.lead),
                       "tail": r.tail.render()} for r in self.rules],
        }

    @classmethod
    def from_dict(cls, data: dict) -> GroebnerBasis:
        from .symmetrize import SymbolicOp
        order = MonomialOrder(data["precedence"])
        rules = [RewriteRule(r["id"], parse_tree(r["lead"]), Polynomial.parse(r["tail"], order))
                 for r in data["rules"]]
        for r in rules:
            r.tail.arity = r.arity
        ops = tuple(SymbolicOp(n, s) for n, s in data.get("ops", []))
        return cls(rules, data["certified_arity"], order, data["generators"], ops)

    def render(self) -> str:
        lines = []
        for n in range(2, self.certified_arity + 1):
            rs = self.rules_of_arity(n)
            lines.append(f"# arity {n}: {len(rs)} rules")
            lines.extend(f"[{r.id}] {r.render()}" for r in rs)
        return "\n".join(lines) + "\n"


class _Reducer:
    """Memoized normal forms of monomials modulo a fixed rule set, one strategy."""

    def __init__(self, index: RuleIndex):
        self.index = index
        self.cache: dict = {}

    def monomial(self, m: Tree) -> dict:
        cache = self.cache
        if m in cache:
            return cache[m]
        pending: dict = {}
        stack = [m]
        while stack:
            t = stack[-1]
            if t in cache:
                stack.pop()
                continue
            rw = pending.get(t)
            if rw is None:
                hit = self.index.first_occurrence(t)
                if hit is None:
                    cache[t] = {t: Fraction(1)}
                    stack.pop()
                    continue
                occ, rule = hit
                rw = pending[t] = substitute(t, occ, rule.tail.as_dict())
            missing = [s for s in rw if s not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc: dict = {}
            for s, c in rw.items():
                add_into(acc, cache[s], c)
            cache[t] = acc
            del pending[t]
            stack.pop()
        return cache[m]

    def poly(self, p: dict) -> dict:
        acc: dict = {}
        for m, c in p.items():
            add_into(acc, self.monomial(m), c)
        return acc

    def rewritten(self, w: Tree, occ: Occurrence, rule: RewriteRule) -> dict:
        return self.poly(substitute(w, occ, rule.tail.as_dict()))


def small_overlap_pairs(occs: list, n_nodes: int) -> list[tuple[int, int]]:
    """Index pairs of embeddings that share a node and jointly cover the monomial."""
    out = []
    for i, j in combinations(range(len(occs)), 2):
        a, b = occs[i][0].nodes, occs[j][0].nodes
        if a & b and len(a | b) == n_nodes:
            out.append((i, j))
    return out


def _spanning_pairs(pairs, count):
    parent = list(range(count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = []
    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            out.append((i, j))
    return out


def _level_rows(rules, monomials, n):
    """S-polynomial remainders for candidate overlap monomials of arity ``n``."""
    index = RuleIndex(rules)
    red = _Reducer(index)
    rows = []
    for w in monomials:
        occs = index.occurrences(w)
        if len(occs) < 2 or occs[0][0].path != "":
            continue
        pairs = _spanning_pairs(small_overlap_pairs(occs, n - 1), len(occs))
        for i, j in pairs:
            row = dict(red.rewritten(w, *occs[i]))
            add_into(row, red.rewritten(w, *occs[j]), -1)
            if row:
                rows.append(row)
    return rows


def _worker(args):
    return _level_rows(*args)


def _echelon(rows: Iterable[dict], key) -> dict:
    """Fully reduced echelon form of the span of ``rows``: ``{lead: monic row}``."""
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        for m in [m for m in row if m in pivots]:
            c = row.get(m)
            if c:
                add_into(row, pivots[m], -c)
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
    return pivots


def complete(relations: Iterable[Polynomial], max_arity: int, order: MonomialOrder,
             generators: Sequence[str] | None = None, workers: int = 1,
             ops: tuple = (), arity_cap: int = ARITY_CAP) -> GroebnerBasis:
    """Groebner basis certified through ``max_arity``."""
    if max_arity > arity_cap:
        raise ArityError(f"max arity {max_arity} exceeds cap {arity_cap}")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    gens = tuple(generators if generators is not None else order.precedence)
    by_arity: dict = {}
    for p in relations:
        if p.is_zero():
            log.warning("dropping zero relation")
            continue
        n = p.arity
        if n > max_arity:
            raise ArityError(f"relation of arity {n} exceeds max arity {max_arity}")
        if n < 2:
            raise ValueError("relations must have arity at least 2")
        by_arity.setdefault(n, []).append(p.as_dict())

    rules: list[RewriteRule] = []
    key = order.key
    for n in range(2, max_arity + 1):
        index = RuleIndex(rules)
        red = _Reducer(index)
        rows = []
        for rel in by_arity.get(n, []):
            r = red.poly(rel)
            if r:
                rows.append(r)
            else:
                log.warning("relation of arity %d reduces to zero modulo lower rules; dropped", n)
        if rules and 2 * index.max_weight >= n:
            candidates = enumerate_monomials(gens, n)
            if workers == 1:
                rows.extend(_level_rows(rules, candidates, n))
            else:
                chunks = [candidates[i::workers] for i in range(workers)]
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    for part in pool.map(_worker, [(rules, c, n) for c in chunks]):
                        rows.extend(part)
        pivots = _echelon(rows, key)
        next_id = len(rules) + 1
        for lead in sorted(pivots, key=key, reverse=True):
            row = pivots[lead]
            tail = {m: -c for m, c in row.items() if m != lead}
            rules.append(RewriteRule(next_id, lead, Polynomial(tail, order, arity=n)))
            next_id += 1
        log.info("arity %d: %d rules", n, len(pivots))
    return GroebnerBasis(rules, max_arity, order, gens, ops)


def common_multiples(r1: RewriteRule, r2: RewriteRule, max_arity: int,
                     generators: Sequence[str]) -> list[dict]:
    """Small common multiples of two rule leads up to ``max_arity``.

    Each entry records the monomial and the two embeddings.  Embeddings
    sharing no node are excluded.
    """
    if max_arity > ARITY_CAP:
        raise ArityError(f"max arity {max_arity} exceeds cap {ARITY_CAP}")
    from .rewriting import find_divisor_embeddings
    out = []
    lo = max(r1.arity, r2.arity)
    hi = min(max_arity, r1.arity + r2.arity - 2)
    for n in range(lo, hi + 1):
        for w in enumerate_monomials(generators, n):
            e1 = find_divisor_embeddings(r1.lead, w)
            if not e1:
                continue
            e2 = find_divisor_embeddings(r2.lead, w)
            for a in e1:
                for b in e2:
                    if r1.id == r2.id and a.path >= b.path:
                        continue
                    if a.nodes & b.nodes and len(a.nodes | b.nodes) == n - 1:
                        out.append({"monomial": w, "first": a, "second": b})
    return out


def s_polynomial(w: Tree, first: Occurrence, r1: RewriteRule, second: Occurrence,
                 r2: RewriteRule, order: MonomialOrder) -> Polynomial:
    a = substitute(w, first, r1.tail.as_dict())
    add_into(a, substitute(w, second, r2.tail.as_dict()), -1)
    return Polynomial(a, order, arity=arity(w))


def dims(basis: GroebnerBasis, n: int) -> int:
    return basis.dims(n)


def normal_form(p: Polynomial, basis: GroebnerBasis):
    return basis.normal_form(p)
